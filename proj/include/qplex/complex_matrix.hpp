#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qplex {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// Dense square complex matrix, row-major. Small dimensions only (operators on
// C^d with d up to a few tens); everything is by value.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim)
        : dim_(dim), a_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
        if (dim <= 0) throw std::invalid_argument("ComplexMatrix: dim must be positive");
    }

    static ComplexMatrix identity(int dim) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }

    cplx& operator()(int i, int j) { return a_[idx(i, j)]; }
    const cplx& operator()(int i, int j) const { return a_[idx(i, j)]; }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    // max entrywise |A - A^dagger|
    double hermiticity_error() const {
        double worst = 0.0;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j <= i; ++j)
                worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return worst;
    }

    ComplexMatrix hermitized() const {
        ComplexMatrix m(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                m(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& z : a_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double s = 0.0;
        for (const cplx& z : a_) s = std::max(s, std::abs(z));
        return s;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    ComplexMatrix& operator*=(cplx s) {
        for (cplx& z : a_) z *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.check_same_dim(b);
        const int d = a.dim_;
        ComplexMatrix c(d);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx(0.0, 0.0)) continue;
                for (int j = 0; j < d; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) +
               static_cast<std::size_t>(j);
    }
    void check_same_dim(const ComplexMatrix& o) const {
        if (dim_ != o.dim_)
            throw std::invalid_argument("ComplexMatrix: dimension mismatch (" +
                                        std::to_string(dim_) + " vs " + std::to_string(o.dim_) + ")");
    }

    int dim_ = 0;
    std::vector<cplx> a_;
};

// <u|v>
inline cplx inner(const cvec& u, const cvec& v) {
    if (u.size() != v.size()) throw std::invalid_argument("inner: length mismatch");
    cplx s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) s += std::conj(u[k]) * v[k];
    return s;
}

inline double norm(const cvec& u) { return std::sqrt(std::abs(inner(u, u))); }

inline cvec matvec(const ComplexMatrix& a, const cvec& v) {
    const int d = a.dim();
    if (static_cast<int>(v.size()) != d) throw std::invalid_argument("matvec: length mismatch");
    cvec w(v.size(), cplx(0.0, 0.0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) w[i] += a(i, j) * v[j];
    return w;
}

// |u><v|
inline ComplexMatrix outer(const cvec& u, const cvec& v) {
    if (u.size() != v.size()) throw std::invalid_argument("outer: length mismatch");
    const int d = static_cast<int>(u.size());
    ComplexMatrix m(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = u[i] * std::conj(v[j]);
    return m;
}

// projector onto the line spanned by v (v need not be normalised)
inline ComplexMatrix projector(const cvec& v) {
    const double n2 = std::abs(inner(v, v));
    if (n2 <= 0.0) throw std::invalid_argument("projector: zero vector");
    ComplexMatrix p = outer(v, v);
    p *= cplx(1.0 / n2, 0.0);
    return p;
}

}  // namespace qplex
