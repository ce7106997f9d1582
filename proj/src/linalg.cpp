#include "qplex/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qplex {

double hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("hs_inner: dimension mismatch");
    cplx t = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
    return t.real();
}

ComplexMatrix traceless_project(const ComplexMatrix& a) {
    ComplexMatrix out = a;
    const cplx shift = a.trace() / static_cast<double>(a.dim());
    for (int i = 0; i < a.dim(); ++i) out(i, i) -= shift;
    return out;
}

ComplexMatrix ingest_hermitian(const ComplexMatrix& a, double tol) {
    const double err = a.hermiticity_error();
    if (err > tol)
        throw std::invalid_argument("ingest_hermitian: anti-Hermitian part " + std::to_string(err) +
                                    " exceeds tolerance " + std::to_string(tol));
    return a.hermitized();
}

namespace {

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

EigenSystem hermitian_eig(const ComplexMatrix& input, int max_sweeps) {
    ComplexMatrix a = input.hermitized();
    const int d = a.dim();
    ComplexMatrix v = ComplexMatrix::identity(d);

    const double scale = std::max(a.frobenius_norm(), 1e-300);
    const double stop = 1e-15 * scale;

    int sweep = 0;
    while (offdiag_norm(a) > stop) {
        if (++sweep > max_sweeps)
            throw std::runtime_error("hermitian_eig: no convergence after " +
                                     std::to_string(max_sweeps) + " sweeps");
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const cplx z = a(p, q);
                const double az = std::abs(z);
                if (az <= 1e-18 * scale) continue;

                // Unitary G zeroing a_pq: a phase carrying arg(z) composed with
                // the classic symmetric Jacobi rotation.
                const double alpha = a(p, p).real();
                const double beta = a(q, q).real();
                const double tau = (beta - alpha) / (2.0 * az);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cplx u = z / az;
                const cplx su = s * u;
                const cplx su_conj = std::conj(su);

                // columns p,q of A <- A G
                for (int k = 0; k < d; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - su_conj * akq;
                    a(k, q) = su * akp + c * akq;
                }
                // rows p,q of A <- G^dagger A
                for (int k = 0; k < d; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - su * aqk;
                    a(q, k) = su_conj * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);

                for (int k = 0; k < d; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - su_conj * vkq;
                    v(k, q) = su * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem out;
    out.values.resize(d);
    out.vectors = ComplexMatrix(d);
    for (int k = 0; k < d; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (int i = 0; i < d; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

ComplexMatrix operator_sqrt(const ComplexMatrix& a) {
    const EigenSystem es = hermitian_eig(a);
    const double scale =
        std::max({std::abs(es.values.front()), std::abs(es.values.back()), 1e-300});
    if (es.values.front() < -1e-8 * scale)
        throw std::invalid_argument("operator_sqrt: operator is not positive semidefinite (min eigenvalue " +
                                    std::to_string(es.values.front()) + ")");
    const int d = a.dim();
    ComplexMatrix out(d);
    for (int k = 0; k < d; ++k) {
        // eigenvalues at roundoff level are genuine zeros; taking their square
        // root would amplify the noise to ~1e-8
        const double lam =
            es.values[k] <= 1e-14 * scale ? 0.0 : std::sqrt(es.values[k]);
        if (lam == 0.0) continue;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                out(i, j) += lam * es.vectors(i, k) * std::conj(es.vectors(j, k));
    }
    return out;
}

std::vector<ComplexMatrix> gell_mann_basis(int d) {
    if (d < 2) throw std::invalid_argument("gell_mann_basis: d must be >= 2");
    std::vector<ComplexMatrix> basis;
    basis.reserve(static_cast<std::size_t>(d) * d - 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            ComplexMatrix sym(d);
            sym(j, k) = inv_sqrt2;
            sym(k, j) = inv_sqrt2;
            basis.push_back(sym);
            ComplexMatrix asym(d);
            asym(j, k) = cplx(0.0, -inv_sqrt2);
            asym(k, j) = cplx(0.0, inv_sqrt2);
            basis.push_back(asym);
        }
    }
    for (int l = 1; l < d; ++l) {
        ComplexMatrix diag(d);
        const double f = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int j = 0; j < l; ++j) diag(j, j) = f;
        diag(l, l) = -static_cast<double>(l) * f;
        basis.push_back(diag);
    }
    return basis;
}

std::vector<double> coords_in_basis(const ComplexMatrix& a, const std::vector<ComplexMatrix>& basis) {
    std::vector<double> x(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) x[i] = hs_inner(a, basis[i]);
    return x;
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2);
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

std::array<double, 3> bloch_embed(const ComplexMatrix& rho) {
    if (rho.dim() != 2) throw std::invalid_argument("bloch_embed: defined for d = 2 only");
    if (std::abs(rho.trace() - cplx(1.0, 0.0)) > 1e-10)
        throw std::invalid_argument("bloch_embed: state must have unit trace");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return {hs_inner(rho, pauli_x()) * inv_sqrt2,
            hs_inner(rho, pauli_y()) * inv_sqrt2,
            hs_inner(rho, pauli_z()) * inv_sqrt2};
}

ComplexMatrix bloch_unembed(const std::array<double, 3>& b) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    ComplexMatrix rho = ComplexMatrix::identity(2);
    rho *= cplx(0.5, 0.0);
    ComplexMatrix term = b[0] * inv_sqrt2 * pauli_x();
    term += b[1] * inv_sqrt2 * pauli_y();
    term += b[2] * inv_sqrt2 * pauli_z();
    rho += term;
    return rho;
}

std::vector<double> singular_values(const RealMatrix& m) {
    // Work on columns; transpose so the column count is the smaller side.
    int rows = m.rows, cols = m.cols;
    std::vector<std::vector<double>> col;
    if (cols <= rows) {
        col.assign(cols, std::vector<double>(rows));
        for (int j = 0; j < cols; ++j)
            for (int i = 0; i < rows; ++i) col[j][i] = m(i, j);
    } else {
        col.assign(rows, std::vector<double>(cols));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) col[i][j] = m(i, j);
        std::swap(rows, cols);
    }

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (int i = 0; i < cols - 1; ++i) {
            for (int j = i + 1; j < cols; ++j) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (int k = 0; k < rows; ++k) {
                    alpha += col[i][k] * col[i][k];
                    beta += col[j][k] * col[j][k];
                    gamma += col[i][k] * col[j][k];
                }
                if (std::abs(gamma) <= 1e-30 || std::abs(gamma) <= 1e-16 * std::sqrt(alpha * beta))
                    continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (int k = 0; k < rows; ++k) {
                    const double vi = col[i][k], vj = col[j][k];
                    col[i][k] = c * vi - s * vj;
                    col[j][k] = s * vi + c * vj;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sv(cols);
    for (int j = 0; j < cols; ++j) {
        double s = 0.0;
        for (int k = 0; k < rows; ++k) s += col[j][k] * col[j][k];
        sv[j] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

int numerical_rank(const RealMatrix& m, double rel_cutoff) {
    const std::vector<double> sv = singular_values(m);
    if (sv.empty() || sv.front() == 0.0) return 0;
    const double cut = rel_cutoff * sv.front();
    int rank = 0;
    for (double s : sv)
        if (s > cut) ++rank;
    return rank;
}

std::vector<double> symmetric_eigenvalues(const RealMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("symmetric_eigenvalues: matrix not square");
    ComplexMatrix a(m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) a(i, j) = m(i, j);
    return hermitian_eig(a).values;
}

}  // namespace qplex
