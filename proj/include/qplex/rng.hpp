#pragma once

#include <cstdint>
#include <random>

#include "qplex/complex_matrix.hpp"

namespace qplex {

// Default seed used by the CLI and the randomised checks; every randomised
// result is reproducible given the seed.
inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

class Rng {
public:
    explicit Rng(std::uint64_t seed = kDefaultSeed) : eng_(seed) {}

    double gauss() { return n01_(eng_); }
    double uniform() { return u01_(eng_); }

    // Derived independent stream; used to parallelise trials deterministically.
    Rng fork(std::uint64_t salt) {
        std::uint64_t mixed = eng_() ^ (salt * 0x9E3779B97F4A7C15ull);
        return Rng(mixed);
    }

    cvec gaussian_vector(int d) {
        cvec v(d);
        for (auto& z : v) z = cplx(gauss(), gauss());
        return v;
    }

    // Haar-random unit vector
    cvec haar_vector(int d) {
        cvec v = gaussian_vector(d);
        const double n = norm(v);
        for (auto& z : v) z /= n;
        return v;
    }

    // Haar-random pure state (rank-1 projector)
    ComplexMatrix haar_state(int d) { return projector(haar_vector(d)); }

    // Hilbert-Schmidt-random mixed state: G G^dagger / tr
    ComplexMatrix hs_mixed_state(int d) {
        ComplexMatrix g(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) g(i, j) = cplx(gauss(), gauss());
        ComplexMatrix w = g * g.adjoint();
        w *= cplx(1.0 / w.trace().real(), 0.0);
        return w;
    }

    ComplexMatrix random_hermitian(int d) {
        ComplexMatrix g(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) g(i, j) = cplx(gauss(), gauss());
        return g.hermitized();
    }

    // Uniform point of the probability simplex (Dirichlet(1,...,1))
    std::vector<double> simplex_point(int n) {
        std::vector<double> p(n);
        double total = 0.0;
        for (auto& x : p) {
            x = -std::log(1.0 - u01_(eng_));
            total += x;
        }
        for (auto& x : p) x /= total;
        return p;
    }

private:
    std::mt19937_64 eng_;
    std::normal_distribution<double> n01_{0.0, 1.0};
    std::uniform_real_distribution<double> u01_{0.0, 1.0};
};

}  // namespace qplex
