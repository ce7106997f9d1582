#pragma once

#include <array>
#include <vector>

#include "qplex/complex_matrix.hpp"

namespace qplex {

// Tolerances are absolute and overridable per call; equality checks default
// to 1e-10, orthogonality classification to 1e-8.

// tr(AB), real for Hermitian inputs. The imaginary residue (roundoff only) is
// discarded; throws on dimension mismatch.
double hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

// Orthogonal projection onto traceless Hermitian operators: A - (tr A / d) I.
ComplexMatrix traceless_project(const ComplexMatrix& a);

// Symmetrise on ingestion; rejects inputs whose anti-Hermitian part exceeds tol.
ComplexMatrix ingest_hermitian(const ComplexMatrix& a, double tol = 1e-10);

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // unitary, k-th column pairs with values[k]
};

// Cyclic Jacobi for Hermitian matrices. Robust at the small dimensions used
// here; throws after the sweep cap instead of looping forever.
EigenSystem hermitian_eig(const ComplexMatrix& a, int max_sweeps = 64);

// Square root of a positive semidefinite operator. Eigenvalues slightly below
// zero (> -1e-8 * ||A||) are clamped; anything lower is rejected.
ComplexMatrix operator_sqrt(const ComplexMatrix& a);

// Generalised Gell-Mann basis of traceless Hermitian operators: d^2-1 elements,
// Hilbert-Schmidt orthonormal (symmetric, antisymmetric and diagonal families).
std::vector<ComplexMatrix> gell_mann_basis(int d);

// Coordinates of A in an orthonormal operator basis: x_i = tr(A B_i).
std::vector<double> coords_in_basis(const ComplexMatrix& a, const std::vector<ComplexMatrix>& basis);

// d=2 Bloch coordinates in the scaled convention
//     rho = I/2 + sum_i b_i sigma_i / sqrt(2),
// so pure states sit at |b| = 1/sqrt(2). The unit-sphere convention used by the
// POVM shorthand (I + n.sigma)/2 corresponds to n = sqrt(2) b.
std::array<double, 3> bloch_embed(const ComplexMatrix& rho);
ComplexMatrix bloch_unembed(const std::array<double, 3>& b);

// Pauli matrices (HS norm sqrt(2)).
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// --------------------------- small real matrices ----------------------------
// Row-major rectangular real matrices; enough for frame operators, Gram
// spectra and rank decisions.

struct RealMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    RealMatrix() = default;
    RealMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

// Singular values (descending) by one-sided Jacobi; accurate near zero, which
// the rank cutoff below relies on.
std::vector<double> singular_values(const RealMatrix& m);

// Rank with a relative singular value cutoff.
int numerical_rank(const RealMatrix& m, double rel_cutoff = 1e-10);

// Eigenvalues (ascending) of a real symmetric matrix.
std::vector<double> symmetric_eigenvalues(const RealMatrix& m);

}  // namespace qplex
