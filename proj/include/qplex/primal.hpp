#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qplex/povm.hpp"

namespace qplex::primal {

// Two-step statistics of a sky measurement followed by a ground measurement,
// with the Lueders post-state Pi^{1/2} rho Pi^{1/2} / p_j in between.
struct JointDistribution {
    std::vector<std::vector<double>> joint;  // n x N, row j is outcome j in the sky
    std::vector<double> sky_marginal;        // p^Pi_j(rho)
    // conditionals p_{k|j}; rows with vanishing sky probability are undefined
    std::vector<std::optional<std::vector<double>>> conditional;
};
JointDistribution lueders_joint(const Povm& sky, const Povm& ground, const ComplexMatrix& rho);

// C_kj = p_jk(rho_*) - p_j(rho_*) p_k(rho_*) = tr(pi0(Xi_k) pi0(Pi_j)) / d,
// computed from the traceless parts. N x n.
std::vector<std::vector<double>> covariance_matrix(const Povm& sky, const Povm& ground);

// Same matrix from the joint distribution at the maximally mixed state; agrees
// with covariance_matrix up to roundoff and exercises the Lueders plumbing.
std::vector<std::vector<double>> covariance_from_joint(const Povm& sky, const Povm& ground);

// Deviation of the outcome distribution from the maximally mixed baseline.
std::vector<double> deviation(const Povm& povm, const ComplexMatrix& rho);

// || delta_Xi - (d/alpha) C delta_Pi ||_inf for the generalised primal
// equation; vanishes for every ground POVM and state iff the sky POVM is
// morphophoric with squared similarity ratio alpha.
double urgleichung_residual(const Povm& sky, const Povm& ground, const ComplexMatrix& rho,
                            double alpha);

// Rank-1 equal-trace form p_k = sum_j p_{k|j} ((d+1) p_j - d/n) with the
// state-independent conditionals taken at the maximally mixed state.
double rank1_urgleichung_residual(const Povm& sky, const Povm& ground, const ComplexMatrix& rho);

struct UrgleichungFit {
    bool morphophoric = false;
    double alpha_fit = 0.0;      // least-squares scale over the sampled states
    double alpha_formula = 0.0;  // trace formula value
    double worst_residual = 0.0;
};
// Detects morphophoricity of the sky POVM from the primal equation against an
// informationally complete ground POVM, fitting alpha over sampled states.
UrgleichungFit morphophoricity_from_urgleichung(const Povm& sky, const Povm& ground, int trials,
                                                std::uint64_t seed);

}  // namespace qplex::primal
