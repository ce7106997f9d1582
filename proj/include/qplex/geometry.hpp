#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qplex/designs.hpp"
#include "qplex/povm.hpp"

namespace qplex::geom {

// Affine subspace of R^n: offset point plus an orthonormal direction basis.
struct AffineSubspace {
    int ambient_dim = 0;
    std::vector<double> offset;
    std::vector<std::vector<double>> directions;

    int dimension() const { return static_cast<int>(directions.size()); }
    std::vector<double> project(const std::vector<double>& p) const;
    double distance(const std::vector<double>& p) const;
    bool contains(const std::vector<double>& p, double tol = 1e-8) const;
};

// Affine span of the probability range: offset c_Pi, directions the
// orthonormalised images of a traceless operator basis under p_Pi.
AffineSubspace primal_affine_space(const Povm& povm);

// The n x n linear system (n/d) p_l = (d+1) sum_j p_j tr(rho_j rho_l) - 1
// cutting out the primal affine space of a 2-design POVM. Returned as the
// matrix A and right-hand side b of A p = b.
struct LinearSystem {
    RealMatrix a;
    std::vector<double> b;
    int rank = 0;
};
LinearSystem two_design_linear_system(const designs::ProjectiveDesign& design);

struct GeometryReport {
    double m = 0.0;  // sqrt(alpha/d); m^2 = r R
    double r = 0.0;  // inscribed-ball radius m/sqrt(d-1)
    double R = 0.0;  // circumscribed-ball radius m sqrt(d-1)
    std::vector<double> center;                         // c_Pi
    std::vector<double> mediality_distances;            // dist(e_k, A)
    std::vector<std::vector<double>> basis_distributions;  // f_j = p_Pi(Pi_j / tr Pi_j)
    int linear_system_rank = 0;                         // codimension of A in R^n
    double homothety_residual = 0.0;  // max_k |h(P_A e_k) - f_k| (2-design POVMs)
    double alpha = 0.0;
    bool two_design = false;
};
GeometryReport geometry_report(const Povm& povm, double tol = 1e-9);

struct MembershipResiduals {
    double linear_max = 0.0;
    double quadratic = 0.0;
    double cubic = 0.0;
    double cubic_alternative = 0.0;  // reduced form over distinct triples
    bool in_pure_range = false;
};
// Algebraic test for membership of the pure-state probability range of a
// 2-design POVM: n linear equations, the sphere equation
// sum p^2 = 2d/(n(d+1)), and the cubic with constant (d+7)/(d+1)^3.
MembershipResiduals pure_membership_check(const designs::ProjectiveDesign& design,
                                          const std::vector<double>& p, double tol = 1e-9);

struct LowDimMembership {
    bool by_inequalities = false;
    bool by_reconstruction = false;  // reconstruct tau and test positivity
    double min_eigenvalue = 0.0;
    MembershipResiduals residuals;
};
// Full-range membership for d = 2, 3, where the linear/quadratic(/cubic)
// inequalities are sufficient; both routes are evaluated and must agree.
LowDimMembership state_membership_low_dim(const designs::ProjectiveDesign& design,
                                          const std::vector<double>& p, double tol = 1e-9);

enum class ReconstructionRoute { two_design, tight_frame };

// Inverts the measurement map on the primal affine space. The 2-design route
// uses tau = (d+1) sum_j p_j rho_j - I; the tight-frame route works for any
// morphophoric POVM via tau = I/d + (1/alpha) sum_j (p_j - c_j) pi0(Pi_j).
ComplexMatrix reconstruct_state(const Povm& povm, const std::vector<double>& p,
                                ReconstructionRoute route, double affine_tol = 1e-8);

struct DualityReport {
    // min over samples p in Delta and vertices f_k of <p, f_k> - d m^2; polar
    // duality of D and Delta says this is >= 0 with equality on each facet
    double facet_margin_min = 0.0;
    double facet_equality_gap = 0.0;  // worst over k of closest approach to equality
    // fundamental inequalities -m^2 <= <p-c, q-c> <= R^2 over sampled pairs
    double pair_min = 0.0;
    double pair_max = 0.0;
    bool fundamental_ok = false;
    // self-duality spot check (necessary direction)
    int self_dual_candidates = 0;
    int self_dual_failures = 0;
    // sandwich D subset Q subset Delta
    bool vertices_in_range = false;
    bool samples_in_primal_polytope = false;
    double inner_radius_residual = 0.0;  // | ||f'_k - c|| - r | worst case
};
DualityReport duality_checks(const Povm& povm, int samples, std::uint64_t seed);

}  // namespace qplex::geom
