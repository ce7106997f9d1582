#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qplex/povm.hpp"

namespace qplex::designs {

// A finite family of pure states with their generating unit vectors. Scaled by
// d/n the projectors form a POVM (this is checked on construction).
struct ProjectiveDesign {
    int dim = 0;
    std::vector<cvec> vectors;
    std::vector<ComplexMatrix> states;

    int size() const { return static_cast<int>(states.size()); }

    static ProjectiveDesign from_vectors(int dim, std::vector<cvec> vectors, double tol = 1e-10);
};

// The POVM (d/n rho_j)_j.
Povm design_povm(const ProjectiveDesign& design);

struct GramData {
    std::vector<std::vector<double>> gram;  // tr(rho_j rho_k)
    // distinct off-diagonal values with multiplicities, ascending
    std::vector<std::pair<double, int>> offdiag_clusters;
};
GramData gram_data(const ProjectiveDesign& design, double cluster_tol = 1e-8);

struct WelchReport {
    bool is_design = false;
    std::vector<double> potentials;  // (1/n^2) sum_jk tr(rho_j rho_k)^s, s = 1..t
    std::vector<double> targets;     // 1 / C(d+s-1, s), the Haar moments
};
// Moment saturation test: a t-design matches the unitarily invariant moments
// for every s <= t (t capped at 4).
WelchReport welch_design_check(const ProjectiveDesign& design, int t);

// Residual of the reconstruction identity
//   tau = (d+1) sum_j (d/n) tr(tau rho_j) rho_j - I
// over a basis of unit-trace operators; ~0 iff the design is a 2-design.
double two_design_identity_residual(const ProjectiveDesign& design);

struct CatalogEntry {
    std::string name;
    Povm povm;
    std::optional<ProjectiveDesign> design;  // set when rank-1 equal-trace
    int advertised_t = 0;                    // design strength guaranteed by construction
};

// Exact constructions: disphenoid(alpha), sic-d2, cube, cuboctahedron,
// icosahedron, sic-d3(t), mub(d) for prime d and d = 4, two-distance-d5,
// bipyramid.
CatalogEntry catalog_build(const std::string& name, const std::vector<double>& params = {});
std::vector<std::string> catalog_names();

enum class RangeShape {
    segment,
    elongated_spheroid,
    ball,
    flattened_spheroid,
    disk,
    generic_ellipsoid,
};
const char* to_string(RangeShape shape);

struct RangeShapeReport {
    RangeShape kind = RangeShape::generic_ellipsoid;
    std::array<double, 3> semiaxes{};  // singular values of p_Pi on traceless ops, descending
};
// d = 2 only: the probability range is an ellipsoid; classify it by the
// multiplicities of its semiaxes.
RangeShapeReport range_shape_d2(const Povm& povm, double tol = 1e-9);

struct CubicIdentityReport {
    double general_residual = 0.0;        // class-coefficient form at parameter t
    double direct_residual = 0.0;         // same identity via explicit triple products
    std::optional<double> hesse_residual; // short form, t = 0 only
};
// Third-degree identity satisfied by pure-state distributions of the
// one-parameter SIC family in dimension 3; at t = 0 (Hesse configuration)
// also evaluates the short form  sum p^3 - (1/2) sum_{J0 u J3} ppp = 0.
CubicIdentityReport sic_d3_cubic_identity(double t, const std::vector<double>& p);

}  // namespace qplex::designs
