#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qplex/linalg.hpp"
#include "qplex/rng.hpp"

namespace qplex {

struct ValidationIssue {
    std::string message;
    double magnitude = 0.0;
};

// A discrete measurement: positive non-zero effects summing to the identity.
class Povm {
public:
    // Throws std::invalid_argument listing every violated invariant.
    static Povm validate(int dim, std::vector<ComplexMatrix> effects, double tol = 1e-10);

    // Non-throwing variant; empty result means the effects form a valid POVM.
    static std::vector<ValidationIssue> check(int dim, const std::vector<ComplexMatrix>& effects,
                                              double tol = 1e-10);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(effects_.size()); }
    const ComplexMatrix& effect(int j) const { return effects_[j]; }
    const std::vector<ComplexMatrix>& effects() const { return effects_; }

    std::vector<double> traces() const;

    bool is_rank_one(double tol = 1e-8) const;
    bool is_equal_trace(double tol = 1e-10) const;

private:
    Povm(int dim, std::vector<ComplexMatrix> effects)
        : dim_(dim), effects_(std::move(effects)) {}

    int dim_ = 0;
    std::vector<ComplexMatrix> effects_;
};

// Born rule: A -> (tr(A Pi_1), ..., tr(A Pi_n)). A probability vector when A is
// a state; defined for every Hermitian A.
std::vector<double> measurement_map(const Povm& povm, const ComplexMatrix& a);

// c_Pi = p_Pi(I/d) = (tr Pi_j / d)_j, the image of the maximally mixed state.
std::vector<double> povm_center(const Povm& povm);

bool is_probability_vector(const std::vector<double>& p, double tol = 1e-10);

struct IcReport {
    bool informationally_complete = false;
    int rank = 0;            // rank of lin{Pi_j} inside Hermitian operators
    int traceless_rank = 0;  // rank of lin{pi0(Pi_j)}; d^2-1 iff IC
};
IcReport informational_completeness(const Povm& povm);

struct NormOneReport {
    bool norm_one = false;
    std::vector<double> effect_norms;       // operator norms
    std::vector<double> vertex_attainment;  // max_z <z|Pi_k|z> per effect
    bool fills_simplex = false;             // probability range equals the whole simplex
};
// The probability range is the full simplex iff every effect has operator
// norm 1; the attainment witness is the top eigenvector of each effect.
NormOneReport norm_one_property(const Povm& povm);

struct MorphophoricityReport {
    bool morphophoric = false;
    double alpha = 0.0;              // squared similarity ratio  = frame bound
    double alpha_closed_form = 0.0;  // (sum tr Pi^2 - (1/d) sum (tr Pi)^2) / (d^2-1)
    double frame_deviation = 0.0;    // || S - alpha I ||, operator norm
    double frame_spread = 0.0;       // lambda_max - lambda_min of S
    bool tight_ic = false;           // tight frame w.r.t. the trace measure
    double beta = 0.0;
    double beta_closed_form = 0.0;   // (sum tr Pi^2 / tr Pi - 1) / (d^2-1)
    double tight_frame_deviation = 0.0;
    bool informationally_complete = false;
    int rank_of_span = 0;
};

// Tight-frame test for pi0(Pi) on traceless Hermitian operators: the frame
// operator S (in Gell-Mann coordinates) must be a multiple of the identity.
// The multiple is the squared similarity ratio between state space and the
// probability range.
MorphophoricityReport morphophoricity_report(const Povm& povm, double tol = 1e-9);

// lambda Pi_j + (1-lambda) q_j I. Morphophoricity is preserved; alpha scales
// by lambda^2.
Povm mix_with_noise(const Povm& povm, double lambda, const std::vector<double>& q);

struct BoundaryDecomposition {
    Povm boundary;               // every effect has a zero eigenvalue
    double lambda = 0.0;         // Pi = lambda E + (1-lambda) q II
    std::vector<double> noise;   // q
};
// Unique decomposition of a non-boundary POVM into a boundary POVM plus
// classical noise. Errors when already boundary or when Pi = (I/n)_j.
BoundaryDecomposition boundary_decompose(const Povm& povm);

struct DualBoundaryDecomposition {
    Povm dual_boundary;          // E~ with lambda Pi + (1-lambda) E~ = q II
    double lambda = 0.0;
    std::vector<double> noise;   // q
};
// Errors in the degenerate case sum_j lambda_{j,d} = 1 (all effects
// proportional to the identity), where the construction gives lambda = 1.
DualBoundaryDecomposition dual_boundary_decompose(const Povm& povm);

// Concatenation (t_1 Pi^1) u ... u (t_m Pi^m); weights must sum to 1.
Povm weighted_union(const std::vector<std::pair<double, Povm>>& parts);

// Test utility, not a structured construction: normalises a tuple of random
// PSD matrices to a POVM via S^{-1/2} W_j S^{-1/2}.
Povm random_povm(Rng& rng, int dim, int n);

}  // namespace qplex
