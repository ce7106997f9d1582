#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qplex/designs.hpp"

namespace qplex::graph {

// Orthogonality graph of a two-distance design: vertices are the states,
// edges join orthogonal pairs; all other overlaps share the single value a.
struct OrthogonalityGraph {
    int n = 0;
    std::vector<std::vector<bool>> adjacency;
    double a = 0.0;

    bool edge(int j, int k) const { return adjacency[j][k]; }
    int degree(int j) const;
};

// Errors unless the off-diagonal overlaps cluster into {0, a}.
OrthogonalityGraph build_orthogonality_graph(const designs::ProjectiveDesign& design,
                                             double tol = 1e-8);

struct SrgParameters {
    int n = 0;
    int kappa = 0;   // regular degree
    int lambda = 0;  // common neighbours of adjacent pairs
    int mu = 0;      // common neighbours of non-adjacent pairs
    int d = 0;
    int r = 0;       // positive adjacency eigenvalue
    int q = 0;       // -q the negative one
    int psi = 0;     // nexus r(q-1)/(r+q)
    int f = 0;       // multiplicity of r, = n - d^2
    int g = 0;       // multiplicity of -q, = d^2 - 1
    double welch_levenshtein_a = 0.0;  // (2n - d(d+1)) / ((n-d)(d+1))
    bool identities_ok = false;
    std::vector<std::string> violations;
};
// Strongly-regular analysis: counts kappa/lambda/mu directly, reads r and q
// off the adjacency spectrum and checks the parameter identities
// d = r+psi+1, n = d(r+2q), kappa = (d-1)q, mu = psi q, lambda = mu+r-q,
// f = n-d^2, g = d^2-1 as exact integers.
SrgParameters srg_analysis(const OrthogonalityGraph& graph, int d);

struct CliqueReport {
    std::vector<std::vector<int>> maximal_cliques;  // sorted vertex lists
    int max_size = 0;
    bool delsarte = false;  // every edge in exactly c maximum cliques, constant nexus
    int c = 0;
    long long expected_count = 0;  // (r + 2q) c q
    bool count_matches = false;
};
// Bron-Kerbosch with pivoting; guarded by a clique-count cap for pathological
// inputs. The Hoffman-Delsarte bound caps clique size at d.
CliqueReport clique_analysis(const OrthogonalityGraph& graph, const SrgParameters& params);

// Expected orthogonality-graph parameters of the known MUB-like 2-designs:
// complete MUBs (any d) and the sporadic designs in d = 4, 5, 6, 28.
struct TableRow {
    int n, kappa, lambda, mu, d, r, q, psi, c;
};
std::optional<TableRow> known_parameters(int n, int d);

struct BasisSumReport {
    bool in_affine = false;                // all basis sums equal d/n
    std::vector<double> basis_sums;        // one per maximal clique
    double max_equality_residual = 0.0;
    bool inequalities_ok = false;          // all clique sums <= d/n
    std::vector<int> violated_cliques;     // inequality violations
    bool linear_system_agrees = false;     // same verdict as the n linear equations
    double linear_residual = 0.0;
    int independent_equations = 0;         // rank of the basis-sum system
};
// Membership of the primal affine space via basis sums: for a Delsarte
// orthogonality graph and p >= 0 summing to 1, the linear-system test, the
// per-basis equalities and the all-clique inequalities agree.
BasisSumReport basis_sum_membership(const OrthogonalityGraph& graph,
                                    const designs::ProjectiveDesign& design,
                                    const CliqueReport& cliques, const std::vector<double>& p,
                                    double tol = 1e-9);

}  // namespace qplex::graph
