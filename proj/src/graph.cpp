#include "qplex/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "qplex/geometry.hpp"

namespace qplex::graph {

int OrthogonalityGraph::degree(int j) const {
    int deg = 0;
    for (int k = 0; k < n; ++k)
        if (adjacency[j][k]) ++deg;
    return deg;
}

OrthogonalityGraph build_orthogonality_graph(const designs::ProjectiveDesign& design, double tol) {
    const designs::GramData gram = designs::gram_data(design, tol);

    // require the two-distance pattern {0, a}
    const auto& clusters = gram.offdiag_clusters;
    std::string found = "{";
    for (std::size_t i = 0; i < clusters.size(); ++i)
        found += (i ? ", " : "") + std::to_string(clusters[i].first);
    found += "}";
    if (clusters.size() != 2)
        throw std::invalid_argument("orthogonality graph: design is not MUB-like, overlap values " +
                                    found);
    if (std::abs(clusters.front().first) > tol)
        throw std::invalid_argument(
            "orthogonality graph: design has no orthogonal pairs, overlap values " + found);

    OrthogonalityGraph graph;
    graph.n = design.size();
    graph.a = clusters.back().first;
    graph.adjacency.assign(graph.n, std::vector<bool>(graph.n, false));
    for (int j = 0; j < graph.n; ++j)
        for (int k = 0; k < graph.n; ++k)
            graph.adjacency[j][k] = (j != k) && gram.gram[j][k] < tol;
    return graph;
}

namespace {

// Adjacency eigenvalues. Full spectrum for moderate sizes; for very large
// graphs fall back to the strongly-regular quadratic and verify that
// (A - rI)(A + qI) annihilates vectors orthogonal to the all-ones vector.
struct Spectrum {
    std::vector<std::pair<double, int>> clusters;  // value, multiplicity (full mode)
    double r = 0.0;
    double q = 0.0;
    bool full = false;
    double residual = 0.0;
};

Spectrum adjacency_spectrum(const OrthogonalityGraph& graph, int kappa, int lambda, int mu) {
    Spectrum spectrum;
    const int n = graph.n;
    if (n <= 1500) {
        RealMatrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = graph.adjacency[i][j] ? 1.0 : 0.0;
        const auto eigs = symmetric_eigenvalues(a);
        for (std::size_t i = 0; i < eigs.size();) {
            std::size_t j = i;
            double sum = 0.0;
            while (j < eigs.size() && eigs[j] - eigs[i] <= 1e-6) sum += eigs[j++];
            spectrum.clusters.push_back({sum / (j - i), static_cast<int>(j - i)});
            i = j;
        }
        spectrum.full = true;
        for (const auto& [value, count] : spectrum.clusters)
            spectrum.residual = std::max(spectrum.residual, std::abs(value - std::round(value)));
        return spectrum;
    }
    const double disc = std::sqrt(static_cast<double>(lambda - mu) * (lambda - mu) +
                                  4.0 * (kappa - mu));
    spectrum.r = 0.5 * ((lambda - mu) + disc);
    spectrum.q = -0.5 * ((lambda - mu) - disc);
    // annihilation check on a few pseudo-random vectors orthogonal to 1
    std::vector<double> v(n), av(n), aav(n);
    double worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
        double mean = 0.0;
        for (int i = 0; i < n; ++i) {
            v[i] = std::sin(0.7 * (i + 1) * (trial + 1)) + std::cos(1.3 * i + trial);
            mean += v[i];
        }
        for (int i = 0; i < n; ++i) v[i] -= mean / n;
        auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
            for (int i = 0; i < n; ++i) {
                double s = 0.0;
                for (int j = 0; j < n; ++j)
                    if (graph.adjacency[i][j]) s += x[j];
                y[i] = s;
            }
        };
        apply(v, av);
        apply(av, aav);
        double norm2 = 0.0, res2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double res = aav[i] - (spectrum.r - spectrum.q) * av[i] - (-spectrum.r * spectrum.q) * v[i];
            res2 += res * res;
            norm2 += v[i] * v[i];
        }
        worst = std::max(worst, std::sqrt(res2 / norm2));
    }
    spectrum.residual = worst;
    return spectrum;
}

}  // namespace

SrgParameters srg_analysis(const OrthogonalityGraph& graph, int d) {
    SrgParameters out;
    out.n = graph.n;
    out.d = d;
    auto complain = [&](const std::string& what) { out.violations.push_back(what); };

    out.kappa = graph.degree(0);
    for (int j = 1; j < graph.n; ++j)
        if (graph.degree(j) != out.kappa) {
            complain("graph is not regular");
            break;
        }

    bool lambda_set = false, mu_set = false;
    bool lambda_const = true, mu_const = true;
    for (int j = 0; j < graph.n && (lambda_const && mu_const); ++j)
        for (int k = j + 1; k < graph.n; ++k) {
            int common = 0;
            for (int l = 0; l < graph.n; ++l)
                if (graph.adjacency[j][l] && graph.adjacency[k][l]) ++common;
            if (graph.adjacency[j][k]) {
                if (!lambda_set) {
                    out.lambda = common;
                    lambda_set = true;
                } else if (common != out.lambda) {
                    lambda_const = false;
                    break;
                }
            } else {
                if (!mu_set) {
                    out.mu = common;
                    mu_set = true;
                } else if (common != out.mu) {
                    mu_const = false;
                    break;
                }
            }
        }
    if (!lambda_const) complain("lambda is not constant over adjacent pairs");
    if (!mu_const) complain("mu is not constant over non-adjacent pairs");

    const Spectrum spectrum = adjacency_spectrum(graph, out.kappa, out.lambda, out.mu);
    if (spectrum.full) {
        if (spectrum.residual > 1e-6) complain("adjacency spectrum is not integral");
        // clusters are {(-q, g), (r, f or f+1), (kappa, 1)}; kappa merges with
        // r when the graph is a disjoint union of cliques
        if (spectrum.clusters.size() < 2 || spectrum.clusters.size() > 3) {
            complain("adjacency matrix has " + std::to_string(spectrum.clusters.size()) +
                     " distinct eigenvalues, expected 2 or 3");
        } else {
            out.q = static_cast<int>(std::round(-spectrum.clusters.front().first));
            out.g = spectrum.clusters.front().second;
            if (spectrum.clusters.size() == 3) {
                out.r = static_cast<int>(std::round(spectrum.clusters[1].first));
                out.f = spectrum.clusters[1].second;
                const int top = static_cast<int>(std::round(spectrum.clusters[2].first));
                if (top != out.kappa || spectrum.clusters[2].second != 1)
                    complain("largest eigenvalue does not match the degree");
            } else {
                out.r = static_cast<int>(std::round(spectrum.clusters[1].first));
                out.f = spectrum.clusters[1].second - 1;
                if (out.r != out.kappa) complain("two-eigenvalue spectrum with r != kappa");
            }
        }
    } else {
        if (spectrum.residual > 1e-8) complain("annihilation residual too large");
        out.r = static_cast<int>(std::round(spectrum.r));
        out.q = static_cast<int>(std::round(spectrum.q));
        out.f = graph.n - d * d;
        out.g = d * d - 1;
    }

    if (out.r + out.q > 0) {
        const int num = out.r * (out.q - 1);
        if (num % (out.r + out.q) != 0) complain("psi = r(q-1)/(r+q) is not an integer");
        out.psi = num / (out.r + out.q);
    }

    auto require = [&](bool ok, const std::string& what) {
        if (!ok) complain(what);
    };
    require(out.d == out.r + out.psi + 1, "d != r + psi + 1");
    require(out.n == out.d * (out.r + 2 * out.q), "n != d(r + 2q)");
    require(out.kappa == (out.d - 1) * out.q, "kappa != (d-1) q");
    require(out.mu == out.psi * out.q, "mu != psi q");
    require(out.lambda == out.mu + out.r - out.q, "lambda != mu + r - q");
    require(out.f == out.n - out.d * out.d, "f != n - d^2");
    require(out.g == out.d * out.d - 1, "g != d^2 - 1");

    out.welch_levenshtein_a = (2.0 * out.n - d * (d + 1.0)) / ((out.n - d) * (d + 1.0));
    require(std::abs(graph.a - out.welch_levenshtein_a) <= 1e-9,
            "overlap a does not satisfy the Welch-Levenshtein value");
    require(std::abs(graph.a - 1.0 / (out.r + 1.0)) <= 1e-9, "a != 1/(r+1)");

    out.identities_ok = out.violations.empty();
    return out;
}

namespace {

constexpr long long kCliqueCap = 1'000'000;

void bron_kerbosch(const OrthogonalityGraph& graph, std::vector<int>& r, std::vector<int> p,
                   std::vector<int> x, std::vector<std::vector<int>>& out) {
    if (p.empty() && x.empty()) {
        if (static_cast<long long>(out.size()) >= kCliqueCap)
            throw std::runtime_error("clique enumeration exceeded the cap");
        out.push_back(r);
        return;
    }
    // pivot with the most neighbours in P
    int pivot = -1, best = -1;
    for (const auto& pool : {p, x})
        for (int u : pool) {
            int cnt = 0;
            for (int v : p)
                if (graph.edge(u, v)) ++cnt;
            if (cnt > best) {
                best = cnt;
                pivot = u;
            }
        }
    std::vector<int> candidates;
    for (int v : p)
        if (pivot < 0 || !graph.edge(pivot, v)) candidates.push_back(v);
    for (int v : candidates) {
        std::vector<int> p2, x2;
        for (int w : p)
            if (graph.edge(v, w)) p2.push_back(w);
        for (int w : x)
            if (graph.edge(v, w)) x2.push_back(w);
        r.push_back(v);
        bron_kerbosch(graph, r, std::move(p2), std::move(x2), out);
        r.pop_back();
        p.erase(std::find(p.begin(), p.end(), v));
        x.push_back(v);
    }
}

}  // namespace

CliqueReport clique_analysis(const OrthogonalityGraph& graph, const SrgParameters& params) {
    CliqueReport report;
    std::vector<int> r, p(graph.n), x;
    for (int i = 0; i < graph.n; ++i) p[i] = i;
    bron_kerbosch(graph, r, std::move(p), std::move(x), report.maximal_cliques);
    for (auto& clique : report.maximal_cliques) {
        std::sort(clique.begin(), clique.end());
        report.max_size = std::max(report.max_size, static_cast<int>(clique.size()));
    }
    std::sort(report.maximal_cliques.begin(), report.maximal_cliques.end());

    const int d = params.d;
    if (report.max_size > d) {  // would contradict the Hoffman-Delsarte bound
        report.delsarte = false;
        return report;
    }

    // nexus of every size-d clique must equal psi
    bool nexus_ok = true;
    std::vector<char> in_clique(graph.n, 0);
    for (const auto& clique : report.maximal_cliques) {
        if (static_cast<int>(clique.size()) != d) continue;
        std::fill(in_clique.begin(), in_clique.end(), 0);
        for (int v : clique) in_clique[v] = 1;
        for (int u = 0; u < graph.n && nexus_ok; ++u) {
            if (in_clique[u]) continue;
            int adj = 0;
            for (int v : clique)
                if (graph.edge(u, v)) ++adj;
            if (adj != params.psi) nexus_ok = false;
        }
    }

    // every edge must lie in the same number c >= 1 of size-d cliques
    std::vector<std::vector<int>> edge_count(graph.n, std::vector<int>(graph.n, 0));
    for (const auto& clique : report.maximal_cliques) {
        if (static_cast<int>(clique.size()) != d) continue;
        for (std::size_t i = 0; i < clique.size(); ++i)
            for (std::size_t j = i + 1; j < clique.size(); ++j) {
                ++edge_count[clique[i]][clique[j]];
                ++edge_count[clique[j]][clique[i]];
            }
    }
    int c = -1;
    bool c_const = true;
    for (int i = 0; i < graph.n && c_const; ++i)
        for (int j = i + 1; j < graph.n; ++j)
            if (graph.edge(i, j)) {
                if (c < 0) c = edge_count[i][j];
                if (edge_count[i][j] != c || c == 0) {
                    c_const = false;
                    break;
                }
            }

    report.delsarte = nexus_ok && c_const && c >= 1;
    report.c = report.delsarte ? c : 0;
    if (report.delsarte) {
        report.expected_count = static_cast<long long>(params.r + 2 * params.q) * report.c * params.q;
        report.count_matches =
            report.expected_count == static_cast<long long>(report.maximal_cliques.size());
    }
    return report;
}

std::optional<TableRow> known_parameters(int n, int d) {
    if (n == d * (d + 1)) return TableRow{n, d - 1, d - 2, 0, d, d - 1, 1, 0, 1};
    static const TableRow sporadic[] = {
        {40, 12, 2, 4, 4, 2, 4, 1, 1},
        {45, 12, 3, 3, 5, 3, 3, 1, 1},
        {126, 45, 12, 18, 6, 3, 9, 2, 3},
        {4060, 1755, 730, 780, 28, 15, 65, 12, 45},
    };
    for (const auto& row : sporadic)
        if (row.n == n && row.d == d) return row;
    return std::nullopt;
}

BasisSumReport basis_sum_membership(const OrthogonalityGraph& graph,
                                    const designs::ProjectiveDesign& design,
                                    const CliqueReport& cliques, const std::vector<double>& p,
                                    double tol) {
    if (!cliques.delsarte)
        throw std::invalid_argument(
            "basis_sum_membership: the orthogonality graph is not a Delsarte clique graph, the "
            "basis-sum characterisation is not guaranteed");
    if (static_cast<int>(p.size()) != graph.n)
        throw std::invalid_argument("basis_sum_membership: wrong vector length");
    double sum = 0.0;
    for (double x : p) {
        if (x < -1e-12) throw std::invalid_argument("basis_sum_membership: negative entry");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw std::invalid_argument("basis_sum_membership: entries do not sum to 1");

    const int n = graph.n;
    const int d = design.dim;
    const double target = static_cast<double>(d) / n;

    BasisSumReport report;
    report.inequalities_ok = true;
    for (std::size_t idx = 0; idx < cliques.maximal_cliques.size(); ++idx) {
        double s = 0.0;
        for (int v : cliques.maximal_cliques[idx]) s += p[v];
        report.basis_sums.push_back(s);
        report.max_equality_residual = std::max(report.max_equality_residual, std::abs(s - target));
        if (s > target + tol) {
            report.inequalities_ok = false;
            report.violated_cliques.push_back(static_cast<int>(idx));
        }
    }
    report.in_affine = report.max_equality_residual <= tol;

    const designs::GramData gram = designs::gram_data(design);
    for (int l = 0; l < n; ++l) {
        double rhs = -1.0;
        for (int j = 0; j < n; ++j) rhs += (d + 1.0) * p[j] * gram.gram[j][l];
        report.linear_residual = std::max(report.linear_residual, std::abs(rhs - p[l] * n / d));
    }
    report.linear_system_agrees = report.in_affine == (report.linear_residual <= tol);

    RealMatrix indicators(static_cast<int>(cliques.maximal_cliques.size()), n);
    for (std::size_t idx = 0; idx < cliques.maximal_cliques.size(); ++idx)
        for (int v : cliques.maximal_cliques[idx]) indicators(static_cast<int>(idx), v) = 1.0;
    report.independent_equations = numerical_rank(indicators);
    return report;
}

}  // namespace qplex::graph
