#include "qplex/povm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qplex {

std::vector<ValidationIssue> Povm::check(int dim, const std::vector<ComplexMatrix>& effects,
                                         double tol) {
    std::vector<ValidationIssue> issues;
    if (dim <= 0) {
        issues.push_back({"dimension must be positive", static_cast<double>(dim)});
        return issues;
    }
    if (effects.empty()) {
        issues.push_back({"effect list is empty", 0.0});
        return issues;
    }
    for (std::size_t j = 0; j < effects.size(); ++j) {
        const ComplexMatrix& e = effects[j];
        if (e.dim() != dim) {
            issues.push_back({"effect " + std::to_string(j + 1) + " has dimension " +
                                  std::to_string(e.dim()) + ", expected " + std::to_string(dim),
                              0.0});
            return issues;
        }
        const double herm = e.hermiticity_error();
        if (herm > tol) {
            issues.push_back({"effect " + std::to_string(j + 1) + " is not Hermitian", herm});
            continue;
        }
        if (e.frobenius_norm() <= 1e-12) {
            issues.push_back({"effect " + std::to_string(j + 1) + " is zero", e.frobenius_norm()});
            continue;
        }
        const double min_eig = hermitian_eig(e).values.front();
        if (min_eig < -tol)
            issues.push_back(
                {"effect " + std::to_string(j + 1) + " is not positive semidefinite", min_eig});
    }
    ComplexMatrix sum(dim);
    for (const auto& e : effects)
        if (e.dim() == dim) sum += e.hermitized();
    sum -= ComplexMatrix::identity(dim);
    const double sum_err = sum.frobenius_norm();
    if (sum_err > tol) issues.push_back({"effects do not sum to the identity", sum_err});
    return issues;
}

Povm Povm::validate(int dim, std::vector<ComplexMatrix> effects, double tol) {
    const auto issues = check(dim, effects, tol);
    if (!issues.empty()) {
        std::ostringstream msg;
        msg << "invalid POVM:";
        for (const auto& issue : issues)
            msg << "\n  - " << issue.message << " (magnitude " << issue.magnitude << ")";
        throw std::invalid_argument(msg.str());
    }
    for (auto& e : effects) e = e.hermitized();
    return Povm(dim, std::move(effects));
}

std::vector<double> Povm::traces() const {
    std::vector<double> t(effects_.size());
    for (std::size_t j = 0; j < effects_.size(); ++j) t[j] = effects_[j].trace().real();
    return t;
}

bool Povm::is_rank_one(double tol) const {
    for (const auto& e : effects_) {
        const auto eigs = hermitian_eig(e).values;
        // all but the top eigenvalue negligible
        for (std::size_t k = 0; k + 1 < eigs.size(); ++k)
            if (std::abs(eigs[k]) > tol) return false;
    }
    return true;
}

bool Povm::is_equal_trace(double tol) const {
    const auto t = traces();
    for (double x : t)
        if (std::abs(x - t.front()) > tol) return false;
    return true;
}

std::vector<double> measurement_map(const Povm& povm, const ComplexMatrix& a) {
    if (a.dim() != povm.dim()) throw std::invalid_argument("measurement_map: dimension mismatch");
    std::vector<double> p(povm.size());
    for (int j = 0; j < povm.size(); ++j) p[j] = hs_inner(a, povm.effect(j));
    return p;
}

std::vector<double> povm_center(const Povm& povm) {
    std::vector<double> c = povm.traces();
    for (double& x : c) x /= povm.dim();
    return c;
}

bool is_probability_vector(const std::vector<double>& p, double tol) {
    double sum = 0.0;
    for (double x : p) {
        if (x < -1e-12) return false;
        sum += x;
    }
    return std::abs(sum - 1.0) <= tol;
}

namespace {

// Rows are the coordinates of the effects in the orthonormal operator basis
// {I/sqrt(d)} u Gell-Mann; the trailing d^2-1 columns are the traceless part.
RealMatrix effect_coordinates(const Povm& povm) {
    const int d = povm.dim();
    const auto basis = gell_mann_basis(d);
    const int dd = d * d;
    RealMatrix m(povm.size(), dd);
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < povm.size(); ++j) {
        m(j, 0) = povm.effect(j).trace().real() * inv_sqrt_d;
        for (int i = 0; i < dd - 1; ++i) m(j, i + 1) = hs_inner(povm.effect(j), basis[i]);
    }
    return m;
}

}  // namespace

IcReport informational_completeness(const Povm& povm) {
    const int d = povm.dim();
    const RealMatrix coords = effect_coordinates(povm);
    IcReport report;
    report.rank = numerical_rank(coords);
    RealMatrix traceless(povm.size(), d * d - 1);
    for (int j = 0; j < povm.size(); ++j)
        for (int i = 0; i < d * d - 1; ++i) traceless(j, i) = coords(j, i + 1);
    report.traceless_rank = numerical_rank(traceless);
    report.informationally_complete = (report.rank == d * d);
    return report;
}

NormOneReport norm_one_property(const Povm& povm) {
    NormOneReport report;
    report.norm_one = true;
    for (int j = 0; j < povm.size(); ++j) {
        const auto es = hermitian_eig(povm.effect(j));
        const double top = es.values.back();
        report.effect_norms.push_back(std::max(std::abs(es.values.front()), std::abs(top)));
        // <z|Pi_j|z> for the top eigenvector z; this is the best any pure
        // state can do, so the vertex e_j is approached iff top ~ 1
        report.vertex_attainment.push_back(top);
        if (std::abs(top - 1.0) > 1e-10) report.norm_one = false;
    }
    report.fills_simplex = report.norm_one;
    return report;
}

MorphophoricityReport morphophoricity_report(const Povm& povm, double tol) {
    const int d = povm.dim();
    const int dim0 = d * d - 1;
    const auto basis = gell_mann_basis(d);

    // coordinates of pi0(Pi_j) in the Gell-Mann basis
    std::vector<std::vector<double>> y(povm.size());
    for (int j = 0; j < povm.size(); ++j)
        y[j] = coords_in_basis(traceless_project(povm.effect(j)), basis);

    const auto traces = povm.traces();

    RealMatrix frame(dim0, dim0);
    RealMatrix trace_frame(dim0, dim0);
    for (int j = 0; j < povm.size(); ++j) {
        const double w = 1.0 / traces[j];
        for (int a = 0; a < dim0; ++a)
            for (int b = 0; b < dim0; ++b) {
                frame(a, b) += y[j][a] * y[j][b];
                trace_frame(a, b) += w * y[j][a] * y[j][b];
            }
    }

    MorphophoricityReport report;

    const auto eigs = symmetric_eigenvalues(frame);
    double tr = 0.0;
    for (int a = 0; a < dim0; ++a) tr += frame(a, a);
    report.alpha = tr / dim0;
    report.frame_spread = eigs.back() - eigs.front();
    report.frame_deviation =
        std::max(std::abs(eigs.back() - report.alpha), std::abs(eigs.front() - report.alpha));
    report.morphophoric = report.frame_deviation <= tol;

    double sq = 0.0, tr_sq = 0.0, weighted_sq = 0.0;
    for (int j = 0; j < povm.size(); ++j) {
        const double t2 = hs_inner(povm.effect(j), povm.effect(j));
        sq += t2;
        tr_sq += traces[j] * traces[j];
        weighted_sq += t2 / traces[j];
    }
    report.alpha_closed_form = (sq - tr_sq / d) / dim0;

    const auto teigs = symmetric_eigenvalues(trace_frame);
    double ttr = 0.0;
    for (int a = 0; a < dim0; ++a) ttr += trace_frame(a, a);
    report.beta = ttr / dim0;
    report.beta_closed_form = (weighted_sq - 1.0) / dim0;
    report.tight_frame_deviation =
        std::max(std::abs(teigs.back() - report.beta), std::abs(teigs.front() - report.beta));
    report.tight_ic = report.tight_frame_deviation <= tol;

    const IcReport ic = informational_completeness(povm);
    report.informationally_complete = ic.informationally_complete;
    report.rank_of_span = ic.rank;
    return report;
}

Povm mix_with_noise(const Povm& povm, double lambda, const std::vector<double>& q) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw std::invalid_argument("mix_with_noise: lambda must lie in (0, 1]");
    if (static_cast<int>(q.size()) != povm.size() || !is_probability_vector(q))
        throw std::invalid_argument("mix_with_noise: q must be a probability vector of length n");
    std::vector<ComplexMatrix> effects;
    effects.reserve(povm.size());
    for (int j = 0; j < povm.size(); ++j) {
        ComplexMatrix e = povm.effect(j);
        e *= cplx(lambda, 0.0);
        ComplexMatrix noise = ComplexMatrix::identity(povm.dim());
        noise *= cplx((1.0 - lambda) * q[j], 0.0);
        e += noise;
        effects.push_back(e);
    }
    return Povm::validate(povm.dim(), std::move(effects));
}

BoundaryDecomposition boundary_decompose(const Povm& povm) {
    const int n = povm.size();
    std::vector<double> min_eig(n);
    bool any_interior = false;
    for (int j = 0; j < n; ++j) {
        min_eig[j] = std::max(hermitian_eig(povm.effect(j)).values.front(), 0.0);
        if (min_eig[j] > 1e-9) any_interior = true;
    }
    if (!any_interior)
        throw std::invalid_argument("boundary_decompose: POVM is already boundary");
    const double s = std::accumulate(min_eig.begin(), min_eig.end(), 0.0);
    if (s >= 1.0 - 1e-12)
        throw std::invalid_argument(
            "boundary_decompose: degenerate input (effects proportional to the identity)");

    const double lambda = 1.0 - s;
    std::vector<double> q(n);
    for (int j = 0; j < n; ++j) q[j] = min_eig[j] / s;

    std::vector<ComplexMatrix> effects;
    effects.reserve(n);
    for (int j = 0; j < n; ++j) {
        ComplexMatrix e = povm.effect(j);
        ComplexMatrix shift = ComplexMatrix::identity(povm.dim());
        shift *= cplx(min_eig[j], 0.0);
        e -= shift;
        e *= cplx(1.0 / lambda, 0.0);
        effects.push_back(e);
    }
    return {Povm::validate(povm.dim(), std::move(effects)), lambda, std::move(q)};
}

DualBoundaryDecomposition dual_boundary_decompose(const Povm& povm) {
    const int n = povm.size();
    std::vector<double> top(n);
    for (int j = 0; j < n; ++j) top[j] = hermitian_eig(povm.effect(j)).values.back();
    const double s = std::accumulate(top.begin(), top.end(), 0.0);
    if (s <= 1.0 + 1e-10)
        throw std::invalid_argument(
            "dual_boundary_decompose: degenerate input, sum of top eigenvalues is 1");

    const double lambda = 1.0 / s;
    std::vector<double> q(n);
    for (int j = 0; j < n; ++j) q[j] = top[j] / s;

    std::vector<ComplexMatrix> effects;
    effects.reserve(n);
    for (int j = 0; j < n; ++j) {
        ComplexMatrix e = ComplexMatrix::identity(povm.dim());
        e *= cplx(q[j], 0.0);
        ComplexMatrix scaled = povm.effect(j);
        scaled *= cplx(lambda, 0.0);
        e -= scaled;
        e *= cplx(1.0 / (1.0 - lambda), 0.0);
        effects.push_back(e);
    }
    return {Povm::validate(povm.dim(), std::move(effects)), lambda, std::move(q)};
}

Povm weighted_union(const std::vector<std::pair<double, Povm>>& parts) {
    if (parts.empty()) throw std::invalid_argument("weighted_union: no parts");
    const int d = parts.front().second.dim();
    double total = 0.0;
    std::vector<ComplexMatrix> effects;
    for (const auto& [t, povm] : parts) {
        if (t < 0.0) throw std::invalid_argument("weighted_union: negative weight");
        total += t;
        if (t == 0.0) continue;
        for (const auto& e : povm.effects()) {
            ComplexMatrix scaled = e;
            scaled *= cplx(t, 0.0);
            effects.push_back(scaled);
        }
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw std::invalid_argument("weighted_union: weights must sum to 1");
    return Povm::validate(d, std::move(effects));
}

Povm random_povm(Rng& rng, int dim, int n) {
    std::vector<ComplexMatrix> w;
    ComplexMatrix sum(dim);
    for (int j = 0; j < n; ++j) {
        ComplexMatrix g(dim);
        for (int i = 0; i < dim; ++i)
            for (int k = 0; k < dim; ++k) g(i, k) = cplx(rng.gauss(), rng.gauss());
        w.push_back(g * g.adjoint());
        sum += w.back();
    }
    // whiten: S^{-1/2} W_j S^{-1/2} sums to the identity
    const EigenSystem es = hermitian_eig(sum);
    ComplexMatrix inv_sqrt(dim);
    for (int k = 0; k < dim; ++k) {
        const double lam = 1.0 / std::sqrt(es.values[k]);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                inv_sqrt(i, j) += lam * es.vectors(i, k) * std::conj(es.vectors(j, k));
    }
    std::vector<ComplexMatrix> effects;
    effects.reserve(n);
    for (const auto& wj : w) effects.push_back((inv_sqrt * wj * inv_sqrt).hermitized());
    return Povm::validate(dim, std::move(effects));
}

}  // namespace qplex
