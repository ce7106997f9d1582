#include "qplex/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qplex::geom {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double dist2(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return s;
}

// centred inner product <p - c, q - c>
double centred(const std::vector<double>& p, const std::vector<double>& q,
               const std::vector<double>& c) {
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) s += (p[k] - c[k]) * (q[k] - c[k]);
    return s;
}

}  // namespace

std::vector<double> AffineSubspace::project(const std::vector<double>& p) const {
    std::vector<double> out = offset;
    for (const auto& u : directions) {
        double t = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k) t += (p[k] - offset[k]) * u[k];
        for (std::size_t k = 0; k < p.size(); ++k) out[k] += t * u[k];
    }
    return out;
}

double AffineSubspace::distance(const std::vector<double>& p) const {
    return std::sqrt(std::max(dist2(p, project(p)), 0.0));
}

bool AffineSubspace::contains(const std::vector<double>& p, double tol) const {
    return distance(p) <= tol;
}

AffineSubspace primal_affine_space(const Povm& povm) {
    const int d = povm.dim();
    const int n = povm.size();
    AffineSubspace space;
    space.ambient_dim = n;
    space.offset = povm_center(povm);

    std::vector<std::vector<double>> images;
    double scale = 0.0;
    for (const auto& b : gell_mann_basis(d)) {
        images.push_back(measurement_map(povm, b));
        scale = std::max(scale, std::sqrt(dot(images.back(), images.back())));
    }
    // modified Gram-Schmidt, two passes for orthogonality at roundoff level
    for (auto& v : images) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : space.directions) {
                const double t = dot(v, u);
                for (std::size_t k = 0; k < v.size(); ++k) v[k] -= t * u[k];
            }
        const double nv = std::sqrt(dot(v, v));
        if (nv <= 1e-10 * scale) continue;
        for (auto& x : v) x /= nv;
        space.directions.push_back(v);
    }
    return space;
}

LinearSystem two_design_linear_system(const designs::ProjectiveDesign& design) {
    const designs::GramData gram = designs::gram_data(design);
    const int n = design.size();
    const double ratio = static_cast<double>(n) / design.dim;
    LinearSystem sys;
    sys.a = RealMatrix(n, n);
    sys.b.assign(n, -1.0);
    for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j)
            sys.a(l, j) = (l == j ? ratio : 0.0) - (design.dim + 1.0) * gram.gram[l][j];
    sys.rank = numerical_rank(sys.a);
    return sys;
}

GeometryReport geometry_report(const Povm& povm, double tol) {
    const MorphophoricityReport morph = morphophoricity_report(povm, tol);
    if (!morph.morphophoric)
        throw std::invalid_argument("geometry_report: POVM is not morphophoric (frame deviation " +
                                    std::to_string(morph.frame_deviation) + ")");
    const int d = povm.dim();
    const int n = povm.size();

    GeometryReport report;
    report.alpha = morph.alpha;
    report.m = std::sqrt(morph.alpha / d);
    report.r = report.m / std::sqrt(d - 1.0);
    report.R = report.m * std::sqrt(d - 1.0);
    report.center = povm_center(povm);

    const AffineSubspace space = primal_affine_space(povm);
    report.linear_system_rank = n - space.dimension();

    const auto traces = povm.traces();
    for (int j = 0; j < n; ++j) {
        ComplexMatrix rho = povm.effect(j);
        rho *= cplx(1.0 / traces[j], 0.0);
        report.basis_distributions.push_back(measurement_map(povm, rho));
    }

    std::vector<double> vertex(n, 0.0);
    for (int k = 0; k < n; ++k) {
        vertex[k] = 1.0;
        report.mediality_distances.push_back(space.distance(vertex));
        vertex[k] = 0.0;
    }

    report.two_design = povm.is_rank_one() && povm.is_equal_trace();
    if (report.two_design) {
        // h(P_A e_k) = f_k with h the (d+1)-fold contraction toward c_n
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
            vertex[k] = 1.0;
            const auto proj = space.project(vertex);
            vertex[k] = 0.0;
            double err2 = 0.0;
            for (int i = 0; i < n; ++i) {
                const double h = report.center[i] + (proj[i] - report.center[i]) / (d + 1.0);
                const double diff = h - report.basis_distributions[k][i];
                err2 += diff * diff;
            }
            worst = std::max(worst, std::sqrt(err2));
        }
        report.homothety_residual = worst;
    }
    return report;
}

namespace {

struct CubicSums {
    double full = 0.0;       // sum_{jkl} p p p tr(rho rho rho) = tr(M^3)
    double distinct = 0.0;   // same sum over pairwise distinct (j,k,l)
    double cubes = 0.0;      // sum p^3
};

CubicSums cubic_sums(const designs::ProjectiveDesign& design, const std::vector<double>& p,
                     const designs::GramData& gram) {
    const int d = design.dim;
    const int n = design.size();
    ComplexMatrix m(d);
    for (int j = 0; j < n; ++j) {
        ComplexMatrix term = design.states[j];
        term *= cplx(p[j], 0.0);
        m += term;
    }
    CubicSums sums;
    sums.full = hs_inner(m * m, m);
    double mixed = 0.0;  // sum_{j != k} p_j^2 p_k tr(rho_j rho_k)
    for (int j = 0; j < n; ++j) {
        double row = 0.0;
        for (int k = 0; k < n; ++k) row += p[k] * gram.gram[j][k];
        mixed += p[j] * p[j] * (row - p[j]);
        sums.cubes += p[j] * p[j] * p[j];
    }
    sums.distinct = sums.full - 3.0 * mixed - sums.cubes;
    return sums;
}

}  // namespace

MembershipResiduals pure_membership_check(const designs::ProjectiveDesign& design,
                                          const std::vector<double>& p, double tol) {
    const int d = design.dim;
    const int n = design.size();
    if (static_cast<int>(p.size()) != n)
        throw std::invalid_argument("pure_membership_check: wrong vector length");
    const designs::GramData gram = designs::gram_data(design);

    MembershipResiduals res;
    for (int l = 0; l < n; ++l) {
        double rhs = -1.0;
        for (int j = 0; j < n; ++j) rhs += (d + 1.0) * p[j] * gram.gram[j][l];
        res.linear_max = std::max(res.linear_max, std::abs(rhs - p[l] * n / d));
    }

    double sq = 0.0;
    for (double x : p) sq += x * x;
    res.quadratic = std::abs(sq - 2.0 * d / (n * (d + 1.0)));

    const CubicSums sums = cubic_sums(design, p, gram);
    res.cubic = std::abs(sums.full - (d + 7.0) / std::pow(d + 1.0, 3));

    // equivalent cubic over pairwise-distinct triples only
    const double lhs = (3.0 * n / (d * (d + 1.0)) - 2.0) * sums.cubes + sums.distinct;
    const double rhs = (n * (d + 7.0) - 6.0 * d * (d + 1.0)) / (n * std::pow(d + 1.0, 3));
    res.cubic_alternative = std::abs(lhs - rhs);

    res.in_pure_range = res.linear_max <= tol && res.quadratic <= tol && res.cubic <= tol;
    return res;
}

LowDimMembership state_membership_low_dim(const designs::ProjectiveDesign& design,
                                          const std::vector<double>& p, double tol) {
    const int d = design.dim;
    if (d != 2 && d != 3)
        throw std::invalid_argument(
            "state_membership_low_dim: only d = 2, 3; use the reconstruction route instead");
    const int n = design.size();
    const designs::GramData gram = designs::gram_data(design);

    LowDimMembership out;
    out.residuals = pure_membership_check(design, p, tol);

    double sq = 0.0;
    for (double x : p) sq += x * x;
    bool ok = out.residuals.linear_max <= tol && sq <= 2.0 * d / (n * (d + 1.0)) + tol;
    if (ok && d == 3) {
        const CubicSums sums = cubic_sums(design, p, gram);
        const double bound =
            9.0 * n / (2.0 * d * (d + 1.0) * (d + 1.0)) * sq + (d - 2.0) / std::pow(d + 1.0, 3);
        ok = sums.full >= bound - tol;
    }
    out.by_inequalities = ok;

    // oracle: invert the map and test positivity
    ComplexMatrix tau(d);
    for (int j = 0; j < n; ++j) {
        ComplexMatrix term = design.states[j];
        term *= cplx((d + 1.0) * p[j], 0.0);
        tau += term;
    }
    tau -= ComplexMatrix::identity(d);
    out.min_eigenvalue = hermitian_eig(tau).values.front();
    out.by_reconstruction = out.residuals.linear_max <= tol && out.min_eigenvalue >= -1e-9;
    return out;
}

ComplexMatrix reconstruct_state(const Povm& povm, const std::vector<double>& p,
                                ReconstructionRoute route, double affine_tol) {
    if (static_cast<int>(p.size()) != povm.size())
        throw std::invalid_argument("reconstruct_state: wrong vector length");
    const AffineSubspace space = primal_affine_space(povm);
    const double residual = space.distance(p);
    if (residual > affine_tol)
        throw std::invalid_argument("reconstruct_state: vector lies off the primal affine space "
                                    "(residual " + std::to_string(residual) + ")");
    const int d = povm.dim();
    if (route == ReconstructionRoute::two_design) {
        if (!(povm.is_rank_one() && povm.is_equal_trace()))
            throw std::invalid_argument(
                "reconstruct_state: the 2-design route needs a rank-1 equal-trace POVM");
        const double w = povm.size() / static_cast<double>(d);  // rho_j = (n/d) Pi_j
        ComplexMatrix tau(d);
        for (int j = 0; j < povm.size(); ++j) {
            ComplexMatrix term = povm.effect(j);
            term *= cplx((d + 1.0) * w * p[j], 0.0);
            tau += term;
        }
        tau -= ComplexMatrix::identity(d);
        return tau;
    }
    const MorphophoricityReport morph = morphophoricity_report(povm);
    if (!morph.morphophoric)
        throw std::invalid_argument("reconstruct_state: POVM is not morphophoric");
    const auto c = povm_center(povm);
    ComplexMatrix tau = ComplexMatrix::identity(d);
    tau *= cplx(1.0 / d, 0.0);
    for (int j = 0; j < povm.size(); ++j) {
        ComplexMatrix term = traceless_project(povm.effect(j));
        term *= cplx((p[j] - c[j]) / morph.alpha, 0.0);
        tau += term;
    }
    return tau;
}

DualityReport duality_checks(const Povm& povm, int samples, std::uint64_t seed) {
    const MorphophoricityReport morph = morphophoricity_report(povm);
    if (!morph.morphophoric)
        throw std::invalid_argument("duality_checks: POVM is not morphophoric");
    const int d = povm.dim();
    const int n = povm.size();
    const double m2 = morph.alpha / d;
    const double R2 = m2 * (d - 1.0);
    const double r = std::sqrt(m2 / (d - 1.0));
    const auto c = povm_center(povm);
    const auto traces = povm.traces();

    std::vector<std::vector<double>> f(n);
    std::vector<ComplexMatrix> rho(n);
    for (int j = 0; j < n; ++j) {
        rho[j] = povm.effect(j);
        rho[j] *= cplx(1.0 / traces[j], 0.0);
        f[j] = measurement_map(povm, rho[j]);
    }

    Rng rng(seed);
    std::vector<std::vector<double>> range_samples;
    range_samples.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        const ComplexMatrix state =
            (i % 2 == 0) ? rng.haar_state(d) : rng.hs_mixed_state(d);
        range_samples.push_back(measurement_map(povm, state));
    }

    DualityReport report;

    // facet margins: p in Delta satisfies <p - c, f_k - c> >= -m^2, equality
    // exactly on the k-th facet {p_k = 0}
    double margin_min = 1e300;
    for (const auto& p : range_samples)
        for (int k = 0; k < n; ++k)
            margin_min = std::min(margin_min, centred(p, f[k], c) + m2);
    for (const auto& fj : f)
        for (int k = 0; k < n; ++k)
            margin_min = std::min(margin_min, centred(fj, f[k], c) + m2);
    report.facet_margin_min = margin_min;

    // equality witnesses: states supported on the kernel of each effect
    double equality_gap = 0.0;
    bool have_witness = false;
    for (int k = 0; k < n; ++k) {
        const EigenSystem es = hermitian_eig(povm.effect(k));
        if (es.values.front() > 1e-9) continue;
        have_witness = true;
        cvec kernel(d);
        for (int i = 0; i < d; ++i) kernel[i] = es.vectors(i, 0);
        const auto witness = measurement_map(povm, projector(kernel));
        equality_gap = std::max(equality_gap, std::abs(centred(witness, f[k], c) + m2));
    }
    report.facet_equality_gap = have_witness ? equality_gap : -1.0;

    // fundamental inequalities on sampled pairs
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < range_samples.size(); ++i)
        for (std::size_t j = i; j < range_samples.size(); ++j) {
            const double v = centred(range_samples[i], range_samples[j], c);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    report.pair_min = lo;
    report.pair_max = hi;
    report.fundamental_ok = lo >= -m2 - 1e-10 && hi <= R2 + 1e-10;

    // self-duality, necessary direction: a point consistent with the range
    // (including the witness aligned with its own reconstruction) must
    // reconstruct to a (near-)state
    const AffineSubspace space = primal_affine_space(povm);
    auto invert = [&](const std::vector<double>& p) {
        ComplexMatrix tau = ComplexMatrix::identity(d);
        tau *= cplx(1.0 / d, 0.0);
        for (int j = 0; j < n; ++j) {
            ComplexMatrix term = traceless_project(povm.effect(j));
            term *= cplx((p[j] - c[j]) / morph.alpha, 0.0);
            tau += term;
        }
        return tau;
    };
    for (int i = 0; i < samples; ++i) {
        const double stretch = 0.5 + 1.2 * rng.uniform();
        std::vector<double> candidate = range_samples[static_cast<std::size_t>(i)];
        for (int k = 0; k < n; ++k) candidate[k] = c[k] + stretch * (candidate[k] - c[k]);
        const ComplexMatrix tau = invert(candidate);
        const EigenSystem es = hermitian_eig(tau);
        cvec bottom(d);
        for (int k = 0; k < d; ++k) bottom[k] = es.vectors(k, 0);
        const auto directed = measurement_map(povm, projector(bottom));
        bool consistent = centred(candidate, directed, c) >= -m2 - 1e-9;
        for (const auto& q : range_samples) {
            if (!consistent) break;
            consistent = centred(candidate, q, c) >= -m2 - 1e-9;
        }
        if (!consistent) continue;
        ++report.self_dual_candidates;
        if (es.values.front() < -1e-6) ++report.self_dual_failures;
    }

    // sandwich D subset Q subset Delta on the available witnesses
    report.vertices_in_range = true;
    for (int j = 0; j < n; ++j)
        if (hermitian_eig(rho[j]).values.front() < -1e-9) report.vertices_in_range = false;
    report.samples_in_primal_polytope = true;
    for (const auto& p : range_samples) {
        for (double x : p)
            if (x < -1e-12) report.samples_in_primal_polytope = false;
        if (space.distance(p) > 1e-8) report.samples_in_primal_polytope = false;
    }

    // touch points of the inscribed ball for rank-1 equal-trace POVMs
    if (povm.is_rank_one() && povm.is_equal_trace()) {
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
            ComplexMatrix comp = ComplexMatrix::identity(d);
            comp -= rho[k];
            comp *= cplx(1.0 / (d - 1.0), 0.0);
            const auto fk_prime = measurement_map(povm, comp);
            worst = std::max(worst, std::abs(std::sqrt(centred(fk_prime, fk_prime, c)) - r));
        }
        report.inner_radius_residual = worst;
    } else {
        report.inner_radius_residual = -1.0;
    }
    return report;
}

}  // namespace qplex::geom
