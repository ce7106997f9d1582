#include "qplex/primal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qplex::primal {

JointDistribution lueders_joint(const Povm& sky, const Povm& ground, const ComplexMatrix& rho) {
    if (sky.dim() != ground.dim() || rho.dim() != sky.dim())
        throw std::invalid_argument("lueders_joint: dimension mismatch");
    const int n = sky.size();
    const int big_n = ground.size();

    JointDistribution out;
    out.joint.assign(n, std::vector<double>(big_n, 0.0));
    out.sky_marginal = measurement_map(sky, rho);
    out.conditional.resize(n);

    for (int j = 0; j < n; ++j) {
        const ComplexMatrix root = operator_sqrt(sky.effect(j));
        const ComplexMatrix post = root * rho * root;  // unnormalised post-state
        for (int k = 0; k < big_n; ++k) out.joint[j][k] = hs_inner(ground.effect(k), post);
        if (out.sky_marginal[j] > 1e-12) {
            std::vector<double> cond(big_n);
            for (int k = 0; k < big_n; ++k) cond[k] = out.joint[j][k] / out.sky_marginal[j];
            out.conditional[j] = std::move(cond);
        }
    }
    return out;
}

std::vector<std::vector<double>> covariance_matrix(const Povm& sky, const Povm& ground) {
    if (sky.dim() != ground.dim())
        throw std::invalid_argument("covariance_matrix: dimension mismatch");
    const int d = sky.dim();
    std::vector<ComplexMatrix> sky0, ground0;
    for (const auto& e : sky.effects()) sky0.push_back(traceless_project(e));
    for (const auto& e : ground.effects()) ground0.push_back(traceless_project(e));
    std::vector<std::vector<double>> c(ground.size(), std::vector<double>(sky.size()));
    for (int k = 0; k < ground.size(); ++k)
        for (int j = 0; j < sky.size(); ++j) c[k][j] = hs_inner(ground0[k], sky0[j]) / d;
    return c;
}

std::vector<std::vector<double>> covariance_from_joint(const Povm& sky, const Povm& ground) {
    const int d = sky.dim();
    ComplexMatrix mixed = ComplexMatrix::identity(d);
    mixed *= cplx(1.0 / d, 0.0);
    const JointDistribution joint = lueders_joint(sky, ground, mixed);
    const std::vector<double> sky_c = measurement_map(sky, mixed);
    const std::vector<double> ground_c = measurement_map(ground, mixed);
    std::vector<std::vector<double>> c(ground.size(), std::vector<double>(sky.size()));
    for (int k = 0; k < ground.size(); ++k)
        for (int j = 0; j < sky.size(); ++j)
            c[k][j] = joint.joint[j][k] - sky_c[j] * ground_c[k];
    return c;
}

std::vector<double> deviation(const Povm& povm, const ComplexMatrix& rho) {
    std::vector<double> delta = measurement_map(povm, rho);
    const std::vector<double> c = povm_center(povm);
    for (std::size_t j = 0; j < delta.size(); ++j) delta[j] -= c[j];
    return delta;
}

double urgleichung_residual(const Povm& sky, const Povm& ground, const ComplexMatrix& rho,
                            double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("urgleichung_residual: alpha must be positive");
    const auto c = covariance_matrix(sky, ground);
    const auto delta_sky = deviation(sky, rho);
    const auto delta_ground = deviation(ground, rho);
    const double scale = sky.dim() / alpha;
    double worst = 0.0;
    for (int k = 0; k < ground.size(); ++k) {
        double predicted = 0.0;
        for (int j = 0; j < sky.size(); ++j) predicted += c[k][j] * delta_sky[j];
        worst = std::max(worst, std::abs(delta_ground[k] - scale * predicted));
    }
    return worst;
}

double rank1_urgleichung_residual(const Povm& sky, const Povm& ground, const ComplexMatrix& rho) {
    if (!(sky.is_rank_one() && sky.is_equal_trace()))
        throw std::invalid_argument(
            "rank1_urgleichung_residual: sky POVM must be rank-1 with equal traces");
    const int d = sky.dim();
    const int n = sky.size();
    ComplexMatrix mixed = ComplexMatrix::identity(d);
    mixed *= cplx(1.0 / d, 0.0);
    // rank-1 post-states do not depend on the input, so the conditionals taken
    // at the maximally mixed state serve every rho
    const JointDistribution base = lueders_joint(sky, ground, mixed);
    const auto p_sky = measurement_map(sky, rho);
    const auto p_ground = measurement_map(ground, rho);
    double worst = 0.0;
    for (int k = 0; k < ground.size(); ++k) {
        double rhs = 0.0;
        for (int j = 0; j < n; ++j) {
            if (!base.conditional[j])
                throw std::logic_error("rank1_urgleichung_residual: undefined conditional");
            rhs += (*base.conditional[j])[k] * ((d + 1.0) * p_sky[j] - static_cast<double>(d) / n);
        }
        worst = std::max(worst, std::abs(p_ground[k] - rhs));
    }
    return worst;
}

UrgleichungFit morphophoricity_from_urgleichung(const Povm& sky, const Povm& ground, int trials,
                                                std::uint64_t seed) {
    const IcReport ic = informational_completeness(ground);
    if (!ic.informationally_complete)
        throw std::invalid_argument(
            "morphophoricity_from_urgleichung: the ground POVM must be informationally complete");
    const int d = sky.dim();
    const auto c = covariance_matrix(sky, ground);

    Rng rng(seed);
    std::vector<std::vector<double>> lhs;  // delta_Xi per sample
    std::vector<std::vector<double>> rhs;  // d C delta_Pi per sample
    for (int t = 0; t < trials; ++t) {
        const ComplexMatrix rho = (t % 2 == 0) ? rng.haar_state(d) : rng.hs_mixed_state(d);
        const auto delta_sky = deviation(sky, rho);
        const auto delta_ground = deviation(ground, rho);
        std::vector<double> pred(ground.size(), 0.0);
        for (int k = 0; k < ground.size(); ++k)
            for (int j = 0; j < sky.size(); ++j) pred[k] += d * c[k][j] * delta_sky[j];
        lhs.push_back(delta_ground);
        rhs.push_back(std::move(pred));
    }

    // least squares for alpha in  alpha * delta_Xi = d C delta_Pi
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < lhs.size(); ++t)
        for (std::size_t k = 0; k < lhs[t].size(); ++k) {
            num += lhs[t][k] * rhs[t][k];
            den += lhs[t][k] * lhs[t][k];
        }
    UrgleichungFit fit;
    fit.alpha_fit = den > 0.0 ? num / den : 0.0;

    double sq = 0.0, tr_sq = 0.0;
    for (const auto& e : sky.effects()) {
        sq += hs_inner(e, e);
        const double t = e.trace().real();
        tr_sq += t * t;
    }
    fit.alpha_formula = (sq - tr_sq / d) / (d * d - 1.0);

    for (std::size_t t = 0; t < lhs.size(); ++t)
        for (std::size_t k = 0; k < lhs[t].size(); ++k)
            fit.worst_residual =
                std::max(fit.worst_residual, std::abs(fit.alpha_fit * lhs[t][k] - rhs[t][k]));
    fit.morphophoric = fit.alpha_fit > 0.0 && fit.worst_residual < 1e-9;
    return fit;
}

}  // namespace qplex::primal
