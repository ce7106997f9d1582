#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "qplex/designs.hpp"
#include "qplex/rng.hpp"

using namespace qplex;
using namespace qplex::designs;

namespace {

// independent moment oracle: brute-force sums over Bloch dot products (d = 2)
double bloch_potential(const ProjectiveDesign& design, int s) {
    const int n = design.size();
    std::vector<std::array<double, 3>> b(n);
    for (int j = 0; j < n; ++j) {
        const auto scaled = bloch_embed(design.states[j]);
        for (int i = 0; i < 3; ++i) b[j][i] = std::sqrt(2.0) * scaled[i];
    }
    double sum = 0.0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const double dot = b[j][0] * b[k][0] + b[j][1] * b[k][1] + b[j][2] * b[k][2];
            sum += std::pow(0.5 * (1.0 + dot), s);
        }
    return sum / (static_cast<double>(n) * n);
}

ProjectiveDesign two_bases_d2(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return ProjectiveDesign::from_vectors(
        2, {{cplx(1, 0), cplx(0, 0)},
            {cplx(0, 0), cplx(1, 0)},
            {cplx(c, 0), cplx(s, 0)},
            {cplx(-s, 0), cplx(c, 0)}});
}

}  // namespace

TEST_CASE("welch moment saturation") {
    const auto sic = catalog_build("sic-d2");
    const auto welch = welch_design_check(*sic.design, 2);
    CHECK(welch.is_design);
    CHECK(welch.potentials[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(welch.potentials[1] == doctest::Approx(bloch_potential(*sic.design, 2)).epsilon(1e-12));

    // the cube is also a 3-design but not a 4-design
    const auto cube = catalog_build("cube");
    CHECK(welch_design_check(*cube.design, 3).is_design);
    CHECK_FALSE(welch_design_check(*cube.design, 4).is_design);
    for (int s = 1; s <= 4; ++s) {
        const auto rep = welch_design_check(*cube.design, s);
        CHECK(rep.potentials[s - 1] ==
              doctest::Approx(bloch_potential(*cube.design, s)).epsilon(1e-12));
    }

    // the icosahedron reaches strength 4
    const auto icosa = catalog_build("icosahedron");
    CHECK(welch_design_check(*icosa.design, 4).is_design);

    const auto skew = catalog_build("disphenoid", {M_PI / 4});
    CHECK_FALSE(welch_design_check(*skew.design, 2).is_design);
    CHECK(welch_design_check(*skew.design, 1).is_design);

    CHECK_THROWS_AS(welch_design_check(*sic.design, 5), std::invalid_argument);
}

TEST_CASE("haar moment constants") {
    // Monte-Carlo oracle for the quadrature targets 1/C(d+s-1, s): by unitary
    // invariance tr(rho sigma) for two Haar states equals |u_1|^2 of one
    Rng rng(31);
    for (int d : {2, 3}) {
        const int trials = 1'000'000;
        std::array<double, 4> sum{}, sumsq{};
        for (int i = 0; i < trials; ++i) {
            const cvec u = rng.haar_vector(d);
            // every coordinate has the same law; the per-vector average is one
            // independent sample with reduced variance
            std::array<double, 4> y{};
            for (int k = 0; k < d; ++k) {
                const double x = std::norm(u[k]);
                double power = 1.0;
                for (int s = 0; s < 4; ++s) {
                    power *= x;
                    y[s] += power / d;
                }
            }
            for (int s = 0; s < 4; ++s) {
                sum[s] += y[s];
                sumsq[s] += y[s] * y[s];
            }
        }
        double target = 1.0;
        for (int s = 1; s <= 4; ++s) {
            target *= static_cast<double>(s) / (d + s - 1);  // 1/C(d+s-1, s)
            const double mean = sum[s - 1] / trials;
            const double sigma = std::sqrt(
                std::max(sumsq[s - 1] / trials - mean * mean, 0.0) / trials);
            // s = 1 is exact under coordinate averaging (sigma = 0)
            CHECK(std::abs(mean - target) < std::max(3.0 * sigma, 1e-9));
        }
    }
}

TEST_CASE("2-design reconstruction identity") {
    const auto mub3 = catalog_build("mub", {3});
    CHECK(two_design_identity_residual(*mub3.design) < 1e-10);

    const auto d5 = catalog_build("two-distance-d5");
    CHECK(two_design_identity_residual(*d5.design) < 1e-10);

    // generic unions of two bases are 1-designs but not 2-designs
    CHECK(two_design_identity_residual(two_bases_d2(0.9)) > 1e-3);
}

TEST_CASE("identity check agrees with moment saturation") {
    for (const char* name : {"sic-d2", "cube", "cuboctahedron", "icosahedron",
                             "two-distance-d5", "sic-d3"}) {
        const auto entry = catalog_build(name, {});
        const bool by_moments = welch_design_check(*entry.design, 2).is_design;
        const bool by_identity = two_design_identity_residual(*entry.design) <= 1e-10;
        CHECK(by_moments == by_identity);
        CHECK(by_moments);
    }
    Rng rng(32);
    for (int trial = 0; trial < 50; ++trial) {
        const ProjectiveDesign design = two_bases_d2(0.05 + 1.4 * rng.uniform());
        const bool by_moments = welch_design_check(design, 2).is_design;
        const bool by_identity = two_design_identity_residual(design) <= 1e-10;
        CHECK(by_moments == by_identity);
        CHECK_FALSE(by_moments);
    }
}

TEST_CASE("catalog constructions") {
    const auto cube = catalog_build("cube");
    REQUIRE(cube.povm.size() == 8);
    for (const auto& rho : cube.design->states) {
        const auto b = bloch_embed(rho);
        const double len = std::sqrt(2.0 * (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]));
        CHECK(len == doctest::Approx(1.0).epsilon(1e-12));  // unit Bloch vectors
    }
    const auto cube_gram = gram_data(*cube.design);
    REQUIRE(cube_gram.offdiag_clusters.size() == 3);
    CHECK(cube_gram.offdiag_clusters[0].first == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cube_gram.offdiag_clusters[0].second == 4);  // antipodal pairs
    CHECK(cube_gram.offdiag_clusters[1].first == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(cube_gram.offdiag_clusters[1].second == 12);
    CHECK(cube_gram.offdiag_clusters[2].first == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(cube_gram.offdiag_clusters[2].second == 12);

    const auto d5 = catalog_build("two-distance-d5");
    REQUIRE(d5.povm.size() == 45);
    const auto d5_gram = gram_data(*d5.design);
    REQUIRE(d5_gram.offdiag_clusters.size() == 2);
    CHECK(d5_gram.offdiag_clusters[0].first == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d5_gram.offdiag_clusters[0].second == 45 * 12 / 2);
    CHECK(d5_gram.offdiag_clusters[1].first == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(d5_gram.offdiag_clusters[1].second == 720);

    // complete MUBs: within-basis overlaps vanish, cross-basis equal 1/d
    const auto mub3 = catalog_build("mub", {3});
    REQUIRE(mub3.povm.size() == 12);
    const auto& g3 = gram_data(*mub3.design).gram;
    for (int j = 0; j < 12; ++j)
        for (int k = 0; k < 12; ++k) {
            if (j == k) continue;
            const double expected = (j / 3 == k / 3) ? 0.0 : 1.0 / 3.0;
            CHECK(g3[j][k] == doctest::Approx(expected).epsilon(1e-12));
        }
    CHECK_NOTHROW(catalog_build("mub", {5}));
    CHECK_NOTHROW(catalog_build("mub", {7}));

    CHECK_THROWS_AS(catalog_build("pentagon"), std::invalid_argument);
    CHECK_THROWS_AS(catalog_build("mub", {6}), std::invalid_argument);
    CHECK_THROWS_AS(catalog_build("disphenoid"), std::invalid_argument);
    CHECK_THROWS_AS(catalog_build("sic-d3", {2.0}), std::invalid_argument);
}

TEST_CASE("cube symmetries fix the gram matrix") {
    const auto cube = catalog_build("cube");
    const auto gram = gram_data(*cube.design).gram;
    const int n = 8;
    std::vector<std::array<double, 3>> b(n);
    for (int j = 0; j < n; ++j) {
        const auto scaled = bloch_embed(cube.design->states[j]);
        for (int i = 0; i < 3; ++i) b[j][i] = std::sqrt(2.0) * scaled[i];
    }

    // octahedral group elements are the signed coordinate permutations
    Rng rng(33);
    for (int sample = 0; sample < 10; ++sample) {
        int perm[3] = {0, 1, 2};
        for (int i = 2; i > 0; --i) std::swap(perm[i], perm[static_cast<int>(rng.uniform() * (i + 1))]);
        double sign[3];
        for (double& s : sign) s = rng.uniform() < 0.5 ? -1.0 : 1.0;

        // induced relabelling of the vertices
        std::vector<int> relabel(n, -1);
        for (int j = 0; j < n; ++j) {
            std::array<double, 3> image;
            for (int i = 0; i < 3; ++i) image[i] = sign[i] * b[j][perm[i]];
            for (int k = 0; k < n; ++k) {
                double dist = 0.0;
                for (int i = 0; i < 3; ++i) dist += std::abs(image[i] - b[k][i]);
                if (dist < 1e-9) relabel[j] = k;
            }
            REQUIRE(relabel[j] >= 0);
        }
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                CHECK(gram[relabel[j]][relabel[k]] == doctest::Approx(gram[j][k]).epsilon(1e-12));
    }
}

TEST_CASE("probability range shapes in d = 2") {
    const double sic_angle = std::asin(1.0 / std::sqrt(3.0));
    auto shape_of = [](double alpha) {
        return range_shape_d2(catalog_build("disphenoid", {alpha}).povm).kind;
    };
    CHECK(shape_of(M_PI / 2) == RangeShape::segment);
    CHECK(shape_of(1.0) == RangeShape::elongated_spheroid);
    CHECK(shape_of(sic_angle) == RangeShape::ball);
    CHECK(shape_of(0.3) == RangeShape::flattened_spheroid);
    CHECK(shape_of(0.0) == RangeShape::disk);

    // every morphophoric qubit POVM maps the Bloch ball to a ball
    CHECK(range_shape_d2(catalog_build("bipyramid").povm).kind == RangeShape::ball);
    CHECK(range_shape_d2(catalog_build("mub", {2}).povm).kind == RangeShape::ball);

    const auto report = range_shape_d2(catalog_build("disphenoid", {sic_angle}).povm);
    for (double s : report.semiaxes)
        CHECK(s == doctest::Approx(std::sqrt(1.0 / 6.0)).epsilon(1e-9));

    CHECK_THROWS_AS(range_shape_d2(catalog_build("mub", {3}).povm), std::invalid_argument);
}

TEST_CASE("third-degree identity of the d = 3 SIC family") {
    Rng rng(34);

    // pure states satisfy both the class form and the Hesse short form at t = 0
    const Povm sic0 = catalog_build("sic-d3", {0.0}).povm;
    double worst_general = 0.0, worst_direct = 0.0, worst_hesse = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = measurement_map(sic0, rng.haar_state(3));
        const auto rep = sic_d3_cubic_identity(0.0, p);
        worst_general = std::max(worst_general, std::abs(rep.general_residual));
        worst_direct = std::max(worst_direct, std::abs(rep.direct_residual));
        REQUIRE(rep.hesse_residual.has_value());
        worst_hesse = std::max(worst_hesse, std::abs(*rep.hesse_residual));
    }
    CHECK(worst_general < 1e-9);
    CHECK(worst_direct < 1e-9);
    CHECK(worst_hesse < 1e-9);

    // the uniform distribution (maximally mixed state) violates the Hesse form;
    // expected value enumerated independently: |J0| = 54, |J3| = 18 ordered
    // triples, so sum p^3 - (|J0|+|J3|)/2 * (1/9)^3 = (9 - 36)/729
    int j0 = 0, j3 = 0;
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b)
            for (int c = 0; c < 9; ++c) {
                if (a == b || b == c || a == c) continue;
                const int ma = a / 3, mb = b / 3, mc = c / 3;
                if (ma != mb && mb != mc && ma != mc) {
                    if ((a + b + c) % 3 == 0) ++j0;
                } else if (ma == mb && mb == mc) {
                    ++j3;
                }
            }
    CHECK(j0 == 54);
    CHECK(j3 == 18);
    const std::vector<double> uniform(9, 1.0 / 9.0);
    const auto mixed_rep = sic_d3_cubic_identity(0.0, uniform);
    const double expected = (9.0 - 0.5 * (j0 + j3)) / 729.0;
    CHECK(*mixed_rep.hesse_residual == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(*mixed_rep.hesse_residual) > 1e-3);

    // generic parameter: both evaluations of the identity agree and vanish on
    // pure states; no Hesse form away from t = 0
    const double t = M_PI / 7;
    const Povm sict = catalog_build("sic-d3", {t}).povm;
    double worst = 0.0, worst_gap = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = measurement_map(sict, rng.haar_state(3));
        const auto rep = sic_d3_cubic_identity(t, p);
        worst = std::max(worst, std::abs(rep.general_residual));
        worst_gap =
            std::max(worst_gap, std::abs(rep.general_residual - rep.direct_residual));
        CHECK_FALSE(rep.hesse_residual.has_value());
    }
    CHECK(worst < 1e-9);
    CHECK(worst_gap < 1e-12);

    CHECK_THROWS_AS(sic_d3_cubic_identity(0.0, std::vector<double>(4, 0.25)),
                    std::invalid_argument);
}

TEST_CASE("every catalog 2-design has alpha = d/(n(d+1))") {
    const std::vector<std::pair<std::string, std::vector<double>>> cases = {
        {"sic-d2", {}},        {"cube", {}},   {"cuboctahedron", {}},
        {"icosahedron", {}},   {"mub", {2}},   {"mub", {3}},
        {"mub", {4}},          {"mub", {5}},   {"sic-d3", {0.0}},
        {"sic-d3", {M_PI / 7}}, {"two-distance-d5", {}}};
    for (const auto& [name, params] : cases) {
        const auto entry = catalog_build(name, params);
        const auto report = morphophoricity_report(entry.povm);
        const int d = entry.povm.dim();
        const int n = entry.povm.size();
        CHECK(report.morphophoric);
        CHECK(report.alpha ==
              doctest::Approx(static_cast<double>(d) / (n * (d + 1.0))).epsilon(1e-12));
    }
}

TEST_CASE("design strength is monotone") {
    for (const char* name : {"sic-d2", "cube", "icosahedron", "two-distance-d5"}) {
        const auto entry = catalog_build(name, {});
        int level = 0;
        for (int t = 1; t <= 4; ++t)
            if (welch_design_check(*entry.design, t).is_design) level = t;
        for (int s = 1; s <= level; ++s) CHECK(welch_design_check(*entry.design, s).is_design);
        CHECK(level >= entry.advertised_t);
    }
}
