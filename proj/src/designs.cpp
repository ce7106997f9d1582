#include "qplex/designs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qplex::designs {

namespace {

constexpr double kPi = std::numbers::pi;

// unit ket from a unit Bloch vector, rho = (I + b.sigma)/2
cvec ket_from_bloch(double x, double y, double z) {
    cvec v(2);
    if (1.0 + z > 1e-12) {
        v[0] = cplx(1.0 + z, 0.0);
        v[1] = cplx(x, y);
    } else {
        v[0] = cplx(x, -y);
        v[1] = cplx(1.0 - z, 0.0);
    }
    const double n = norm(v);
    for (auto& c : v) c /= n;
    return v;
}

long long binomial(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<cvec> mub2_vectors() {
    const double s = 1.0 / std::sqrt(2.0);
    return {
        {cplx(1, 0), cplx(0, 0)},  {cplx(0, 0), cplx(1, 0)},   // Z basis
        {cplx(s, 0), cplx(s, 0)},  {cplx(s, 0), cplx(-s, 0)},  // X basis
        {cplx(s, 0), cplx(0, s)},  {cplx(s, 0), cplx(0, -s)},  // Y basis
    };
}

// d + 1 bases for odd prime d: the standard basis plus the quadratic
// Gauss-phase bases v_{a,b}[j] = w^{a j^2 + b j} / sqrt(d).
std::vector<cvec> mub_odd_prime_vectors(int d) {
    std::vector<cvec> out;
    for (int l = 0; l < d; ++l) {
        cvec e(d, cplx(0, 0));
        e[l] = 1.0;
        out.push_back(e);
    }
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            cvec v(d);
            for (int j = 0; j < d; ++j) {
                const double phase = 2.0 * kPi * ((a * j * j + b * j) % d) / d;
                v[j] = inv_sqrt_d * cplx(std::cos(phase), std::sin(phase));
            }
            out.push_back(v);
        }
    return out;
}

// Fixed table for d = 4 (complete set of five MUBs from the two-qubit
// stabiliser partition); entries are quarter-turn phases.
std::vector<cvec> mub4_vectors() {
    const cplx one(1, 0), i(0, 1);
    const std::vector<std::vector<cplx>> table = {
        {one, -one, -i, -i},  {one, -one, i, i},   {one, one, i, -i},   {one, one, -i, i},
        {one, -i, -i, -one},  {one, -i, i, one},   {one, i, i, -one},   {one, i, -i, one},
        {one, -i, -one, -i},  {one, -i, one, i},   {one, i, one, -i},   {one, i, -one, i},
    };
    std::vector<cvec> out;
    for (int l = 0; l < 4; ++l) {
        cvec e(4, cplx(0, 0));
        e[l] = 1.0;
        out.push_back(e);
    }
    // Hadamard basis
    for (const auto& row : {std::vector<double>{1, 1, 1, 1},
                            std::vector<double>{1, 1, -1, -1},
                            std::vector<double>{1, -1, -1, 1},
                            std::vector<double>{1, -1, 1, -1}}) {
        cvec v(4);
        for (int k = 0; k < 4; ++k) v[k] = 0.5 * row[k];
        out.push_back(v);
    }
    for (const auto& row : table) {
        cvec v(4);
        for (int k = 0; k < 4; ++k) v[k] = 0.5 * row[k];
        out.push_back(v);
    }
    return out;
}

void verify_mub_overlaps(const std::vector<cvec>& vectors, int d) {
    const int n = static_cast<int>(vectors.size());
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            const double ov = std::norm(inner(vectors[j], vectors[k]));
            const bool same_basis = (j / d) == (k / d);
            const double expected = same_basis ? 0.0 : 1.0 / d;
            if (std::abs(ov - expected) > 1e-10)
                throw std::logic_error("mub construction failed the overlap check at pair (" +
                                       std::to_string(j) + ", " + std::to_string(k) + ")");
        }
}

std::vector<cvec> two_distance_d5_vectors() {
    const cplx eta(std::cos(2.0 * kPi / 3.0), std::sin(2.0 * kPi / 3.0));
    std::vector<cvec> out;
    for (int l = 0; l < 5; ++l) {
        cvec e(5, cplx(0, 0));
        e[l] = 1.0;
        out.push_back(e);
    }
    // (0, 1, +-eta, +-eta, +-1)/2 under all cyclic coordinate shifts
    for (int shift = 0; shift < 5; ++shift)
        for (int s1 : {+1, -1})
            for (int s2 : {+1, -1})
                for (int s3 : {+1, -1}) {
                    const cvec base = {cplx(0, 0), cplx(0.5, 0.0), 0.5 * double(s1) * eta,
                                       0.5 * double(s2) * eta, cplx(0.5 * s3, 0.0)};
                    cvec v(5);
                    for (int k = 0; k < 5; ++k) v[(k + shift) % 5] = base[k];
                    out.push_back(v);
                }
    return out;
}

std::vector<cvec> sic_d3_vectors(double t) {
    const cplx eta(std::cos(2.0 * kPi / 3.0), std::sin(2.0 * kPi / 3.0));
    const cplx phase(std::cos(t), std::sin(t));
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<cvec> out;
    for (int m = 0; m < 3; ++m)
        for (int j = 0; j < 3; ++j) {
            cplx w = -phase;
            for (int p = 0; p < j; ++p) w *= eta;
            // families: (-e^{it} eta^j, 0, 1), (1, -e^{it} eta^j, 0), (0, 1, -e^{it} eta^j)
            cvec v;
            if (m == 0)
                v = {s * w, cplx(0, 0), cplx(s, 0)};
            else if (m == 1)
                v = {cplx(s, 0), s * w, cplx(0, 0)};
            else
                v = {cplx(0, 0), cplx(s, 0), s * w};
            out.push_back(v);
        }
    return out;
}

CatalogEntry entry_from_vectors(const std::string& name, int dim, std::vector<cvec> vectors,
                                int advertised_t) {
    ProjectiveDesign design = ProjectiveDesign::from_vectors(dim, std::move(vectors));
    Povm povm = design_povm(design);
    if (advertised_t >= 2) {
        const WelchReport welch = welch_design_check(design, advertised_t);
        if (!welch.is_design)
            throw std::logic_error("catalog entry '" + name + "' failed its advertised " +
                                   std::to_string(advertised_t) + "-design check");
    }
    return {name, std::move(povm), std::move(design), advertised_t};
}

CatalogEntry build_disphenoid(double alpha) {
    const double sa = std::sin(alpha), ca = std::cos(alpha);
    // Bloch vectors (+-cos a, 0, sin a) and (0, +-cos a, -sin a)
    std::vector<cvec> vectors = {
        ket_from_bloch(ca, 0.0, sa),
        ket_from_bloch(-ca, 0.0, sa),
        ket_from_bloch(0.0, ca, -sa),
        ket_from_bloch(0.0, -ca, -sa),
    };
    return entry_from_vectors("disphenoid", 2, std::move(vectors), 1);
}

CatalogEntry build_sic_d2() {
    const double s = 1.0 / std::sqrt(3.0);
    // tetrahedron: (+-1, +-1, +-1)/sqrt(3) with even sign products
    std::vector<cvec> vectors = {
        ket_from_bloch(s, s, s),
        ket_from_bloch(s, -s, -s),
        ket_from_bloch(-s, s, -s),
        ket_from_bloch(-s, -s, s),
    };
    return entry_from_vectors("sic-d2", 2, std::move(vectors), 2);
}

CatalogEntry build_cube() {
    const double s = 1.0 / std::sqrt(3.0);
    // bottom face 1..4 in sequence, opposite vertex of i is i+4 (mod 8)
    const double verts[8][3] = {
        {+s, +s, -s}, {-s, +s, -s}, {-s, -s, -s}, {+s, -s, -s},
        {-s, -s, +s}, {+s, -s, +s}, {+s, +s, +s}, {-s, +s, +s},
    };
    std::vector<cvec> vectors;
    for (const auto& v : verts) vectors.push_back(ket_from_bloch(v[0], v[1], v[2]));
    return entry_from_vectors("cube", 2, std::move(vectors), 2);
}

CatalogEntry build_vertex12(const std::string& name, double s) {
    const double f = 1.0 / std::sqrt(s * s + 1.0);
    // v1 = (+,+,0), v3 = (+,-,0), v5 = (0,+,+), v7 = (0,+,-), v9 = (+,0,+),
    // v11 = (-,0,+), and v_{2j} = -v_{2j-1}
    const double odd[6][3] = {
        {s * f, f, 0},  {s * f, -f, 0}, {0, s * f, f},
        {0, s * f, -f}, {f, 0, s * f},  {-f, 0, s * f},
    };
    std::vector<cvec> vectors;
    for (const auto& v : odd) {
        vectors.push_back(ket_from_bloch(v[0], v[1], v[2]));
        vectors.push_back(ket_from_bloch(-v[0], -v[1], -v[2]));
    }
    return entry_from_vectors(name, 2, std::move(vectors), 2);
}

CatalogEntry build_mub(int d) {
    std::vector<cvec> vectors;
    if (d == 2) {
        vectors = mub2_vectors();
    } else if (d == 4) {
        vectors = mub4_vectors();
    } else {
        // primality gate; only small prime dimensions are supported
        bool prime = d >= 2;
        for (int k = 2; k * k <= d; ++k)
            if (d % k == 0) prime = false;
        if (!prime)
            throw std::invalid_argument("mub: dimension " + std::to_string(d) +
                                        " not supported (prime or 4 required)");
        vectors = mub_odd_prime_vectors(d);
    }
    verify_mub_overlaps(vectors, d);
    return entry_from_vectors("mub", d, std::move(vectors), 2);
}

CatalogEntry build_bipyramid() {
    const double a = (std::sqrt(3.0) - 1.0) / 4.0;
    const double b = (3.0 - std::sqrt(3.0)) / 6.0;
    const ComplexMatrix x = pauli_x(), y = pauli_y(), z = pauli_z();
    const ComplexMatrix id = ComplexMatrix::identity(2);
    std::vector<ComplexMatrix> effects = {
        a * z + a * id,
        cplx(-a) * z + a * id,
        b * x + b * id,
        cplx(-b / 2) * x + a * y + b * id,
        cplx(-b / 2) * x + cplx(-a) * y + b * id,
    };
    return {"bipyramid", Povm::validate(2, std::move(effects)), std::nullopt, 0};
}

}  // namespace

ProjectiveDesign ProjectiveDesign::from_vectors(int dim, std::vector<cvec> vectors, double tol) {
    if (vectors.empty()) throw std::invalid_argument("ProjectiveDesign: no vectors");
    ProjectiveDesign design;
    design.dim = dim;
    for (auto& v : vectors) {
        if (static_cast<int>(v.size()) != dim)
            throw std::invalid_argument("ProjectiveDesign: vector length mismatch");
        const double n = norm(v);
        if (std::abs(n - 1.0) > 1e-8)
            throw std::invalid_argument("ProjectiveDesign: vector is not unit (norm " +
                                        std::to_string(n) + ")");
        for (auto& c : v) c /= n;
        design.states.push_back(projector(v));
    }
    design.vectors = std::move(vectors);
    // states are projectors by construction; the 1-design (POVM) property is
    // what actually constrains the family
    const int n = design.size();
    std::vector<ComplexMatrix> effects;
    for (const auto& rho : design.states) {
        ComplexMatrix e = rho;
        e *= cplx(static_cast<double>(dim) / n, 0.0);
        effects.push_back(e);
    }
    Povm::validate(dim, std::move(effects), std::max(tol, 1e-10));
    return design;
}

Povm design_povm(const ProjectiveDesign& design) {
    std::vector<ComplexMatrix> effects;
    const double w = static_cast<double>(design.dim) / design.size();
    for (const auto& rho : design.states) {
        ComplexMatrix e = rho;
        e *= cplx(w, 0.0);
        effects.push_back(e);
    }
    return Povm::validate(design.dim, std::move(effects));
}

GramData gram_data(const ProjectiveDesign& design, double cluster_tol) {
    const int n = design.size();
    GramData data;
    data.gram.assign(n, std::vector<double>(n, 0.0));
    std::vector<double> offdiag;
    for (int j = 0; j < n; ++j) {
        data.gram[j][j] = 1.0;
        for (int k = j + 1; k < n; ++k) {
            const double g = std::norm(inner(design.vectors[j], design.vectors[k]));
            data.gram[j][k] = data.gram[k][j] = g;
            offdiag.push_back(g);
        }
    }
    std::sort(offdiag.begin(), offdiag.end());
    for (std::size_t i = 0; i < offdiag.size();) {
        std::size_t j = i;
        double sum = 0.0;
        while (j < offdiag.size() && offdiag[j] - offdiag[i] <= cluster_tol) sum += offdiag[j++];
        data.offdiag_clusters.push_back({sum / (j - i), static_cast<int>(j - i)});
        i = j;
    }
    return data;
}

WelchReport welch_design_check(const ProjectiveDesign& design, int t) {
    if (t < 1 || t > 4) throw std::invalid_argument("welch_design_check: t must be in 1..4");
    const GramData data = gram_data(design);
    const int n = design.size();
    WelchReport report;
    report.is_design = true;
    for (int s = 1; s <= t; ++s) {
        double pot = 0.0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) pot += std::pow(data.gram[j][k], s);
        pot /= static_cast<double>(n) * n;
        const double target = 1.0 / static_cast<double>(binomial(design.dim + s - 1, s));
        report.potentials.push_back(pot);
        report.targets.push_back(target);
        if (std::abs(pot - target) > 1e-10 * target) report.is_design = false;
    }
    return report;
}

double two_design_identity_residual(const ProjectiveDesign& design) {
    const int d = design.dim;
    const int n = design.size();
    const double w = static_cast<double>(d) / n;
    std::vector<ComplexMatrix> probes;
    ComplexMatrix centre = ComplexMatrix::identity(d);
    centre *= cplx(1.0 / d, 0.0);
    probes.push_back(centre);
    for (const auto& b : gell_mann_basis(d)) probes.push_back(b + centre);

    double worst = 0.0;
    for (const auto& tau : probes) {
        ComplexMatrix rhs(d);
        for (const auto& rho : design.states) {
            ComplexMatrix term = rho;
            term *= cplx((d + 1.0) * w * hs_inner(tau, rho), 0.0);
            rhs += term;
        }
        rhs -= ComplexMatrix::identity(d);
        rhs -= tau;
        worst = std::max(worst, rhs.frobenius_norm());
    }
    return worst;
}

CatalogEntry catalog_build(const std::string& name, const std::vector<double>& params) {
    auto need_param = [&](const char* what) -> double {
        if (params.empty())
            throw std::invalid_argument("catalog: '" + name + "' needs a parameter (" + what + ")");
        return params.front();
    };
    if (name == "disphenoid") return build_disphenoid(need_param("alpha in [0, pi/2]"));
    if (name == "sic-d2") return build_sic_d2();
    if (name == "cube") return build_cube();
    if (name == "cuboctahedron") return build_vertex12(name, 1.0);
    if (name == "icosahedron") return build_vertex12(name, (1.0 + std::sqrt(5.0)) / 2.0);
    if (name == "sic-d3") {
        const double t = params.empty() ? 0.0 : params.front();
        if (t < 0.0 || t >= kPi / 3.0)
            throw std::invalid_argument("catalog: sic-d3 parameter t must lie in [0, pi/3)");
        return entry_from_vectors(name, 3, sic_d3_vectors(t), 2);
    }
    if (name == "mub") return build_mub(static_cast<int>(need_param("dimension")));
    if (name == "two-distance-d5")
        return entry_from_vectors(name, 5, two_distance_d5_vectors(), 2);
    if (name == "bipyramid") return build_bipyramid();
    throw std::invalid_argument("catalog: unknown name '" + name + "'");
}

std::vector<std::string> catalog_names() {
    return {"disphenoid", "sic-d2",  "cube",           "cuboctahedron", "icosahedron",
            "sic-d3",     "mub",     "two-distance-d5", "bipyramid"};
}

const char* to_string(RangeShape shape) {
    switch (shape) {
        case RangeShape::segment: return "segment";
        case RangeShape::elongated_spheroid: return "elongated-spheroid";
        case RangeShape::ball: return "ball";
        case RangeShape::flattened_spheroid: return "flattened-spheroid";
        case RangeShape::disk: return "disk";
        case RangeShape::generic_ellipsoid: return "generic-ellipsoid";
    }
    return "?";
}

RangeShapeReport range_shape_d2(const Povm& povm, double tol) {
    if (povm.dim() != 2) throw std::invalid_argument("range_shape_d2: defined for d = 2 only");
    const std::vector<ComplexMatrix> paulis = {pauli_x(), pauli_y(), pauli_z()};
    RealMatrix m(povm.size(), 3);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < povm.size(); ++j)
        for (int i = 0; i < 3; ++i)
            m(j, i) = hs_inner(povm.effect(j), paulis[i]) * inv_sqrt2;
    const auto sv = singular_values(m);

    RangeShapeReport report;
    report.semiaxes = {sv[0], sv[1], sv[2]};
    const auto zero = [&](double x) { return x <= tol; };
    const auto eq = [&](double x, double y) { return std::abs(x - y) <= tol; };
    if (zero(sv[1]))
        report.kind = RangeShape::segment;
    else if (zero(sv[2]) && eq(sv[0], sv[1]))
        report.kind = RangeShape::disk;
    else if (eq(sv[0], sv[2]))
        report.kind = RangeShape::ball;
    else if (eq(sv[1], sv[2]) && sv[0] > sv[1])
        report.kind = RangeShape::elongated_spheroid;
    else if (eq(sv[0], sv[1]) && sv[1] > sv[2] && !zero(sv[2]))
        report.kind = RangeShape::flattened_spheroid;
    else
        report.kind = RangeShape::generic_ellipsoid;
    return report;
}

CubicIdentityReport sic_d3_cubic_identity(double t, const std::vector<double>& p) {
    if (p.size() != 9)
        throw std::invalid_argument("sic_d3_cubic_identity: expected 9 probabilities");
    const std::vector<cvec> vectors = sic_d3_vectors(t);

    // ordered triples of distinct indices alpha = (m, j), classified as:
    //   0,1,2 : all families distinct, sum of j's = k (mod 3)
    //   3     : one family, distinct j's
    //   4     : the rest
    double class_sum[5] = {0, 0, 0, 0, 0};
    double direct = 0.0;
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b) {
            if (b == a) continue;
            for (int c = 0; c < 9; ++c) {
                if (c == a || c == b) continue;
                const double ppp = p[a] * p[b] * p[c];
                const int ma = a / 3, mb = b / 3, mc = c / 3;
                if (ma != mb && mb != mc && ma != mc)
                    class_sum[(a % 3 + b % 3 + c % 3) % 3] += ppp;
                else if (ma == mb && mb == mc)
                    class_sum[3] += ppp;
                else
                    class_sum[4] += ppp;
                direct += ppp * (inner(vectors[a], vectors[b]) * inner(vectors[b], vectors[c]) *
                                 inner(vectors[c], vectors[a]))
                                    .real();
            }
        }
    double cubes = 0.0;
    for (double x : p) cubes += x * x * x;

    const double c3 = std::cos(3.0 * t), s3 = std::sin(3.0 * t);
    const double sqrt3 = std::sqrt(3.0);
    const double lhs = 0.25 * cubes - (c3 / 8.0) * class_sum[0] +
                       ((c3 + sqrt3 * s3) / 16.0) * class_sum[1] +
                       ((c3 - sqrt3 * s3) / 16.0) * class_sum[2] - 0.125 * class_sum[3] +
                       0.0625 * class_sum[4];

    CubicIdentityReport report;
    report.general_residual = lhs - 1.0 / 32.0;
    report.direct_residual = 0.25 * cubes + direct - 1.0 / 32.0;
    if (t == 0.0) report.hesse_residual = cubes - 0.5 * (class_sum[0] + class_sum[3]);
    return report;
}

}  // namespace qplex::designs
