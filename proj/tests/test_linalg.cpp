#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qplex/linalg.hpp"
#include "qplex/rng.hpp"

using namespace qplex;

namespace {

ComplexMatrix reconstruct(const EigenSystem& es) {
    const int d = es.vectors.dim();
    ComplexMatrix out(d);
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                out(i, j) += es.values[k] * es.vectors(i, k) * std::conj(es.vectors(j, k));
    return out;
}

}  // namespace

TEST_CASE("hilbert-schmidt inner product") {
    CHECK(hs_inner(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == doctest::Approx(2.0));
    CHECK(hs_inner(pauli_z(), pauli_x()) == doctest::Approx(0.0).epsilon(1e-14));

    // (rho | rho) = 1 for a rank-1 projection, evaluated against a direct sum
    Rng rng(11);
    const cvec v = rng.haar_vector(3);
    const ComplexMatrix rho = projector(v);
    double direct = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) direct += (rho(i, k) * rho(k, i)).real();
    CHECK(hs_inner(rho, rho) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(hs_inner(rho, rho) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS(hs_inner(ComplexMatrix::identity(2), ComplexMatrix::identity(3)));
}

TEST_CASE("traceless projection") {
    const ComplexMatrix zero = traceless_project(ComplexMatrix::identity(4));
    CHECK(zero.frobenius_norm() == doctest::Approx(0.0).epsilon(1e-15));

    const ComplexMatrix x = pauli_x();
    CHECK((traceless_project(x) - x).frobenius_norm() == doctest::Approx(0.0).epsilon(1e-15));

    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a = rng.random_hermitian(3);
        const ComplexMatrix once = traceless_project(a);
        const ComplexMatrix twice = traceless_project(once);
        CHECK((once - twice).frobenius_norm() < 1e-12);  // idempotent
        CHECK(std::abs(hs_inner(once, ComplexMatrix::identity(3))) < 1e-12);
    }

    // pure qubit state: squared distance to the centre is tr rho^2 - 1/2
    const ComplexMatrix rho = projector({cplx(1, 0), cplx(0, 0)});
    const double expected = hs_inner(rho, rho) - 0.5;
    const ComplexMatrix p0 = traceless_project(rho);
    CHECK(hs_inner(p0, p0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(hs_inner(p0, p0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("hermitian eigendecomposition") {
    ComplexMatrix diag(3);
    diag(0, 0) = 3.0;
    diag(1, 1) = 1.0;
    diag(2, 2) = 2.0;
    const auto es = hermitian_eig(diag);
    CHECK(es.values[0] == doctest::Approx(1.0));
    CHECK(es.values[1] == doctest::Approx(2.0));
    CHECK(es.values[2] == doctest::Approx(3.0));

    const auto esx = hermitian_eig(pauli_x());
    CHECK(esx.values[0] == doctest::Approx(-1.0));
    CHECK(esx.values[1] == doctest::Approx(1.0));

    Rng rng(13);
    for (int trial = 0; trial < 25; ++trial) {
        const ComplexMatrix a = rng.random_hermitian(4);
        const auto sys = hermitian_eig(a);
        CHECK((reconstruct(sys) - a).frobenius_norm() <= 1e-10 * std::max(1.0, a.frobenius_norm()));
        // residual per eigenpair
        for (int k = 0; k < 4; ++k) {
            cvec v(4);
            for (int i = 0; i < 4; ++i) v[i] = sys.vectors(i, k);
            const cvec av = matvec(a, v);
            double res = 0.0;
            for (int i = 0; i < 4; ++i) res += std::norm(av[i] - sys.values[k] * v[i]);
            CHECK(std::sqrt(res) <= 1e-10 * std::max(1.0, a.frobenius_norm()));
        }
    }
}

TEST_CASE("operator square root") {
    const ComplexMatrix id = ComplexMatrix::identity(3);
    CHECK((operator_sqrt(id) - id).frobenius_norm() < 1e-12);

    const ComplexMatrix rho = projector({cplx(0.6, 0), cplx(0, 0.8)});
    CHECK((operator_sqrt(rho) - rho).frobenius_norm() < 1e-10);  // projections are idempotent

    ComplexMatrix half = ComplexMatrix::identity(2);
    half *= cplx(0.5, 0.0);
    ComplexMatrix expected = ComplexMatrix::identity(2);
    expected *= cplx(1.0 / std::sqrt(2.0), 0.0);
    CHECK((operator_sqrt(half) - expected).frobenius_norm() < 1e-12);

    Rng rng(14);
    for (int trial = 0; trial < 10; ++trial) {
        ComplexMatrix g(4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) g(i, j) = cplx(rng.gauss(), rng.gauss());
        const ComplexMatrix psd = g * g.adjoint();
        const ComplexMatrix root = operator_sqrt(psd);
        CHECK((root * root - psd).frobenius_norm() <= 1e-10 * std::max(1.0, psd.frobenius_norm()));
    }

    ComplexMatrix indefinite(2);
    indefinite(0, 0) = 1.0;
    indefinite(1, 1) = -1.0;
    CHECK_THROWS_AS(operator_sqrt(indefinite), std::invalid_argument);
}

TEST_CASE("gell-mann basis") {
    const auto b2 = gell_mann_basis(2);
    REQUIRE(b2.size() == 3);
    const double s = 1.0 / std::sqrt(2.0);
    // the three elements are the Paulis over sqrt(2), in (x, y, z) order
    CHECK((b2[0] - s * pauli_x()).frobenius_norm() < 1e-14);
    CHECK((b2[1] - s * pauli_y()).frobenius_norm() < 1e-14);
    CHECK((b2[2] - s * pauli_z()).frobenius_norm() < 1e-14);

    const auto b3 = gell_mann_basis(3);
    REQUIRE(b3.size() == 8);
    for (std::size_t i = 0; i < b3.size(); ++i)
        for (std::size_t j = 0; j < b3.size(); ++j)
            CHECK(hs_inner(b3[i], b3[j]) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));

    const auto b5 = gell_mann_basis(5);
    REQUIRE(b5.size() == 24);
    for (const auto& m : b5) CHECK(std::abs(m.trace()) < 1e-14);

    // spanning: random traceless operators reconstruct from coefficients
    Rng rng(15);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix a = traceless_project(rng.random_hermitian(5));
        const auto x = coords_in_basis(a, b5);
        ComplexMatrix back(5);
        for (std::size_t i = 0; i < b5.size(); ++i) {
            ComplexMatrix term = b5[i];
            term *= cplx(x[i], 0.0);
            back += term;
        }
        CHECK((back - a).frobenius_norm() <= 1e-10 * std::max(1.0, a.frobenius_norm()));
    }

    CHECK_THROWS_AS(gell_mann_basis(1), std::invalid_argument);
}

TEST_CASE("bloch coordinates") {
    ComplexMatrix mixed = ComplexMatrix::identity(2);
    mixed *= cplx(0.5, 0.0);
    const auto origin = bloch_embed(mixed);
    CHECK(std::abs(origin[0]) < 1e-15);
    CHECK(std::abs(origin[1]) < 1e-15);
    CHECK(std::abs(origin[2]) < 1e-15);

    const auto up = bloch_embed(projector({cplx(1, 0), cplx(0, 0)}));
    CHECK(up[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(up[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(up[2] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    Rng rng(16);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix rho = trial % 2 ? rng.haar_state(2) : rng.hs_mixed_state(2);
        const ComplexMatrix back = bloch_unembed(bloch_embed(rho));
        worst = std::max(worst, (back - rho).frobenius_norm());
    }
    CHECK(worst < 1e-12);

    CHECK_THROWS_AS(bloch_embed(ComplexMatrix::identity(3)), std::invalid_argument);
}

TEST_CASE("singular values and rank") {
    RealMatrix m(3, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 2.0;
    m(2, 0) = 0.0;
    const auto sv = singular_values(m);
    CHECK(sv[0] == doctest::Approx(2.0));
    CHECK(sv[1] == doctest::Approx(1.0));
    CHECK(numerical_rank(m) == 2);

    // rank-deficient: duplicated column
    RealMatrix r(4, 3);
    Rng rng(17);
    for (int i = 0; i < 4; ++i) {
        r(i, 0) = rng.gauss();
        r(i, 1) = 2.0 * r(i, 0);
        r(i, 2) = rng.gauss();
    }
    CHECK(numerical_rank(r) == 2);

    RealMatrix sym(2, 2);
    sym(0, 0) = 2.0;
    sym(0, 1) = 1.0;
    sym(1, 0) = 1.0;
    sym(1, 1) = 2.0;
    const auto eigs = symmetric_eigenvalues(sym);
    CHECK(eigs[0] == doctest::Approx(1.0));
    CHECK(eigs[1] == doctest::Approx(3.0));
}

TEST_CASE("hermitian ingestion") {
    ComplexMatrix slightly(2);
    slightly(0, 0) = 1.0;
    slightly(0, 1) = cplx(0.5, 1e-13);
    slightly(1, 0) = cplx(0.5, 1e-13);  // anti-Hermitian residue 2e-13
    slightly(1, 1) = 0.0;
    CHECK_NOTHROW(ingest_hermitian(slightly));

    ComplexMatrix broken(2);
    broken(0, 1) = 1.0;
    broken(1, 0) = 0.5;
    CHECK_THROWS_AS(ingest_hermitian(broken), std::invalid_argument);
}
