#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "orbitdesign/dalg.hpp"
#include "orbitdesign/rng.hpp"

using namespace orbitdesign;
using namespace orbitdesign::dalg;

namespace {

const AlgebraTag R = AlgebraTag::real();
const AlgebraTag C = AlgebraTag::complex();
const AlgebraTag H = AlgebraTag::quaternion();

DScalar quat(double a, double b, double c, double d) {
    return DScalar(H, {a, b, c, d});
}

DScalar cplx(double a, double b) {
    return DScalar(C, {a, b, 0.0, 0.0});
}

DMatrix random_d_matrix(AlgebraTag tag, int rows, int cols, std::uint64_t seed) {
    Rng rng(seed);
    DMatrix m(tag, rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            for (int X = 0; X < tag.dim(); ++X) m.at(r, c).c[X] = rng.normal();
        }
    }
    return m;
}

bool scalar_close(const DScalar& x, const DScalar& y, double tol) {
    return d_sub(x, y).norm() <= tol;
}

}  // namespace

TEST_CASE("quaternion basis products follow the Hamilton convention") {
    const DScalar i = DScalar::basis(H, 1);
    const DScalar j = DScalar::basis(H, 2);
    const DScalar k = DScalar::basis(H, 3);

    CHECK(scalar_close(d_mul(i, j), k, 0.0));
    CHECK(scalar_close(d_mul(j, i), d_neg(k), 0.0));
    CHECK(scalar_close(d_mul(j, k), i, 0.0));
    CHECK(scalar_close(d_mul(k, j), d_neg(i), 0.0));
    CHECK(scalar_close(d_mul(k, i), j, 0.0));
    CHECK(scalar_close(d_mul(i, k), d_neg(j), 0.0));
    CHECK(scalar_close(d_mul(i, i), DScalar::from_real(H, -1.0), 0.0));
    CHECK(scalar_close(d_mul(j, j), DScalar::from_real(H, -1.0), 0.0));
    CHECK(scalar_close(d_mul(k, k), DScalar::from_real(H, -1.0), 0.0));
}

TEST_CASE("complex product and conjugation") {
    const DScalar z = cplx(1.0, 1.0);
    const DScalar w = cplx(1.0, -1.0);
    CHECK(scalar_close(d_mul(z, w), cplx(2.0, 0.0), 0.0));
    CHECK(scalar_close(d_conj(z), w, 0.0));
    CHECK(z.norm_sq() == 2.0);
}

TEST_CASE("multiplication is associative and norms are multiplicative") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        DScalar x(H), y(H), z(H);
        for (int X = 0; X < 4; ++X) {
            x.c[X] = rng.normal();
            y.c[X] = rng.normal();
            z.c[X] = rng.normal();
        }
        CHECK(scalar_close(d_mul(d_mul(x, y), z), d_mul(x, d_mul(y, z)), 1e-12));
        CHECK(std::abs(d_mul(x, y).norm() - x.norm() * y.norm()) < 1e-12);
        CHECK(scalar_close(d_conj(d_mul(x, y)), d_mul(d_conj(y), d_conj(x)), 1e-12));
    }
}

TEST_CASE("partial conjugations act by the expected signs") {
    SUBCASE("tau_1 is the identity") {
        const DScalar q = quat(1.0, 2.0, 3.0, 4.0);
        CHECK(scalar_close(tau(0, q), q, 0.0));
    }
    SUBCASE("complex tau_i is conjugation") {
        CHECK(scalar_close(tau(1, cplx(3.0, 4.0)), cplx(3.0, -4.0), 0.0));
    }
    SUBCASE("quaternion tau_i fixes i and negates j, k") {
        CHECK(scalar_close(tau(1, quat(0, 1, 0, 0)), quat(0, 1, 0, 0), 0.0));
        CHECK(scalar_close(tau(1, quat(0, 0, 1, 0)), quat(0, 0, -1, 0), 0.0));
        CHECK(scalar_close(tau(1, quat(0, 0, 0, 1)), quat(0, 0, 0, -1), 0.0));
    }
    SUBCASE("quaternion tau_Y agrees with the sandwich Y v Y^{-1}") {
        for (int Y = 0; Y < 4; ++Y) {
            const DScalar bY = DScalar::basis(H, Y);
            const DScalar q = quat(0.3, -1.2, 0.7, 2.5);
            // Y^{-1} = conj(Y) for unit basis elements.
            const DScalar sandwich = d_mul(d_mul(bY, q), d_conj(bY));
            CHECK(scalar_close(tau(Y, q), sandwich, 1e-15));
        }
    }
    SUBCASE("each tau_X is an algebra homomorphism") {
        const DScalar x = quat(0.5, -1.0, 2.0, 0.25);
        const DScalar y = quat(-2.0, 0.75, 1.5, -0.5);
        for (int X = 0; X < 4; ++X) {
            CHECK(scalar_close(tau(X, d_mul(x, y)), d_mul(tau(X, x), tau(X, y)), 1e-12));
        }
    }
}

TEST_CASE("tau_sum collapses to dim times the delta at the identity") {
    CHECK(scalar_close(tau_sum(0, R), DScalar::from_real(R, 1.0), 0.0));

    CHECK(scalar_close(tau_sum(0, C), DScalar::from_real(C, 2.0), 0.0));
    CHECK(tau_sum(1, C).norm() == 0.0);

    CHECK(scalar_close(tau_sum(0, H), DScalar::from_real(H, 4.0), 0.0));
    for (int Y = 1; Y < 4; ++Y) {
        CHECK(tau_sum(Y, H).norm() == 0.0);
    }
}

TEST_CASE("component inversion recovers the real coefficients exactly") {
    SUBCASE("complex") {
        const std::vector<DScalar> f = {cplx(3.0, -4.0), cplx(0.5, 2.0)};
        const auto re = component_inversion(f, 0);
        const auto im = component_inversion(f, 1);
        CHECK(re[0] == 3.0);
        CHECK(im[0] == -4.0);
        CHECK(re[1] == 0.5);
        CHECK(im[1] == 2.0);
    }
    SUBCASE("quaternion") {
        const std::vector<DScalar> f = {quat(2.0, -3.0, 0.5, 7.0)};
        CHECK(component_inversion(f, 0)[0] == 2.0);
        CHECK(component_inversion(f, 1)[0] == -3.0);
        CHECK(component_inversion(f, 2)[0] == 0.5);
        CHECK(component_inversion(f, 3)[0] == 7.0);
    }
    SUBCASE("real") {
        const std::vector<DScalar> f = {DScalar::from_real(R, -1.25)};
        CHECK(component_inversion(f, 0)[0] == -1.25);
    }
}

TEST_CASE("quaternion sandwich sum projects onto four times the real part") {
    CHECK(scalar_close(quaternion_sandwich_sum(DScalar::one(H)),
                       DScalar::from_real(H, 4.0), 0.0));
    CHECK(quaternion_sandwich_sum(DScalar::basis(H, 3)).norm() == 0.0);
    CHECK(scalar_close(quaternion_sandwich_sum(quat(2.0, 0.0, 3.0, 0.0)),
                       DScalar::from_real(H, 8.0), 0.0));

    const DScalar q = quat(0.7, -2.0, 1.1, 0.3);
    CHECK(scalar_close(quaternion_sandwich_sum(q),
                       DScalar::from_real(H, 4.0 * q.re()), 1e-14));
}

TEST_CASE("hermitian adjoint and gram behave like a right module inner product") {
    const DMatrix m = random_d_matrix(H, 3, 2, 42);

    const DMatrix adj = hermitian_adjoint(m);
    CHECK(adj.rows == 2);
    CHECK(adj.cols == 3);
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) {
            CHECK(scalar_close(adj.at(c, r), d_conj(m.at(r, c)), 0.0));
        }
    }

    const DMatrix g = gram(m);
    for (int a = 0; a < g.rows; ++a) {
        for (int b = 0; b < g.cols; ++b) {
            CHECK(scalar_close(g.at(a, b), d_conj(g.at(b, a)), 1e-13));
        }
        // Diagonal entries are squared column norms, hence real and positive.
        CHECK(g.at(a, a).c[0] > 0.0);
        CHECK(std::abs(g.at(a, a).c[1]) < 1e-14);
    }
}

TEST_CASE("realification of vectors is an isometric round trip") {
    const DMatrix m = random_d_matrix(C, 4, 1, 7);
    const Eigen::VectorXd v = realify_vector(m);
    CHECK(v.size() == 8);

    double norm_sq = 0.0;
    for (const DScalar& e : m.entries) norm_sq += e.norm_sq();
    CHECK(std::abs(v.squaredNorm() - norm_sq) < 1e-14);

    const DMatrix back = unrealify_vector(C, 4, 1, v);
    for (size_t t = 0; t < m.entries.size(); ++t) {
        CHECK(scalar_close(back.entries[t], m.entries[t], 0.0));
    }
}

TEST_CASE("realified multiplication by i is the standard rotation matrix") {
    DMatrix m(C, 1, 1);
    m.at(0, 0) = DScalar::basis(C, 1);
    const Eigen::MatrixXd rot = realify_operator(m);
    CHECK(rot(0, 0) == 0.0);
    CHECK(rot(0, 1) == -1.0);
    CHECK(rot(1, 0) == 1.0);
    CHECK(rot(1, 1) == 0.0);
}

TEST_CASE("realify_operator is an algebra homomorphism onto real matrices") {
    for (AlgebraTag tag : {R, C, H}) {
        const DMatrix a = random_d_matrix(tag, 3, 2, 5);
        const DMatrix b = random_d_matrix(tag, 2, 4, 6);
        const Eigen::MatrixXd lhs = realify_operator(d_mat_mul(a, b));
        const Eigen::MatrixXd rhs = realify_operator(a) * realify_operator(b);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);

        // Applying the realified operator matches realifying the applied one.
        const DMatrix v = random_d_matrix(tag, 2, 1, 9);
        const Eigen::VectorXd lhs_v = realify_operator(a) * realify_vector(v);
        const Eigen::VectorXd rhs_v = realify_vector(d_mat_mul(a, v));
        CHECK((lhs_v - rhs_v).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("right multiplication realifies with trace n * dim * Re(lambda)") {
    const double s = 1.0 / std::sqrt(2.0);
    const DScalar lambda = quat(s, s, 0.0, 0.0);

    CHECK(std::abs(right_mult_real_trace(lambda, 1) - 4.0 * s) < 1e-15);
    CHECK(std::abs(right_mult_real_trace(lambda, 3) - 12.0 * s) < 1e-14);

    SUBCASE("diagonal blocks all equal Re(lambda) I_n") {
        const int n = 3;
        const Eigen::MatrixXd rm = realify_right_mult(lambda, n);
        for (int X = 0; X < 4; ++X) {
            const Eigen::MatrixXd block = rm.block(X * n, X * n, n, n);
            const Eigen::MatrixXd want = lambda.re() * Eigen::MatrixXd::Identity(n, n);
            CHECK((block - want).cwiseAbs().maxCoeff() < 1e-15);
        }
    }

    SUBCASE("matches entrywise right multiplication") {
        const int n = 2;
        const DMatrix v = random_d_matrix(H, n, 1, 31);
        DMatrix v_lambda(H, n, 1);
        for (int r = 0; r < n; ++r) v_lambda.at(r, 0) = d_mul(v.at(r, 0), lambda);
        const Eigen::VectorXd direct = realify_vector(v_lambda);
        const Eigen::VectorXd via_matrix = realify_right_mult(lambda, n) * realify_vector(v);
        CHECK((direct - via_matrix).cwiseAbs().maxCoeff() < 1e-14);
    }

    SUBCASE("commutes with every realified module map") {
        const DMatrix a = random_d_matrix(H, 3, 3, 12);
        const Eigen::MatrixXd op = realify_operator(a);
        const Eigen::MatrixXd rm = realify_right_mult(lambda, 3);
        CHECK((op * rm - rm * op).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("random_d_unitary columns are D-orthonormal and seed-stable") {
    for (AlgebraTag tag : {R, C, H}) {
        const DMatrix u = random_d_unitary(tag, 4, 2026);
        const DMatrix g = gram(u);
        CHECK(max_deviation_from_scaled_identity(g, 1.0) < 1e-12);

        // U* is a two-sided inverse, so U U* = I as well.
        const DMatrix gg = d_mat_mul(u, hermitian_adjoint(u));
        CHECK(max_deviation_from_scaled_identity(gg, 1.0) < 1e-12);

        const DMatrix u2 = random_d_unitary(tag, 4, 2026);
        for (size_t t = 0; t < u.entries.size(); ++t) {
            CHECK(scalar_close(u.entries[t], u2.entries[t], 0.0));
        }

        const DMatrix u3 = random_d_unitary(tag, 4, 2027);
        double diff = 0.0;
        for (size_t t = 0; t < u.entries.size(); ++t) {
            diff += d_sub(u.entries[t], u3.entries[t]).norm_sq();
        }
        CHECK(diff > 1e-6);
    }
}

TEST_CASE("realified unitary is an orthogonal real matrix") {
    for (AlgebraTag tag : {R, C, H}) {
        const Eigen::MatrixXd q = realify_operator(random_d_unitary(tag, 3, 99));
        const Eigen::MatrixXd should_be_id = q.transpose() * q;
        const int n = static_cast<int>(q.rows());
        CHECK((should_be_id - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("tag mismatches are rejected") {
    CHECK_THROWS_AS(d_mul(DScalar::one(R), DScalar::one(C)), TagMismatch);
    CHECK_THROWS_AS(DScalar::basis(C, 2), TagMismatch);
    CHECK_THROWS_AS(quaternion_sandwich_sum(cplx(1.0, 0.0)), TagMismatch);
    CHECK_THROWS_AS(tau(3, cplx(1.0, 0.0)), TagMismatch);
}
