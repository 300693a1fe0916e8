#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>

#include "helpers.hpp"
#include "tvgl/vectorization.hpp"

using namespace tvgl;
using namespace tvgl::testing;

TEST_CASE("vech on a 2x2 matrix") {
    Eigen::MatrixXd s(2, 2);
    s << 1, 2, 2, 3;
    HalfVec v = vech(s);
    REQUIRE(v.n == 2);
    REQUIRE(v.values.size() == 3);
    CHECK(v.values[0] == 1.0);
    CHECK(v.values[1] == 2.0);
    CHECK(v.values[2] == 3.0);
}

TEST_CASE("vech of the 3x3 identity") {
    HalfVec v = vech(Eigen::MatrixXd::Identity(3, 3));
    Eigen::VectorXd want(6);
    want << 1, 0, 0, 1, 0, 1;
    CHECK((v.values - want).norm() == 0.0);
}

TEST_CASE("vech rejects asymmetric input and names the entry") {
    Eigen::MatrixXd s(2, 2);
    s << 1, 2, 5, 3;
    CHECK_THROWS_WITH_AS(vech(s), doctest::Contains("(1,0)"),
                         std::invalid_argument);
}

TEST_CASE("D * vech(S) reconstructs vec(S), N=5") {
    auto rng = make_rng(11);
    auto ops = build_operators(5);
    Eigen::MatrixXd s = random_symmetric(5, rng);
    Eigen::VectorXd vec_s = Eigen::Map<Eigen::VectorXd>(s.data(), 25);
    Eigen::VectorXd rebuilt = ops->dup * vech(s).values;
    CHECK((rebuilt - vec_s).norm() < 1e-14);
}

TEST_CASE("vechh on the symbolic 3x3 pattern") {
    Eigen::MatrixXd s(3, 3);
    const double a = 0.3, b = -1.2, c = 2.5;
    s << 0, a, b, a, 0, c, b, c, 0;
    HollowHalfVec v = vechh(s);
    REQUIRE(v.values.size() == 3);
    CHECK(v.values[0] == a);
    CHECK(v.values[1] == b);
    CHECK(v.values[2] == c);
}

TEST_CASE("vechh of the zero matrix, N=4") {
    HollowHalfVec v = vechh(Eigen::MatrixXd::Zero(4, 4));
    REQUIRE(v.values.size() == 6);
    CHECK(v.values.norm() == 0.0);
}

TEST_CASE("vechh rejects a nonzero diagonal") {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(3, 3);
    s(1, 1) = 0.5;
    CHECK_THROWS_AS(vechh(s), std::invalid_argument);
}

TEST_CASE("D_h * vechh(S) reconstructs vec(S), N=6") {
    auto rng = make_rng(12);
    auto ops = build_operators(6);
    Eigen::MatrixXd s = random_hollow_symmetric(6, rng);
    Eigen::VectorXd vec_s = Eigen::Map<Eigen::VectorXd>(s.data(), 36);
    Eigen::VectorXd rebuilt = ops->hollow_dup * vechh(s).values;
    CHECK((rebuilt - vec_s).norm() < 1e-14);
}

TEST_CASE("build_operators rejects n < 2") {
    CHECK_THROWS_AS(build_operators(1), std::domain_error);
}

TEST_CASE("n=2 hollow duplication selects vec positions (2,1) and (1,2)") {
    auto ops = build_operators(2);
    Eigen::MatrixXd dh = Eigen::MatrixXd(ops->hollow_dup);
    REQUIRE(dh.rows() == 4);
    REQUIRE(dh.cols() == 1);
    Eigen::VectorXd want(4);
    want << 0, 1, 1, 0;  // column-major vec: (1,1),(2,1),(1,2),(2,2)
    CHECK((dh.col(0) - want).norm() == 0.0);
}

TEST_CASE("n=3 degree operator") {
    auto ops = build_operators(3);
    Eigen::VectorXd s(3);
    s << 0.7, -0.2, 1.5;  // [s21, s31, s32]
    Eigen::VectorXd d = ops->degree_op * s;
    CHECK(d[0] == doctest::Approx(0.7 + -0.2).epsilon(1e-15));
    CHECK(d[1] == doctest::Approx(0.7 + 1.5).epsilon(1e-15));
    CHECK(d[2] == doctest::Approx(-0.2 + 1.5).epsilon(1e-15));
}

TEST_CASE("K * vechh(S) equals S * 1 on random hollow S") {
    auto rng = make_rng(13);
    for (int n : {2, 4, 7}) {
        auto ops = build_operators(n);
        Eigen::MatrixXd s = random_hollow_symmetric(n, rng);
        Eigen::VectorXd via_k = ops->degree_op * vechh(s).values;
        Eigen::VectorXd direct = s.rowwise().sum();
        CHECK((via_k - direct).norm() < 1e-13);
    }
}

TEST_CASE("largest singular value of D is sqrt(2), n=5") {
    auto ops = build_operators(5);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd{Eigen::MatrixXd(ops->dup)};
    CHECK(svd.singularValues()[0] ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    Eigen::JacobiSVD<Eigen::MatrixXd> svdh{Eigen::MatrixXd(ops->hollow_dup)};
    CHECK(svdh.singularValues()[0] ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("elimination is a left inverse of duplication") {
    for (int n : {2, 3, 6}) {
        auto ops = build_operators(n);
        Eigen::MatrixXd ed = Eigen::MatrixXd(ops->elim) * ops->dup;
        CHECK((ed - Eigen::MatrixXd::Identity(h_dim(n), h_dim(n))).norm() ==
              0.0);
        Eigen::MatrixXd ehdh =
            Eigen::MatrixXd(ops->hollow_elim) * ops->hollow_dup;
        CHECK((ehdh - Eigen::MatrixXd::Identity(hh_dim(n), hh_dim(n)))
                  .norm() == 0.0);
    }
}

TEST_CASE("trace identity tr(S Sigma) = 2 <vechh S, vechh Sigma>") {
    auto rng = make_rng(14);
    for (int rep = 0; rep < 10; ++rep) {
        Eigen::MatrixXd s = random_hollow_symmetric(6, rng);
        Eigen::MatrixXd sig = random_symmetric(6, rng);
        Eigen::MatrixXd sig_h = sig;
        sig_h.diagonal().setZero();
        const double lhs = (s * sig).trace();
        const double rhs = 2.0 * vechh(s).values.dot(vechh(sig_h).values);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("round trips") {
    auto rng = make_rng(15);
    Eigen::MatrixXd s = random_symmetric(5, rng);
    CHECK((unvech(vech(s)) - s).norm() < 1e-15);
    Eigen::MatrixXd sh = random_hollow_symmetric(5, rng);
    CHECK((unvechh(vechh(sh)) - sh).norm() < 1e-15);
}

TEST_CASE("dup_t_vec matches the materialized operator") {
    auto rng = make_rng(16);
    auto ops = build_operators(6);
    Eigen::MatrixXd m = random_symmetric(6, rng);
    Eigen::VectorXd vec_m = Eigen::Map<Eigen::VectorXd>(m.data(), 36);
    CHECK((dup_t_vec(m) - ops->dup.transpose() * vec_m).norm() < 1e-14);
    Eigen::MatrixXd mh = random_symmetric(6, rng);
    CHECK((hollow_dup_t_vec(mh) - ops->hollow_dup.transpose() * vec_m)
              .norm() != 0.0);  // different matrices differ
    CHECK((hollow_dup_t_vec(m) - ops->hollow_dup.transpose() * vec_m).norm() <
          1e-14);
}

TEST_CASE("index helpers agree with the materialized ordering") {
    const int n = 5;
    auto rng = make_rng(17);
    Eigen::MatrixXd s = random_symmetric(n, rng);
    HalfVec v = vech(s);
    for (int j = 0; j < n; ++j)
        for (int i = j; i < n; ++i)
            CHECK(v.values[h_index(n, i, j)] == s(i, j));
    Eigen::MatrixXd sh = random_hollow_symmetric(n, rng);
    HollowHalfVec vh = vechh(sh);
    for (int j = 0; j < n; ++j)
        for (int i = j + 1; i < n; ++i)
            CHECK(vh.values[hh_index(n, i, j)] == sh(i, j));
}
