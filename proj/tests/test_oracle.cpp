#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "tvgl/ggm.hpp"
#include "tvgl/oracle.hpp"
#include "tvgl/sem.hpp"
#include "tvgl/synth.hpp"

using namespace tvgl;
using namespace tvgl::testing;

TEST_CASE("a dominant l1 weight drives the SEM solution to zero") {
    auto rng = make_rng(101);
    Eigen::MatrixXd sigma = random_spd(5, rng);
    const double lambda =
        (0.5 * hollow_dup_t_vec(sigma)).cwiseAbs().maxCoeff() + 0.1;
    SemOracle model(build_operators(5), lambda);
    model.refresh(sigma, sigma);
    OracleResult res = solve_offline(model, {});
    CHECK(res.converged);
    CHECK(res.s_star.norm() == 0.0);
}

TEST_CASE("GGM with identity covariance recovers the identity") {
    GgmOracle model(build_operators(4), 0.5, 2.0);
    model.refresh(Eigen::MatrixXd::Identity(4, 4),
                  Eigen::MatrixXd::Identity(4, 4));
    OracleResult res = solve_offline(model, {});
    CHECK(res.converged);
    CHECK((unvech(4, res.s_star) - Eigen::MatrixXd::Identity(4, 4)).norm() <
          1e-7);
}

TEST_CASE("the fixed-point residual meets the tolerance contract") {
    auto rng = make_rng(102);
    SemOracle model(build_operators(5), 0.1);
    Eigen::MatrixXd sigma = random_spd(5, rng);
    model.refresh(sigma, sigma);
    OracleOptions opts;
    OracleResult res = solve_offline(model, opts);
    CHECK(res.converged);
    CHECK(res.residual <= opts.tol * std::max(1.0, res.s_star.norm()));
}

TEST_CASE("independent starts agree (unique minimizer)") {
    auto rng = make_rng(103);
    OracleOptions opts;
    SemOracle model(build_operators(5), 0.1);
    Eigen::MatrixXd sigma = random_spd(5, rng);
    model.refresh(sigma, sigma);
    OracleResult a = solve_offline(model, opts);
    OracleResult b =
        solve_offline(model, opts, random_vector(hh_dim(5), rng, -2.0, 2.0));
    CHECK(a.converged);
    CHECK(b.converged);
    CHECK((a.s_star - b.s_star).norm() < 10.0 * opts.tol *
                                             std::max(1.0, a.s_star.norm()));
}

TEST_CASE("proximal-gradient iterations never increase the objective") {
    auto rng = make_rng(104);
    SemOracle model(build_operators(5), 0.2);
    Eigen::MatrixXd sigma = random_spd(5, rng);
    model.refresh(sigma, sigma);
    const double rho = 1.0 / model.constants().L_proof;
    Eigen::VectorXd s = random_vector(hh_dim(5), rng);
    double val = model.objective(s) + model.reg_value(s);
    for (int it = 0; it < 200; ++it) {
        s = model.apply_prox(s - rho * model.gradient(s), rho);
        const double next = model.objective(s) + model.reg_value(s);
        CHECK(next <= val + 1e-12);
        val = next;
    }
}

TEST_CASE("non-convergence is reported, not thrown") {
    auto rng = make_rng(105);
    SemOracle model(build_operators(4), 0.1);
    Eigen::MatrixXd sigma = random_spd(4, rng);
    model.refresh(sigma, sigma);
    OracleOptions opts;
    opts.max_iter = 2;
    OracleResult res = solve_offline(model, opts);
    CHECK(!res.converged);
    CHECK(res.iterations == 2);
    CHECK(res.s_star.allFinite());
}

TEST_CASE("a single-signal window matches the rank-one offline solve") {
    auto rng = make_rng(106);
    Eigen::VectorXd x = random_vector(5, rng);
    SemOracle model(build_operators(5), 0.1);
    OracleResult via_batch = solve_batch(model, {x}, {});
    Eigen::MatrixXd rank_one = x * x.transpose();
    SemOracle direct(build_operators(5), 0.1);
    direct.refresh(rank_one, rank_one);
    OracleResult via_offline = solve_offline(direct, {});
    CHECK((via_batch.s_star - via_offline.s_star).norm() < 1e-9);
    CHECK_THROWS_AS(solve_batch(model, {}, {}), std::invalid_argument);
}

TEST_CASE("batch solutions stabilize as the window grows") {
    const int n = 6;
    GraphTrajectory traj(generate_seed_graph(n, 0.4, 9),
                         Schedule::PiecewiseConstant, 10, 10);
    traj.rescale_spectral(0.95);
    auto rng = make_rng(107);
    std::vector<Eigen::VectorXd> window;
    for (int i = 0; i < 800; ++i)
        window.push_back(
            sample_signal(traj.seed_graph(), ModelKind::Sem, 0.5, rng));

    SemOracle model(build_operators(n), 0.1);
    std::vector<Eigen::VectorXd> half(window.begin(),
                                      window.begin() + 400);
    Eigen::VectorXd s_half = solve_batch(model, half, {}).s_star;
    Eigen::VectorXd s_full = solve_batch(model, window, {}).s_star;
    std::vector<Eigen::VectorXd> quarter(window.begin(),
                                         window.begin() + 200);
    Eigen::VectorXd s_quarter = solve_batch(model, quarter, {}).s_star;
    CHECK((s_full - s_half).norm() < (s_full - s_quarter).norm() + 1e-9);
    CHECK((s_full - s_half).norm() < 0.5 * s_full.norm());
}

TEST_CASE("prediction fixed point solves the Taylor problem") {
    auto rng = make_rng(108);
    const int n = 5;
    SemOracle model(build_operators(n), 0.0);
    Eigen::MatrixXd sigma = random_spd(n, rng);
    Eigen::MatrixXd prev = random_spd(n, rng);
    model.refresh(sigma, prev);
    Eigen::VectorXd s_base = random_vector(hh_dim(n), rng);
    OracleResult res = solve_prediction_fixed_point(model, s_base, 1.0, {});
    CHECK(res.converged);
    Eigen::MatrixXd q = Eigen::MatrixXd(model.q());
    Eigen::VectorXd rhs =
        q * s_base - model.gradient(s_base) - model.time_gradient(s_base);
    CHECK((res.s_star - q.ldlt().solve(rhs)).norm() < 1e-7);
}

TEST_CASE("static stream: drift vanishes and the error tends to zero") {
    auto rng = make_rng(109);
    const int n = 5;
    GraphTrajectory traj(generate_seed_graph(n, 0.5, 5),
                         Schedule::PiecewiseConstant, 2, 6);
    traj.rescale_spectral(0.95);
    std::vector<Eigen::VectorXd> signals;
    for (int i = 0; i < 300; ++i)
        signals.push_back(
            sample_signal(traj.seed_graph(), ModelKind::Sem, 0.5, rng));

    SemOracle model(build_operators(n), 0.05);
    CovarianceTracker tracker(
        {signals.begin(), signals.begin() + 10},
        ForgettingPolicy::InfiniteMemory);
    VectorSource source({signals.begin() + 10, signals.end()});
    model.refresh(tracker);
    const double beta = 1.0 / model.constants().L_proof;
    SolverConfig cfg = SolverConfig::for_variant(Variant::PC, beta, beta);
    std::vector<RunRecord> records;
    auto diags = diagnose_online(model, tracker, cfg, source, {}, &records);
    REQUIRE(!diags.empty());

    double late_d = 0.0;
    for (size_t i = diags.size() - 10; i < diags.size(); ++i)
        late_d = std::max(late_d, diags[i].d_t);
    CHECK(late_d < 0.05);  // infinite memory: the optimum barely moves
    CHECK(diags.back().tracking_lhs < diags.front().tracking_lhs);
    for (const auto& d : diags) {
        CHECK(d.q_t > 0.0);
        CHECK(d.q_t < 1.0);  // rho < 2/L by construction
        CHECK(std::isfinite(d.phi_t));
        CHECK(std::isfinite(d.c0_estimate));
    }
}

TEST_CASE("smooth scenario: both bounds hold at every step") {
    const int n = 6;
    GraphTrajectory traj(generate_seed_graph(n, 0.5, 31),
                         Schedule::SmoothDecay, 60, 32);
    traj.rescale_spectral(0.95);
    SyntheticStream stream =
        make_stream(traj, ModelKind::Sem, n, 0.5, 33, nullptr);

    SemOracle model(build_operators(n), 0.05);
    CovarianceTracker tracker(stream.warmup, ForgettingPolicy::Ewma, 0.95);
    model.refresh(tracker);
    const double beta = 0.5 / model.constants().L_proof;
    SolverConfig cfg = SolverConfig::for_variant(Variant::PC, beta, beta);
    VectorSource source(stream.signals);
    auto diags = diagnose_online(model, tracker, cfg, source, {});
    REQUIRE(diags.size() == stream.signals.size());
    for (const auto& d : diags) {
        CHECK(d.oracle_converged);
        CHECK(!d.tracking_violated);
        CHECK(!d.gap_violated);
    }
}
