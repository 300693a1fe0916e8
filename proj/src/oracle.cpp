#include "tvgl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tvgl/errors.hpp"

namespace tvgl {

namespace {

double default_rho(const ModelOracle& model, const OracleOptions& opts) {
    if (opts.rho > 0.0) return opts.rho;
    const double l = model.constants().L_proof;
    if (!(l > 0.0) || !std::isfinite(l))
        throw numerical_error("solve_offline: cannot derive a step size (L)");
    return 1.0 / l;
}

}  // namespace

OracleResult solve_offline(const ModelOracle& model, const OracleOptions& opts,
                           const Eigen::VectorXd& start) {
    const double rho = default_rho(model, opts);
    Eigen::VectorXd s = start.size() ? start : model.initial_point();
    Eigen::VectorXd grad = model.gradient(s);

    OracleResult res;
    for (long it = 0; it < opts.max_iter; ++it) {
        double step = rho;
        Eigen::VectorXd cand;
        Eigen::VectorXd grad_next;
        // Backtrack on barrier-domain violations (SBM degrees hitting zero).
        for (int bt = 0;; ++bt) {
            cand = model.apply_prox(s - step * grad, step);
            try {
                grad_next = model.gradient(cand);
                break;
            } catch (const std::domain_error&) {
                if (bt >= 60)
                    throw numerical_error(
                        "solve_offline: cannot stay inside the objective "
                        "domain");
                step *= 0.5;
            }
        }
        res.residual = (cand - s).norm();
        res.iterations = it + 1;
        const bool done = res.residual <= opts.tol * std::max(1.0, s.norm());
        s = std::move(cand);
        grad = std::move(grad_next);
        if (done) {
            res.converged = true;
            break;
        }
    }
    res.s_star = std::move(s);
    return res;
}

OracleResult solve_batch(ModelOracle& model,
                         const std::vector<Eigen::VectorXd>& window,
                         const OracleOptions& opts) {
    if (window.empty())
        throw std::invalid_argument("solve_batch: empty window");
    const int n = model.nodes();
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(n, n);
    for (const auto& x : window) {
        if (x.size() != n)
            throw std::invalid_argument("solve_batch: signal length mismatch");
        sigma += x * x.transpose();
    }
    sigma /= static_cast<double>(window.size());
    model.refresh(sigma, sigma);
    return solve_offline(model, opts);
}

OracleResult solve_prediction_fixed_point(const ModelOracle& model,
                                          const Eigen::VectorXd& s_base,
                                          double h,
                                          const OracleOptions& opts) {
    const double rho = default_rho(model, opts);
    const Eigen::VectorXd grad_base = model.gradient(s_base);
    const Eigen::VectorXd tgrad = model.time_gradient(s_base);
    const auto hess = model.hessian_operator(s_base);

    Eigen::VectorXd s = s_base;
    OracleResult res;
    for (long it = 0; it < opts.max_iter; ++it) {
        Eigen::VectorXd grad = grad_base + hess(s - s_base) + h * tgrad;
        Eigen::VectorXd cand = model.apply_prox(s - rho * grad, rho);
        res.residual = (cand - s).norm();
        res.iterations = it + 1;
        const bool done = res.residual <= opts.tol * std::max(1.0, s.norm());
        s = std::move(cand);
        if (done) {
            res.converged = true;
            break;
        }
    }
    res.s_star = std::move(s);
    return res;
}

std::vector<BoundDiagnostics> diagnose_online(
    ModelOracle& model, CovarianceTracker& tracker, const SolverConfig& cfg,
    SignalSource& stream, const OracleOptions& opts,
    std::vector<RunRecord>* records_out) {
    model.refresh(tracker);
    SolverState state;
    state.s_hat = model.initial_point();
    state.s_pred = state.s_hat;

    OracleResult star = solve_offline(model, opts);
    double c0 = 0.0;
    std::vector<BoundDiagnostics> out;

    while (auto x = stream.next()) {
        const Eigen::VectorXd s_hat_prev = state.s_hat;
        const double err_prev = (s_hat_prev - star.s_star).norm();
        ModelConstants consts_t = model.constants();

        OracleOptions pred_opts = opts;
        pred_opts.rho = cfg.beta;  // bound derivation assumes rho = alpha = beta
        OracleResult pred_star =
            solve_prediction_fixed_point(model, state.s_hat, cfg.h, pred_opts);

        RunRecord rec = step(model, tracker, state, cfg, *x);

        OracleResult star_next = solve_offline(model, opts, star.s_star);
        ModelConstants consts_next = model.constants();

        BoundDiagnostics d;
        d.t = rec.t;
        d.oracle_converged = star_next.converged && pred_star.converged;
        // Uniform-over-the-step constants: smallest m, largest L seen.
        const double m = std::min(consts_t.m_proof, consts_next.m_proof);
        const double L = std::max(consts_t.L_proof, consts_next.L_proof);
        d.q_t = std::max(std::abs(1.0 - cfg.beta * m),
                         std::abs(1.0 - cfg.beta * L));
        d.d_t = (star_next.s_star - star.s_star).norm();
        d.phi_t = (pred_star.s_star - star_next.s_star).norm();
        c0 = std::max(c0, rec.tgrad_norm);
        d.c0_estimate = c0;

        const double qp = std::pow(d.q_t, cfg.p_steps);
        const double qc = std::pow(d.q_t, cfg.c_steps);
        d.tracking_lhs = (state.s_hat - star_next.s_star).norm();
        d.tracking_rhs =
            qc * (qp * err_prev + qp * d.d_t + (1.0 + qp) * d.phi_t);
        d.gap_lhs = d.phi_t;
        d.gap_rhs = (2.0 * L / m) * err_prev +
                    (2.0 * c0 * cfg.h / m) * (1.0 + L / m);
        const double slack = 1e-9 * std::max(1.0, d.tracking_rhs);
        d.tracking_violated =
            d.oracle_converged && d.tracking_lhs > d.tracking_rhs + slack;
        d.gap_violated = d.oracle_converged &&
                         d.gap_lhs > d.gap_rhs + 1e-9 * std::max(1.0, d.gap_rhs);

        if (star_next.s_star.squaredNorm() > 0.0)
            rec.nse = nse(state.s_hat, star_next.s_star);
        if (records_out) records_out->push_back(rec);
        out.push_back(d);
        star = std::move(star_next);
    }
    return out;
}

}  // namespace tvgl
