#ifndef TVGL_ORACLE_HPP
#define TVGL_ORACLE_HPP

#include <vector>

#include "tvgl/model.hpp"
#include "tvgl/solver.hpp"

namespace tvgl {

/// Result of an offline fixed-point solve.
struct OracleResult {
    Eigen::VectorXd s_star;
    double residual = 0.0;  // ||s - T s|| at exit
    long iterations = 0;
    bool converged = false;
};

struct OracleOptions {
    double tol = 1e-9;
    long max_iter = 1'000'000;
    /// Step size rho; <= 0 selects 1 / L_proof from the model constants.
    double rho = 0.0;
};

/// Iterates the proximal-gradient fixed-point map s -> prox(s - rho grad(s))
/// on the model's current cached statistics, from `start` (model default when
/// empty), until ||s' - s|| <= tol * max(1, ||s||). Non-convergence is
/// reported, not thrown: the last iterate and residual are returned.
OracleResult solve_offline(const ModelOracle& model, const OracleOptions& opts,
                           const Eigen::VectorXd& start = Eigen::VectorXd());

/// Batch solution over a stationary window: builds the window's sample
/// second-moment matrix, refreshes the model on it, then solve_offline.
OracleResult solve_batch(ModelOracle& model,
                         const std::vector<Eigen::VectorXd>& window,
                         const OracleOptions& opts);

/// Fixed point of the Taylor prediction problem built at (s_base, time t),
/// solved to tolerance; used to measure the prediction gap.
OracleResult solve_prediction_fixed_point(const ModelOracle& model,
                                          const Eigen::VectorXd& s_base,
                                          double h, const OracleOptions& opts);

/// Per-step tracking-bound diagnostics.
struct BoundDiagnostics {
    long t = 0;
    double q_t = 0.0;        // contraction coefficient from (m, L)
    double d_t = 0.0;        // optimal-trajectory drift ||s*_{t+1} - s*_t||
    double phi_t = 0.0;      // prediction gap ||s*_{t+1|t} - s*_{t+1}||
    double c0_estimate = 0.0;  // running max of ||time gradient||
    double tracking_lhs = 0.0;  // ||s_hat_{t+1} - s*_{t+1}||
    double tracking_rhs = 0.0;  // q^C (q^P err_t + q^P d_t + (1+q^P) phi_t)
    double gap_lhs = 0.0;       // phi_t
    double gap_rhs = 0.0;       // (2L/m) err_t + (2 C0 h / m)(1 + L/m)
    bool tracking_violated = false;
    bool gap_violated = false;
    bool oracle_converged = true;
};

/// Streams signals through the solver while solving the offline problem and
/// the prediction fixed point at every step (warm-started), then evaluates
/// both error bounds with the measured drift and prediction gap. Constants
/// (m, L) are the proof variants, re-evaluated on the running statistics.
/// Steps whose oracle solve fails to converge are flagged and skipped from
/// violation counting.
std::vector<BoundDiagnostics> diagnose_online(
    ModelOracle& model, CovarianceTracker& tracker, const SolverConfig& cfg,
    SignalSource& stream, const OracleOptions& opts,
    std::vector<RunRecord>* records_out = nullptr);

}  // namespace tvgl

#endif
