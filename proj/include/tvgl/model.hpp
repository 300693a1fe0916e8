#ifndef TVGL_MODEL_HPP
#define TVGL_MODEL_HPP

#include <Eigen/Dense>
#include <functional>

#include "tvgl/covariance.hpp"
#include "tvgl/vectorization.hpp"

namespace tvgl {

/// Strong-convexity / smoothness constants of the smooth objective term.
/// `m` and `L` are the stated claim values; `m_proof` and `L_proof` are the
/// (occasionally different) values the spectral bound derivations actually
/// yield. Tests assert the proof variants; both are reported.
struct ModelConstants {
    double m = 0.0;
    double L = 0.0;
    double m_proof = 0.0;
    double L_proof = 0.0;
};

/// Per-model bundle of objective, gradient, Hessian action, time-gradient and
/// proximal/projection operator, all in reduced coordinates (h- or hh-space).
///
/// The cache refresh (covariance snapshots, Q_t, z_t) is single-writer and
/// happens once per arriving sample, before any solver step; evaluations are
/// reentrant afterwards.
class ModelOracle {
  public:
    virtual ~ModelOracle() = default;

    virtual int nodes() const = 0;
    /// Dimension of the reduced coordinate space (k or l).
    virtual int dim() const = 0;

    /// Rebuilds the per-time-step caches from covariance snapshots.
    virtual void refresh(const Eigen::MatrixXd& sigma,
                         const Eigen::MatrixXd& prev_sigma) = 0;
    void refresh(const CovarianceTracker& tracker) {
        refresh(tracker.sigma(), tracker.prev_sigma());
    }

    /// Smooth objective term f(s; t) at the cached statistics.
    virtual double objective(const Eigen::VectorXd& s) const = 0;
    /// Value of the non-smooth term g at s (0 for indicator functions on
    /// feasible points).
    virtual double reg_value(const Eigen::VectorXd& s) const = 0;
    virtual Eigen::VectorXd gradient(const Eigen::VectorXd& s) const = 0;

    /// Hessian action v -> Hessian(base) * v. The returned operator may own
    /// factorizations computed once per prediction phase.
    virtual std::function<Eigen::VectorXd(const Eigen::VectorXd&)>
    hessian_operator(const Eigen::VectorXd& base) const = 0;

    /// Mixed time-gradient at s (h = 1 sampling period).
    virtual Eigen::VectorXd time_gradient(const Eigen::VectorXd& s) const = 0;

    /// Proximal (or projection) step with the given step size.
    virtual Eigen::VectorXd apply_prox(const Eigen::VectorXd& u,
                                       double step) const = 0;

    /// Multiplier on the prediction step size (2 where the update rules carry
    /// the factor explicitly, 1 otherwise).
    virtual double step_factor() const = 0;

    /// m/L constants evaluated at the current cached statistics.
    virtual ModelConstants constants() const = 0;

    /// Hook for per-iterate bookkeeping (e.g. degree tracking); default no-op.
    virtual void observe(const Eigen::VectorXd&) {}

    /// Default feasible starting point.
    virtual Eigen::VectorXd initial_point() const = 0;
};

}  // namespace tvgl

#endif
