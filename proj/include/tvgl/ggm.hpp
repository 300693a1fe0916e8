#ifndef TVGL_GGM_HPP
#define TVGL_GGM_HPP

#include "tvgl/model.hpp"

namespace tvgl {

/// Gaussian graphical model: penalized maximum-likelihood estimation of the
/// precision matrix in the h-space. The feasible set is the eigenvalue band
/// {S : xi I <= S <= chi I}, onto which apply_prox projects exactly.
class GgmOracle : public ModelOracle {
  public:
    GgmOracle(OperatorsPtr ops, double xi = 1e-3, double chi = 1e3);

    int nodes() const override { return ops_->n; }
    int dim() const override { return h_dim(ops_->n); }

    using ModelOracle::refresh;
    void refresh(const Eigen::MatrixXd& sigma,
                 const Eigen::MatrixXd& prev_sigma) override;

    double objective(const Eigen::VectorXd& s) const override;
    double reg_value(const Eigen::VectorXd&) const override { return 0.0; }
    Eigen::VectorXd gradient(const Eigen::VectorXd& s) const override;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> hessian_operator(
        const Eigen::VectorXd& base) const override;
    Eigen::VectorXd time_gradient(const Eigen::VectorXd& s) const override;
    Eigen::VectorXd apply_prox(const Eigen::VectorXd& u,
                               double step) const override;
    double step_factor() const override { return 2.0; }
    ModelConstants constants() const override;
    Eigen::VectorXd initial_point() const override;

    double xi() const { return xi_; }
    double chi() const { return chi_; }
    const Eigen::MatrixXd& sigma() const { return sigma_; }

  private:
    /// Inverse via symmetric Cholesky factorization; throws std::domain_error
    /// when S is not positive definite.
    Eigen::MatrixXd inverse_spd(const Eigen::VectorXd& s) const;

    OperatorsPtr ops_;
    double xi_;
    double chi_;
    Eigen::MatrixXd sigma_;
    Eigen::VectorXd time_grad_;  // graph-independent, cached at refresh
};

}  // namespace tvgl

#endif
