#ifndef TVGL_SBM_HPP
#define TVGL_SBM_HPP

#include <Eigen/Sparse>

#include "tvgl/model.hpp"

namespace tvgl {

/// Smoothness-based model in the hh-space: linear smoothness term plus
/// Frobenius and log-barrier regularizers, with projection onto the
/// non-negative orthant. Gradients and Hessians are only defined where the
/// degree vector K s is entrywise positive.
class SbmOracle : public ModelOracle {
  public:
    SbmOracle(OperatorsPtr ops, double lambda1, double lambda2);

    int nodes() const override { return ops_->n; }
    int dim() const override { return hh_dim(ops_->n); }

    using ModelOracle::refresh;
    void refresh(const Eigen::MatrixXd& sigma,
                 const Eigen::MatrixXd& prev_sigma) override;

    double objective(const Eigen::VectorXd& s) const override;
    double reg_value(const Eigen::VectorXd&) const override { return 0.0; }
    Eigen::VectorXd gradient(const Eigen::VectorXd& s) const override;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> hessian_operator(
        const Eigen::VectorXd& base) const override;
    /// lambda1 I + lambda2 K^T Diag(1 / (Ks)^2) K, materialized sparse.
    Eigen::SparseMatrix<double> hessian(const Eigen::VectorXd& s) const;
    Eigen::VectorXd time_gradient(const Eigen::VectorXd& s) const override;
    Eigen::VectorXd apply_prox(const Eigen::VectorXd& u,
                               double step) const override;
    double step_factor() const override { return 2.0; }
    ModelConstants constants() const override;
    Eigen::VectorXd initial_point() const override;

    double lambda1() const { return lambda1_; }
    double lambda2() const { return lambda2_; }
    const Eigen::VectorXd& z() const { return z_; }
    const Eigen::VectorXd& z_prev() const { return z_prev_; }
    /// Smallest positive degree observed so far, used by the L constant.
    double d_min() const { return d_min_; }
    void set_d_min(double d) { d_min_ = d; }
    /// Records the degrees of an iterate into the running d_min estimate.
    void observe(const Eigen::VectorXd& s) override;

  private:
    Eigen::VectorXd degrees_checked(const Eigen::VectorXd& s) const;

    OperatorsPtr ops_;
    double lambda1_;
    double lambda2_;
    Eigen::VectorXd z_, z_prev_;
    double d_min_ = 0.0;  // 0 until the first observation
};

}  // namespace tvgl

#endif
