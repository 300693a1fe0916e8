#ifndef TVGL_SEM_HPP
#define TVGL_SEM_HPP

#include <Eigen/Sparse>

#include "tvgl/model.hpp"

namespace tvgl {

/// Builds Q = D_h^T (sigma kron I) D_h without forming the Kronecker product:
/// Q(a, b) = sum over nodes v shared by edges a and b of
/// sigma(other(a,v), other(b,v)). Sparse with O(N^3) non-zeros.
Eigen::SparseMatrix<double> sem_build_q(const Eigen::MatrixXd& sigma);

/// Structural equation model in the hh-space: least-squares data fit with an
/// l1 sparsity term handled by soft-thresholding.
class SemOracle : public ModelOracle {
  public:
    SemOracle(OperatorsPtr ops, double lambda);

    int nodes() const override { return ops_->n; }
    int dim() const override { return hh_dim(ops_->n); }

    using ModelOracle::refresh;
    void refresh(const Eigen::MatrixXd& sigma,
                 const Eigen::MatrixXd& prev_sigma) override;

    double objective(const Eigen::VectorXd& s) const override;
    double reg_value(const Eigen::VectorXd& s) const override;
    Eigen::VectorXd gradient(const Eigen::VectorXd& s) const override;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> hessian_operator(
        const Eigen::VectorXd& base) const override;
    Eigen::VectorXd time_gradient(const Eigen::VectorXd& s) const override;
    /// sign(u) .* max(|u| - 2 step lambda, 0), applied entrywise.
    Eigen::VectorXd apply_prox(const Eigen::VectorXd& u,
                               double step) const override;
    double step_factor() const override { return 1.0; }
    /// m = lambda_min(sigma_t), L = 2 lambda_max(sigma_t); the Hessian Q_t
    /// has its spectrum inside [m, L].
    ModelConstants constants() const override;
    Eigen::VectorXd initial_point() const override;

    double lambda() const { return lambda_; }
    const Eigen::SparseMatrix<double>& q() const { return q_; }
    const Eigen::SparseMatrix<double>& q_prev() const { return q_prev_; }
    const Eigen::VectorXd& sigma_hh() const { return sigma_hh_; }
    const Eigen::MatrixXd& sigma() const { return sigma_; }

  private:
    OperatorsPtr ops_;
    double lambda_;
    Eigen::SparseMatrix<double> q_, q_prev_;
    Eigen::VectorXd sigma_hh_, sigma_hh_prev_;
    double sigma_tr_ = 0.0;
    Eigen::MatrixXd sigma_;
};

}  // namespace tvgl

#endif
