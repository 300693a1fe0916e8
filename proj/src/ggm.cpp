#include "tvgl/ggm.hpp"

#include <cmath>
#include <stdexcept>

namespace tvgl {

GgmOracle::GgmOracle(OperatorsPtr ops, double xi, double chi)
    : ops_(std::move(ops)), xi_(xi), chi_(chi) {
    if (!(xi_ > 0.0) || !(chi_ > xi_) || !std::isfinite(chi_))
        throw std::invalid_argument("GgmOracle: need 0 < xi < chi < inf");
    sigma_ = Eigen::MatrixXd::Zero(ops_->n, ops_->n);
    time_grad_ = Eigen::VectorXd::Zero(dim());
}

void GgmOracle::refresh(const Eigen::MatrixXd& sigma,
                        const Eigen::MatrixXd& prev_sigma) {
    if (sigma.rows() != ops_->n || prev_sigma.rows() != ops_->n)
        throw std::invalid_argument("GgmOracle: covariance dimension mismatch");
    sigma_ = 0.5 * (sigma + sigma.transpose());
    time_grad_ = dup_t_vec(sigma - prev_sigma);
}

Eigen::MatrixXd GgmOracle::inverse_spd(const Eigen::VectorXd& s) const {
    Eigen::MatrixXd mat = unvech(ops_->n, s);
    Eigen::LLT<Eigen::MatrixXd> llt(mat);
    if (llt.info() != Eigen::Success)
        throw std::domain_error(
            "GgmOracle: iterate is not positive definite (outside the log-det "
            "domain)");
    return llt.solve(Eigen::MatrixXd::Identity(ops_->n, ops_->n));
}

double GgmOracle::objective(const Eigen::VectorXd& s) const {
    Eigen::MatrixXd mat = unvech(ops_->n, s);
    Eigen::LLT<Eigen::MatrixXd> llt(mat);
    if (llt.info() != Eigen::Success)
        throw std::domain_error("GgmOracle: objective outside log-det domain");
    double logdet = 0.0;
    const auto& l = llt.matrixLLT();
    for (int i = 0; i < ops_->n; ++i) logdet += 2.0 * std::log(l(i, i));
    return -logdet + (mat * sigma_).trace();
}

Eigen::VectorXd GgmOracle::gradient(const Eigen::VectorXd& s) const {
    return dup_t_vec(sigma_ - inverse_spd(s));
}

std::function<Eigen::VectorXd(const Eigen::VectorXd&)>
GgmOracle::hessian_operator(const Eigen::VectorXd& base) const {
    // D^T (S^-1 kron S^-1) D v == D^T vec(S^-1 V S^-1) with V = unvech-dup(v);
    // the N^2 x N^2 Kronecker factor is never materialized.
    Eigen::MatrixXd sinv = inverse_spd(base);
    const int n = ops_->n;
    return [sinv = std::move(sinv), n](const Eigen::VectorXd& v) {
        Eigen::MatrixXd vm = unvech(n, v);
        return dup_t_vec(sinv * vm * sinv);
    };
}

Eigen::VectorXd GgmOracle::time_gradient(const Eigen::VectorXd&) const {
    return time_grad_;
}

Eigen::VectorXd GgmOracle::apply_prox(const Eigen::VectorXd& u,
                                      double /*step*/) const {
    Eigen::MatrixXd mat = unvech(ops_->n, u);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(xi_).cwiseMin(chi_);
    Eigen::MatrixXd projected =
        es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    return vech(projected).values;
}

ModelConstants GgmOracle::constants() const {
    ModelConstants c;
    c.m = 1.0 / chi_;
    c.L = 2.0 / xi_;
    c.m_proof = 1.0 / (chi_ * chi_);
    c.L_proof = c.L;
    return c;
}

Eigen::VectorXd GgmOracle::initial_point() const {
    return vech(0.5 * (xi_ + chi_) *
                Eigen::MatrixXd::Identity(ops_->n, ops_->n))
        .values;
}

}  // namespace tvgl
