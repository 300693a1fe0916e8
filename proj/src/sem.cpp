#include "tvgl/sem.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tvgl {

Eigen::SparseMatrix<double> sem_build_q(const Eigen::MatrixXd& sigma) {
    if (sigma.rows() != sigma.cols())
        throw std::invalid_argument("sem_build_q: non-square covariance");
    const int n = static_cast<int>(sigma.rows());
    const int l = hh_dim(n);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(l) * (2 * n - 3));
    for (int j = 0; j < n; ++j) {
        for (int i = j + 1; i < n; ++i) {
            const int ea = hh_index(n, i, j);
            for (int v : {i, j}) {
                const int oa = i + j - v;  // the other endpoint of edge a
                for (int m = 0; m < n; ++m) {
                    if (m == v) continue;
                    const int eb = hh_index(n, std::max(v, m), std::min(v, m));
                    trips.emplace_back(ea, eb, sigma(oa, m));
                }
            }
        }
    }
    Eigen::SparseMatrix<double> q(l, l);
    q.setFromTriplets(trips.begin(), trips.end());
    return q;
}

SemOracle::SemOracle(OperatorsPtr ops, double lambda)
    : ops_(std::move(ops)), lambda_(lambda) {
    if (lambda_ < 0.0)
        throw std::invalid_argument("SemOracle: lambda must be >= 0");
    const int l = dim();
    q_.resize(l, l);
    q_prev_.resize(l, l);
    sigma_hh_ = Eigen::VectorXd::Zero(l);
    sigma_hh_prev_ = sigma_hh_;
    sigma_ = Eigen::MatrixXd::Zero(ops_->n, ops_->n);
}

void SemOracle::refresh(const Eigen::MatrixXd& sigma,
                        const Eigen::MatrixXd& prev_sigma) {
    if (sigma.rows() != ops_->n || prev_sigma.rows() != ops_->n)
        throw std::invalid_argument("SemOracle: covariance dimension mismatch");
    q_ = sem_build_q(sigma);
    q_prev_ = sem_build_q(prev_sigma);
    sigma_hh_ = hollow_dup_t_vec(sigma) * 0.5;  // vechh(sigma)
    sigma_hh_prev_ = hollow_dup_t_vec(prev_sigma) * 0.5;
    sigma_tr_ = sigma.trace();
    sigma_ = sigma;
}

double SemOracle::objective(const Eigen::VectorXd& s) const {
    return 0.5 * s.dot(q_ * s) - 2.0 * s.dot(sigma_hh_) + 0.5 * sigma_tr_;
}

double SemOracle::reg_value(const Eigen::VectorXd& s) const {
    return 2.0 * lambda_ * s.lpNorm<1>();
}

Eigen::VectorXd SemOracle::gradient(const Eigen::VectorXd& s) const {
    if (s.size() != dim())
        throw std::invalid_argument("SemOracle: gradient dimension mismatch");
    return q_ * s - 2.0 * sigma_hh_;
}

std::function<Eigen::VectorXd(const Eigen::VectorXd&)>
SemOracle::hessian_operator(const Eigen::VectorXd&) const {
    // The Hessian is Q_t itself: time-varying but independent of s.
    return [this](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return q_ * v;
    };
}

Eigen::VectorXd SemOracle::time_gradient(const Eigen::VectorXd& s) const {
    if (s.size() != dim())
        throw std::invalid_argument(
            "SemOracle: time_gradient dimension mismatch");
    return (q_ - q_prev_) * s - 2.0 * (sigma_hh_ - sigma_hh_prev_);
}

Eigen::VectorXd SemOracle::apply_prox(const Eigen::VectorXd& u,
                                      double step) const {
    const double thr = 2.0 * step * lambda_;
    return u.unaryExpr([thr](double x) {
        const double mag = std::abs(x) - thr;
        return mag > 0.0 ? (x > 0.0 ? mag : -mag) : 0.0;
    });
}

ModelConstants SemOracle::constants() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma_,
                                                      Eigen::EigenvaluesOnly);
    ModelConstants c;
    c.m = es.eigenvalues().minCoeff();
    c.L = 2.0 * es.eigenvalues().maxCoeff();
    c.m_proof = c.m;
    c.L_proof = c.L;
    return c;
}

Eigen::VectorXd SemOracle::initial_point() const {
    return Eigen::VectorXd::Zero(dim());
}

}  // namespace tvgl
