#include "tvgl/sbm.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace tvgl {

namespace {
constexpr double kDegreeFloor = 1e-6;

Eigen::VectorXd z_from_sigma(const StructuredOperators& ops,
                             const Eigen::MatrixXd& sigma) {
    Eigen::VectorXd sigma_d = sigma.diagonal();
    Eigen::VectorXd sigma_hh = 0.5 * hollow_dup_t_vec(sigma);
    return ops.degree_op.transpose() * sigma_d - 2.0 * sigma_hh;
}
}  // namespace

SbmOracle::SbmOracle(OperatorsPtr ops, double lambda1, double lambda2)
    : ops_(std::move(ops)), lambda1_(lambda1), lambda2_(lambda2) {
    if (!(lambda1_ > 0.0) || !(lambda2_ > 0.0))
        throw std::invalid_argument("SbmOracle: lambda1, lambda2 must be > 0");
    z_ = Eigen::VectorXd::Zero(dim());
    z_prev_ = z_;
}

void SbmOracle::refresh(const Eigen::MatrixXd& sigma,
                        const Eigen::MatrixXd& prev_sigma) {
    if (sigma.rows() != ops_->n || prev_sigma.rows() != ops_->n)
        throw std::invalid_argument("SbmOracle: covariance dimension mismatch");
    z_ = z_from_sigma(*ops_, sigma);
    z_prev_ = z_from_sigma(*ops_, prev_sigma);
}

Eigen::VectorXd SbmOracle::degrees_checked(const Eigen::VectorXd& s) const {
    if (s.size() != dim())
        throw std::invalid_argument("SbmOracle: dimension mismatch");
    Eigen::VectorXd d = ops_->degree_op * s;
    if ((d.array() <= 0.0).any())
        throw std::domain_error(
            "SbmOracle: non-positive node degree, outside the log-barrier "
            "domain");
    return d;
}

void SbmOracle::observe(const Eigen::VectorXd& s) {
    Eigen::VectorXd d = ops_->degree_op * s;
    double mn = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d.size(); ++i)
        if (d[i] > 0.0) mn = std::min(mn, d[i]);
    if (!std::isfinite(mn)) return;
    mn = std::max(mn, kDegreeFloor);
    d_min_ = (d_min_ == 0.0) ? mn : std::min(d_min_, mn);
}

double SbmOracle::objective(const Eigen::VectorXd& s) const {
    Eigen::VectorXd d = degrees_checked(s);
    return s.dot(z_) - lambda2_ * d.array().log().sum() +
           0.5 * lambda1_ * s.squaredNorm();
}

Eigen::VectorXd SbmOracle::gradient(const Eigen::VectorXd& s) const {
    Eigen::VectorXd d = degrees_checked(s);
    return lambda1_ * s -
           lambda2_ * (ops_->degree_op.transpose() * d.cwiseInverse()) + z_;
}

Eigen::SparseMatrix<double> SbmOracle::hessian(
    const Eigen::VectorXd& s) const {
    Eigen::VectorXd d = degrees_checked(s);
    Eigen::VectorXd w = d.array().square().inverse();
    const int l = dim();
    Eigen::SparseMatrix<double> diag(ops_->n, ops_->n);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(ops_->n);
    for (int i = 0; i < ops_->n; ++i) trips.emplace_back(i, i, w[i]);
    diag.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseMatrix<double> h =
        ops_->degree_op.transpose() * diag * ops_->degree_op;
    h *= lambda2_;
    Eigen::SparseMatrix<double> id(l, l);
    id.setIdentity();
    return h + lambda1_ * id;
}

std::function<Eigen::VectorXd(const Eigen::VectorXd&)>
SbmOracle::hessian_operator(const Eigen::VectorXd& base) const {
    Eigen::VectorXd w = degrees_checked(base).array().square().inverse();
    return [this, w = std::move(w)](const Eigen::VectorXd& v) {
        Eigen::VectorXd kv = ops_->degree_op * v;
        return (lambda1_ * v +
                lambda2_ * (ops_->degree_op.transpose() *
                            kv.cwiseProduct(w).eval()))
            .eval();
    };
}

Eigen::VectorXd SbmOracle::time_gradient(const Eigen::VectorXd&) const {
    return z_ - z_prev_;  // independent of s; h = 1
}

Eigen::VectorXd SbmOracle::apply_prox(const Eigen::VectorXd& u,
                                      double /*step*/) const {
    return u.cwiseMax(0.0);
}

ModelConstants SbmOracle::constants() const {
    const double d = std::max(d_min_, kDegreeFloor);
    ModelConstants c;
    c.m = 2.0 * lambda1_;
    c.L = 2.0 * lambda2_ * (ops_->n - 1) / (d * d);
    c.m_proof = lambda1_;
    c.L_proof = lambda1_ + 2.0 * lambda2_ * (ops_->n - 1) / (d * d);
    return c;
}

Eigen::VectorXd SbmOracle::initial_point() const {
    return Eigen::VectorXd::Constant(dim(), 0.1);
}

}  // namespace tvgl
