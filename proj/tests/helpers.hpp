#ifndef TVGL_TESTS_HELPERS_HPP
#define TVGL_TESTS_HELPERS_HPP

#include <Eigen/Dense>
#include <random>

#include "tvgl/model.hpp"
#include "tvgl/vectorization.hpp"

namespace tvgl::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

inline Eigen::VectorXd random_vector(int n, std::mt19937_64& rng,
                                     double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = u(rng);
    return v;
}

inline Eigen::VectorXd gaussian_vector(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = g(rng);
    return v;
}

inline Eigen::MatrixXd random_symmetric(int n, std::mt19937_64& rng) {
    Eigen::MatrixXd a(n, n);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = u(rng);
    return 0.5 * (a + a.transpose().eval());
}

inline Eigen::MatrixXd random_hollow_symmetric(int n, std::mt19937_64& rng) {
    Eigen::MatrixXd s = random_symmetric(n, rng);
    s.diagonal().setZero();
    return s;
}

inline Eigen::MatrixXd random_spd(int n, std::mt19937_64& rng,
                                  double ridge = 0.1) {
    Eigen::MatrixXd a(n, n);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = g(rng);
    return a * a.transpose() / n + ridge * Eigen::MatrixXd::Identity(n, n);
}

/// Random symmetric matrix with eigenvalues uniform in [lo, hi].
inline Eigen::MatrixXd random_banded_spd(int n, double lo, double hi,
                                         std::mt19937_64& rng) {
    Eigen::MatrixXd a(n, n);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = g(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    std::uniform_real_distribution<double> u(lo, hi);
    Eigen::VectorXd ev(n);
    for (int i = 0; i < n; ++i) ev[i] = u(rng);
    return q * ev.asDiagonal() * q.transpose();
}

/// Central finite differences of the smooth objective term.
inline Eigen::VectorXd fd_gradient(const ModelOracle& model,
                                   const Eigen::VectorXd& s,
                                   double eps = 1e-5) {
    Eigen::VectorXd g(s.size());
    Eigen::VectorXd p = s;
    for (int k = 0; k < s.size(); ++k) {
        p[k] = s[k] + eps;
        const double fp = model.objective(p);
        p[k] = s[k] - eps;
        const double fm = model.objective(p);
        p[k] = s[k];
        g[k] = (fp - fm) / (2.0 * eps);
    }
    return g;
}

/// Finite differences of the gradient along v: approximates Hessian * v.
inline Eigen::VectorXd fd_hessian_vec(const ModelOracle& model,
                                      const Eigen::VectorXd& s,
                                      const Eigen::VectorXd& v,
                                      double eps = 1e-6) {
    return (model.gradient(s + eps * v) - model.gradient(s - eps * v)) /
           (2.0 * eps);
}

inline double rel_error(const Eigen::VectorXd& got,
                        const Eigen::VectorXd& want) {
    return (got - want).norm() / std::max(1.0, want.norm());
}

inline Eigen::MatrixXd kron(const Eigen::MatrixXd& a,
                            const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

/// Materializes the Hessian of a model by probing the operator with basis
/// vectors.
inline Eigen::MatrixXd dense_hessian(const ModelOracle& model,
                                     const Eigen::VectorXd& base) {
    const auto op = model.hessian_operator(base);
    const int d = static_cast<int>(base.size());
    Eigen::MatrixXd h(d, d);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
    for (int k = 0; k < d; ++k) {
        e[k] = 1.0;
        h.col(k) = op(e);
        e[k] = 0.0;
    }
    return h;
}

}  // namespace tvgl::testing

#endif
