#include "tvgl/vectorization.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace tvgl {

namespace {

void check_symmetric(const Eigen::MatrixXd& s, double tol) {
    if (s.rows() != s.cols()) {
        throw std::invalid_argument("vech: matrix is not square (" +
                                    std::to_string(s.rows()) + "x" +
                                    std::to_string(s.cols()) + ")");
    }
    const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    for (int j = 0; j < s.cols(); ++j) {
        for (int i = j + 1; i < s.rows(); ++i) {
            if (std::abs(s(i, j) - s(j, i)) > tol * scale) {
                throw std::invalid_argument(
                    "vech: asymmetric entry pair (" + std::to_string(i) + "," +
                    std::to_string(j) + "): " + std::to_string(s(i, j)) +
                    " vs " + std::to_string(s(j, i)));
            }
        }
    }
}

constexpr double kSymTol = 1e-12;

}  // namespace

OperatorsPtr build_operators(int n) {
    if (n < 2) throw std::domain_error("build_operators: need n >= 2");
    const int k = h_dim(n);
    const int l = hh_dim(n);
    auto ops = std::make_shared<StructuredOperators>();
    ops->n = n;

    using T = Eigen::Triplet<double>;
    std::vector<T> dup, elim, hdup, helim, deg;
    dup.reserve(n * n);
    elim.reserve(k);
    hdup.reserve(n * (n - 1));
    helim.reserve(l);
    deg.reserve(2 * l);

    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int vec_idx = j * n + i;
            const int lo = std::max(i, j);
            const int hi = std::min(i, j);
            dup.emplace_back(vec_idx, h_index(n, lo, hi), 1.0);
            if (i >= j) elim.emplace_back(h_index(n, i, j), vec_idx, 1.0);
            if (i != j) {
                hdup.emplace_back(vec_idx, hh_index(n, lo, hi), 1.0);
                if (i > j) helim.emplace_back(hh_index(n, i, j), vec_idx, 1.0);
            }
        }
    }
    for (int j = 0; j < n; ++j) {
        for (int i = j + 1; i < n; ++i) {
            const int e = hh_index(n, i, j);
            deg.emplace_back(i, e, 1.0);
            deg.emplace_back(j, e, 1.0);
        }
    }

    ops->dup.resize(n * n, k);
    ops->dup.setFromTriplets(dup.begin(), dup.end());
    ops->elim.resize(k, n * n);
    ops->elim.setFromTriplets(elim.begin(), elim.end());
    ops->hollow_dup.resize(n * n, l);
    ops->hollow_dup.setFromTriplets(hdup.begin(), hdup.end());
    ops->hollow_elim.resize(l, n * n);
    ops->hollow_elim.setFromTriplets(helim.begin(), helim.end());
    ops->degree_op.resize(n, l);
    ops->degree_op.setFromTriplets(deg.begin(), deg.end());
    return ops;
}

HalfVec vech(const Eigen::MatrixXd& s) {
    check_symmetric(s, kSymTol);
    const int n = static_cast<int>(s.rows());
    HalfVec out;
    out.n = n;
    out.values.resize(h_dim(n));
    int p = 0;
    for (int j = 0; j < n; ++j)
        for (int i = j; i < n; ++i) out.values[p++] = 0.5 * (s(i, j) + s(j, i));
    return out;
}

HollowHalfVec vechh(const Eigen::MatrixXd& s) {
    check_symmetric(s, kSymTol);
    const int n = static_cast<int>(s.rows());
    const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    for (int i = 0; i < n; ++i) {
        if (std::abs(s(i, i)) > kSymTol * scale) {
            throw std::invalid_argument("vechh: nonzero diagonal entry at (" +
                                        std::to_string(i) + "," +
                                        std::to_string(i) + ")");
        }
    }
    HollowHalfVec out;
    out.n = n;
    out.values.resize(hh_dim(n));
    int p = 0;
    for (int j = 0; j < n; ++j)
        for (int i = j + 1; i < n; ++i)
            out.values[p++] = 0.5 * (s(i, j) + s(j, i));
    return out;
}

Eigen::MatrixXd unvech(int n, const Eigen::VectorXd& values) {
    if (values.size() != h_dim(n))
        throw std::invalid_argument("unvech: length does not match n");
    Eigen::MatrixXd s(n, n);
    int p = 0;
    for (int j = 0; j < n; ++j)
        for (int i = j; i < n; ++i) {
            s(i, j) = values[p];
            s(j, i) = values[p];
            ++p;
        }
    return s;
}

Eigen::MatrixXd unvech(const HalfVec& v) { return unvech(v.n, v.values); }

Eigen::MatrixXd unvechh(int n, const Eigen::VectorXd& values) {
    if (values.size() != hh_dim(n))
        throw std::invalid_argument("unvechh: length does not match n");
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    int p = 0;
    for (int j = 0; j < n; ++j)
        for (int i = j + 1; i < n; ++i) {
            s(i, j) = values[p];
            s(j, i) = values[p];
            ++p;
        }
    return s;
}

Eigen::MatrixXd unvechh(const HollowHalfVec& v) {
    return unvechh(v.n, v.values);
}

Eigen::VectorXd dup_t_vec(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    Eigen::VectorXd out(h_dim(n));
    int p = 0;
    for (int j = 0; j < n; ++j)
        for (int i = j; i < n; ++i) {
            out[p++] = (i == j) ? m(i, i) : m(i, j) + m(j, i);
        }
    return out;
}

Eigen::VectorXd hollow_dup_t_vec(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    Eigen::VectorXd out(hh_dim(n));
    int p = 0;
    for (int j = 0; j < n; ++j)
        for (int i = j + 1; i < n; ++i) out[p++] = m(i, j) + m(j, i);
    return out;
}

}  // namespace tvgl
