#include "tvgl/covariance.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace tvgl {

namespace {

void write_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
    const auto r = static_cast<std::int64_t>(m.rows());
    const auto c = static_cast<std::int64_t>(m.cols());
    os.write(reinterpret_cast<const char*>(&r), sizeof(r));
    os.write(reinterpret_cast<const char*>(&c), sizeof(c));
    os.write(reinterpret_cast<const char*>(m.data()),
             static_cast<std::streamsize>(sizeof(double) * r * c));
}

Eigen::MatrixXd read_matrix(std::istream& is) {
    std::int64_t r = 0, c = 0;
    is.read(reinterpret_cast<char*>(&r), sizeof(r));
    is.read(reinterpret_cast<char*>(&c), sizeof(c));
    Eigen::MatrixXd m(r, c);
    is.read(reinterpret_cast<char*>(m.data()),
            static_cast<std::streamsize>(sizeof(double) * r * c));
    return m;
}

}  // namespace

CovarianceTracker::CovarianceTracker(
    const std::vector<Eigen::VectorXd>& warmup, ForgettingPolicy policy,
    double gamma)
    : policy_(policy), gamma_(gamma) {
    if (warmup.empty())
        throw std::invalid_argument(
            "CovarianceTracker: empty warm-up set; at least one signal is "
            "required to initialize sigma");
    if (policy == ForgettingPolicy::Ewma && (gamma <= 0.0 || gamma >= 1.0))
        throw std::invalid_argument(
            "CovarianceTracker: EWMA forgetting factor must be in (0,1)");
    n_ = static_cast<int>(warmup.front().size());
    for (const auto& x : warmup) {
        if (x.size() != n_)
            throw std::invalid_argument(
                "CovarianceTracker: warm-up signal length mismatch");
        if (!x.allFinite())
            throw std::invalid_argument(
                "CovarianceTracker: non-finite warm-up signal");
    }
    if (policy == ForgettingPolicy::RankOne) {
        const auto& x = warmup.back();
        sigma_ = x * x.transpose();
        samples_seen_ = 1;
    } else {
        sigma_ = Eigen::MatrixXd::Zero(n_, n_);
        for (const auto& x : warmup) sigma_ += x * x.transpose();
        sigma_ /= static_cast<double>(warmup.size());
        samples_seen_ = static_cast<long>(warmup.size());
    }
    prev_sigma_ = sigma_;
    t_ = 0;
}

void CovarianceTracker::update(const Eigen::VectorXd& x) {
    if (x.size() != n_)
        throw std::invalid_argument("CovarianceTracker: signal length " +
                                    std::to_string(x.size()) + ", expected " +
                                    std::to_string(n_));
    if (!x.allFinite())
        throw std::invalid_argument("CovarianceTracker: non-finite signal");
    prev_sigma_ = sigma_;
    ++t_;
    ++samples_seen_;
    switch (policy_) {
        case ForgettingPolicy::Ewma:
            sigma_ = gamma_ * sigma_ + (1.0 - gamma_) * (x * x.transpose());
            break;
        case ForgettingPolicy::InfiniteMemory: {
            const double w = static_cast<double>(samples_seen_);
            sigma_ = ((w - 1.0) / w) * sigma_ + (1.0 / w) * (x * x.transpose());
            break;
        }
        case ForgettingPolicy::RankOne:
            sigma_ = x * x.transpose();
            break;
    }
}

void CovarianceTracker::serialize(std::ostream& os) const {
    const auto policy = static_cast<std::int32_t>(policy_);
    const auto n = static_cast<std::int32_t>(n_);
    os.write(reinterpret_cast<const char*>(&policy), sizeof(policy));
    os.write(reinterpret_cast<const char*>(&n), sizeof(n));
    os.write(reinterpret_cast<const char*>(&gamma_), sizeof(gamma_));
    os.write(reinterpret_cast<const char*>(&t_), sizeof(t_));
    os.write(reinterpret_cast<const char*>(&samples_seen_),
             sizeof(samples_seen_));
    write_matrix(os, sigma_);
    write_matrix(os, prev_sigma_);
}

CovarianceTracker CovarianceTracker::deserialize(std::istream& is) {
    CovarianceTracker tr;
    std::int32_t policy = 0, n = 0;
    is.read(reinterpret_cast<char*>(&policy), sizeof(policy));
    is.read(reinterpret_cast<char*>(&n), sizeof(n));
    is.read(reinterpret_cast<char*>(&tr.gamma_), sizeof(tr.gamma_));
    is.read(reinterpret_cast<char*>(&tr.t_), sizeof(tr.t_));
    is.read(reinterpret_cast<char*>(&tr.samples_seen_),
            sizeof(tr.samples_seen_));
    tr.policy_ = static_cast<ForgettingPolicy>(policy);
    tr.n_ = n;
    tr.sigma_ = read_matrix(is);
    tr.prev_sigma_ = read_matrix(is);
    if (!is) throw std::runtime_error("CovarianceTracker: truncated state");
    return tr;
}

}  // namespace tvgl
