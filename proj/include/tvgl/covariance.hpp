#ifndef TVGL_COVARIANCE_HPP
#define TVGL_COVARIANCE_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

namespace tvgl {

/// How past samples are discarded when the covariance is updated.
enum class ForgettingPolicy {
    Ewma,            // sigma <- gamma * sigma + (1 - gamma) * x x^T
    InfiniteMemory,  // running second-moment average over all samples
    RankOne,         // sigma <- x x^T (gamma -> 0 limit)
};

/// Recursive empirical (second-moment) covariance tracker. Signals are
/// assumed pre-centered. Keeps the previous covariance snapshot so that
/// time-gradients never need history.
class CovarianceTracker {
  public:
    /// Initializes from warm-up signals: sigma is their sample second-moment
    /// matrix (RankOne: the last signal's outer product), prev_sigma = sigma.
    CovarianceTracker(const std::vector<Eigen::VectorXd>& warmup,
                      ForgettingPolicy policy, double gamma = 0.99);

    void update(const Eigen::VectorXd& x);

    const Eigen::MatrixXd& sigma() const { return sigma_; }
    const Eigen::MatrixXd& prev_sigma() const { return prev_sigma_; }
    ForgettingPolicy policy() const { return policy_; }
    double gamma() const { return gamma_; }
    int n() const { return n_; }
    /// Number of update() calls since initialization.
    long t() const { return t_; }

    void serialize(std::ostream& os) const;
    static CovarianceTracker deserialize(std::istream& is);

  private:
    CovarianceTracker() = default;

    Eigen::MatrixXd sigma_;
    Eigen::MatrixXd prev_sigma_;
    ForgettingPolicy policy_ = ForgettingPolicy::Ewma;
    double gamma_ = 0.99;
    int n_ = 0;
    long t_ = 0;
    // Samples absorbed so far including warm-up; weights the
    // infinite-memory average so warm-up mass is not discarded.
    long samples_seen_ = 0;
};

}  // namespace tvgl

#endif
