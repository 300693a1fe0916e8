#ifndef TVGL_SOLVER_HPP
#define TVGL_SOLVER_HPP

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tvgl/covariance.hpp"
#include "tvgl/metrics.hpp"
#include "tvgl/model.hpp"

namespace tvgl {

/// The experiment variants: prediction-correction, correction-only,
/// correction-correction, and their rank-one (memory length one) versions.
enum class Variant { PC, CO, CC, SGD, PC1, CC1 };

Variant variant_from_string(const std::string& name);
std::string to_string(Variant v);
/// Covariance policy implied by a variant (rank-one variants force RankOne).
std::optional<ForgettingPolicy> variant_policy(Variant v);

struct SolverConfig {
    int p_steps = 1;
    int c_steps = 1;
    double alpha = 1e-2;  // prediction step size
    double beta = 1e-2;   // correction step size
    double h = 1.0;       // sampling period, fixed to 1
    Variant variant = Variant::PC;
    /// Multiplier on alpha inside the prediction update; negative means
    /// "use the model's own factor".
    double step_factor = -1.0;

    /// Config with P/C pinned by the variant definition.
    static SolverConfig for_variant(Variant v, double alpha, double beta);
    double effective_step_factor(const ModelOracle& model) const {
        return step_factor >= 0.0 ? step_factor : model.step_factor();
    }
};

/// Mutable state of one streaming run. Serializable mid-stream; restoring
/// yields an identical continuation.
struct SolverState {
    Eigen::VectorXd s_hat;
    Eigen::VectorXd s_pred;
    long step_count = 0;

    void serialize(std::ostream& os) const;
    static SolverState deserialize(std::istream& is);
};

/// P prediction iterations of the Taylor-model descent from s_hat, using the
/// model caches at time t. Returns s_hat unchanged when P = 0.
Eigen::VectorXd predict(const ModelOracle& model, const Eigen::VectorXd& s_hat,
                        const SolverConfig& cfg);

/// C proximal-gradient correction iterations from the prediction, using the
/// model caches refreshed to time t+1.
Eigen::VectorXd correct(const ModelOracle& model, const Eigen::VectorXd& s_pred,
                        const SolverConfig& cfg);

/// One full step of the online loop: predict with time-t information, absorb
/// x_new into the tracker, refresh the model caches, correct, log.
RunRecord step(ModelOracle& model, CovarianceTracker& tracker,
               SolverState& state, const SolverConfig& cfg,
               const Eigen::VectorXd& x_new);

/// Pull-based source of graph signals.
class SignalSource {
  public:
    virtual ~SignalSource() = default;
    virtual std::optional<Eigen::VectorXd> next() = 0;
};

class VectorSource : public SignalSource {
  public:
    explicit VectorSource(std::vector<Eigen::VectorXd> signals)
        : signals_(std::move(signals)) {}
    std::optional<Eigen::VectorXd> next() override {
        if (pos_ >= signals_.size()) return std::nullopt;
        return signals_[pos_++];
    }

  private:
    std::vector<Eigen::VectorXd> signals_;
    size_t pos_ = 0;
};

/// Optional per-step callback, invoked after the correction with the freshly
/// refreshed model; the returned vector is treated as the offline reference
/// s*_t and used for the NSE column.
using OracleCallback =
    std::function<Eigen::VectorXd(const ModelOracle&, long t)>;

/// Streams every signal from the source through the solver; constant memory
/// in the stream length. The tracker must already hold the warm-up
/// statistics. Stream errors are rethrown with the sample index.
std::vector<RunRecord> run_online(ModelOracle& model,
                                  CovarianceTracker& tracker,
                                  const SolverConfig& cfg,
                                  SignalSource& stream,
                                  const OracleCallback& oracle = nullptr);

}  // namespace tvgl

#endif
