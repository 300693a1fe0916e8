#ifndef TVGL_SYNTH_HPP
#define TVGL_SYNTH_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace tvgl {

enum class Schedule { PiecewiseConstant, SmoothDecay };
enum class ModelKind { Ggm, Sem, Sbm };

ModelKind model_from_string(const std::string& name);

/// Connected Erdos-Renyi weighted graph, weights uniform in [0.5, 1.5];
/// retries the draw until connected (up to 100 times). Hollow symmetric.
Eigen::MatrixXd generate_seed_graph(int n, double density, std::uint64_t seed);

/// Ground-truth adjacency trajectory S_1, ..., S_T under one of the two
/// temporal evolution patterns:
///  - PiecewiseConstant: S_0 until floor(T/2), then the graph with all edges
///    incident to ceil(N/2) randomly selected nodes doubled.
///  - SmoothDecay: S_t(i,j) = S_0(i,j) (1 + exp(-0.01 i j t)) with 1-based
///    node indices, applied to the lower triangle and mirrored.
class GraphTrajectory {
  public:
    GraphTrajectory(Eigen::MatrixXd s0, Schedule schedule, long horizon,
                    std::uint64_t seed);

    /// GSO at time t, 0 <= t <= horizon (t = 0 is the pre-stream graph).
    Eigen::MatrixXd at(long t) const;

    int n() const { return static_cast<int>(s0_.rows()); }
    long horizon() const { return horizon_; }
    Schedule schedule() const { return schedule_; }
    const Eigen::MatrixXd& seed_graph() const { return s0_; }
    const Eigen::MatrixXd& shifted_graph() const { return s1_; }
    const std::vector<int>& doubled_nodes() const { return doubled_nodes_; }

    /// Rescales the seed so that ||S_t|| <= bound for every t (used to keep
    /// I - S_t well conditioned for SEM data generation).
    void rescale_spectral(double bound = 0.95);

  private:
    Eigen::MatrixXd s0_;
    Eigen::MatrixXd s1_;  // post-change graph (piecewise schedule)
    Schedule schedule_;
    long horizon_;
    std::vector<int> doubled_nodes_;
};

/// Affine map scale * W + shift * I applied to every adjacency of the
/// trajectory so that the resulting precision matrices have eigenvalues
/// inside [xi, chi]; throws when the spread cannot fit.
struct PrecisionMap {
    double scale = 1.0;
    double shift = 0.0;
    Eigen::MatrixXd operator()(const Eigen::MatrixXd& w) const;
};
PrecisionMap fit_precision_band(const GraphTrajectory& traj, double xi,
                                double chi);

/// One graph signal drawn per the model's generative mechanism:
///  Ggm: x ~ N(0, S^-1) with S the precision matrix (checked PD);
///  Sem: x = (I - S)^-1 e, e white Gaussian with variance sigma_e2;
///  Sbm: x ~ N(0, L^+ + sigma_e2 I), L the combinatorial Laplacian of S.
Eigen::VectorXd sample_signal(const Eigen::MatrixXd& s_t, ModelKind kind,
                              double sigma_e2, std::mt19937_64& rng);

/// Full synthetic stream: warm-up signals drawn from the t=0 graph followed
/// by one signal per t = 1..T.
struct SyntheticStream {
    std::vector<Eigen::VectorXd> warmup;
    std::vector<Eigen::VectorXd> signals;
    std::vector<Eigen::MatrixXd> truth;  // S_t per emitted signal
};
SyntheticStream make_stream(const GraphTrajectory& traj, ModelKind kind,
                            int warmup_count, double sigma_e2,
                            std::uint64_t seed, const PrecisionMap* prec_map);

}  // namespace tvgl

#endif
