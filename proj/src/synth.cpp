#include "tvgl/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tvgl/errors.hpp"

namespace tvgl {

namespace {

bool connected(const Eigen::MatrixXd& w) {
    const int n = static_cast<int>(w.rows());
    std::vector<int> stack{0};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    int reached = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < n; ++v) {
            if (!seen[v] && w(u, v) > 0.0) {
                seen[v] = true;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == n;
}

Eigen::VectorXd gaussian_vector(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd z(n);
    for (int i = 0; i < n; ++i) z[i] = normal(rng);
    return z;
}

}  // namespace

ModelKind model_from_string(const std::string& name) {
    if (name == "ggm") return ModelKind::Ggm;
    if (name == "sem") return ModelKind::Sem;
    if (name == "sbm") return ModelKind::Sbm;
    throw std::invalid_argument("unknown model: " + name);
}

Eigen::MatrixXd generate_seed_graph(int n, double density,
                                    std::uint64_t seed) {
    if (n < 2) throw std::domain_error("generate_seed_graph: need n >= 2");
    if (!(density > 0.0) || density > 1.0)
        throw std::domain_error("generate_seed_graph: density in (0,1]");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> weight(0.5, 1.5);
    for (int attempt = 0; attempt < 100; ++attempt) {
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = j + 1; i < n; ++i)
                if (unit(rng) < density) {
                    const double wij = weight(rng);
                    w(i, j) = wij;
                    w(j, i) = wij;
                }
        if (connected(w)) return w;
    }
    throw numerical_error(
        "generate_seed_graph: no connected draw in 100 attempts; raise the "
        "density");
}

GraphTrajectory::GraphTrajectory(Eigen::MatrixXd s0, Schedule schedule,
                                 long horizon, std::uint64_t seed)
    : s0_(std::move(s0)), schedule_(schedule), horizon_(horizon) {
    if (horizon_ < 1)
        throw std::invalid_argument("GraphTrajectory: horizon must be >= 1");
    const int n = static_cast<int>(s0_.rows());
    s1_ = s0_;
    if (schedule_ == Schedule::PiecewiseConstant) {
        std::mt19937_64 rng(seed);
        std::vector<int> nodes(n);
        std::iota(nodes.begin(), nodes.end(), 0);
        std::shuffle(nodes.begin(), nodes.end(), rng);
        nodes.resize((n + 1) / 2);
        std::sort(nodes.begin(), nodes.end());
        doubled_nodes_ = nodes;
        std::vector<bool> selected(n, false);
        for (int v : nodes) selected[v] = true;
        // Doubling applied once per edge, even when both endpoints are
        // selected.
        for (int j = 0; j < n; ++j)
            for (int i = j + 1; i < n; ++i)
                if (selected[i] || selected[j]) {
                    s1_(i, j) *= 2.0;
                    s1_(j, i) *= 2.0;
                }
    }
}

Eigen::MatrixXd GraphTrajectory::at(long t) const {
    if (t < 0 || t > horizon_)
        throw std::out_of_range("GraphTrajectory: t out of [0, T]");
    if (schedule_ == Schedule::PiecewiseConstant) {
        return t <= horizon_ / 2 ? s0_ : s1_;
    }
    const int n = this->n();
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = j + 1; i < n; ++i) {
            const double decay =
                std::exp(-0.01 * (i + 1) * (j + 1) * static_cast<double>(t));
            s(i, j) = s0_(i, j) * (1.0 + decay);
            s(j, i) = s(i, j);
        }
    return s;
}

void GraphTrajectory::rescale_spectral(double bound) {
    double worst = 0.0;
    if (schedule_ == Schedule::PiecewiseConstant) {
        worst = std::max(s0_.operatorNorm(), s1_.operatorNorm());
    } else {
        // Entrywise S_t <= 2 S_0 and all weights non-negative, so the
        // spectral norm is dominated by 2||S_0||.
        worst = 2.0 * s0_.operatorNorm();
    }
    if (worst > bound) {
        const double f = bound / worst;
        s0_ *= f;
        s1_ *= f;
    }
}

Eigen::MatrixXd PrecisionMap::operator()(const Eigen::MatrixXd& w) const {
    return scale * w +
           shift * Eigen::MatrixXd::Identity(w.rows(), w.cols());
}

PrecisionMap fit_precision_band(const GraphTrajectory& traj, double xi,
                                double chi) {
    if (!(xi > 0.0) || !(chi > xi))
        throw std::invalid_argument("fit_precision_band: need 0 < xi < chi");
    std::vector<long> grid;
    if (traj.schedule() == Schedule::PiecewiseConstant) {
        grid = {0, traj.horizon()};
    } else {
        for (long t = 0; t <= std::min<long>(traj.horizon(), 200); ++t)
            grid.push_back(t);
        for (long t = 210; t < traj.horizon(); t += traj.horizon() / 100 + 1)
            grid.push_back(t);
        grid.push_back(traj.horizon());
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (long t : grid) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
            traj.at(t), Eigen::EigenvaluesOnly);
        lo = std::min(lo, es.eigenvalues().minCoeff());
        hi = std::max(hi, es.eigenvalues().maxCoeff());
    }
    const double margin = 0.05 * (chi - xi);
    const double target_lo = xi + margin;
    const double target_hi = chi - margin;
    PrecisionMap map;
    map.scale = (hi > lo) ? std::min(1.0, (target_hi - target_lo) / (hi - lo))
                          : 1.0;
    map.shift = target_lo - map.scale * lo;
    return map;
}

Eigen::VectorXd sample_signal(const Eigen::MatrixXd& s_t, ModelKind kind,
                              double sigma_e2, std::mt19937_64& rng) {
    const int n = static_cast<int>(s_t.rows());
    switch (kind) {
        case ModelKind::Ggm: {
            Eigen::LLT<Eigen::MatrixXd> llt(s_t);
            if (llt.info() != Eigen::Success)
                throw numerical_error(
                    "sample_signal: precision matrix is not positive "
                    "definite");
            // x = L^-T z gives cov(x) = (L L^T)^-1 = S^-1.
            return llt.matrixU().solve(gaussian_vector(n, rng));
        }
        case ModelKind::Sem: {
            Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - s_t;
            Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
            if (!lu.isInvertible())
                throw numerical_error(
                    "sample_signal: I - S is singular; rescale the edge "
                    "weights (e.g. GraphTrajectory::rescale_spectral)");
            Eigen::VectorXd e =
                std::sqrt(sigma_e2) * gaussian_vector(n, rng);
            return lu.solve(e);
        }
        case ModelKind::Sbm: {
            Eigen::VectorXd deg = s_t.rowwise().sum();
            Eigen::MatrixXd lap = deg.asDiagonal();
            lap -= s_t;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
            const double cutoff = 1e-10 * std::max(1.0, deg.maxCoeff());
            Eigen::VectorXd cov_eigs(n);
            for (int i = 0; i < n; ++i) {
                const double lam = es.eigenvalues()[i];
                cov_eigs[i] = (lam > cutoff ? 1.0 / lam : 0.0) + sigma_e2;
            }
            Eigen::VectorXd z = gaussian_vector(n, rng);
            return es.eigenvectors() *
                   cov_eigs.cwiseSqrt().cwiseProduct(z).eval();
        }
    }
    throw std::logic_error("sample_signal: unknown model kind");
}

SyntheticStream make_stream(const GraphTrajectory& traj, ModelKind kind,
                            int warmup_count, double sigma_e2,
                            std::uint64_t seed, const PrecisionMap* prec_map) {
    std::mt19937_64 rng(seed);
    SyntheticStream out;
    auto gso_at = [&](long t) {
        Eigen::MatrixXd s = traj.at(t);
        return prec_map ? (*prec_map)(s) : s;
    };
    const Eigen::MatrixXd s_init = gso_at(0);
    out.warmup.reserve(warmup_count);
    for (int i = 0; i < warmup_count; ++i)
        out.warmup.push_back(sample_signal(s_init, kind, sigma_e2, rng));
    out.signals.reserve(traj.horizon());
    out.truth.reserve(traj.horizon());
    for (long t = 1; t <= traj.horizon(); ++t) {
        Eigen::MatrixXd s = gso_at(t);
        out.signals.push_back(sample_signal(s, kind, sigma_e2, rng));
        out.truth.push_back(std::move(s));
    }
    return out;
}

}  // namespace tvgl
