#include "tvgl/solver.hpp"

#include <chrono>
#include <istream>

#include "tvgl/errors.hpp"
#include <ostream>
#include <stdexcept>

namespace tvgl {

namespace {

void write_vec(std::ostream& os, const Eigen::VectorXd& v) {
    const auto n = static_cast<std::int64_t>(v.size());
    os.write(reinterpret_cast<const char*>(&n), sizeof(n));
    os.write(reinterpret_cast<const char*>(v.data()),
             static_cast<std::streamsize>(sizeof(double) * n));
}

Eigen::VectorXd read_vec(std::istream& is) {
    std::int64_t n = 0;
    is.read(reinterpret_cast<char*>(&n), sizeof(n));
    Eigen::VectorXd v(n);
    is.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(sizeof(double) * n));
    return v;
}

}  // namespace

Variant variant_from_string(const std::string& name) {
    if (name == "pc") return Variant::PC;
    if (name == "co") return Variant::CO;
    if (name == "cc") return Variant::CC;
    if (name == "sgd") return Variant::SGD;
    if (name == "pc1") return Variant::PC1;
    if (name == "cc1") return Variant::CC1;
    throw std::invalid_argument("unknown variant: " + name);
}

std::string to_string(Variant v) {
    switch (v) {
        case Variant::PC: return "pc";
        case Variant::CO: return "co";
        case Variant::CC: return "cc";
        case Variant::SGD: return "sgd";
        case Variant::PC1: return "pc1";
        case Variant::CC1: return "cc1";
    }
    return "?";
}

std::optional<ForgettingPolicy> variant_policy(Variant v) {
    switch (v) {
        case Variant::SGD:
        case Variant::PC1:
        case Variant::CC1: return ForgettingPolicy::RankOne;
        default: return std::nullopt;
    }
}

SolverConfig SolverConfig::for_variant(Variant v, double alpha, double beta) {
    SolverConfig cfg;
    cfg.variant = v;
    cfg.alpha = alpha;
    cfg.beta = beta;
    switch (v) {
        case Variant::PC:
        case Variant::PC1: cfg.p_steps = 1; cfg.c_steps = 1; break;
        case Variant::CO:
        case Variant::SGD: cfg.p_steps = 0; cfg.c_steps = 1; break;
        case Variant::CC:
        case Variant::CC1: cfg.p_steps = 0; cfg.c_steps = 2; break;
    }
    return cfg;
}

void SolverState::serialize(std::ostream& os) const {
    os.write(reinterpret_cast<const char*>(&step_count), sizeof(step_count));
    write_vec(os, s_hat);
    write_vec(os, s_pred);
}

SolverState SolverState::deserialize(std::istream& is) {
    SolverState st;
    is.read(reinterpret_cast<char*>(&st.step_count), sizeof(st.step_count));
    st.s_hat = read_vec(is);
    st.s_pred = read_vec(is);
    if (!is) throw std::runtime_error("SolverState: truncated state");
    return st;
}

Eigen::VectorXd predict(const ModelOracle& model, const Eigen::VectorXd& s_hat,
                        const SolverConfig& cfg) {
    if (cfg.p_steps <= 0) return s_hat;
    const double step = cfg.effective_step_factor(model) * cfg.alpha;
    const Eigen::VectorXd grad = model.gradient(s_hat);
    const Eigen::VectorXd tgrad = model.time_gradient(s_hat);
    const auto hess = model.hessian_operator(s_hat);
    Eigen::VectorXd s = s_hat;
    for (int p = 0; p < cfg.p_steps; ++p) {
        Eigen::VectorXd descent = grad + hess(s - s_hat) + cfg.h * tgrad;
        s = model.apply_prox(s - step * descent, step);
    }
    return s;
}

Eigen::VectorXd correct(const ModelOracle& model, const Eigen::VectorXd& s_pred,
                        const SolverConfig& cfg) {
    Eigen::VectorXd s = s_pred;
    for (int c = 0; c < cfg.c_steps; ++c) {
        s = model.apply_prox(s - cfg.beta * model.gradient(s), cfg.beta);
    }
    return s;
}

RunRecord step(ModelOracle& model, CovarianceTracker& tracker,
               SolverState& state, const SolverConfig& cfg,
               const Eigen::VectorXd& x_new) {
    const auto t0 = std::chrono::steady_clock::now();
    const Eigen::VectorXd s_prev = state.s_hat;

    state.s_pred = predict(model, state.s_hat, cfg);
    tracker.update(x_new);
    model.refresh(tracker);
    state.s_hat = correct(model, state.s_pred, cfg);
    model.observe(state.s_hat);
    ++state.step_count;

    const auto t1 = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.t = state.step_count;
    rec.s_hat = state.s_hat;
    rec.td = temporal_deviation(state.s_hat, s_prev);
    rec.edge_count = edge_count(state.s_hat);
    rec.tgrad_norm = model.time_gradient(state.s_hat).norm();
    rec.step_seconds = std::chrono::duration<double>(t1 - t0).count();
    if (!state.s_hat.allFinite())
        throw numerical_error("solver: non-finite iterate at step " +
                              std::to_string(state.step_count));
    return rec;
}

std::vector<RunRecord> run_online(ModelOracle& model,
                                  CovarianceTracker& tracker,
                                  const SolverConfig& cfg,
                                  SignalSource& stream,
                                  const OracleCallback& oracle) {
    model.refresh(tracker);
    SolverState state;
    state.s_hat = model.initial_point();
    state.s_pred = state.s_hat;

    std::vector<RunRecord> records;
    long idx = 0;
    while (true) {
        std::optional<Eigen::VectorXd> x;
        try {
            x = stream.next();
        } catch (const std::exception& e) {
            throw data_error("stream error at sample " + std::to_string(idx) +
                             ": " + e.what());
        }
        if (!x) break;
        RunRecord rec = step(model, tracker, state, cfg, *x);
        if (oracle) {
            Eigen::VectorXd s_star = oracle(model, rec.t);
            if (s_star.squaredNorm() > 0.0)
                rec.nse = nse(state.s_hat, s_star);
        }
        records.push_back(std::move(rec));
        ++idx;
    }
    return records;
}

}  // namespace tvgl
