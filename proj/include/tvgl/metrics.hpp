#ifndef TVGL_METRICS_HPP
#define TVGL_METRICS_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace tvgl {

/// Per-time-step log entry of a streaming run.
struct RunRecord {
    long t = 0;
    Eigen::VectorXd s_hat;
    std::optional<double> nse;
    double td = 0.0;           // temporal deviation ||s_t - s_{t-1}||
    long edge_count = 0;
    double tgrad_norm = 0.0;   // ||time gradient|| at s_hat
    double step_seconds = 0.0;
};

/// Normalized squared error ||s_hat - s_star||^2 / ||s_star||^2.
/// Undefined (throws) for a zero-norm reference.
double nse(const Eigen::VectorXd& s_hat, const Eigen::VectorXd& s_star);

/// Euclidean distance between consecutive estimates.
double temporal_deviation(const Eigen::VectorXd& s_t,
                          const Eigen::VectorXd& s_prev);

/// Number of entries with |s_k| > eps. eps < 0 selects the default
/// threshold 1e-4 * max|s_k|.
long edge_count(const Eigen::VectorXd& s, double eps = -1.0);

/// Writes the metrics CSV (t,nse,td,edge_count,tgrad_norm,step_seconds) with
/// 17 significant digits; byte-stable across identical runs.
void export_run(const std::vector<RunRecord>& records,
                const std::string& path);

/// Writes an edge list "i,j,weight" (1-based) of the dense-reconstructed GSO.
/// `hollow` selects hh-space (strict lower triangle) vs h-space
/// (lower triangle including the diagonal) interpretation of `s`.
void export_snapshot(const Eigen::VectorXd& s, int n, bool hollow,
                     const std::string& path);

/// FNV-1a content hash of a file, for run manifests.
std::string file_hash_hex(const std::string& path);

/// Writes "hash  filename" lines for every artifact of a run.
void write_manifest(const std::vector<std::string>& paths,
                    const std::string& manifest_path);

}  // namespace tvgl

#endif
