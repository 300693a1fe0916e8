#include "tvgl/metrics.hpp"

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "tvgl/errors.hpp"
#include "tvgl/vectorization.hpp"

namespace tvgl {

namespace {

std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

double nse(const Eigen::VectorXd& s_hat, const Eigen::VectorXd& s_star) {
    if (s_hat.size() != s_star.size())
        throw std::invalid_argument("nse: length mismatch");
    const double denom = s_star.squaredNorm();
    if (denom == 0.0)
        throw std::domain_error("nse: zero-norm reference, metric undefined");
    return (s_hat - s_star).squaredNorm() / denom;
}

double temporal_deviation(const Eigen::VectorXd& s_t,
                          const Eigen::VectorXd& s_prev) {
    if (s_t.size() != s_prev.size())
        throw std::invalid_argument("temporal_deviation: length mismatch");
    return (s_t - s_prev).norm();
}

long edge_count(const Eigen::VectorXd& s, double eps) {
    if (eps < 0.0) {
        const double mx = s.size() ? s.cwiseAbs().maxCoeff() : 0.0;
        eps = 1e-4 * mx;
    }
    long count = 0;
    for (int i = 0; i < s.size(); ++i)
        if (std::abs(s[i]) > eps) ++count;
    return count;
}

void export_run(const std::vector<RunRecord>& records,
                const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw data_error("export_run: cannot open " + path);
    os << "t,nse,td,edge_count,tgrad_norm,step_seconds\n";
    for (const auto& r : records) {
        os << r.t << ',';
        if (r.nse) os << fmt_g17(*r.nse);
        os << ',' << fmt_g17(r.td) << ',' << r.edge_count << ','
           << fmt_g17(r.tgrad_norm) << ',' << fmt_g17(r.step_seconds) << '\n';
    }
    if (!os) throw data_error("export_run: write failure on " + path);
}

void export_snapshot(const Eigen::VectorXd& s, int n, bool hollow,
                     const std::string& path) {
    const int expected = hollow ? hh_dim(n) : h_dim(n);
    if (s.size() != expected)
        throw std::invalid_argument("export_snapshot: length does not match n");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw data_error("export_snapshot: cannot open " + path);
    int p = 0;
    for (int j = 0; j < n; ++j) {
        for (int i = hollow ? j + 1 : j; i < n; ++i) {
            os << (i + 1) << ',' << (j + 1) << ',' << fmt_g17(s[p++]) << '\n';
        }
    }
    if (!os) throw data_error("export_snapshot: write failure on " + path);
}

std::string file_hash_hex(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw data_error("file_hash_hex: cannot open " + path);
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64-bit
    char buf[1 << 14];
    while (is) {
        is.read(buf, sizeof(buf));
        const auto got = is.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
    }
    char out[17];
    std::snprintf(out, sizeof(out), "%016" PRIx64, h);
    return out;
}

void write_manifest(const std::vector<std::string>& paths,
                    const std::string& manifest_path) {
    std::ofstream os(manifest_path, std::ios::binary);
    if (!os) throw data_error("write_manifest: cannot open " + manifest_path);
    for (const auto& p : paths) os << file_hash_hex(p) << "  " << p << '\n';
}

}  // namespace tvgl
