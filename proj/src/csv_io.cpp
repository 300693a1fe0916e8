#include "tvgl/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "tvgl/errors.hpp"

namespace tvgl {

namespace {

std::string trimmed(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trimmed(line.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

bool next_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (!trimmed(line).empty()) return true;
    }
    return false;
}

}  // namespace

Eigen::VectorXd CsvSource::parse_row(const std::string& line,
                                     long row_number) const {
    const auto fields = split_fields(line);
    const auto n = names_.size();
    if (fields.size() != n)
        throw data_error(path_ + ": row " + std::to_string(row_number) +
                         " has " + std::to_string(fields.size()) +
                         " fields, expected " + std::to_string(n));
    Eigen::VectorXd x(static_cast<int>(n));
    for (std::size_t j = 0; j < n; ++j) {
        const std::string& f = fields[j];
        double v = 0.0;
        const auto [ptr, ec] =
            std::from_chars(f.data(), f.data() + f.size(), v);
        if (ec != std::errc() || ptr != f.data() + f.size())
            throw data_error(path_ + ": row " + std::to_string(row_number) +
                             ", column '" + names_[j] + "': non-numeric cell '" +
                             f + "'");
        x[static_cast<int>(j)] = v;
    }
    return x;
}

CsvSource::CsvSource(const std::string& path, bool standardize,
                     bool population_std)
    : path_(path), standardize_(standardize) {
    std::ifstream header_pass(path_);
    if (!header_pass) throw data_error(path_ + ": cannot open file");
    std::string line;
    if (!next_line(header_pass, line))
        throw data_error(path_ + ": empty file, no header row");
    names_ = split_fields(line);

    // Statistics pass (Welford per column); also validates every row so that
    // errors surface before any streaming output is produced.
    const int n = columns();
    mean_ = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd m2 = Eigen::VectorXd::Zero(n);
    long row_number = 1;
    while (next_line(header_pass, line)) {
        ++row_number;
        const Eigen::VectorXd x = parse_row(line, row_number);
        ++rows_;
        const Eigen::VectorXd delta = x - mean_;
        mean_ += delta / static_cast<double>(rows_);
        m2 += delta.cwiseProduct(x - mean_);
    }
    if (rows_ == 0) throw data_error(path_ + ": no data rows");

    if (standardize_) {
        const double denom = population_std
                                 ? static_cast<double>(rows_)
                                 : static_cast<double>(std::max<long>(
                                       rows_ - 1, 1));
        scale_ = (m2 / denom).cwiseSqrt();
        for (int j = 0; j < n; ++j)
            if (!(scale_[j] > 0.0))
                throw data_error(path_ + ": column '" + names_[j] +
                                 "' is constant; cannot standardize");
    } else {
        mean_.setZero();
        scale_ = Eigen::VectorXd::Ones(n);
    }

    in_.open(path_);
    if (!in_) throw data_error(path_ + ": cannot reopen file");
    if (!next_line(in_, line))
        throw data_error(path_ + ": header vanished between passes");
}

std::optional<Eigen::VectorXd> CsvSource::next() {
    std::string line;
    if (!next_line(in_, line)) return std::nullopt;
    ++cursor_;
    Eigen::VectorXd x = parse_row(line, cursor_ + 1);
    if (standardize_) x = (x - mean_).cwiseQuotient(scale_);
    return x;
}

void write_signals_csv(const std::string& path,
                       const std::vector<std::string>& names,
                       const std::vector<Eigen::VectorXd>& signals) {
    std::ofstream out(path);
    if (!out) throw data_error(path + ": cannot open file for writing");
    for (std::size_t j = 0; j < names.size(); ++j)
        out << (j ? "," : "") << names[j];
    out << '\n';
    char buf[64];
    for (const auto& x : signals) {
        if (static_cast<std::size_t>(x.size()) != names.size())
            throw std::invalid_argument(
                "write_signals_csv: signal length does not match header");
        for (int j = 0; j < x.size(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", x[j]);
            out << (j ? "," : "") << buf;
        }
        out << '\n';
    }
    if (!out) throw data_error(path + ": write failed");
}

}  // namespace tvgl
