#ifndef TVGL_CSV_IO_HPP
#define TVGL_CSV_IO_HPP

#include <fstream>
#include <string>
#include <vector>

#include "tvgl/solver.hpp"

namespace tvgl {

/// Streaming reader for rectangular numeric CSV files: one header row of node
/// names, then rows = time and columns = nodes. Constant memory in the number
/// of rows; the file is scanned twice when standardization is requested (one
/// statistics pass, one streaming pass).
///
/// Standardization centers each column and divides by its empirical standard
/// deviation over the full file. The default convention is the sample
/// standard deviation (divide by n - 1, so the column [1,2,3] maps to
/// [-1,0,1]); population_std switches to the 1/n convention.
class CsvSource : public SignalSource {
  public:
    CsvSource(const std::string& path, bool standardize,
              bool population_std = false);

    std::optional<Eigen::VectorXd> next() override;

    int columns() const { return static_cast<int>(names_.size()); }
    long rows() const { return rows_; }
    const std::vector<std::string>& column_names() const { return names_; }
    bool standardized() const { return standardize_; }
    /// Per-column statistics (valid only when standardizing).
    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::VectorXd& scale() const { return scale_; }

  private:
    Eigen::VectorXd parse_row(const std::string& line, long row_number) const;

    std::string path_;
    std::ifstream in_;
    std::vector<std::string> names_;
    bool standardize_;
    long rows_ = 0;      // data rows counted in the first pass
    long cursor_ = 0;    // data rows emitted so far
    Eigen::VectorXd mean_;
    Eigen::VectorXd scale_;
};

/// Writes a signal matrix (rows = time) as CSV with 17 significant digits so
/// that an ingest round trip reproduces the doubles exactly.
void write_signals_csv(const std::string& path,
                       const std::vector<std::string>& names,
                       const std::vector<Eigen::VectorXd>& signals);

}  // namespace tvgl

#endif
