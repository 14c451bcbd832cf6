#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "corrmetric/counterexample.hpp"
#include "corrmetric/measures.hpp"

namespace corrmetric {

// Comma-separated data file: first row variable names, then one row of reals
// per observation. Blank lines are ignored. Throws ParseError with 1-based
// row/column on ragged rows or non-numeric cells.
DataMatrix read_data_csv(const std::string& path);

// Comma-separated n x n matrix, no header. The result is unvalidated; run it
// through validate_correlation.
Eigen::MatrixXd read_matrix_csv(const std::string& path);

// Two-column file (x, f(x)) with ascending x; the first row must be "0, 0".
TransformSpec read_transform_csv(const std::string& path);

void write_data_csv(std::ostream& out, const DataMatrix& data);
void write_data_csv(const std::string& path, const DataMatrix& data);

// Columns: theta, the four margins, and a violated_flags column packing the
// per-measure violation bits in measure order (e.g. "1100").
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

}  // namespace corrmetric
