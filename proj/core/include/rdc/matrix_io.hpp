#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace rdc {

/// Matrix text format. First non-comment line holds the dimensions: a single
/// integer d for square matrices, "rows cols" otherwise. Each following row
/// is one line of space-separated entries. Writers emit 17 significant
/// digits (lossless for doubles); readers accept any parseable decimal.
/// Lines starting with '#' are comments and may appear anywhere.
void write_matrix(std::ostream& out, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(std::istream& in);

void write_matrix_file(const std::filesystem::path& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_file(const std::filesystem::path& path);

/// Shortest representation that round-trips a double (17 significant digits).
std::string format_sig17(double value);

}  // namespace rdc
