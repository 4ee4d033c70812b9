#include "rdc/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "rdc/errors.hpp"

namespace rdc {

namespace {

// Next line that is neither blank nor a '#' comment; false at end of stream.
bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

std::string format_sig17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  if (m.rows() == m.cols()) {
    out << m.rows() << '\n';
  } else {
    out << m.rows() << ' ' << m.cols() << '\n';
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_sig17(m(i, j));
    }
    out << '\n';
  }
}

Eigen::MatrixXd read_matrix(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) {
    throw ParseError("matrix text: missing dimension line");
  }
  std::istringstream header(line);
  long rows = 0;
  long cols = 0;
  if (!(header >> rows)) {
    throw ParseError("matrix text: dimension line is not an integer");
  }
  if (!(header >> cols)) {
    cols = rows;  // single integer: square matrix
  }
  std::string trailing;
  if (header >> trailing) {
    throw ParseError("matrix text: unexpected token '" + trailing + "' on dimension line");
  }
  if (rows <= 0 || cols <= 0 || rows > 100000 || cols > 100000) {
    throw ParseError("matrix text: invalid dimensions " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
  Eigen::MatrixXd m(rows, cols);
  Eigen::Index filled = 0;
  const Eigen::Index total = rows * cols;
  std::istringstream row_stream;
  while (filled < total) {
    double value = 0.0;
    if (row_stream >> value) {
      m(filled / cols, filled % cols) = value;
      ++filled;
      continue;
    }
    row_stream.clear();
    std::string bad;
    if (row_stream >> bad) {
      throw ParseError("matrix text: invalid number '" + bad + "'");
    }
    if (!next_content_line(in, line)) {
      throw ParseError("matrix text: expected " + std::to_string(total) +
                       " entries, found " + std::to_string(filled));
    }
    row_stream.clear();
    row_stream.str(line);
  }
  std::string extra;
  if (row_stream >> extra) {
    throw ParseError("matrix text: trailing token '" + extra + "' after last entry");
  }
  return m;
}

void write_matrix_file(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  write_matrix(out, m);
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

Eigen::MatrixXd read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return read_matrix(in);
}

}  // namespace rdc
