#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gl/error.hpp"
#include "gl/rearrange.hpp"

namespace gl {

namespace {

std::vector<double> split_numbers(const std::string& line, std::size_t line_no) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    char* end = nullptr;
    double v = std::strtod(cell.c_str(), &end);
    while (end && (*end == ' ' || *end == '\r' || *end == '\t')) ++end;
    if (end == cell.c_str() || *end != '\0')
      fail(Errc::Parse, "line " + std::to_string(line_no) + ": not a number: '" + cell + "'");
    out.push_back(v);
  }
  return out;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

GridFunction2D read_grid_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!blank(line)) break;
  }
  if (blank(line)) fail(Errc::Parse, "missing 'N1,N2' header");
  auto header = split_numbers(line, line_no);
  if (header.size() != 2 || header[0] < 1 || header[1] < 1 || header[0] != static_cast<long>(header[0]) ||
      header[1] != static_cast<long>(header[1]))
    fail(Errc::Parse, "header must be 'N1,N2' with positive integers");
  const auto n1 = static_cast<std::size_t>(header[0]);
  const auto n2 = static_cast<std::size_t>(header[1]);

  Matrix m(n2, n1);
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    if (row == n2) fail(Errc::ShapeMismatch, "more than N2 = " + std::to_string(n2) + " data lines");
    auto values = split_numbers(line, line_no);
    if (values.size() != n1)
      fail(Errc::ShapeMismatch, "line " + std::to_string(line_no) + " has " + std::to_string(values.size()) +
                                    " values, expected N1 = " + std::to_string(n1));
    std::copy(values.begin(), values.end(), m.row(row).begin());
    ++row;
  }
  if (row != n2) fail(Errc::ShapeMismatch, "expected " + std::to_string(n2) + " data lines, got " + std::to_string(row));
  return GridFunction2D(std::move(m));
}

GridFunction2D read_grid_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::Io, "cannot open grid file '" + path + "'");
  return read_grid_csv(in);
}

void write_grid_csv(std::ostream& out, const GridFunction2D& f) {
  out << f.n1() << ',' << f.n2() << '\n';
  std::ostringstream os;
  os.precision(17);
  for (std::size_t r = 0; r < f.n2(); ++r) {
    for (std::size_t c = 0; c < f.n1(); ++c) {
      if (c) out << ',';
      os.str("");
      os << f.values()(r, c);
      out << os.str();
    }
    out << '\n';
  }
}

}  // namespace gl
