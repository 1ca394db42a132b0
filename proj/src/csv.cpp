#include "jisp/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "jisp/errors.hpp"

namespace jisp {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_xy_csv(const std::string& path, const std::string& header_x,
                  const std::string& header_y, const std::vector<double>& xs,
                  const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw IoError("write_xy_csv: column length mismatch");
  std::ofstream out(path);
  if (!out) throw IoError("write_xy_csv: cannot open " + path);
  out << header_x << ',' << header_y << '\n';
  for (std::size_t i = 0; i < xs.size(); ++i)
    out << format_double(xs[i]) << ',' << format_double(ys[i]) << '\n';
  if (!out) throw IoError("write_xy_csv: write failed for " + path);
}

std::pair<std::vector<double>, std::vector<double>> read_xy_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("read_xy_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("read_xy_csv: empty file " + path);
  std::vector<double> xs, ys;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b;
    if (!std::getline(row, a, ',') || !std::getline(row, b))
      throw IoError("read_xy_csv: malformed row " + std::to_string(lineno) + " in " + path);
    try {
      xs.push_back(std::stod(a));
      ys.push_back(std::stod(b));
    } catch (const std::exception&) {
      throw IoError("read_xy_csv: non-numeric row " + std::to_string(lineno) + " in " + path);
    }
  }
  return {std::move(xs), std::move(ys)};
}

}  // namespace jisp
