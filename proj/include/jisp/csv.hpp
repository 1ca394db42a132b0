// CSV wire formats: two-column files at full double precision.
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace jisp {

/// Writes "header_x,header_y" then one "x,y" row per entry, 17 significant
/// digits, byte-deterministic.
void write_xy_csv(const std::string& path, const std::string& header_x,
                  const std::string& header_y, const std::vector<double>& xs,
                  const std::vector<double>& ys);

/// Reads a two-column CSV written by write_xy_csv (header line required).
/// Throws IoError on missing file or malformed rows.
std::pair<std::vector<double>, std::vector<double>> read_xy_csv(const std::string& path);

/// Formats one double with 17 significant digits (shortest round-trip form
/// is not used; the fixed %.17g format keeps files byte-identical).
std::string format_double(double v);

}  // namespace jisp
