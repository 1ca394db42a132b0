// Composite 16-point Gauss-Legendre quadrature.
#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace jisp {

/// Nodes (ascending) and weights of the 16-point rule on [-1, 1], computed
/// once by Newton iteration on P_16 to machine precision.
const std::array<double, 16>& gauss16_nodes();
const std::array<double, 16>& gauss16_weights();

struct PanelRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Composite rule on [a, b]: ceil(n_min / 16) equal panels of 16 nodes.
PanelRule composite_gauss16(double a, double b, std::size_t n_min);

}  // namespace jisp
