// Fractional calculus on uniform time grids: Riemann-Liouville integral,
// Caputo derivative (L1 scheme), an independent time-stepping oracle for the
// spectral mode equation, and the Mittag-Leffler ratio bounds.
#pragma once

#include <cstddef>
#include <vector>

namespace jisp {

/// Uniform grid 0 = t_0 < ... < t_{n-1} = T.
class TimeGrid {
 public:
  TimeGrid(double T, std::size_t n_nodes);  // n_nodes >= 2, T > 0

  double T() const { return T_; }
  std::size_t size() const { return n_; }
  double dt() const { return T_ / static_cast<double>(n_ - 1); }
  double t(std::size_t i) const { return dt() * static_cast<double>(i); }

  bool operator==(const TimeGrid&) const = default;

 private:
  double T_;
  std::size_t n_;
};

struct TimeSeries {
  TimeGrid grid;
  std::vector<double> values;
};

/// Left Riemann-Liouville integral of order gamma in (0, 1), evaluated at
/// every grid node with the kernel integrated exactly against the
/// piecewise-linear interpolant of f.  Value at t = 0 is 0.
TimeSeries rl_integral_left(const TimeSeries& f, double gamma);

/// Left Caputo derivative, L1 scheme, order O(dt^{2-gamma}) for smooth f.
/// gamma = 1 falls back to second-order central differences (one-sided at
/// the endpoints).  Value at t = 0 is 0 for gamma < 1.
TimeSeries caputo_derivative(const TimeSeries& f, double gamma);

/// Implicit L1 stepping for D^gamma u + B u = rhs, u(0) = phi0 (backward
/// Euler when gamma = 1).  Independent of the Mittag-Leffler route; converges
/// at O(dt^{2-gamma}) to the analytic solution at t = T.
TimeSeries mode_ode_oracle(double B, const TimeSeries& rhs, double phi0, double gamma);

struct LemmaRatios {
  double r1;  // (1 - E_{g,1}(-l t^g)) / (1 - E_{g,1}(-l T^g)), in (0, 1)
  double r2;  // (E_{g,1}(-l T^g) - E_{g,1}(-l t^g)) / (1 - E_{g,1}(-l T^g)), in (-1, 0)
};

/// Both ratios computed from their own formulas (r2 = r1 - 1 is then a
/// checkable identity, not a tautology).  Requires 0 < t < T, lambda_b > 0.
LemmaRatios lemma_ratio(double gamma, double lambda_b, double t, double T);

}  // namespace jisp
