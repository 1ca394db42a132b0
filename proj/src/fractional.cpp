#include "jisp/fractional.hpp"

#include <cmath>

#include "jisp/errors.hpp"
#include "jisp/specfun.hpp"

namespace jisp {

namespace {

void require_match(const TimeSeries& f, const char* who) {
  if (f.values.size() != f.grid.size())
    throw GridMismatchError(std::string(who) + ": values/grid length mismatch");
  for (double v : f.values)
    if (!std::isfinite(v)) throw DomainError(std::string(who) + ": non-finite value");
}

}  // namespace

TimeGrid::TimeGrid(double T, std::size_t n_nodes) : T_(T), n_(n_nodes) {
  if (!(T > 0.0)) throw DomainError("TimeGrid: T must be > 0");
  if (n_nodes < 2) throw DomainError("TimeGrid: need at least 2 nodes");
}

TimeSeries rl_integral_left(const TimeSeries& f, double gamma) {
  if (!(gamma > 0.0) || !(gamma < 1.0))
    throw DomainError("rl_integral_left: gamma must lie in (0, 1)");
  require_match(f, "rl_integral_left");
  std::size_t n = f.grid.size();
  double dt = f.grid.dt();
  double rg = std::exp(-std::lgamma(gamma));
  TimeSeries out{f.grid, std::vector<double>(n, 0.0)};
  for (std::size_t i = 1; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      double tau0 = dt * static_cast<double>(i - j);      // t_i - t_j
      double tau1 = dt * static_cast<double>(i - j - 1);  // t_i - t_{j+1}
      double p0 = std::pow(tau0, gamma), p1 = std::pow(tau1, gamma);
      double a = (p0 - p1) / gamma;
      double b = tau0 * a - (tau0 * p0 - tau1 * p1) / (gamma + 1.0);
      acc += f.values[j] * a + (f.values[j + 1] - f.values[j]) * b / dt;
    }
    out.values[i] = acc * rg;
  }
  return out;
}

TimeSeries caputo_derivative(const TimeSeries& f, double gamma) {
  if (!(gamma > 0.0) || !(gamma <= 1.0))
    throw DomainError("caputo_derivative: gamma must lie in (0, 1]");
  require_match(f, "caputo_derivative");
  std::size_t n = f.grid.size();
  double dt = f.grid.dt();
  TimeSeries out{f.grid, std::vector<double>(n, 0.0)};
  if (gamma == 1.0) {
    if (n == 2) {
      double s = (f.values[1] - f.values[0]) / dt;
      out.values = {s, s};
      return out;
    }
    out.values[0] = (-3.0 * f.values[0] + 4.0 * f.values[1] - f.values[2]) / (2.0 * dt);
    for (std::size_t i = 1; i + 1 < n; ++i)
      out.values[i] = (f.values[i + 1] - f.values[i - 1]) / (2.0 * dt);
    out.values[n - 1] =
        (3.0 * f.values[n - 1] - 4.0 * f.values[n - 2] + f.values[n - 3]) / (2.0 * dt);
    return out;
  }
  double c = std::exp(-std::lgamma(2.0 - gamma)) / dt;
  for (std::size_t i = 1; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      double tau0 = dt * static_cast<double>(i - j);
      double tau1 = dt * static_cast<double>(i - j - 1);
      double w = std::pow(tau0, 1.0 - gamma) - std::pow(tau1, 1.0 - gamma);
      acc += w * (f.values[j + 1] - f.values[j]);
    }
    out.values[i] = c * acc;
  }
  return out;
}

TimeSeries mode_ode_oracle(double B, const TimeSeries& rhs, double phi0, double gamma) {
  if (!(B > 0.0)) throw DomainError("mode_ode_oracle: B must be > 0");
  if (!(gamma > 0.0) || !(gamma <= 1.0))
    throw DomainError("mode_ode_oracle: gamma must lie in (0, 1]");
  require_match(rhs, "mode_ode_oracle");
  std::size_t n = rhs.grid.size();
  double dt = rhs.grid.dt();
  TimeSeries u{rhs.grid, std::vector<double>(n, 0.0)};
  u.values[0] = phi0;
  if (gamma == 1.0) {
    for (std::size_t i = 1; i < n; ++i)
      u.values[i] = (u.values[i - 1] + dt * rhs.values[i]) / (1.0 + dt * B);
    return u;
  }
  double mu = std::pow(dt, -gamma) * std::exp(-std::lgamma(2.0 - gamma));
  std::vector<double> a(n);  // a_k = (k+1)^{1-g} - k^{1-g}
  for (std::size_t k = 0; k < n; ++k)
    a[k] = std::pow(static_cast<double>(k + 1), 1.0 - gamma) -
           std::pow(static_cast<double>(k), 1.0 - gamma);
  for (std::size_t i = 1; i < n; ++i) {
    double hist = 0.0;
    for (std::size_t j = 0; j + 1 < i; ++j)
      hist += a[i - 1 - j] * (u.values[j + 1] - u.values[j]);
    u.values[i] = (rhs.values[i] + mu * (a[0] * u.values[i - 1] - hist)) / (mu * a[0] + B);
  }
  return u;
}

LemmaRatios lemma_ratio(double gamma, double lambda_b, double t, double T) {
  if (!(gamma > 0.0) || !(gamma <= 1.0)) throw DomainError("lemma_ratio: gamma in (0, 1]");
  if (!(lambda_b > 0.0)) throw DomainError("lemma_ratio: lambda must be > 0");
  if (!(t > 0.0) || !(t < T)) throw DomainError("lemma_ratio: requires 0 < t < T");
  double et = mittag_leffler(gamma, 1.0, -lambda_b * std::pow(t, gamma));
  double eT = mittag_leffler(gamma, 1.0, -lambda_b * std::pow(T, gamma));
  double den = one_minus_ml(gamma, lambda_b * std::pow(T, gamma));
  return {one_minus_ml(gamma, lambda_b * std::pow(t, gamma)) / den, (eT - et) / den};
}

}  // namespace jisp
