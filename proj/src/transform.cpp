#include "jisp/transform.hpp"

#include <cmath>

#include "jisp/errors.hpp"
#include "jisp/gauss_legendre.hpp"
#include "jisp/parallel.hpp"
#include "jisp/specfun.hpp"

namespace jisp {

namespace {

void require_finite(const std::vector<double>& v, const char* who) {
  for (double x : v)
    if (!std::isfinite(x)) throw DomainError(std::string(who) + ": non-finite value");
}

}  // namespace

std::shared_ptr<const SpatialGrid> build_spatial_grid(const JacobiParams& p, double x_max,
                                                      std::size_t n) {
  if (!(x_max > 0.0)) throw DomainError("build_spatial_grid: x_max must be > 0");
  if (n < 8) throw DomainError("build_spatial_grid: n must be >= 8");
  weight_a(p, x_max);  // OverflowError before building anything
  PanelRule rule = composite_gauss16(0.0, x_max, n);
  SpatialGrid g{p, x_max, std::move(rule.nodes), std::move(rule.weights)};
  for (std::size_t i = 0; i < g.nodes.size(); ++i) g.weights[i] *= mu_density(p, g.nodes[i]);
  return std::make_shared<const SpatialGrid>(std::move(g));
}

std::shared_ptr<const SpectralGrid> build_spectral_grid(const JacobiParams& p, double lambda_max,
                                                        std::size_t n) {
  if (!(lambda_max > 0.0)) throw DomainError("build_spectral_grid: lambda_max must be > 0");
  if (n < 8) throw DomainError("build_spectral_grid: n must be >= 8");
  PanelRule rule = composite_gauss16(0.0, lambda_max, n);
  SpectralGrid g{p, lambda_max, std::move(rule.nodes), std::move(rule.weights)};
  for (std::size_t i = 0; i < g.nodes.size(); ++i) g.weights[i] *= nu_density(p, g.nodes[i]);
  return std::make_shared<const SpectralGrid>(std::move(g));
}

SampledFunction sample(std::shared_ptr<const SpatialGrid> grid,
                       const std::function<double(double)>& f) {
  SampledFunction out{std::move(grid), {}};
  out.values.reserve(out.grid->nodes.size());
  for (double x : out.grid->nodes) out.values.push_back(f(x));
  return out;
}

SpectralFunction sample(std::shared_ptr<const SpectralGrid> grid,
                        const std::function<double(double)>& f) {
  SpectralFunction out{std::move(grid), {}};
  out.values.reserve(out.grid->nodes.size());
  for (double l : out.grid->nodes) out.values.push_back(f(l));
  return out;
}

JacobiTransform::JacobiTransform(std::shared_ptr<const SpatialGrid> xg,
                                 std::shared_ptr<const SpectralGrid> sg)
    : xg_(std::move(xg)), sg_(std::move(sg)) {
  if (!(xg_->params == sg_->params))
    throw ParamMismatchError("JacobiTransform: grids carry different JacobiParams");
  const auto& xs = xg_->nodes;
  const auto& ls = sg_->nodes;
  kernel_.resize(xs.size() * ls.size());
  const JacobiParams p = xg_->params;
  parallel_for(ls.size(), [&](std::size_t j) {
    double* row = kernel_.data() + j * xs.size();
    for (std::size_t i = 0; i < xs.size(); ++i) row[i] = jacobi_phi(p, ls[j], xs[i]);
  });
}

SpectralFunction JacobiTransform::forward(const SampledFunction& f) const {
  if (!(f.grid->params == xg_->params) || f.grid->nodes != xg_->nodes)
    throw ParamMismatchError("forward: function lives on a different grid");
  require_finite(f.values, "forward");
  SpectralFunction out{sg_, std::vector<double>(sg_->nodes.size(), 0.0)};
  const auto& w = xg_->weights;
  std::size_t nx = xg_->nodes.size();
  for (std::size_t j = 0; j < out.values.size(); ++j) {
    const double* row = kernel_.data() + j * nx;
    double acc = 0.0;
    for (std::size_t i = 0; i < nx; ++i) acc += w[i] * f.values[i] * row[i];
    out.values[j] = acc;
  }
  return out;
}

SampledFunction JacobiTransform::inverse(const SpectralFunction& g) const {
  if (!(g.grid->params == sg_->params) || g.grid->nodes != sg_->nodes)
    throw ParamMismatchError("inverse: function lives on a different grid");
  require_finite(g.values, "inverse");
  std::size_t nx = xg_->nodes.size();
  SampledFunction out{xg_, std::vector<double>(nx, 0.0)};
  const auto& w = sg_->weights;
  for (std::size_t j = 0; j < g.values.size(); ++j) {
    const double* row = kernel_.data() + j * nx;
    double gw = w[j] * g.values[j];
    if (gw == 0.0) continue;
    for (std::size_t i = 0; i < nx; ++i) out.values[i] += gw * row[i];
  }
  return out;
}

SpectralFunction forward_transform(const SampledFunction& f,
                                   std::shared_ptr<const SpectralGrid> sg) {
  return JacobiTransform(f.grid, std::move(sg)).forward(f);
}

SampledFunction inverse_transform(const SpectralFunction& g,
                                  std::shared_ptr<const SpatialGrid> xg) {
  return JacobiTransform(std::move(xg), g.grid).inverse(g);
}

double norm_l2_mu(const SampledFunction& f) {
  require_finite(f.values, "norm_l2_mu");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    acc += f.grid->weights[i] * f.values[i] * f.values[i];
  return std::sqrt(acc);
}

double norm_l2_nu(const SpectralFunction& g) {
  require_finite(g.values, "norm_l2_nu");
  double acc = 0.0;
  for (std::size_t i = 0; i < g.values.size(); ++i)
    acc += g.grid->weights[i] * g.values[i] * g.values[i];
  return std::sqrt(acc);
}

double norm_h(const SpectralFunction& g) {
  require_finite(g.values, "norm_h");
  double rho = g.grid->params.rho();
  double acc = 0.0;
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    double l = g.grid->nodes[i];
    double w = (l * l + rho * rho) * g.values[i];
    acc += g.grid->weights[i] * w * w;
  }
  return std::sqrt(acc);
}

}  // namespace jisp
