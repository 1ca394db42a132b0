// Quadrature grids carrying the mu- and nu-measures, the Fourier-Jacobi
// transform pair, and the L^2(mu), L^2(nu) and graph-space norms.
#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "jisp/params.hpp"

namespace jisp {

/// Spatial quadrature grid on (0, x_max].  Weights are composite
/// Gauss-Legendre weights multiplied by the mu-density, so that
/// sum_i w_i f(x_i) approximates the integral of f against d mu.
struct SpatialGrid {
  JacobiParams params;
  double x_max;
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Spectral quadrature grid on (0, lambda_max]; weights carry the nu-density
/// (2 pi)^{-1/2} |c(lambda)|^{-2} (zero at lambda = 0 by convention).
struct SpectralGrid {
  JacobiParams params;
  double lambda_max;
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Composite 16-point Gauss-Legendre panels, at least n nodes (n >= 8).
std::shared_ptr<const SpatialGrid> build_spatial_grid(const JacobiParams& p, double x_max,
                                                      std::size_t n);
std::shared_ptr<const SpectralGrid> build_spectral_grid(const JacobiParams& p, double lambda_max,
                                                        std::size_t n);

/// Real-valued function sampled on a spatial grid.
struct SampledFunction {
  std::shared_ptr<const SpatialGrid> grid;
  std::vector<double> values;
};

/// Real-valued function sampled on a spectral grid.
struct SpectralFunction {
  std::shared_ptr<const SpectralGrid> grid;
  std::vector<double> values;
};

SampledFunction sample(std::shared_ptr<const SpatialGrid> grid,
                       const std::function<double(double)>& f);
SpectralFunction sample(std::shared_ptr<const SpectralGrid> grid,
                        const std::function<double(double)>& f);

/// Dense Fourier-Jacobi transform pair between one spatial and one spectral
/// grid.  The kernel matrix phi_{lambda_j}(x_i) is built once (in parallel)
/// and reused by both directions; both maps are plain weighted summations.
class JacobiTransform {
 public:
  /// Throws ParamMismatchError if the grids carry different JacobiParams.
  JacobiTransform(std::shared_ptr<const SpatialGrid> xg, std::shared_ptr<const SpectralGrid> sg);

  /// f_hat(lambda_j) = sum_i w_i f(x_i) phi_{lambda_j}(x_i).
  SpectralFunction forward(const SampledFunction& f) const;

  /// f(x_i) = sum_j w_j g(lambda_j) phi_{lambda_j}(x_i).
  SampledFunction inverse(const SpectralFunction& g) const;

  const std::shared_ptr<const SpatialGrid>& spatial() const { return xg_; }
  const std::shared_ptr<const SpectralGrid>& spectral() const { return sg_; }

 private:
  std::shared_ptr<const SpatialGrid> xg_;
  std::shared_ptr<const SpectralGrid> sg_;
  std::vector<double> kernel_;  // row j holds phi_{lambda_j}(x_i)
};

/// One-shot conveniences (build the kernel for a single application).
SpectralFunction forward_transform(const SampledFunction& f,
                                   std::shared_ptr<const SpectralGrid> sg);
SampledFunction inverse_transform(const SpectralFunction& g,
                                  std::shared_ptr<const SpatialGrid> xg);

double norm_l2_mu(const SampledFunction& f);
double norm_l2_nu(const SpectralFunction& g);

/// Graph norm: ( integral of |(lambda^2 + rho^2) g|^2 d nu )^{1/2}.
double norm_h(const SpectralFunction& g);

}  // namespace jisp
