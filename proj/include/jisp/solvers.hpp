// Direct-problem and inverse-source-problem solvers in Fourier-Jacobi
// spectral form, plus the stability functionals.
#pragma once

#include <cstddef>
#include <vector>

#include "jisp/fractional.hpp"
#include "jisp/params.hpp"
#include "jisp/transform.hpp"

namespace jisp {

struct DirectSolution {
  TimeGrid tgrid;
  std::vector<SampledFunction> u;       // u(t_k, .)
  std::vector<SpectralFunction> u_hat;  // u_hat(t_k, .)
  std::vector<double> h_norms;          // ||u(t_k,.)||_H
  std::vector<double> dt_u_norms;       // ||D^gamma u(t_k,.)||_{2,mu} via the mode equation
};

struct IspSolution {
  TimeGrid tgrid;
  std::vector<SampledFunction> u;
  std::vector<SpectralFunction> u_hat;
  SampledFunction f;
  SpectralFunction f_hat;
  SpectralFunction phi_hat;
  SpectralFunction psi_hat;
  SpectralFunction c_hat;   // C(lambda) of the mode representation
  double initial_residual;  // ||u(0,.) - phi||_{2,mu}
  double terminal_residual; // ||u(T,.) - psi||_{2,mu}
};

/// Spectral mode of the direct problem with time-dependent source:
/// solves D^gamma u_hat + B(lambda) u_hat = f_hat(t) / (1 + a(lambda^2+rho^2))
/// through the integration-by-parts representation, which is exact for
/// piecewise-linear f_hat (panel integrals of E_{gamma,1} reduce to
/// differences of x E_{gamma,2}(-B x^gamma)).
TimeSeries direct_mode(const ProblemParams& q, const JacobiParams& p, double lambda,
                       const TimeSeries& f_hat, double phi_hat);

/// Time-constant source: the closed form
///   u_hat(t) = f_hat/(lambda^2+rho^2+m) (1 - E_{gamma,1}(-B t^gamma))
///            + phi_hat E_{gamma,1}(-B t^gamma).
TimeSeries direct_mode(const ProblemParams& q, const JacobiParams& p, double lambda,
                       double f_hat, double phi_hat, const TimeGrid& tg);

/// Full direct solve: forward transform, one mode per spectral node, inverse
/// transform per time node.  f is constant in time.
DirectSolution direct_solve(const ProblemParams& q, const JacobiTransform& tr,
                            const TimeGrid& tg, const SampledFunction& f,
                            const SampledFunction& phi);

/// Time-dependent source, one SampledFunction per time node.
DirectSolution direct_solve(const ProblemParams& q, const JacobiTransform& tr,
                            const TimeGrid& tg, const std::vector<SampledFunction>& f,
                            const SampledFunction& phi);

struct ModeSolution {
  TimeSeries u_hat;
  double f_hat;
  double c;
};

/// Inverse-source mode: from (phi_hat, psi_hat) recover
///   f_hat = (lambda^2+rho^2+m) (psi_hat - phi_hat E_T) / (1 - E_T),
///   C     = (phi_hat - psi_hat) / (1 - E_T),
///   u_hat(t) = f_hat/(lambda^2+rho^2+m) + C E_{gamma,1}(-B t^gamma),
/// with E_T = E_{gamma,1}(-B T^gamma).  u_hat(0) = phi_hat and
/// u_hat(T) = psi_hat hold to roundoff by construction.
/// Throws DegenerateModeError when lambda^2 + rho^2 + m = 0.
ModeSolution isp_mode(const ProblemParams& q, const JacobiParams& p, double lambda,
                      double phi_hat, double psi_hat, const TimeGrid& tg);

/// Full inverse solve.  Throws HNormError if either datum has a non-finite
/// graph norm after transform.  The degenerate mode (only reachable at
/// lambda = 0 with rho = m = 0, where the nu-weight vanishes) is evaluated
/// at lambda = 1e-8 instead.
IspSolution isp_solve(const ProblemParams& q, const JacobiTransform& tr, const TimeGrid& tg,
                      const SampledFunction& phi, const SampledFunction& psi);

struct StabilityReport {
  double u_diff_sq;    // ||u - u_d||^2 in C([0,T], H) (max over the time grid)
  double f_diff_sq;    // ||f - f_d||^2 in L^2(mu)
  double psi_diff_sq;  // ||psi - psi_d||^2 in H
  double phi_diff_sq;  // ||phi - phi_d||^2 in H
  double r_u;          // u_diff_sq / (psi_diff_sq + phi_diff_sq)
  double r_f;          // f_diff_sq / (psi_diff_sq + phi_diff_sq)
  bool degenerate;     // identical data: ratios are 0/0
};

/// Stability functionals of two ISP solutions on identical grids.
StabilityReport stability_functionals(const IspSolution& a, const IspSolution& b);

struct ModeCoefficientBounds {
  bool ok;
  double min_c1, max_c1;  // coefficient of psi_hat, expected in (0, 1)
  double min_c2, max_c2;  // coefficient of phi_hat, expected in (-1, 0)
};

/// Scans the coefficients of the mode representation over every spectral
/// node and every interior time node.
ModeCoefficientBounds check_mode_coefficients(const ProblemParams& q, const JacobiParams& p,
                                              const SpectralGrid& sg, const TimeGrid& tg);

/// L1-discretized residual ||D^gamma u_hat + B u_hat - f_hat/(1+a L)|| of a
/// mode solution, max over interior nodes (diagnostic for the scheme order).
double mode_equation_residual(const ProblemParams& q, const JacobiParams& p, double lambda,
                              const TimeSeries& u_hat, const TimeSeries& f_hat);

}  // namespace jisp
