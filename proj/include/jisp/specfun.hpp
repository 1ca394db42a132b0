// Scalar special-function kernels: complex gamma, Gauss 2F1, Mittag-Leffler,
// the Jacobi function, the Harish-Chandra c-function and the operator weight.
#pragma once

#include <complex>

#include "jisp/params.hpp"

namespace jisp {

using Complex = std::complex<double>;

/// Gamma function for complex argument (Lanczos, g = 7, 9 coefficients,
/// reflection for Re z < 0.5).  Relative error <= 1e-12 for |z| <= 50 away
/// from the poles.  Throws PoleError within 1e-12 of a non-positive integer.
Complex gamma_complex(Complex z);

/// Gauss hypergeometric 2F1(a, b; c; z) for real z < 1.
///
/// For z < 0 the Pfaff transformation maps the argument to z/(z-1) in (0,1)
/// and the series is summed there; it is the caller's problem that the mapped
/// argument may approach 1 (ConvergenceError after 10000 terms).  Throws
/// PoleError when c is within 1e-12 of a non-positive integer.
Complex gauss_2f1(Complex a, Complex b, Complex c, double z);

/// Jacobi function phi_lambda^{alpha,beta}(x), the eigenfunction of the
/// Jacobi operator with eigenvalue -(lambda^2 + rho^2), normalized to
/// phi(0) = 1.  Real lambda >= 0, x >= 0.
///
/// Evaluation switches between the hypergeometric series (small x, or small
/// lambda * tanh x) and the c-function connection formula in sech^2 x (the
/// series argument tanh^2 x approaches 1 as x grows and the raw series loses
/// e^{lambda tanh x} digits to cancellation).  lambda = 0 with rho > 0 is
/// served by the series alone and raises ConvergenceError once x is large
/// enough that the series cap is hit (x beyond roughly 3.6).
double jacobi_phi(const JacobiParams& p, double lambda, double x);

/// Operator weight A_{alpha,beta}(x) = 2^{2 rho} sinh^{2a+1}x cosh^{2b+1}x.
/// Throws OverflowError when the result leaves the double range.
double weight_a(const JacobiParams& p, double x);

/// Harish-Chandra c-function; requires lambda > 0 (Gamma(i lambda) pole at 0).
/// The branch of 2^{rho - i lambda} is principal.
Complex harish_chandra_c(const JacobiParams& p, double lambda);

/// Spectral density (2 pi)^{-1/2} |c(lambda)|^{-2}; defined as 0 at
/// lambda = 0 by continuity.
double nu_density(const JacobiParams& p, double lambda);

/// Spatial density (2 pi)^{-1/2} A_{alpha,beta}(x).
double mu_density(const JacobiParams& p, double x);

/// Mittag-Leffler function E_{gamma,beta}(t) for real t, gamma in (0, 1].
///
/// gamma = 1, beta = 1 short-circuits to exp(t).  On the negative axis the
/// evaluation picks between the power series (small |t|, cancellation
/// bounded), the algebraic asymptotic expansion with optimal truncation
/// (large |t|), and a double-exponential quadrature of the spectral
/// representation in between.  Relative error <= 1e-10 for |t| <= 50.
double mittag_leffler(double gamma, double beta, double t);

/// 1 - E_{gamma,1}(-s) for s >= 0, computed without cancellation as s -> 0.
double one_minus_ml(double gamma, double s);

/// Spectral symbol B(lambda) = (lambda^2 + rho^2 + m) / (1 + a (lambda^2 + rho^2)).
double ml_kernel_b(const JacobiParams& p, const ProblemParams& q, double lambda);

}  // namespace jisp
