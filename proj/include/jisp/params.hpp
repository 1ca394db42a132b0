// Parameter sets of the operator and of the evolution problem.
#pragma once

namespace jisp {

/// Parameters (alpha, beta) of the Jacobi operator on (0, infinity).
///
/// rho = alpha + beta + 1 is always derived from (alpha, beta), never stored,
/// so the invariant rho = alpha + beta + 1 holds exactly by construction.
class JacobiParams {
 public:
  /// Throws DomainError unless alpha >= beta >= -1/2.
  JacobiParams(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double rho() const { return alpha_ + beta_ + 1.0; }

  bool operator==(const JacobiParams&) const = default;

 private:
  double alpha_;
  double beta_;
};

/// Parameters of the time-fractional pseudo-parabolic equation
///   D^gamma (u - a Lap u) - Lap u + m u = f   on (0, T).
struct ProblemParams {
  /// Throws DomainError unless 0 < gamma <= 1, a >= 0, m >= 0, T > 0.
  ProblemParams(double gamma, double a, double m, double T);

  double gamma;
  double a;
  double m;
  double T;
};

}  // namespace jisp
