#include "jisp/specfun.hpp"

#include <cmath>
#include <limits>

#include "jisp/errors.hpp"

namespace jisp {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kPoleGuard = 1e-12;
constexpr double kSeriesTol = 1e-14;
constexpr int kSeriesCap = 10000;

bool near_nonpositive_integer(Complex z, double radius) {
  double n = std::round(z.real());
  if (n > 0.0) return false;
  return std::abs(z - Complex(n, 0.0)) <= radius;
}

// Lanczos approximation, g = 7, 9 coefficients; valid for Re z >= 0.5.
Complex lanczos_gamma(Complex z) {
  static constexpr int g = 7;
  static constexpr double p[g + 2] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  z -= 1.0;
  Complex x = p[0];
  for (int i = 1; i < g + 2; ++i) x += p[i] / (z + static_cast<double>(i));
  Complex t = z + (g + 0.5);
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

struct SeriesResult {
  Complex value;
  bool converged;
};

// Sum of the hypergeometric series at argument w, |w| < 1.  Terminates
// exactly when a or b is a non-positive integer; otherwise stops once the
// geometric tail bound |term| * r / (1 - r) drops below tol * |sum|.
SeriesResult hyp2f1_series(Complex a, Complex b, Complex c, double w) {
  Complex sum = 1.0;
  Complex term = 1.0;
  for (int k = 0; k < kSeriesCap; ++k) {
    double dk = static_cast<double>(k);
    Complex ratio = (a + dk) * (b + dk) / ((c + dk) * (dk + 1.0)) * w;
    term *= ratio;
    if (term == Complex(0.0)) return {sum, true};
    sum += term;
    double r = std::abs(ratio);
    if (r < 1.0) {
      double tail = std::abs(term) * r / (1.0 - r);
      if (tail <= kSeriesTol * std::abs(sum)) return {sum, true};
    }
  }
  return {sum, false};
}

// Reciprocal gamma for real argument; exactly 0 at the poles.
double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  double sign = 1.0;
  if (x < 0.0 && std::fmod(std::ceil(-x), 2.0) != 0.0) sign = -1.0;
  return sign * std::exp(-std::lgamma(x));
}

// Sign of Gamma(x) off the poles.
double gamma_sign(double x) {
  if (x > 0.0) return 1.0;
  if (x == std::floor(x)) return 0.0;
  return std::fmod(std::ceil(-x), 2.0) != 0.0 ? -1.0 : 1.0;
}

struct BranchValue {
  double value = 0.0;
  double bound = std::numeric_limits<double>::infinity();  // abs error estimate
  bool usable = false;
};

// Power series sum_k t^k / Gamma(gamma k + beta) with compensated summation.
// Terms are formed in log space so intermediate overflow cannot occur before
// the gamma denominator catches up.  The reported bound covers roundoff
// amplification by the largest term.
BranchValue ml_series(double g, double b, double t) {
  BranchValue out;
  double sum = 0.0;
  double comp = 0.0;
  double maxmag = 0.0;
  double lt = std::log(std::abs(t));
  bool alternating = t < 0.0;
  double prevmag = std::numeric_limits<double>::infinity();
  bool decaying = false;
  int k = 0;
  for (; k < 4000; ++k) {
    double arg = g * k + b;
    double sg = gamma_sign(arg);
    double term = 0.0;
    double mag = 0.0;
    if (sg != 0.0) {
      double lmag = k * lt - std::lgamma(arg);
      if (lmag > 690.0) return out;  // would overflow; branch unusable
      mag = std::exp(lmag);
      term = sg * mag;
      if (alternating && (k & 1)) term = -term;
    }
    double y = term - comp;
    double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
    maxmag = std::max(maxmag, mag);
    if (mag < prevmag) {
      if (decaying && mag <= 1e-17 * (std::abs(sum) + 1e-300)) {
        ++k;
        break;
      }
      decaying = true;
    } else {
      decaying = false;
    }
    if (mag > 0.0) prevmag = mag;
  }
  out.value = sum;
  out.bound = maxmag * 1e-16 + std::abs(sum) * 1e-15;
  out.usable = k < 4000;
  return out;
}

// Algebraic asymptotic expansion of E_{g,b}(-s) for large s, optimally
// truncated: terms are added while their magnitude decreases; the first
// non-decreasing term bounds the remainder.
BranchValue ml_asymptotic(double g, double b, double s) {
  BranchValue out;
  double ls = std::log(s);
  double sum = 0.0;
  double last_nonzero = std::numeric_limits<double>::infinity();
  double bound = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 120; ++k) {
    double arg = b - g * k;
    double sg = gamma_sign(arg);
    double mag = 0.0;
    if (sg != 0.0) mag = std::exp(-k * ls - std::lgamma(arg));
    if (mag > 0.0 && mag >= last_nonzero) {
      bound = mag;
      break;
    }
    double term = (k & 1) ? sg * mag : -sg * mag;
    sum += term;
    if (mag > 0.0) {
      last_nonzero = mag;
      bound = mag;
      if (mag <= 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
  }
  out.value = sum;
  out.bound = bound + std::abs(sum) * 1e-15;
  out.usable = std::isfinite(sum);
  return out;
}

// Spectral (Bromwich-lip) representation of E_{g,b}(-s), 0 < g < 1, s > 0,
// b < g + 1:
//   E = (1/pi) Int_0^inf e^{-u} u^{g-b} (u^g sin(pi b) - s sin(pi(g-b)))
//                     / (u^{2g} + 2 s u^g cos(pi g) + s^2) du.
// Evaluated with the double-exponential map u = exp(t - e^{-t}) and
// trapezoid refinement; handles the u^{g-b} endpoint behaviour that defeats
// polynomial-order rules.
double ml_integral_low(double g, double b, double s) {
  double sinb = std::sin(kPi * b);
  double singb = std::sin(kPi * (g - b));
  double cosg = std::cos(kPi * g);

  auto integrand = [&](double t) {
    double emt = std::exp(-t);
    double lu = t - emt;          // log u
    double u = std::exp(lu);
    if (!std::isfinite(u)) return 0.0;
    double ug = std::exp(g * lu);
    double ugb = std::exp((g - b) * lu);
    double eu = (u > 700.0) ? 0.0 : std::exp(-u);
    if (eu == 0.0) return 0.0;
    double den = ug * ug + 2.0 * s * ug * cosg + s * s;
    double jac = u * (1.0 + emt);  // du/dt
    return eu * ugb * (ug * sinb - s * singb) / den * jac / kPi;
  };

  // Lower window: the u^{g-b+1} mass extends to log u ~ -44 / (g - b + 1).
  double q = g - b + 1.0;
  double t_lo = -std::log(48.0 / q);
  if (t_lo > -3.0) t_lo = -3.0;
  double t_hi = 6.7;

  double h = 0.5;
  auto trap = [&](double step) {
    double acc = 0.0;
    for (double t = t_lo; t <= t_hi + 1e-12; t += step) acc += integrand(t);
    return acc * step;
  };
  double prev = trap(h);
  for (int it = 0; it < 7; ++it) {
    h *= 0.5;
    double cur = trap(h);
    if (std::abs(cur - prev) <= 1e-13 * std::abs(cur) + 1e-305) return cur;
    prev = cur;
  }
  throw ConvergenceError("mittag_leffler: integral branch did not stabilize");
}

// Integral branch with downward beta-recurrence
//   E_{g,b}(-s) = (1/Gamma(b-g) - E_{g,b-g}(-s)) / s
// applied until b < g + 1, where the spectral representation is valid.
double ml_integral(double g, double b, double s) {
  if (b >= g + 1.0) return (rgamma(b - g) - ml_integral(g, b - g, s)) / s;
  return ml_integral_low(g, b, s);
}

// E_{1,b}(t) = M(1; b; t) / Gamma(b); for t < 0 the Kummer transform
// M(1;b;t) = e^t M(b-1; b; -t) turns the sum into one with at most one sign
// change, so no cancellation grows with |t|.
double ml_gamma_one(double b, double t) {
  if (b == 1.0) return std::exp(t);
  if (b == 2.0) return t == 0.0 ? 1.0 : std::expm1(t) / t;
  double sum = 1.0;
  double term = 1.0;
  if (t >= 0.0) {
    for (int k = 0; k < 4000; ++k) {
      term *= t / (b + k);
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum * rgamma(b);
  }
  double s = -t;
  for (int k = 0; k < 4000; ++k) {
    term *= (b - 1.0 + k) / (b + k) * s / (k + 1.0);
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum) && k > 2) break;
  }
  return std::exp(-s) * sum * rgamma(b);
}

// Predicted base-10 digits lost to cancellation when summing the power
// series at t = -s: log10(max term) - log10(|E| ~ 1/(1+s)).
double ml_series_loss(double g, double b, double s) {
  if (s <= 1.0) return 0.0;
  double m = std::pow(s, 1.0 / g);
  double kstar = std::max(0.0, (m - b) / g);
  double logmax = kstar * std::log(s) - std::lgamma(g * kstar + b);
  return (logmax + std::log1p(s)) / std::log(10.0);
}

}  // namespace

JacobiParams::JacobiParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha >= beta) || !(beta >= -0.5) || !std::isfinite(alpha) || !std::isfinite(beta))
    throw DomainError("alpha >= beta >= -1/2 violated");
}

ProblemParams::ProblemParams(double gamma_, double a_, double m_, double T_)
    : gamma(gamma_), a(a_), m(m_), T(T_) {
  if (!(gamma > 0.0) || !(gamma <= 1.0)) throw DomainError("ProblemParams: gamma must lie in (0, 1]");
  if (!(a >= 0.0)) throw DomainError("ProblemParams: a must be >= 0");
  if (!(m >= 0.0)) throw DomainError("ProblemParams: m must be >= 0");
  if (!(T > 0.0)) throw DomainError("ProblemParams: T must be > 0");
}

Complex gamma_complex(Complex z) {
  if (near_nonpositive_integer(z, kPoleGuard))
    throw PoleError("gamma_complex: argument within 1e-12 of a non-positive integer");
  Complex g;
  if (z.real() < 0.5) {
    g = kPi / (std::sin(kPi * z) * lanczos_gamma(1.0 - z));
  } else {
    g = lanczos_gamma(z);
  }
  if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
    throw OverflowError("gamma_complex: result not representable");
  return g;
}

Complex gauss_2f1(Complex a, Complex b, Complex c, double z) {
  if (near_nonpositive_integer(c, kPoleGuard))
    throw PoleError("gauss_2f1: c within 1e-12 of a non-positive integer");
  if (!(z < 1.0)) throw DomainError("gauss_2f1: requires z < 1");
  if (z == 0.0) return 1.0;
  if (z > 0.0) {
    auto r = hyp2f1_series(a, b, c, z);
    if (!r.converged) throw ConvergenceError("gauss_2f1: series stalled before tolerance");
    return r.value;
  }
  double w = z / (z - 1.0);
  auto r = hyp2f1_series(a, c - b, c, w);
  if (!r.converged)
    throw ConvergenceError("gauss_2f1: Pfaff-transformed series stalled (argument near 1)");
  return std::pow(Complex(1.0) - z, -a) * r.value;
}

double jacobi_phi(const JacobiParams& p, double lambda, double x) {
  if (!(lambda >= 0.0)) throw DomainError("jacobi_phi: lambda must be real and >= 0");
  if (!(x >= 0.0)) throw DomainError("jacobi_phi: x must be >= 0");
  if (x == 0.0) return 1.0;

  double rho = p.rho();
  Complex a(0.5 * rho, 0.5 * lambda);
  Complex b(0.5 * rho, -0.5 * lambda);
  Complex c(p.alpha() + 1.0, 0.0);
  if (lambda == 0.0 && rho == 0.0) return 1.0;  // a = 0: series terminates at 1

  double th = std::tanh(x);
  double w = th * th;
  bool series_ok = (x <= 0.1) || (lambda * th <= 12.0 && w <= 0.9);

  Complex val;
  if (series_ok || lambda == 0.0) {
    double sh = std::sinh(x);
    val = gauss_2f1(a, b, c, -sh * sh);
  } else {
    // Connection formula in u = sech^2 x: the oscillation moves into the
    // stable prefactor cosh^{-(rho + i lambda)} x and the series argument
    // decays with x instead of approaching 1.
    double lc = std::log(std::cosh(x));
    double u = std::exp(-2.0 * lc);
    Complex coef = gamma_complex(c) * gamma_complex(b - a) /
                   (gamma_complex(b) * gamma_complex(c - a));
    auto f = hyp2f1_series(a, c - b, a - b + 1.0, u);
    if (!f.converged)
      throw ConvergenceError("jacobi_phi: connection series stalled before tolerance");
    Complex term = coef * std::exp(-Complex(rho, lambda) * lc) * f.value;
    return 2.0 * term.real();
  }
  if (std::abs(val.imag()) > 1e-10 * std::max(1.0, std::abs(val.real())))
    throw ConvergenceError("jacobi_phi: imaginary residue above diagnostic threshold");
  return val.real();
}

double weight_a(const JacobiParams& p, double x) {
  if (!(x >= 0.0)) throw DomainError("weight_a: x must be >= 0");
  double rho = p.rho();
  double v = std::pow(2.0, 2.0 * rho) * std::pow(std::sinh(x), 2.0 * p.alpha() + 1.0) *
             std::pow(std::cosh(x), 2.0 * p.beta() + 1.0);
  if (!std::isfinite(v)) throw OverflowError("weight_a: overflow of sinh/cosh powers");
  return v;
}

Complex harish_chandra_c(const JacobiParams& p, double lambda) {
  if (!(lambda > 0.0)) throw PoleError("harish_chandra_c: requires lambda > 0");
  double rho = p.rho();
  Complex il(0.0, lambda);
  Complex num = std::pow(Complex(2.0), Complex(rho, -lambda)) * gamma_complex(il) *
                gamma_complex(Complex(p.alpha() + 1.0, 0.0));
  Complex d1 = gamma_complex(Complex(0.5 * rho, 0.5 * lambda));
  Complex d2 = gamma_complex(Complex(0.5 * (p.alpha() - p.beta() + 1.0), 0.5 * lambda));
  Complex v = num / (d1 * d2);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw OverflowError("harish_chandra_c: result not representable");
  return v;
}

double nu_density(const JacobiParams& p, double lambda) {
  if (lambda == 0.0) return 0.0;  // |c|^{-2} ~ lambda^2 -> 0
  Complex cv = harish_chandra_c(p, lambda);
  double c2 = std::norm(cv);
  double v = 1.0 / (std::sqrt(2.0 * kPi) * c2);
  if (!std::isfinite(v)) throw OverflowError("nu_density: overflow");
  return v;
}

double mu_density(const JacobiParams& p, double x) {
  return weight_a(p, x) / std::sqrt(2.0 * kPi);
}

double mittag_leffler(double gamma, double beta, double t) {
  if (!(gamma > 0.0) || !(gamma <= 1.0))
    throw DomainError("mittag_leffler: gamma must lie in (0, 1]");
  if (!std::isfinite(beta) || !std::isfinite(t))
    throw DomainError("mittag_leffler: beta and t must be finite");
  if (gamma == 1.0) return ml_gamma_one(beta, t);
  if (t == 0.0) return rgamma(beta);

  if (t > 0.0) {
    auto s = ml_series(gamma, beta, t);
    if (!s.usable) throw OverflowError("mittag_leffler: growth overflows for t > 0");
    return s.value;
  }

  double s = -t;
  double loss = ml_series_loss(gamma, beta, s);
  if (loss < 4.0) {
    auto ser = ml_series(gamma, beta, t);
    if (ser.usable && ser.bound <= 1e-12 * std::abs(ser.value) + 1e-300) {
      // Near the handoff, cross-check against the asymptotic branch and defer
      // to the integral representation if they disagree.
      if (loss > 3.0) {
        auto as = ml_asymptotic(gamma, beta, s);
        if (as.usable && as.bound <= 1e-12 * std::abs(as.value) &&
            std::abs(as.value - ser.value) > 1e-8 * std::abs(ser.value))
          return ml_integral(gamma, beta, s);
      }
      return ser.value;
    }
  }
  auto as = ml_asymptotic(gamma, beta, s);
  if (as.usable && as.bound <= 1e-13 * std::abs(as.value) + 1e-300) return as.value;
  return ml_integral(gamma, beta, s);
}

double one_minus_ml(double gamma, double s) {
  if (!(s >= 0.0)) throw DomainError("one_minus_ml: s must be >= 0");
  if (s == 0.0) return 0.0;
  if (gamma == 1.0) return -std::expm1(-s);
  if (s < 0.5) {
    // 1 - E_{g,1}(-s) = sum_{k>=1} (-1)^{k+1} s^k / Gamma(g k + 1)
    double sum = 0.0;
    double sk = 1.0;
    for (int k = 1; k < 200; ++k) {
      sk *= s;
      double term = sk * rgamma(gamma * k + 1.0);
      sum += (k & 1) ? term : -term;
      if (term <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return 1.0 - mittag_leffler(gamma, 1.0, -s);
}

double ml_kernel_b(const JacobiParams& p, const ProblemParams& q, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("ml_kernel_b: lambda must be >= 0");
  double ell = lambda * lambda + p.rho() * p.rho();
  return (ell + q.m) / (1.0 + q.a * ell);
}

}  // namespace jisp
