#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "jisp/errors.hpp"
#include "jisp/specfun.hpp"

using jisp::Complex;
using jisp::JacobiParams;
using jisp::ProblemParams;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

// Independent route to phi: RK4 on the eigenfunction equation
//   phi'' + ((2a+1) coth x + (2b+1) tanh x) phi' + (lambda^2 + rho^2) phi = 0
// started at x0 = 0.01 from the raw hypergeometric series (argument -1e-4,
// converges in a handful of terms).
double phi_by_ode(const JacobiParams& p, double lambda, double x_end) {
  double rho = p.rho();
  Complex a(0.5 * rho, 0.5 * lambda), b(0.5 * rho, -0.5 * lambda), c(p.alpha() + 1.0, 0.0);
  double x0 = 0.01;
  double z0 = -std::sinh(x0) * std::sinh(x0);
  double phi0 = jisp::gauss_2f1(a, b, c, z0).real();
  double dphi0 =
      (a * b / c * jisp::gauss_2f1(a + 1.0, b + 1.0, c + 1.0, z0)).real() * (-std::sinh(2.0 * x0));
  auto rhs = [&](double x, double y, double yp) {
    double coef = (2.0 * p.alpha() + 1.0) / std::tanh(x) + (2.0 * p.beta() + 1.0) * std::tanh(x);
    return -coef * yp - (lambda * lambda + rho * rho) * y;
  };
  double h = 1e-4;
  double x = x0, y = phi0, yp = dphi0;
  while (x < x_end - 1e-12) {
    double step = std::min(h, x_end - x);
    double k1y = yp, k1p = rhs(x, y, yp);
    double k2y = yp + 0.5 * step * k1p, k2p = rhs(x + 0.5 * step, y + 0.5 * step * k1y, k2y);
    double k3y = yp + 0.5 * step * k2p, k3p = rhs(x + 0.5 * step, y + 0.5 * step * k2y, k3y);
    double k4y = yp + step * k3p, k4p = rhs(x + step, y + step * k3y, k4y);
    y += step / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    yp += step / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    x += step;
  }
  return y;
}

}  // namespace

TEST_CASE("gamma_complex: anchor values") {
  CHECK(rel_err(jisp::gamma_complex({1.0, 0.0}), {1.0, 0.0}) < 1e-14);
  CHECK(rel_err(jisp::gamma_complex({0.5, 0.0}), {std::sqrt(kPi), 0.0}) < 1e-14);
  // high-precision references
  CHECK(rel_err(jisp::gamma_complex({1.0, 1.0}),
                {0.49801566811835604, -0.15494982830181069}) < 1e-13);
  CHECK(rel_err(jisp::gamma_complex({0.5, 10.0}),
                {3.3787243762342358e-7, 1.6893698390389189e-7}) < 1e-12);
  CHECK(rel_err(jisp::gamma_complex({-2.5, 0.5}),
                {-0.33387520352243234, -0.20645730796360841}) < 1e-12);
  CHECK(rel_err(jisp::gamma_complex({0.0, 1.0}),
                {-0.15494982830181069, -0.49801566811835604}) < 1e-13);
}

TEST_CASE("gamma_complex: reflection identity on a random strip") {
  std::mt19937 rng(7u);
  std::uniform_real_distribution<double> ure(-5.0, 5.0);
  int checked = 0;
  while (checked < 200) {
    Complex z(ure(rng), ure(rng));
    if (std::abs(z.imag()) < 0.05 && z.real() < 0.6) continue;  // stay off the pole line
    Complex lhs = jisp::gamma_complex(z) * jisp::gamma_complex(1.0 - z) * std::sin(kPi * z) / kPi;
    CHECK(std::abs(lhs - Complex(1.0, 0.0)) < 1e-10);
    ++checked;
  }
}

TEST_CASE("gamma_complex: recurrence and |z| up to 50") {
  for (double re : {0.5, 3.0, 17.0, 44.0}) {
    for (double im : {0.0, 2.5, 20.0}) {
      Complex z(re, im);
      Complex lhs = jisp::gamma_complex(z + 1.0);
      Complex rhs = z * jisp::gamma_complex(z);
      CHECK(rel_err(lhs, rhs) < 1e-12);
    }
  }
  // real axis against lgamma
  for (double x : {10.0, 25.5, 50.0}) {
    double want = std::exp(std::lgamma(x));
    CHECK(rel_err(jisp::gamma_complex({x, 0.0}).real(), want) < 1e-12);
  }
}

TEST_CASE("gamma_complex: pole guard") {
  CHECK_THROWS_AS((void)jisp::gamma_complex({0.0, 0.0}), jisp::PoleError);
  CHECK_THROWS_AS((void)jisp::gamma_complex({-3.0, 0.0}), jisp::PoleError);
  CHECK_THROWS_AS((void)jisp::gamma_complex({-1.0 + 1e-13, 0.0}), jisp::PoleError);
  CHECK_NOTHROW((void)jisp::gamma_complex({-1.0 + 1e-9, 0.0}));
}

TEST_CASE("gauss_2f1: anchor values") {
  CHECK(jisp::gauss_2f1({0.3, 0.0}, {4.0, 0.0}, {1.1, 0.0}, 0.0) == Complex(1.0, 0.0));
  CHECK(rel_err(jisp::gauss_2f1({1, 0}, {1, 0}, {2, 0}, 0.5).real(), 2.0 * std::log(2.0)) <
        1e-12);
  // binomial collapse through the Pfaff path
  CHECK(rel_err(jisp::gauss_2f1({0.5, 0}, {0.75, 0}, {0.75, 0}, -1.0).real(),
                1.0 / std::sqrt(2.0)) < 1e-12);
  // complex parameters, negative argument (high-precision reference)
  CHECK(rel_err(jisp::gauss_2f1({0.3, 0.2}, {1.1, -0.4}, {2.3, 0.0}, -2.5),
                {0.76477018896209086, -0.060139436118803879}) < 1e-11);
}

TEST_CASE("gauss_2f1: terminating polynomial case") {
  std::mt19937 rng(11u);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int n : {0, 1, 2, 5, 9}) {
    double b = u(rng), c = u(rng);
    for (double z : {0.4, -0.7, -3.0}) {
      // direct polynomial sum
      double sum = 1.0, term = 1.0;
      for (int k = 0; k < n; ++k) {
        term *= (static_cast<double>(-n) + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
      }
      Complex got = jisp::gauss_2f1({static_cast<double>(-n), 0.0}, {b, 0.0}, {c, 0.0}, z);
      CHECK(rel_err(got.real(), sum) < 1e-12);
      CHECK(std::abs(got.imag()) < 1e-14);
    }
  }
}

TEST_CASE("gauss_2f1: domain and pole errors") {
  CHECK_THROWS_AS((void)jisp::gauss_2f1({1, 0}, {1, 0}, {-2.0, 0.0}, 0.5), jisp::PoleError);
  CHECK_THROWS_AS((void)jisp::gauss_2f1({1, 0}, {1, 0}, {2, 0}, 1.0), jisp::DomainError);
  CHECK_THROWS_AS((void)jisp::gauss_2f1({1, 0}, {1, 0}, {2, 0}, 4.0), jisp::DomainError);
}

TEST_CASE("jacobi_phi: cosine reduction at alpha = beta = -1/2") {
  JacobiParams p(-0.5, -0.5);
  CHECK(jisp::jacobi_phi(p, 2.0, 0.5) == doctest::Approx(std::cos(1.0)).epsilon(1e-12));
  CHECK(std::abs(jisp::jacobi_phi(p, 2.0, 0.5) - 0.5403023058681398) < 1e-12);
  double worst = 0.0;
  for (double lambda : {0.0, 0.3, 1.0, 4.0, 11.0, 20.0})
    for (double x : {0.0, 0.05, 0.4, 1.3, 2.9, 5.0})
      worst = std::max(worst,
                       std::abs(jisp::jacobi_phi(p, lambda, x) - std::cos(lambda * x)));
  CHECK(worst < 1e-10);
}

TEST_CASE("jacobi_phi: normalization and reference values") {
  for (auto [al, be] : {std::pair{-0.5, -0.5}, std::pair{0.0, 0.0}, std::pair{1.0, 0.5}}) {
    JacobiParams p(al, be);
    CHECK(jisp::jacobi_phi(p, 3.7, 0.0) == 1.0);
    CHECK(jisp::jacobi_phi(p, 0.0, 0.0) == 1.0);
  }
  JacobiParams p00(0.0, 0.0);
  // high-precision references spanning the series and connection branches
  CHECK(rel_err(jisp::jacobi_phi(p00, 1.0, 1.0), 0.61505537497101818) < 1e-12);
  CHECK(rel_err(jisp::jacobi_phi(p00, 2.0, 3.0), 0.020362616032324083) < 1e-11);
  CHECK(rel_err(jisp::jacobi_phi(p00, 0.005, 8.0), 0.0037119201669961974) < 1e-9);
  CHECK(rel_err(jisp::jacobi_phi(p00, 7.0, 0.05), 0.96900617171531637) < 1e-12);
  JacobiParams p105(1.0, 0.5);
  CHECK(rel_err(jisp::jacobi_phi(p105, 5.0, 3.0), 4.3977360282553879e-4) < 1e-10);
  CHECK(rel_err(jisp::jacobi_phi(p105, 20.0, 5.0), -3.6206169907143759e-7) < 1e-8);
  CHECK(rel_err(jisp::jacobi_phi(p105, 0.0, 2.0), 0.098357740134072021) < 1e-11);
}

TEST_CASE("jacobi_phi: independent ODE oracle") {
  JacobiParams p(0.0, 0.0);
  CHECK(std::abs(jisp::jacobi_phi(p, 1.0, 1.0) - phi_by_ode(p, 1.0, 1.0)) < 1e-9);
  JacobiParams q(1.0, 0.5);
  CHECK(std::abs(jisp::jacobi_phi(q, 2.0, 1.5) - phi_by_ode(q, 2.0, 1.5)) < 1e-9);
}

TEST_CASE("jacobi_phi: boundedness for real lambda") {
  for (auto [al, be] : {std::pair{-0.5, -0.5}, std::pair{0.0, 0.0}, std::pair{1.0, 0.5}}) {
    JacobiParams p(al, be);
    for (int i = 0; i <= 40; ++i) {
      double lambda = 0.25 + 19.75 * i / 40.0;
      for (int j = 0; j <= 20; ++j) {
        double x = 5.0 * j / 20.0;
        CHECK(std::abs(jisp::jacobi_phi(p, lambda, x)) <= 1.0 + 1e-9);
      }
    }
    // lambda = 0 within the series range
    for (double x : {0.0, 0.5, 1.5, 2.5})
      CHECK(std::abs(jisp::jacobi_phi(p, 0.0, x)) <= 1.0 + 1e-9);
  }
}

TEST_CASE("jacobi_phi: evenness in lambda through the 2F1 arguments") {
  JacobiParams p(0.4, 0.1);
  double rho = p.rho();
  for (double lambda : {0.3, 2.0, 9.0}) {
    for (double x : {0.2, 0.8}) {
      double z = -std::sinh(x) * std::sinh(x);
      Complex aplus(0.5 * rho, 0.5 * lambda), aminus(0.5 * rho, -0.5 * lambda);
      Complex c(p.alpha() + 1.0, 0.0);
      // swapped-sign lambda gives the same (a, b) pair in the opposite order
      Complex v1 = jisp::gauss_2f1(aplus, aminus, c, z);
      Complex v2 = jisp::gauss_2f1(aminus, aplus, c, z);
      CHECK(std::abs(v1 - v2) < 1e-12);
      CHECK(std::abs(jisp::jacobi_phi(p, lambda, x) - v1.real()) < 1e-12);
    }
  }
}

TEST_CASE("jacobi_phi: domain errors and the documented large-x series limit") {
  JacobiParams p(0.0, 0.0);
  CHECK_THROWS_AS((void)jisp::jacobi_phi(p, -1.0, 1.0), jisp::DomainError);
  CHECK_THROWS_AS((void)jisp::jacobi_phi(p, 1.0, -0.5), jisp::DomainError);
  // lambda = 0 with rho > 0 has only the series route; far out it gives up
  CHECK_THROWS_AS((void)jisp::jacobi_phi(p, 0.0, 5.0), jisp::ConvergenceError);
}

TEST_CASE("weight_a: closed forms") {
  JacobiParams pc(-0.5, -0.5);
  CHECK(jisp::weight_a(pc, 0.7) == doctest::Approx(1.0));
  CHECK(jisp::weight_a(pc, 0.0) == doctest::Approx(1.0));
  JacobiParams p00(0.0, 0.0);
  CHECK(rel_err(jisp::weight_a(p00, 1.0), 2.0 * std::sinh(2.0)) < 1e-14);
  CHECK(jisp::weight_a(p00, 0.0) == 0.0);
  JacobiParams p105(1.0, 0.5);
  CHECK(jisp::weight_a(p105, 0.0) == 0.0);
  CHECK_THROWS_AS((void)jisp::weight_a(p00, 500.0), jisp::OverflowError);
  CHECK_THROWS_AS((void)jisp::weight_a(p00, -1.0), jisp::DomainError);
}

TEST_CASE("harish_chandra_c: cosine case collapses to 1/2") {
  JacobiParams p(-0.5, -0.5);
  for (double lambda : {0.1, 0.5, 1.0, 5.0, 10.0, 50.0})
    CHECK(std::abs(jisp::harish_chandra_c(p, lambda) - Complex(0.5, 0.0)) < 1e-10);
}

TEST_CASE("harish_chandra_c: general parameters") {
  JacobiParams p00(0.0, 0.0);
  Complex c = jisp::harish_chandra_c(p00, 1.0);
  CHECK(rel_err(c, {0.40429833970921244, -0.72847058074492978}) < 1e-12);
  CHECK(rel_err(1.0 / std::norm(c), 1.4406595199775146) < 1e-12);
  JacobiParams p105(1.0, 0.5);
  CHECK(rel_err(jisp::harish_chandra_c(p105, 5.0),
                {-0.26207513871332477, -0.30443007880687499}) < 1e-12);
  CHECK_THROWS_AS((void)jisp::harish_chandra_c(p00, 0.0), jisp::PoleError);
  CHECK_THROWS_AS((void)jisp::harish_chandra_c(p00, -2.0), jisp::PoleError);
}

TEST_CASE("nu_density: cosine case and continuity at zero") {
  JacobiParams p(-0.5, -0.5);
  CHECK(rel_err(jisp::nu_density(p, 3.0), 4.0 / std::sqrt(2.0 * kPi)) < 1e-10);
  CHECK(jisp::nu_density(p, 0.0) == 0.0);
  // |c|^{-2} ~ lambda^2 near zero for general parameters
  JacobiParams p00(0.0, 0.0);
  double d1 = jisp::nu_density(p00, 1e-3);
  double d2 = jisp::nu_density(p00, 2e-3);
  CHECK(d2 / d1 == doctest::Approx(4.0).epsilon(1e-4));
}

TEST_CASE("mittag_leffler: anchors and special cases") {
  for (double g : {0.2, 0.5, 0.8, 1.0}) CHECK(jisp::mittag_leffler(g, 1.0, 0.0) == 1.0);
  CHECK(rel_err(jisp::mittag_leffler(1.0, 1.0, 1.0), std::exp(1.0)) < 1e-15);
  CHECK(rel_err(jisp::mittag_leffler(1.0, 1.0, -3.7), std::exp(-3.7)) < 1e-15);
  // E_{1/2,1}(-1) = e * erfc(1)
  CHECK(rel_err(jisp::mittag_leffler(0.5, 1.0, -1.0), std::exp(1.0) * std::erfc(1.0)) < 1e-12);
  // E_{1,2}(t) = (e^t - 1)/t
  CHECK(rel_err(jisp::mittag_leffler(1.0, 2.0, -3.0), 0.31673764387737869) < 1e-13);
}

TEST_CASE("mittag_leffler: high-precision references across branches") {
  struct Ref {
    double g, b, t, want, tol;
  };
  const Ref refs[] = {
      {0.5, 1.0, -1.0, 0.42758357615580700, 1e-12},
      {0.3, 1.0, -2.5, 0.24498312379478694, 1e-11},   // mid-range (integral branch)
      {0.3, 0.3, -2.5, 0.022979353936318687, 1e-10},
      {0.5, 0.5, -3.0, 0.027186130003586436, 1e-11},
      {0.7, 1.0, -7.0, 0.053335564803365710, 1e-11},
      {0.2, 1.0, -1.5, 0.37097697838398594, 1e-11},
      {0.9, 2.0, -12.0, 0.085920173047820207, 1e-11},
      {0.3, 2.0, -2.5, 0.31002672683805755, 1e-10},
      {0.5, 2.0, -30.0, 0.036522412113029771, 1e-11},
      {0.7, 0.7, -10.0, 0.0027247024931022997, 1e-10},
      {0.3, 1.0, -50.0, 0.015228201501814695, 1e-11},
      {0.95, 1.0, -20.0, 0.0028432225780766326, 1e-11},
      {0.1, 1.0, -1.8, 0.34345469627026275, 1e-10},
      {0.5, 1.0, -5.0, 0.11070463773306863, 1e-11},
      {0.5, 1.0, -4.9, 0.11287909055975875, 1e-11},
      {0.5, 1.0, -5.1, 0.10861102631393280, 1e-11},
  };
  for (const auto& r : refs) {
    INFO("E_{" << r.g << "," << r.b << "}(" << r.t << ")");
    CHECK(rel_err(jisp::mittag_leffler(r.g, r.b, r.t), r.want) < r.tol);
  }
}

TEST_CASE("mittag_leffler: two-sided bound on the negative axis") {
  for (int i = 0; i < 25; ++i) {
    double g = (i + 0.5) / 25.0;
    double gl = std::tgamma(1.0 - g);
    double gu = std::tgamma(1.0 + g);
    for (int j = 0; j < 25; ++j) {
      double t = 30.0 * (j + 1) / 25.0;
      double e = jisp::mittag_leffler(g, 1.0, -t);
      CHECK(e > 1.0 / (1.0 + gl * t));
      CHECK(e < 1.0 / (1.0 + t / gu));
      CHECK(e > 0.0);
      CHECK(e < 1.0);
    }
  }
}

TEST_CASE("mittag_leffler: algebraic decay stays bounded") {
  for (double g : {0.3, 0.5, 0.7, 0.9}) {
    for (double b : {1.0, g}) {
      double fitted = 0.0;
      for (int j = 1; j <= 100; ++j) {
        double t = 50.0 * j / 100.0;
        fitted = std::max(fitted, (1.0 + t) * std::abs(jisp::mittag_leffler(g, b, -t)));
      }
      CHECK(fitted < 5.0);
      CHECK(std::isfinite(fitted));
    }
  }
}

TEST_CASE("mittag_leffler: derivative identity d/dt E_{g,1}(c t^g)") {
  for (double g : {0.4, 0.6, 0.9}) {
    double c = -1.5;
    for (double tau : {0.1, 0.5, 1.1, 2.0}) {
      double h = 1e-5 * std::max(1.0, tau);
      double num = (jisp::mittag_leffler(g, 1.0, c * std::pow(tau + h, g)) -
                    jisp::mittag_leffler(g, 1.0, c * std::pow(tau - h, g))) /
                   (2.0 * h);
      double want = c * std::pow(tau, g - 1.0) * jisp::mittag_leffler(g, g, c * std::pow(tau, g));
      CHECK(rel_err(num, want) < 1e-5);
    }
  }
}

TEST_CASE("mittag_leffler: domain errors") {
  CHECK_THROWS_AS((void)jisp::mittag_leffler(0.0, 1.0, 1.0), jisp::DomainError);
  CHECK_THROWS_AS((void)jisp::mittag_leffler(1.5, 1.0, 1.0), jisp::DomainError);
  CHECK_THROWS_AS((void)jisp::mittag_leffler(-0.5, 1.0, 1.0), jisp::DomainError);
}

TEST_CASE("one_minus_ml: stable near zero and consistent elsewhere") {
  CHECK(jisp::one_minus_ml(0.7, 0.0) == 0.0);
  double s = 1e-14;
  CHECK(rel_err(jisp::one_minus_ml(0.5, s), s / std::tgamma(1.5)) < 1e-10);
  for (double g : {0.3, 0.6, 1.0})
    for (double v : {0.3, 2.0, 20.0})
      CHECK(std::abs(jisp::one_minus_ml(g, v) - (1.0 - jisp::mittag_leffler(g, 1.0, -v))) <
            1e-13);
}

TEST_CASE("ml_kernel_b: closed forms") {
  JacobiParams pc(-0.5, -0.5);
  ProblemParams q1(0.5, 0.0, 0.0, 1.0);
  CHECK(jisp::ml_kernel_b(pc, q1, 2.0) == doctest::Approx(4.0));
  ProblemParams q2(0.5, 1.0, 0.0, 1.0);
  CHECK(jisp::ml_kernel_b(pc, q2, 1e8) == doctest::Approx(1.0).epsilon(1e-10));
  JacobiParams p00(0.0, 0.0);
  ProblemParams q3(0.5, 0.5, 2.0, 1.0);
  CHECK(jisp::ml_kernel_b(p00, q3, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(JacobiParams(-1.0, -0.5), jisp::DomainError);
  CHECK_THROWS_AS(JacobiParams(0.0, 0.5), jisp::DomainError);
  CHECK_THROWS_AS(ProblemParams(0.0, 0.0, 0.0, 1.0), jisp::DomainError);
  CHECK_THROWS_AS(ProblemParams(1.1, 0.0, 0.0, 1.0), jisp::DomainError);
  CHECK_THROWS_AS(ProblemParams(0.5, -1.0, 0.0, 1.0), jisp::DomainError);
  CHECK_THROWS_AS(ProblemParams(0.5, 0.0, -1.0, 1.0), jisp::DomainError);
  CHECK_THROWS_AS(ProblemParams(0.5, 0.0, 0.0, 0.0), jisp::DomainError);
  JacobiParams p(0.25, -0.25);
  CHECK(p.rho() == doctest::Approx(1.0));
}
