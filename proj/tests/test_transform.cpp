#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "jisp/csv.hpp"
#include "jisp/errors.hpp"
#include "jisp/gauss_legendre.hpp"
#include "jisp/specfun.hpp"
#include "jisp/transform.hpp"

using jisp::JacobiParams;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double gauss_total(const jisp::SpatialGrid& g) {
  double s = 0.0;
  for (double w : g.weights) s += w;
  return s;
}

}  // namespace

TEST_CASE("composite rule integrates polynomials exactly") {
  auto rule = jisp::composite_gauss16(0.0, 1.0, 16);
  for (int k = 0; k <= 31; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * std::pow(rule.nodes[i], k);
    CHECK(s == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
  }
}

TEST_CASE("grid construction rules") {
  JacobiParams p(-0.5, -0.5);
  auto g8 = jisp::build_spatial_grid(p, 10.0, 8);
  CHECK(g8->nodes.size() == 16);  // one panel minimum
  auto g100 = jisp::build_spatial_grid(p, 10.0, 100);
  CHECK(g100->nodes.size() == 112);  // 7 panels
  for (std::size_t i = 1; i < g100->nodes.size(); ++i)
    CHECK(g100->nodes[i] > g100->nodes[i - 1]);
  CHECK(g100->nodes.front() > 0.0);
  CHECK(g100->nodes.back() < 10.0);
  for (double w : g100->weights) CHECK(w >= 0.0);
  CHECK_THROWS_AS((void)jisp::build_spatial_grid(p, -1.0, 64), jisp::DomainError);
  CHECK_THROWS_AS((void)jisp::build_spatial_grid(p, 0.0, 64), jisp::DomainError);
  CHECK_THROWS_AS((void)jisp::build_spatial_grid(p, 10.0, 4), jisp::DomainError);
  CHECK_THROWS_AS((void)jisp::build_spectral_grid(p, 20.0, 7), jisp::DomainError);
  // overflow of the weight at x_max propagates
  JacobiParams p00(0.0, 0.0);
  CHECK_THROWS_AS((void)jisp::build_spatial_grid(p00, 500.0, 64), jisp::OverflowError);
}

TEST_CASE("mu measure of [0, 10] for the cosine case") {
  JacobiParams p(-0.5, -0.5);
  auto g = jisp::build_spatial_grid(p, 10.0, 256);
  CHECK(gauss_total(*g) == doctest::Approx(10.0 / std::sqrt(2.0 * kPi)).epsilon(1e-13));
}

TEST_CASE("spectral weights carry 4/sqrt(2 pi) for the cosine case") {
  JacobiParams p(-0.5, -0.5);
  auto sg = jisp::build_spectral_grid(p, 20.0, 256);
  auto raw = jisp::composite_gauss16(0.0, 20.0, 256);
  for (std::size_t i = 0; i < sg->nodes.size(); ++i)
    CHECK(sg->weights[i] ==
          doctest::Approx(raw.weights[i] * 4.0 / std::sqrt(2.0 * kPi)).epsilon(1e-10));
}

TEST_CASE("forward transform of the Gaussian matches the closed form") {
  JacobiParams p(-0.5, -0.5);
  auto xg = jisp::build_spatial_grid(p, 10.0, 512);
  auto sg = jisp::build_spectral_grid(p, 10.0, 256);
  jisp::JacobiTransform tr(xg, sg);
  auto f = jisp::sample(xg, [](double x) { return std::exp(-x * x); });
  auto fh = tr.forward(f);
  double worst = 0.0;
  for (std::size_t j = 0; j < sg->nodes.size(); ++j) {
    double l = sg->nodes[j];
    double want = std::exp(-l * l / 4.0) / (2.0 * std::sqrt(2.0));
    worst = std::max(worst, std::abs(fh.values[j] - want));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("narrow bump transforms to the eigenfunction at its center") {
  JacobiParams p(0.0, 0.0);
  auto xg = jisp::build_spatial_grid(p, 6.0, 512);
  auto xg4 = jisp::build_spatial_grid(p, 6.0, 2048);
  auto sg = jisp::build_spectral_grid(p, 5.0, 64);
  double sigma = 0.02, x0 = 2.0;
  auto bump = [sigma, x0](double x) {
    return std::exp(-(x - x0) * (x - x0) / (2.0 * sigma * sigma));
  };
  auto fh = jisp::JacobiTransform(xg, sg).forward(jisp::sample(xg, bump));
  auto fh4 = jisp::JacobiTransform(xg4, sg).forward(jisp::sample(xg4, bump));
  // quadrature oracle at 4x resolution
  for (std::size_t j = 0; j < sg->nodes.size(); ++j)
    CHECK(std::abs(fh.values[j] - fh4.values[j]) < 1e-9);
  // mass * phi_lambda(x0) approximation
  double mass = sigma * std::sqrt(2.0 * kPi) * jisp::mu_density(p, x0);
  for (std::size_t j = 0; j < sg->nodes.size(); ++j) {
    double want = mass * jisp::jacobi_phi(p, sg->nodes[j], x0);
    CHECK(std::abs(fh.values[j] - want) <= 2e-4 * std::abs(mass));
  }
}

TEST_CASE("round trip reproduces the Gaussian") {
  JacobiParams p(-0.5, -0.5);
  auto xg = jisp::build_spatial_grid(p, 10.0, 512);
  auto sg = jisp::build_spectral_grid(p, 30.0, 512);
  jisp::JacobiTransform tr(xg, sg);
  auto f = jisp::sample(xg, [](double x) { return std::exp(-x * x); });
  auto back = tr.inverse(tr.forward(f));
  double num = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    double d = back.values[i] - f.values[i];
    num += xg->weights[i] * d * d;
  }
  double rel = std::sqrt(num) / jisp::norm_l2_mu(f);
  CHECK(rel < 1e-5);
}

TEST_CASE("round trip for alpha = beta = 0") {
  JacobiParams p(0.0, 0.0);
  auto xg = jisp::build_spatial_grid(p, 10.0, 512);
  auto sg = jisp::build_spectral_grid(p, 30.0, 512);
  jisp::JacobiTransform tr(xg, sg);
  auto f = jisp::sample(xg, [](double x) { return std::exp(-x * x); });
  auto back = tr.inverse(tr.forward(f));
  double num = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    double d = back.values[i] - f.values[i];
    num += xg->weights[i] * d * d;
  }
  double rel = std::sqrt(num) / jisp::norm_l2_mu(f);
  CHECK(rel < 1e-3);
}

TEST_CASE("norms: closed forms, homogeneity, Plancherel") {
  JacobiParams p(-0.5, -0.5);
  auto xg = jisp::build_spatial_grid(p, 10.0, 512);
  auto sg = jisp::build_spectral_grid(p, 30.0, 512);

  auto zero = jisp::sample(xg, [](double) { return 0.0; });
  CHECK(jisp::norm_l2_mu(zero) == 0.0);

  auto f = jisp::sample(xg, [](double x) { return std::exp(-x * x); });
  CHECK(jisp::norm_l2_mu(f) == doctest::Approx(0.5).epsilon(1e-10));  // squared norm 1/4

  auto g = jisp::sample(sg, [](double l) { return std::exp(-l * l / 4.0); });
  CHECK(jisp::norm_h(g) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-10));
  auto g3 = g;
  for (double& v : g3.values) v *= -3.0;
  CHECK(jisp::norm_h(g3) == doctest::Approx(3.0 * jisp::norm_h(g)).epsilon(1e-14));

  jisp::JacobiTransform tr(xg, sg);
  CHECK(std::abs(jisp::norm_l2_nu(tr.forward(f)) - jisp::norm_l2_mu(f)) <
        1e-5 * jisp::norm_l2_mu(f));
}

TEST_CASE("Plancherel over a bump family at both parameter sets") {
  for (double alpha : {-0.5, 0.0}) {
    JacobiParams p(alpha, alpha);
    auto xg = jisp::build_spatial_grid(p, 10.0, 512);
    auto sg = jisp::build_spectral_grid(p, 30.0, 512);
    jisp::JacobiTransform tr(xg, sg);
    for (double a : {0.5, 1.0, 2.0}) {
      for (double c : {0.0, 1.0, 2.0}) {
        auto f = jisp::sample(xg, [a, c](double x) {
          return std::exp(-a * (x - c) * (x - c)) + std::exp(-a * (x + c) * (x + c));
        });
        double nmu = jisp::norm_l2_mu(f);
        double nnu = jisp::norm_l2_nu(tr.forward(f));
        CHECK(std::abs(nnu - nmu) / nmu < 1e-4);
      }
    }
  }
}

TEST_CASE("transforms are linear to machine precision") {
  JacobiParams p(-0.5, -0.5);
  auto xg = jisp::build_spatial_grid(p, 8.0, 128);
  auto sg = jisp::build_spectral_grid(p, 12.0, 128);
  jisp::JacobiTransform tr(xg, sg);
  auto f = jisp::sample(xg, [](double x) { return std::exp(-x * x); });
  auto g = jisp::sample(xg, [](double x) { return x * std::exp(-0.5 * x * x); });
  double a = 2.25, b = -0.75;
  jisp::SampledFunction combo{xg, std::vector<double>(f.values.size())};
  for (std::size_t i = 0; i < combo.values.size(); ++i)
    combo.values[i] = a * f.values[i] + b * g.values[i];
  auto lhs = tr.forward(combo);
  auto fa = tr.forward(f);
  auto gb = tr.forward(g);
  for (std::size_t j = 0; j < lhs.values.size(); ++j)
    CHECK(std::abs(lhs.values[j] - (a * fa.values[j] + b * gb.values[j])) < 1e-12);
}

TEST_CASE("grid refinement converges monotonically for a smooth function") {
  JacobiParams p(-0.5, -0.5);
  auto f_fn = [](double x) { return std::exp(-(x - 2.0) * (x - 2.0)); };
  std::vector<double> norms;
  for (std::size_t n : {32u, 64u, 128u, 256u}) {
    auto xg = jisp::build_spatial_grid(p, 10.0, n);
    auto sg = jisp::build_spectral_grid(p, 30.0, 256);
    norms.push_back(jisp::norm_l2_nu(jisp::JacobiTransform(xg, sg).forward(jisp::sample(xg, f_fn))));
  }
  double d1 = std::abs(norms[1] - norms[0]);
  double d2 = std::abs(norms[2] - norms[1]);
  double d3 = std::abs(norms[3] - norms[2]);
  CHECK(d2 < d1);
  CHECK((d3 < d2 || d3 < 1e-13 * norms[3]));
}

TEST_CASE("cosine transform oracle at alpha = beta = -1/2") {
  JacobiParams p(-0.5, -0.5);
  auto xg = jisp::build_spatial_grid(p, 10.0, 256);
  auto sg = jisp::build_spectral_grid(p, 15.0, 128);
  jisp::JacobiTransform tr(xg, sg);
  auto f = jisp::sample(xg, [](double x) { return std::exp(-x * x) * (1.0 + x * x); });
  auto fh = tr.forward(f);
  auto raw = jisp::composite_gauss16(0.0, 10.0, 256);
  for (std::size_t j = 0; j < sg->nodes.size(); ++j) {
    double want = 0.0;  // independent route through std::cos
    for (std::size_t i = 0; i < raw.nodes.size(); ++i)
      want += raw.weights[i] * std::cos(sg->nodes[j] * raw.nodes[i]) * f.values[i] /
              std::sqrt(2.0 * kPi);
    CHECK(std::abs(fh.values[j] - want) < 1e-8);
  }
}

TEST_CASE("mismatched grids are rejected") {
  JacobiParams p1(-0.5, -0.5), p2(0.0, 0.0);
  auto xg = jisp::build_spatial_grid(p1, 10.0, 64);
  auto sg = jisp::build_spectral_grid(p2, 10.0, 64);
  CHECK_THROWS_AS(jisp::JacobiTransform(xg, sg), jisp::ParamMismatchError);
  auto sg1 = jisp::build_spectral_grid(p1, 10.0, 64);
  jisp::JacobiTransform tr(xg, sg1);
  auto other = jisp::build_spatial_grid(p1, 10.0, 128);
  auto f = jisp::sample(other, [](double x) { return x; });
  CHECK_THROWS_AS((void)tr.forward(f), jisp::ParamMismatchError);
}

TEST_CASE("CSV round trip is bit exact") {
  JacobiParams p(-0.5, -0.5);
  auto xg = jisp::build_spatial_grid(p, 10.0, 32);
  auto f = jisp::sample(xg, [](double x) { return std::exp(-x) * std::sin(3.0 * x); });
  auto path = std::filesystem::temp_directory_path() / "jisp_csv_roundtrip.csv";
  jisp::write_xy_csv(path.string(), "x", "value", f.grid->nodes, f.values);
  auto [xs, vs] = jisp::read_xy_csv(path.string());
  REQUIRE(xs.size() == f.values.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(xs[i] == f.grid->nodes[i]);
    CHECK(vs[i] == f.values[i]);
  }
  std::filesystem::remove(path);
  CHECK_THROWS_AS((void)jisp::read_xy_csv("/nonexistent/nope.csv"), jisp::IoError);
}
