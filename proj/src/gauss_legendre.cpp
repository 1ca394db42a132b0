#include "jisp/gauss_legendre.hpp"

#include <cmath>

#include "jisp/errors.hpp"

namespace jisp {

namespace {

constexpr int kN = 16;

struct Rule16 {
  std::array<double, kN> x{};
  std::array<double, kN> w{};
};

// Legendre P_n and P_n' at x by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

Rule16 build_rule() {
  Rule16 r;
  for (int i = 0; i < kN / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (kN + 0.5));
    double p, dp;
    for (int it = 0; it < 50; ++it) {
      legendre(kN, x, p, dp);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(kN, x, p, dp);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.x[i] = -x;
    r.w[i] = w;
    r.x[kN - 1 - i] = x;
    r.w[kN - 1 - i] = w;
  }
  return r;
}

const Rule16& rule() {
  static const Rule16 r = build_rule();
  return r;
}

}  // namespace

const std::array<double, 16>& gauss16_nodes() { return rule().x; }
const std::array<double, 16>& gauss16_weights() { return rule().w; }

PanelRule composite_gauss16(double a, double b, std::size_t n_min) {
  if (!(b > a)) throw DomainError("composite_gauss16: requires b > a");
  std::size_t panels = (n_min + kN - 1) / kN;
  if (panels == 0) panels = 1;
  PanelRule out;
  out.nodes.reserve(panels * kN);
  out.weights.reserve(panels * kN);
  double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    double lo = a + h * static_cast<double>(p);
    double mid = lo + 0.5 * h;
    for (int i = 0; i < kN; ++i) {
      out.nodes.push_back(mid + 0.5 * h * gauss16_nodes()[i]);
      out.weights.push_back(0.5 * h * gauss16_weights()[i]);
    }
  }
  return out;
}

}  // namespace jisp
