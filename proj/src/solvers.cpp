#include "jisp/solvers.hpp"

#include <cmath>

#include "jisp/errors.hpp"
#include "jisp/parallel.hpp"
#include "jisp/specfun.hpp"

namespace jisp {

namespace {

// E_{gamma,1}(-B t^gamma) on every grid node.
std::vector<double> ml_decay_table(double gamma, double B, const TimeGrid& tg) {
  std::vector<double> e(tg.size());
  for (std::size_t k = 0; k < tg.size(); ++k)
    e[k] = k == 0 ? 1.0 : mittag_leffler(gamma, 1.0, -B * std::pow(tg.t(k), gamma));
  return e;
}

// G(x) = int_0^x E_{gamma,1}(-B s^gamma) ds = x E_{gamma,2}(-B x^gamma),
// tabulated at x = k dt.
std::vector<double> ml_primitive_table(double gamma, double B, const TimeGrid& tg) {
  std::vector<double> g(tg.size());
  for (std::size_t k = 0; k < tg.size(); ++k) {
    double x = tg.t(k);
    g[k] = k == 0 ? 0.0 : x * mittag_leffler(gamma, 2.0, -B * std::pow(x, gamma));
  }
  return g;
}

SpectralFunction diff(const SpectralFunction& a, const SpectralFunction& b) {
  if (a.grid->nodes != b.grid->nodes)
    throw GridMismatchError("stability_functionals: spectral grids differ");
  SpectralFunction d{a.grid, a.values};
  for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= b.values[i];
  return d;
}

}  // namespace

TimeSeries direct_mode(const ProblemParams& q, const JacobiParams& p, double lambda,
                       const TimeSeries& f_hat, double phi_hat) {
  if (!(lambda >= 0.0)) throw DomainError("direct_mode: lambda must be >= 0");
  const TimeGrid& tg = f_hat.grid;
  double ell = lambda * lambda + p.rho() * p.rho();
  double M = ell + q.m;
  double denom = 1.0 + q.a * ell;
  std::size_t n = tg.size();
  TimeSeries u{tg, std::vector<double>(n, 0.0)};

  if (M == 0.0) {
    // B = 0: the mode equation degenerates to D^gamma u = f / (1 + aL).
    TimeSeries scaled{tg, f_hat.values};
    for (double& v : scaled.values) v /= denom;
    if (q.gamma == 1.0) {
      // trapezoid primitive
      double acc = 0.0;
      u.values[0] = phi_hat;
      for (std::size_t k = 1; k < n; ++k) {
        acc += 0.5 * tg.dt() * (scaled.values[k - 1] + scaled.values[k]);
        u.values[k] = phi_hat + acc;
      }
    } else {
      TimeSeries integ = rl_integral_left(scaled, q.gamma);
      for (std::size_t k = 0; k < n; ++k) u.values[k] = phi_hat + integ.values[k];
    }
    return u;
  }

  double B = M / denom;
  std::vector<double> e1 = ml_decay_table(q.gamma, B, tg);

  // Constant source reduces to the closed form; detect it exactly.
  bool constant = true;
  for (std::size_t k = 1; k < n && constant; ++k)
    constant = f_hat.values[k] == f_hat.values[0];
  if (constant) {
    double f0 = f_hat.values[0];
    for (std::size_t k = 0; k < n; ++k) {
      double om = k == 0 ? 0.0 : one_minus_ml(q.gamma, B * std::pow(tg.t(k), q.gamma));
      u.values[k] = (f0 / M) * om + phi_hat * e1[k];
    }
    return u;
  }

  std::vector<double> g = ml_primitive_table(q.gamma, B, tg);
  double dt = tg.dt();
  u.values[0] = phi_hat;
  for (std::size_t i = 1; i < n; ++i) {
    double conv = 0.0;  // int_0^{t_i} E_{g,1}(-B (t_i - tau)^g) f_hat'(tau) dtau
    for (std::size_t j = 0; j < i; ++j) {
      double slope = (f_hat.values[j + 1] - f_hat.values[j]) / dt;
      conv += slope * (g[i - j] - g[i - j - 1]);
    }
    u.values[i] = (f_hat.values[i] - f_hat.values[0] * e1[i] - conv) / M + phi_hat * e1[i];
  }
  return u;
}

TimeSeries direct_mode(const ProblemParams& q, const JacobiParams& p, double lambda,
                       double f_hat, double phi_hat, const TimeGrid& tg) {
  TimeSeries fs{tg, std::vector<double>(tg.size(), f_hat)};
  return direct_mode(q, p, lambda, fs, phi_hat);
}

namespace {

DirectSolution assemble_direct(const ProblemParams& q, const JacobiTransform& tr,
                               const TimeGrid& tg,
                               const std::vector<SpectralFunction>& f_hats,
                               const SampledFunction& phi) {
  const auto& sg = tr.spectral();
  const JacobiParams p = sg->params;
  SpectralFunction phi_hat = tr.forward(phi);
  std::size_t nl = sg->nodes.size();
  std::size_t nt = tg.size();

  std::vector<std::vector<double>> modes(nl);
  parallel_for(nl, [&](std::size_t j) {
    TimeSeries fj{tg, std::vector<double>(nt)};
    for (std::size_t k = 0; k < nt; ++k)
      fj.values[k] = f_hats.size() == 1 ? f_hats[0].values[j] : f_hats[k].values[j];
    modes[j] = direct_mode(q, p, sg->nodes[j], fj, phi_hat.values[j]).values;
  });

  DirectSolution sol{tg, {}, {}, {}, {}};
  sol.u.reserve(nt);
  sol.u_hat.reserve(nt);
  double rho = p.rho();
  for (std::size_t k = 0; k < nt; ++k) {
    SpectralFunction uk{sg, std::vector<double>(nl)};
    for (std::size_t j = 0; j < nl; ++j) uk.values[j] = modes[j][k];
    sol.h_norms.push_back(norm_h(uk));
    // D^gamma u_hat = (f_hat - M u_hat) / (1 + a L) per mode, exact algebra
    SpectralFunction dk{sg, std::vector<double>(nl)};
    for (std::size_t j = 0; j < nl; ++j) {
      double l = sg->nodes[j];
      double ell = l * l + rho * rho;
      double fh = f_hats.size() == 1 ? f_hats[0].values[j] : f_hats[k].values[j];
      dk.values[j] = (fh - (ell + q.m) * uk.values[j]) / (1.0 + q.a * ell);
    }
    sol.dt_u_norms.push_back(norm_l2_nu(dk));
    sol.u.push_back(tr.inverse(uk));
    sol.u_hat.push_back(std::move(uk));
  }
  return sol;
}

}  // namespace

DirectSolution direct_solve(const ProblemParams& q, const JacobiTransform& tr,
                            const TimeGrid& tg, const SampledFunction& f,
                            const SampledFunction& phi) {
  std::vector<SpectralFunction> f_hats;
  f_hats.push_back(tr.forward(f));
  return assemble_direct(q, tr, tg, f_hats, phi);
}

DirectSolution direct_solve(const ProblemParams& q, const JacobiTransform& tr,
                            const TimeGrid& tg, const std::vector<SampledFunction>& f,
                            const SampledFunction& phi) {
  if (f.size() != tg.size())
    throw GridMismatchError("direct_solve: need one source slice per time node");
  std::vector<SpectralFunction> f_hats;
  f_hats.reserve(f.size());
  for (const auto& fk : f) f_hats.push_back(tr.forward(fk));
  return assemble_direct(q, tr, tg, f_hats, phi);
}

ModeSolution isp_mode(const ProblemParams& q, const JacobiParams& p, double lambda,
                      double phi_hat, double psi_hat, const TimeGrid& tg) {
  if (!(lambda >= 0.0)) throw DomainError("isp_mode: lambda must be >= 0");
  double ell = lambda * lambda + p.rho() * p.rho();
  double M = ell + q.m;
  if (M == 0.0)
    throw DegenerateModeError("isp_mode: lambda^2 + rho^2 + m = 0 carries no constraint on f");
  double B = M / (1.0 + q.a * ell);
  double sT = B * std::pow(q.T, q.gamma);
  double one_minus_eT = one_minus_ml(q.gamma, sT);
  double eT = 1.0 - one_minus_eT;
  double f_hat = M * (psi_hat - phi_hat * eT) / one_minus_eT;
  double c = (phi_hat - psi_hat) / one_minus_eT;
  ModeSolution out{TimeSeries{tg, std::vector<double>(tg.size())}, f_hat, c};
  for (std::size_t k = 0; k < tg.size(); ++k) {
    double e = k == 0 ? 1.0 : mittag_leffler(q.gamma, 1.0, -B * std::pow(tg.t(k), q.gamma));
    out.u_hat.values[k] = f_hat / M + c * e;
  }
  return out;
}

IspSolution isp_solve(const ProblemParams& q, const JacobiTransform& tr, const TimeGrid& tg,
                      const SampledFunction& phi, const SampledFunction& psi) {
  const auto& sg = tr.spectral();
  const JacobiParams p = sg->params;
  SpectralFunction phi_hat = tr.forward(phi);
  SpectralFunction psi_hat = tr.forward(psi);
  double h_phi = norm_h(phi_hat);
  double h_psi = norm_h(psi_hat);
  if (!std::isfinite(h_phi) || !std::isfinite(h_psi))
    throw HNormError("isp_solve: datum has non-finite graph norm");

  std::size_t nl = sg->nodes.size();
  std::size_t nt = tg.size();
  std::vector<std::vector<double>> modes(nl);
  SpectralFunction f_hat{sg, std::vector<double>(nl)};
  SpectralFunction c_hat{sg, std::vector<double>(nl)};
  parallel_for(nl, [&](std::size_t j) {
    double lambda = sg->nodes[j];
    if (lambda * lambda + p.rho() * p.rho() + q.m == 0.0) lambda = 1e-8;
    ModeSolution ms = isp_mode(q, p, lambda, phi_hat.values[j], psi_hat.values[j], tg);
    modes[j] = std::move(ms.u_hat.values);
    f_hat.values[j] = ms.f_hat;
    c_hat.values[j] = ms.c;
  });

  IspSolution sol{tg,  {}, {}, SampledFunction{}, f_hat, phi_hat, psi_hat, c_hat, 0.0, 0.0};
  sol.f = tr.inverse(f_hat);
  sol.u.reserve(nt);
  sol.u_hat.reserve(nt);
  for (std::size_t k = 0; k < nt; ++k) {
    SpectralFunction uk{sg, std::vector<double>(nl)};
    for (std::size_t j = 0; j < nl; ++j) uk.values[j] = modes[j][k];
    sol.u.push_back(tr.inverse(uk));
    sol.u_hat.push_back(std::move(uk));
  }

  auto l2_diff = [&](const SampledFunction& a, const SampledFunction& b) {
    SampledFunction d{a.grid, a.values};
    for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= b.values[i];
    return norm_l2_mu(d);
  };
  sol.initial_residual = l2_diff(sol.u.front(), phi);
  sol.terminal_residual = l2_diff(sol.u.back(), psi);
  return sol;
}

StabilityReport stability_functionals(const IspSolution& a, const IspSolution& b) {
  if (!(a.tgrid == b.tgrid))
    throw GridMismatchError("stability_functionals: time grids differ");
  if (a.u_hat.size() != b.u_hat.size())
    throw GridMismatchError("stability_functionals: solution sizes differ");

  StabilityReport r{};
  for (std::size_t k = 0; k < a.u_hat.size(); ++k) {
    double h = norm_h(diff(a.u_hat[k], b.u_hat[k]));
    r.u_diff_sq = std::max(r.u_diff_sq, h * h);
  }
  double fd = norm_l2_nu(diff(a.f_hat, b.f_hat));  // = L^2(mu) norm by Plancherel
  r.f_diff_sq = fd * fd;
  double pd = norm_h(diff(a.psi_hat, b.psi_hat));
  r.psi_diff_sq = pd * pd;
  double qd = norm_h(diff(a.phi_hat, b.phi_hat));
  r.phi_diff_sq = qd * qd;

  double den = r.psi_diff_sq + r.phi_diff_sq;
  r.degenerate = den == 0.0;
  r.r_u = r.degenerate ? 0.0 : r.u_diff_sq / den;
  r.r_f = r.degenerate ? 0.0 : r.f_diff_sq / den;
  if (!r.degenerate && (!std::isfinite(r.r_u) || !std::isfinite(r.r_f)))
    throw HNormError("stability_functionals: non-finite ratio");
  return r;
}

ModeCoefficientBounds check_mode_coefficients(const ProblemParams& q, const JacobiParams& p,
                                              const SpectralGrid& sg, const TimeGrid& tg) {
  ModeCoefficientBounds out{true, 1.0, 0.0, 0.0, -1.0};
  for (double lambda : sg.nodes) {
    double ell = lambda * lambda + p.rho() * p.rho();
    double M = ell + q.m;
    if (M == 0.0) continue;
    double B = M / (1.0 + q.a * ell);
    double omT = one_minus_ml(q.gamma, B * std::pow(q.T, q.gamma));
    for (std::size_t k = 1; k + 1 < tg.size(); ++k) {
      double omt = one_minus_ml(q.gamma, B * std::pow(tg.t(k), q.gamma));
      double c1 = omt / omT;
      double c2 = (omt - omT) / omT;  // = (E_T - E_t)/(1 - E_T)
      out.min_c1 = std::min(out.min_c1, c1);
      out.max_c1 = std::max(out.max_c1, c1);
      out.min_c2 = std::min(out.min_c2, c2);
      out.max_c2 = std::max(out.max_c2, c2);
      if (!(c1 > 0.0 && c1 < 1.0 && c2 > -1.0 && c2 < 0.0)) out.ok = false;
    }
  }
  return out;
}

double mode_equation_residual(const ProblemParams& q, const JacobiParams& p, double lambda,
                              const TimeSeries& u_hat, const TimeSeries& f_hat) {
  if (!(u_hat.grid == f_hat.grid))
    throw GridMismatchError("mode_equation_residual: grids differ");
  double ell = lambda * lambda + p.rho() * p.rho();
  double denom = 1.0 + q.a * ell;
  double B = (ell + q.m) / denom;
  TimeSeries d = caputo_derivative(u_hat, q.gamma);
  double worst = 0.0;
  for (std::size_t k = 1; k < u_hat.grid.size(); ++k) {
    double res = d.values[k] + B * u_hat.values[k] - f_hat.values[k] / denom;
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

}  // namespace jisp
