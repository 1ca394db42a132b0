// Command-line entry point: parameter parsing, config loading, experiment
// dispatch, self-test execution, artifact emission.
//
// Exit codes: 0 success, 1 criterion failure, 2 usage/domain error,
// 3 numerical failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jisp/csv.hpp"
#include "jisp/errors.hpp"
#include "jisp/experiments.hpp"
#include "jisp/fractional.hpp"
#include "jisp/solvers.hpp"
#include "jisp/specfun.hpp"
#include "jisp/transform.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCriterion = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct CliState {
  // global options
  std::string config_file;
  std::string output_dir;
  double alpha = -0.5, beta = -0.5;
  double gamma = 1.0, a = 0.0, m = 0.0, T = 1.0;
  double x_max = 10.0, lambda_max = 30.0;
  std::size_t n_x = 512, n_lambda = 512, n_t = 101;
  std::vector<std::string> tolerance_kv;

  // subcommand arguments
  double phi_lambda = 0.0, phi_x = 0.0;
  double ml_gamma = 1.0, ml_beta = 1.0, ml_t = 0.0;
  std::string in_file, out_file;
  bool inverse = false;
  std::string phi_file, f_file, psi_file;
  std::vector<double> epsilons{1.0, 0.2, 0.02};
};

// Flat dotted-key config file: "jacobi.alpha = 0.0", '#' comments.
std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw jisp::IoError("config: cannot open " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  auto trim = [](std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
  };
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw jisp::IoError("config: missing '=' on line " + std::to_string(lineno));
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw jisp::IoError("config: non-numeric value for " + key);
  }
}

// Config fills whatever the command line did not set explicitly.
void apply_config(const CLI::App& app, const std::map<std::string, std::string>& kv,
                  CliState& o) {
  auto unset = [&](const char* flag) {
    const CLI::Option* opt = app.get_option_no_throw(flag);
    return !opt || opt->count() == 0;
  };
  auto load_d = [&](const char* flag, const char* key, double& slot) {
    auto it = kv.find(key);
    if (it != kv.end() && unset(flag)) slot = to_double(key, it->second);
  };
  auto load_n = [&](const char* flag, const char* key, std::size_t& slot) {
    auto it = kv.find(key);
    if (it != kv.end() && unset(flag))
      slot = static_cast<std::size_t>(to_double(key, it->second));
  };
  load_d("--alpha", "jacobi.alpha", o.alpha);
  load_d("--beta", "jacobi.beta", o.beta);
  load_d("--gamma", "problem.gamma", o.gamma);
  load_d("--a", "problem.a", o.a);
  load_d("--m", "problem.m", o.m);
  load_d("--T-final", "problem.T", o.T);
  load_d("--x-max", "grids.x_max", o.x_max);
  load_n("--n-x", "grids.n_x", o.n_x);
  load_d("--lambda-max", "grids.lambda_max", o.lambda_max);
  load_n("--n-lambda", "grids.n_lambda", o.n_lambda);
  load_n("--n-t", "grids.n_t", o.n_t);
  if (auto it = kv.find("output_dir"); it != kv.end() && unset("--output-dir"))
    o.output_dir = it->second;
  for (const auto& [key, value] : kv)
    if (key.rfind("tolerance.", 0) == 0) o.tolerance_kv.push_back(key.substr(10) + "=" + value);
}

jisp::RunConfig make_run_config(const CliState& o) {
  jisp::RunConfig cfg;
  cfg.jacobi = jisp::JacobiParams(o.alpha, o.beta);
  cfg.problem = jisp::ProblemParams(o.gamma, o.a, o.m, o.T);
  cfg.x_max = o.x_max;
  cfg.n_x = o.n_x;
  cfg.lambda_max = o.lambda_max;
  cfg.n_lambda = o.n_lambda;
  cfg.n_t = o.n_t;
  if (!o.output_dir.empty()) cfg.output_dir = o.output_dir;
  for (const auto& kvs : o.tolerance_kv) {
    auto eq = kvs.find('=');
    if (eq == std::string::npos)
      throw jisp::DomainError("tolerance override must look like name=value");
    cfg.tolerances[kvs.substr(0, eq)] = to_double(kvs, kvs.substr(eq + 1));
  }
  return cfg;
}

jisp::SampledFunction load_on_grid(const std::string& path,
                                   std::shared_ptr<const jisp::SpatialGrid> grid) {
  auto [xs, vs] = jisp::read_xy_csv(path);
  if (xs.size() != grid->nodes.size())
    throw jisp::GridMismatchError(path + ": row count does not match the configured grid");
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (std::abs(xs[i] - grid->nodes[i]) > 1e-10 * std::max(1.0, std::abs(grid->nodes[i])))
      throw jisp::GridMismatchError(path + ": nodes do not match the configured grid");
  return {std::move(grid), std::move(vs)};
}

void write_solution_dir(const jisp::RunConfig& cfg, const fs::path& dir,
                        const std::vector<jisp::SampledFunction>& u,
                        const jisp::SampledFunction* f, const jisp::SpectralFunction* f_hat,
                        const jisp::SpectralFunction* phi_hat,
                        const jisp::SpectralFunction* psi_hat,
                        const jisp::SpectralFunction* c_hat,
                        const std::map<std::string, double>& norms) {
  fs::create_directories(dir);
  for (std::size_t k = 0; k < u.size(); ++k)
    jisp::write_xy_csv((dir / ("u_t" + std::to_string(k) + ".csv")).string(), "x", "value",
                       u[k].grid->nodes, u[k].values);
  if (f) jisp::write_xy_csv((dir / "f.csv").string(), "x", "value", f->grid->nodes, f->values);
  if (f_hat) {
    std::ofstream out(dir / "spectral.csv");
    if (!out) throw jisp::IoError("cannot open spectral.csv");
    out << "lambda,f_hat,phi_hat,psi_hat,C\n";
    for (std::size_t j = 0; j < f_hat->grid->nodes.size(); ++j) {
      out << jisp::format_double(f_hat->grid->nodes[j]) << ','
          << jisp::format_double(f_hat->values[j]) << ','
          << jisp::format_double(phi_hat ? phi_hat->values[j] : 0.0) << ','
          << jisp::format_double(psi_hat ? psi_hat->values[j] : 0.0) << ','
          << jisp::format_double(c_hat ? c_hat->values[j] : 0.0) << '\n';
    }
  }
  nlohmann::json j;
  j["parameters"] = {{"alpha", cfg.jacobi.alpha()},  {"beta", cfg.jacobi.beta()},
                     {"gamma", cfg.problem.gamma},   {"a", cfg.problem.a},
                     {"m", cfg.problem.m},           {"T", cfg.problem.T},
                     {"x_max", cfg.x_max},           {"n_x", cfg.n_x},
                     {"lambda_max", cfg.lambda_max}, {"n_lambda", cfg.n_lambda},
                     {"n_t", cfg.n_t}};
  j["norms"] = norms;
  std::ofstream rep(dir / "report.json");
  if (!rep) throw jisp::IoError("cannot open report.json");
  rep << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver for time-fractional pseudo-parabolic direct and "
               "inverse source problems on the half line"};
  app.require_subcommand(0, 1);

  CliState o;
  app.add_option("--config", o.config_file, "flat key=value config file (dotted keys)");
  app.add_option("--output-dir", o.output_dir, "artifact output directory");
  app.add_option("--alpha", o.alpha, "operator parameter alpha");
  app.add_option("--beta", o.beta, "operator parameter beta");
  app.add_option("--gamma", o.gamma, "fractional order in (0, 1]");
  app.add_option("--a", o.a, "pseudo-parabolic coefficient a >= 0");
  app.add_option("--m", o.m, "reaction coefficient m >= 0");
  app.add_option("--T-final", o.T, "final time T > 0");
  app.add_option("--x-max", o.x_max, "spatial truncation");
  app.add_option("--n-x", o.n_x, "spatial quadrature nodes");
  app.add_option("--lambda-max", o.lambda_max, "spectral truncation");
  app.add_option("--n-lambda", o.n_lambda, "spectral quadrature nodes");
  app.add_option("--n-t", o.n_t, "time nodes");
  app.add_option("--tolerance", o.tolerance_kv, "named tolerance override name=value");

  CLI::App* c_phi = app.add_subcommand("phi", "evaluate the eigenfunction phi_lambda(x)");
  c_phi->add_option("--lambda", o.phi_lambda, "eigenvalue parameter")->required();
  c_phi->add_option("--x", o.phi_x, "evaluation point")->required();

  CLI::App* c_ml = app.add_subcommand("ml", "evaluate E_{gamma,beta}(t)");
  CLI::Option* ml_gamma_opt = c_ml->add_option("--gamma", o.ml_gamma, "order");
  c_ml->add_option("--beta", o.ml_beta, "second parameter");
  c_ml->add_option("--t", o.ml_t, "argument")->required();

  CLI::App* c_tr = app.add_subcommand("transform", "apply the transform to a CSV function");
  c_tr->add_option("--input", o.in_file, "input CSV (x,value or lambda,value)")->required();
  c_tr->add_option("--output", o.out_file, "output CSV")->required();
  c_tr->add_flag("--inverse", o.inverse, "apply the inverse transform");

  CLI::App* c_direct = app.add_subcommand("direct", "solve the direct problem");
  c_direct->add_option("--phi", o.phi_file, "initial datum CSV")->required();
  c_direct->add_option("--f", o.f_file, "source CSV (constant in time)")->required();

  CLI::App* c_isp = app.add_subcommand("isp", "recover (u, f) from initial/terminal data");
  c_isp->add_option("--phi", o.phi_file, "initial datum CSV")->required();
  c_isp->add_option("--psi", o.psi_file, "terminal datum CSV")->required();

  CLI::App* c_table = app.add_subcommand("stability-table", "run the stability experiment");
  c_table->add_option("--epsilons", o.epsilons, "perturbation sizes")->delimiter(',');

  CLI::App* c_self = app.add_subcommand("selftest", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!o.config_file.empty()) apply_config(app, parse_config_file(o.config_file), o);
    jisp::RunConfig cfg = make_run_config(o);

    if (c_phi->parsed()) {
      std::printf("phi(alpha=%g, beta=%g, lambda=%.17g, x=%.17g) = ", cfg.jacobi.alpha(),
                  cfg.jacobi.beta(), o.phi_lambda, o.phi_x);
      std::printf("%.17g\n", jisp::jacobi_phi(cfg.jacobi, o.phi_lambda, o.phi_x));
      return kExitOk;
    }

    if (c_ml->parsed()) {
      double g = ml_gamma_opt->count() ? o.ml_gamma : cfg.problem.gamma;
      std::printf("E(gamma=%.17g, beta=%.17g; t=%.17g) = ", g, o.ml_beta, o.ml_t);
      std::printf("%.17g\n", jisp::mittag_leffler(g, o.ml_beta, o.ml_t));
      return kExitOk;
    }

    if (c_tr->parsed()) {
      auto xg = jisp::build_spatial_grid(cfg.jacobi, cfg.x_max, cfg.n_x);
      auto sg = jisp::build_spectral_grid(cfg.jacobi, cfg.lambda_max, cfg.n_lambda);
      jisp::JacobiTransform tr(xg, sg);
      if (o.inverse) {
        auto [ls, vs] = jisp::read_xy_csv(o.in_file);
        if (ls.size() != sg->nodes.size())
          throw jisp::GridMismatchError(o.in_file + ": rows do not match the spectral grid");
        jisp::SpectralFunction g{sg, std::move(vs)};
        jisp::SampledFunction f = tr.inverse(g);
        jisp::write_xy_csv(o.out_file, "x", "value", f.grid->nodes, f.values);
      } else {
        jisp::SampledFunction f = load_on_grid(o.in_file, xg);
        jisp::SpectralFunction g = tr.forward(f);
        jisp::write_xy_csv(o.out_file, "lambda", "value", g.grid->nodes, g.values);
      }
      std::printf("wrote %s\n", o.out_file.c_str());
      return kExitOk;
    }

    if (c_direct->parsed()) {
      auto xg = jisp::build_spatial_grid(cfg.jacobi, cfg.x_max, cfg.n_x);
      auto sg = jisp::build_spectral_grid(cfg.jacobi, cfg.lambda_max, cfg.n_lambda);
      jisp::JacobiTransform tr(xg, sg);
      jisp::TimeGrid tg(cfg.problem.T, cfg.n_t);
      jisp::SampledFunction phi = load_on_grid(o.phi_file, xg);
      jisp::SampledFunction f = load_on_grid(o.f_file, xg);
      jisp::DirectSolution sol = jisp::direct_solve(cfg.problem, tr, tg, f, phi);
      std::map<std::string, double> norms;
      norms["u_H_at_T"] = sol.h_norms.back();
      norms["u_H_max"] = *std::max_element(sol.h_norms.begin(), sol.h_norms.end());
      norms["dt_u_l2_max"] = *std::max_element(sol.dt_u_norms.begin(), sol.dt_u_norms.end());
      jisp::SpectralFunction f_hat = tr.forward(f);
      jisp::SpectralFunction phi_hat = tr.forward(phi);
      write_solution_dir(cfg, cfg.output_dir, sol.u, &f, &f_hat, &phi_hat, nullptr, nullptr,
                         norms);
      std::printf("wrote direct solution to %s\n", cfg.output_dir.c_str());
      return kExitOk;
    }

    if (c_isp->parsed()) {
      auto xg = jisp::build_spatial_grid(cfg.jacobi, cfg.x_max, cfg.n_x);
      auto sg = jisp::build_spectral_grid(cfg.jacobi, cfg.lambda_max, cfg.n_lambda);
      jisp::JacobiTransform tr(xg, sg);
      jisp::TimeGrid tg(cfg.problem.T, cfg.n_t);
      jisp::SampledFunction phi = load_on_grid(o.phi_file, xg);
      jisp::SampledFunction psi = load_on_grid(o.psi_file, xg);
      jisp::IspSolution sol = jisp::isp_solve(cfg.problem, tr, tg, phi, psi);
      std::map<std::string, double> norms;
      norms["initial_residual"] = sol.initial_residual;
      norms["terminal_residual"] = sol.terminal_residual;
      norms["f_l2_mu"] = jisp::norm_l2_mu(sol.f);
      norms["u_H_at_T"] = jisp::norm_h(sol.u_hat.back());
      write_solution_dir(cfg, cfg.output_dir, sol.u, &sol.f, &sol.f_hat, &sol.phi_hat,
                         &sol.psi_hat, &sol.c_hat, norms);
      std::printf("wrote isp solution to %s\n", cfg.output_dir.c_str());
      return kExitOk;
    }

    if (c_table->parsed()) {
      auto rows = jisp::run_stability_table(o.epsilons, cfg);
      fs::create_directories(cfg.output_dir);
      fs::path out = fs::path(cfg.output_dir) / "stability_table.csv";
      jisp::write_stability_csv(out.string(), rows);
      std::printf("wrote %s\n", out.string().c_str());
      return kExitOk;
    }

    if (c_self->parsed()) {
      jisp::SuiteReport report = jisp::run_acceptance(cfg, jisp::acceptance_criteria());
      for (const auto& r : report.results)
        std::printf("[%-24s] %s  (%.2fs)  %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                    r.seconds, r.detail.c_str());
      fs::create_directories(cfg.output_dir);
      fs::path out = fs::path(cfg.output_dir) / "report.json";
      jisp::write_report_json(out.string(), cfg, report);
      std::printf("wrote %s\n", out.string().c_str());
      if (!report.all_pass()) {
        std::printf("selftest: criterion failure\n");
        return kExitCriterion;
      }
      return kExitOk;
    }

    std::fprintf(stderr, "%s", app.help().c_str());
    return kExitUsage;
  } catch (const jisp::ConvergenceError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const jisp::OverflowError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const jisp::DegenerateModeError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const jisp::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}
