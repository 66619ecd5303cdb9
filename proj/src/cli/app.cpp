#include <iostream>

#include "CLI11.hpp"
#include "wigner/cli.hpp"
#include "wigner/error.hpp"

namespace wigner::cli {

namespace {

const std::vector<std::string> kSubcommands = {"sample", "dos", "stieltjes", "deloc", "spacing",
                                               "dbm", "flow", "kernel", "selftest"};

void add_ensemble(CLI::App* sub, ExperimentConfig& c, bool with_reps = true) {
  sub->add_option("--n", c.n, "matrix dimension N")->capture_default_str();
  sub->add_option("--law", c.law, "entry law: gaussian, rademacher, uniform or grid:<path>")->capture_default_str();
  sub->add_option("--t", c.t, "strength of the added GUE component")->capture_default_str();
  if (with_reps) sub->add_option("--reps", c.reps, "number of realizations")->capture_default_str();
}

}  // namespace

int main_entry(int argc, char** argv) {
  ExperimentConfig c;
  std::vector<double> k_scales, eta_scales, eps_scales;
  double kernel_delta = 0, kernel_kappa = 0, kernel_r = 0, kernel_s = 0, kernel_tol = 0;
  std::size_t kernel_nodes = 0;
  std::string config_path;

  CLI::App app{"Numerical experiments on hermitian Wigner matrices"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", c.seed, "master seed")->capture_default_str();
  app.add_option("--workers", c.workers, "worker threads for realization loops")->capture_default_str();
  app.add_option("--out", c.out, "output prefix; writes <out>.csv and <out>.json (default: subcommand name)");
  app.add_option("--config", config_path, "key=value config file with [ensemble] and per-subcommand sections");

  auto* sample = app.add_subcommand("sample", "sample matrices and write their spectra");
  add_ensemble(sample, c);
  sample->add_flag("--write-matrix", c.write_matrix, "also write realization 0 as <out>_matrix.csv");

  auto* dos = app.add_subcommand("dos", "density of states in energy windows");
  add_ensemble(dos, c);
  dos->add_option("--e", c.energies, "window centers")->delimiter(',');
  auto* ok = dos->add_option("--k", k_scales, "microscopic windows [E - K/2N, E + K/2N]")->delimiter(',');
  auto* oeta = dos->add_option("--eta", eta_scales, "absolute windows [E - eta/2, E + eta/2]")->delimiter(',');
  auto* oeps = dos->add_option("--eps", eps_scales, "windows [E - eps/2N, E + eps/2N]")->delimiter(',');
  ok->excludes(oeta)->excludes(oeps);
  oeta->excludes(oeps);
  dos->add_option("--delta", c.deltas, "deviation thresholds for tail probabilities")->delimiter(',');

  auto* st = app.add_subcommand("stieltjes", "empirical vs semicircle Stieltjes transform");
  add_ensemble(st, c);
  st->add_option("--e", c.energies, "energies")->delimiter(',');
  st->add_option("--eta", c.etas, "imaginary parts")->delimiter(',');

  auto* de = app.add_subcommand("deloc", "eigenvector delocalization statistics");
  add_ensemble(de, c);
  de->add_option("--p", c.p, "norm exponent > 2 or inf")->capture_default_str();
  de->add_option("--bulk-kappa", c.bulk_kappa, "bulk is |mu| <= 2 - kappa")->capture_default_str();
  de->add_option("--e", c.energies, "window center for the tail curve")->delimiter(',');
  de->add_option("--window-k", c.window_k, "window [E - K/2N, E + K/2N] for the tail curve");
  de->add_option("--m-grid", c.m_grid, "thresholds M for the tail curve")->delimiter(',');

  auto* sp = app.add_subcommand("spacing", "two-point function of unfolded eigenvalues");
  add_ensemble(sp, c);
  sp->add_option("--e", c.energies, "energy")->delimiter(',');
  sp->add_option("--window", c.half_width, "half-width of the unfolded window")->capture_default_str();
  sp->add_option("--bin", c.bin_width, "bin width")->capture_default_str();
  sp->add_option("--rmax", c.r_max, "largest pair distance")->capture_default_str();

  auto* db = app.add_subcommand("dbm", "Dyson Brownian motion paths");
  add_ensemble(db, c);
  db->add_option("--times", c.times, "increasing times starting at 0")->delimiter(',');

  auto* fl = app.add_subcommand("flow", "compensated heat flow of a density");
  fl->add_option("--order", c.order, "order n of the compensation")->capture_default_str();
  fl->add_option("--t-values", c.t_values, "flow times")->delimiter(',');
  fl->add_option("--sigma", c.sigma, "standard deviation of the Gaussian test density")->capture_default_str();
  fl->add_option("--grid", c.grid_file, "density file (x,value per line) instead of the Gaussian");
  fl->add_option("--half-width", c.grid_half_width, "half-width of the Gaussian grid")->capture_default_str();
  fl->add_option("--points", c.grid_points, "points of the Gaussian grid")->capture_default_str();

  auto* ke = app.add_subcommand("kernel", "contour-integral correlation kernel vs the sine kernel");
  add_ensemble(ke, c, false);
  ke->add_option("--e", c.energies, "reference energy")->delimiter(',');
  ke->add_option("--y-source", c.y_source, "semicircle-quantiles or a file of initial eigenvalues")->capture_default_str();
  ke->add_option("--x1", c.x1, "first rescaled point")->capture_default_str();
  ke->add_option("--x2", c.x2, "second rescaled points")->delimiter(',');
  auto* od = ke->add_option("--delta", kernel_delta, "offset of the horizontal contour lines");
  auto* oka = ke->add_option("--kappa", kernel_kappa, "abscissa of the vertical contour");
  auto* orr = ke->add_option("--r", kernel_r, "free shift r");
  auto* os = ke->add_option("--S", kernel_s, "contour truncation half-length");
  auto* on = ke->add_option("--nodes", kernel_nodes, "quadrature nodes per segment");
  auto* ot = ke->add_option("--tolerance", kernel_tol, "largest accepted truncation estimate");

  app.add_subcommand("selftest", "exact-identity checks");

  std::vector<std::string> args(argv, argv + argc);
  try {
    args = merge_config_file(args, kSubcommands);
    std::vector<char*> cargs;
    for (auto& a : args) cargs.push_back(a.data());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  for (auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();
  if (c.subcommand == "dos") {
    if (!k_scales.empty()) {
      c.window_kind = "K";
      c.scales = k_scales;
    } else if (!eta_scales.empty()) {
      c.window_kind = "eta";
      c.scales = eta_scales;
    } else if (!eps_scales.empty()) {
      c.window_kind = "eps";
      c.scales = eps_scales;
    }
  }
  if (*od) c.kdelta = kernel_delta;
  if (*oka) c.kkappa = kernel_kappa;
  if (*orr) c.kr = kernel_r;
  if (*os) c.ks = kernel_s;
  if (*on) c.knodes = kernel_nodes;
  if (*ot) c.ktolerance = kernel_tol;
  if (c.out.empty()) c.out = c.subcommand;

  try {
    if (c.subcommand == "selftest") {
      const RunResult r = run(c);
      for (const auto& ch : r.manifest.statistics["checks"])
        std::cout << (ch["pass"].get<bool>() ? "PASS " : "FAIL ") << ch["name"].get<std::string>() << ": "
                  << ch["detail"].get<std::string>() << '\n';
      const bool pass = r.manifest.criteria["selftest"].get<bool>();
      std::cout << (pass ? "selftest passed" : "selftest FAILED") << '\n';
      if (app.get_option("--out")->count()) write_result(r, c.out);
      return pass ? 0 : 3;
    }
    const RunResult r = run(c);
    write_result(r, c.out);
    std::cout << "wrote " << c.out << ".csv and " << c.out << ".json\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const ArgumentError& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace wigner::cli
