#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wigner/cli.hpp"
#include "wigner/dbm.hpp"
#include "wigner/deloc.hpp"
#include "wigner/ensemble.hpp"
#include "wigner/error.hpp"
#include "wigner/jkernel.hpp"
#include "wigner/localstats.hpp"
#include "wigner/parallel.hpp"
#include "wigner/semicircle.hpp"
#include "wigner/spectral.hpp"
#include "wigner/stats.hpp"
#include "wigner/stieltjes.hpp"

namespace wigner::cli {

namespace {

using nlohmann::json;

class Csv {
public:
  explicit Csv(std::initializer_list<const char*> header) {
    bool first = true;
    for (const char* h : header) {
      if (!first) os_ << ',';
      os_ << h;
      first = false;
    }
    os_ << '\n';
  }
  Csv& cell(double x) { return raw(format_double(x)); }
  Csv& cell(std::size_t x) { return raw(std::to_string(x)); }
  Csv& cell(const std::string& s) { return raw(csv_field(s)); }
  void end() {
    os_ << '\n';
    first_ = true;
  }
  std::string str() const { return os_.str(); }

private:
  Csv& raw(const std::string& s) {
    if (!first_) os_ << ',';
    os_ << s;
    first_ = false;
    return *this;
  }
  std::ostringstream os_;
  bool first_ = true;
};

EnsembleSpec make_spec(const ExperimentConfig& c) {
  EnsembleSpec s;
  s.n = c.n;
  s.law = EntryLaw::parse(c.law);
  s.t = c.t;
  s.seed = c.seed;
  s.validate();
  return s;
}

double parse_p(const std::string& p) { return p == "inf" ? kInfNorm : std::stod(p); }

std::span<const double> span_of(const Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

RunResult run_sample(const ExperimentConfig& c) {
  const EnsembleSpec spec = make_spec(c);
  const auto spectra = map_realizations<Eigen::VectorXd>(
      c.reps, c.workers, [&](std::size_t k) { return eigenvalues(sample_realization(spec, k)); });
  Csv csv({"rep", "index", "eigenvalue"});
  double max_abs = 0.0;
  std::vector<double> maxima;
  for (std::size_t k = 0; k < spectra.size(); ++k) {
    for (Eigen::Index i = 0; i < spectra[k].size(); ++i) {
      csv.cell(k).cell(static_cast<std::size_t>(i)).cell(spectra[k](i));
      csv.end();
    }
    const double m = spectra[k].cwiseAbs().maxCoeff();
    maxima.push_back(m);
    max_abs = std::max(max_abs, m);
  }
  RunResult r;
  r.tables.push_back({"", csv.str()});
  r.manifest.statistics = {{"max_abs_eigenvalue", max_abs}, {"median_spectral_radius", median(maxima)}};
  if (c.write_matrix) {
    std::ostringstream os;
    sample_realization(spec, 0).write_csv(os);
    r.tables.push_back({"matrix", os.str()});
  }
  return r;
}

RunResult run_dos(const ExperimentConfig& c) {
  const EnsembleSpec spec = make_spec(c);
  const WindowKind kind = parse_window_kind(c.window_kind);
  std::vector<EnergyWindow> windows;
  for (double e : c.energies)
    for (double s : c.scales) windows.push_back({e, kind, s});
  const auto per_rep = map_realizations<std::vector<double>>(c.reps, c.workers, [&](std::size_t k) {
    const Eigen::VectorXd ev = eigenvalues(sample_realization(spec, k));
    std::vector<double> est;
    for (const auto& w : windows) est.push_back(dos_estimate(span_of(ev), w, spec.n));
    return est;
  });
  Csv csv({"E", "scale_kind", "scale", "estimate", "stderr", "reps", "seed"});
  json stats = json::array();
  for (std::size_t i = 0; i < windows.size(); ++i) {
    std::vector<double> col(c.reps);
    for (std::size_t k = 0; k < c.reps; ++k) col[k] = per_rep[k][i];
    const MeanEstimate m = mean_estimate(col);
    csv.cell(windows[i].e).cell(to_string(kind)).cell(windows[i].scale).cell(m.mean).cell(m.stderr_).cell(c.reps).cell(
        std::to_string(c.seed));
    csv.end();
    json entry = {{"E", windows[i].e}, {"scale", windows[i].scale}, {"mean", m.mean}, {"stderr", m.stderr_},
                  {"rho_sc", rho_sc(windows[i].e)}};
    json dev = json::array();
    for (double d : c.deltas) {
      const DeviationResult dr = deviation_from_samples(col, windows[i].e, d);
      dev.push_back({{"delta", d},
                     {"probability", dr.probability},
                     {"hits", dr.hits},
                     {"wilson_lo", dr.wilson.lo},
                     {"wilson_hi", dr.wilson.hi}});
    }
    if (!dev.empty()) entry["deviation"] = dev;
    stats.push_back(entry);
  }
  RunResult r;
  r.tables.push_back({"", csv.str()});
  r.manifest.statistics = {{"windows", stats}};
  return r;
}

RunResult run_stieltjes(const ExperimentConfig& c) {
  const EnsembleSpec spec = make_spec(c);
  std::vector<UpperHalfPoint> pts;
  for (double e : c.energies)
    for (double eta : c.etas) pts.emplace_back(e, eta);
  struct Sample {
    std::vector<std::complex<double>> m;
  };
  const auto per_rep = map_realizations<Sample>(c.reps, c.workers, [&](std::size_t k) {
    const Eigen::VectorXd ev = eigenvalues(sample_realization(spec, k));
    Sample s;
    for (const auto& z : pts) s.m.push_back(m_N(span_of(ev), z));
    return s;
  });
  Csv csv({"E", "eta", "re_mN", "im_mN", "re_msc", "im_msc", "residual", "reps", "stderr"});
  json stats = json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::complex<double> mean = 0.0;
    std::vector<double> diff(c.reps), resid(c.reps);
    const std::complex<double> msc = m_sc(pts[i]);
    for (std::size_t k = 0; k < c.reps; ++k) {
      const auto m = per_rep[k].m[i];
      mean += m;
      diff[k] = std::abs(m - msc);
      resid[k] = fixed_point_residual(m, pts[i]);
    }
    mean /= static_cast<double>(c.reps);
    const MeanEstimate d = mean_estimate(diff), res = mean_estimate(resid);
    csv.cell(pts[i].e).cell(pts[i].eta).cell(mean.real()).cell(mean.imag()).cell(msc.real()).cell(msc.imag());
    csv.cell(res.mean).cell(c.reps).cell(d.stderr_);
    csv.end();
    stats.push_back({{"E", pts[i].e},
                     {"eta", pts[i].eta},
                     {"mean_abs_diff", d.mean},
                     {"mean_abs_diff_stderr", d.stderr_},
                     {"mean_residual", res.mean}});
  }
  RunResult r;
  r.tables.push_back({"", csv.str()});
  r.manifest.statistics = {{"points", stats}};
  return r;
}

RunResult run_deloc(const ExperimentConfig& c) {
  const EnsembleSpec spec = make_spec(c);
  const double p = parse_p(c.p);
  const double half = c.window_k > 0.0 ? c.window_k / (2.0 * static_cast<double>(spec.n)) : 0.0;
  struct Sample {
    DelocReport report;
    double window_max = 0.0;
  };
  const auto per_rep = map_realizations<Sample>(c.reps, c.workers, [&](std::size_t k) {
    const SpectralDecomposition sd = hermitian_eig(sample_realization(spec, k), true);
    Sample s;
    s.report = deloc_report(sd, p, c.bulk_kappa);
    if (half > 0.0) s.window_max = max_statistic_in(sd, c.energies.front() - half, c.energies.front() + half, p);
    return s;
  });
  Csv csv({"rep", "mu", "p", "M"});
  std::vector<double> maxima, medians;
  const double logn = std::log(static_cast<double>(spec.n));
  std::size_t within = 0;
  for (std::size_t k = 0; k < per_rep.size(); ++k) {
    for (const auto& rec : per_rep[k].report.records) {
      csv.cell(k).cell(rec.mu).cell(c.p).cell(rec.m);
      csv.end();
    }
    maxima.push_back(per_rep[k].report.bulk_max);
    medians.push_back(per_rep[k].report.bulk_median);
    if (per_rep[k].report.bulk_max * per_rep[k].report.bulk_max <= 25.0 * logn) ++within;
  }
  json stats = {{"bulk_max_per_rep", maxima},
                {"bulk_max", *std::max_element(maxima.begin(), maxima.end())},
                {"median_of_bulk_medians", median(medians)},
                {"fraction_max_sq_below_25_log_n", static_cast<double>(within) / static_cast<double>(c.reps)}};
  if (!c.m_grid.empty()) {
    json tail = json::array();
    for (double m : c.m_grid) {
      std::size_t hits = 0;
      for (const auto& s : per_rep)
        if (s.window_max >= m) ++hits;
      tail.push_back({{"M", m}, {"tail", static_cast<double>(hits) / static_cast<double>(c.reps)}});
    }
    stats["tail"] = tail;
  }
  RunResult r;
  r.tables.push_back({"", csv.str()});
  r.manifest.statistics = stats;
  return r;
}

RunResult run_spacing(const ExperimentConfig& c) {
  const EnsembleSpec spec = make_spec(c);
  const double e = c.energies.front();
  const auto unfolded = map_realizations<std::vector<double>>(c.reps, c.workers, [&](std::size_t k) {
    const Eigen::VectorXd ev = eigenvalues(sample_realization(spec, k));
    return rescale_near(span_of(ev), e, spec.n, c.half_width);
  });
  const PairBins bins{c.bin_width, c.r_max};
  const CorrelationEstimate est = two_point_from_unfolded(unfolded, c.half_width, bins, c.workers);
  Csv csv({"r", "R2_hat", "stderr", "R2_sine"});
  double max_dev = 0.0;
  for (std::size_t b = 0; b < est.centers.size(); ++b) {
    const double r1 = c.bin_width * static_cast<double>(b);
    const double ref = sine_two_point_bin(r1, r1 + c.bin_width);
    csv.cell(est.centers[b]).cell(est.values[b]).cell(est.stderr_[b]).cell(ref);
    csv.end();
    if (r1 >= 0.1 - 1e-12 && r1 + c.bin_width <= 2.5 + 1e-12) max_dev = std::max(max_dev, std::abs(est.values[b] - ref));
  }
  RunResult r;
  r.tables.push_back({"", csv.str()});
  r.manifest.statistics = {{"E", e},         {"W", c.half_width}, {"bins", est.centers.size()},
                           {"reps", c.reps}, {"seed", c.seed},    {"max_abs_dev_r_0.1_2.5", max_dev}};
  return r;
}

RunResult run_dbm(const ExperimentConfig& c) {
  const EnsembleSpec spec = make_spec(c);
  const auto paths = map_realizations<DbmPath>(c.reps, c.workers, [&](std::size_t k) {
    RngStream rng = derive_stream(spec.seed, k);
    const HermitianMatrix h0 = sample_wigner(spec, rng);
    return dbm_path(h0, c.times, rng);
  });
  Csv csv({"path", "time", "index", "eigenvalue"});
  std::vector<double> spread;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    for (std::size_t i = 0; i < paths[k].times.size(); ++i)
      for (Eigen::Index a = 0; a < paths[k].spectra[i].size(); ++a) {
        csv.cell(k).cell(paths[k].times[i]).cell(static_cast<std::size_t>(a)).cell(paths[k].spectra[i](a));
        csv.end();
      }
    const auto& last = paths[k].spectra.back();
    spread.push_back(last.squaredNorm() / static_cast<double>(last.size()));
  }
  RunResult r;
  r.tables.push_back({"", csv.str()});
  r.manifest.statistics = {{"mean_second_moment_final", mean_estimate(spread).mean},
                           {"expected_second_moment_final", 1.0 + c.t + c.times.back()}};
  return r;
}

RunResult run_flow(const ExperimentConfig& c) {
  const DensityGrid h = c.grid_file.empty()
                            ? DensityGrid::gaussian(0.0, c.sigma * c.sigma, c.grid_half_width, c.grid_points)
                            : DensityGrid::load(c.grid_file);
  Csv main({"t", "x", "h", "h_tilde"});
  Csv errs({"t", "n", "l1_error"});
  std::vector<double> ts, es;
  for (double t : c.t_values) {
    const GridFunction ht = compensated_density(h, t, c.order);
    const GridFunction back = heat_semigroup(ht, t);
    const double err = back.l1_distance(h.grid());
    for (std::size_t i = 0; i < h.size(); ++i) {
      main.cell(t).cell(h.x(i)).cell(h.values()[i]).cell(ht.values[i]);
      main.end();
    }
    errs.cell(t).cell(static_cast<std::size_t>(c.order)).cell(err);
    errs.end();
    ts.push_back(t);
    es.push_back(err);
  }
  RunResult r;
  r.tables.push_back({"", main.str()});
  r.tables.push_back({"errors", errs.str()});
  json stats = {{"l1_errors", es}};
  bool positive = true;
  for (double e : es) positive = positive && e > 0.0;
  if (ts.size() >= 2 && positive) stats["fitted_order"] = loglog_slope(ts, es);
  r.manifest.statistics = stats;
  return r;
}

std::vector<double> load_y(const std::string& source, std::size_t n) {
  if (source == "semicircle-quantiles") return semicircle_quantiles(n);
  std::ifstream f(source);
  if (!f) throw ConfigError("cannot open y file: " + source);
  std::vector<double> y;
  std::string tok;
  while (f >> tok) {
    std::replace(tok.begin(), tok.end(), ',', ' ');
    std::istringstream ts(tok);
    double v;
    while (ts >> v) y.push_back(v);
  }
  if (y.empty()) throw ConfigError("y file is empty: " + source);
  std::sort(y.begin(), y.end());
  return y;
}

RunResult run_kernel(const ExperimentConfig& c) {
  SineLimitTemplate tpl;
  tpl.t = c.t;
  tpl.y = load_y(c.y_source, c.n);
  ContourOverrides ov;
  ov.delta = c.kdelta;
  ov.kappa = c.kkappa;
  ov.r = c.kr;
  ov.s = c.ks;
  ov.tolerance = c.ktolerance;
  ov.nodes = c.knodes;
  std::vector<std::pair<double, double>> pairs;
  for (double x2 : c.x2) pairs.emplace_back(c.x1, x2);
  const double e = c.energies.front();
  const auto rows = sine_limit_report(e, pairs, tpl, ov, c.workers);
  Csv csv({"x1", "x2", "re_K", "im_K", "normalized", "sinc", "abs_err", "error_estimate"});
  double max_err = 0.0;
  for (const auto& row : rows) {
    csv.cell(row.x1).cell(row.x2).cell(row.k12.real()).cell(row.k12.imag()).cell(row.normalized).cell(row.sinc);
    csv.cell(row.abs_err).cell(row.error_estimate);
    csv.end();
    max_err = std::max(max_err, row.abs_err);
  }
  RunResult r;
  r.tables.push_back({"", csv.str()});
  r.manifest.statistics = {{"N", tpl.y.size()}, {"rho_t", rho_t(e, c.t)}, {"max_abs_err", max_err}};
  return r;
}

RunResult run_selftest(const ExperimentConfig&) {
  const SelftestReport rep = selftest();
  json checks = json::array();
  for (const auto& ch : rep.checks) checks.push_back({{"name", ch.name}, {"pass", ch.pass}, {"detail", ch.detail}});
  RunResult r;
  r.manifest.statistics = {{"checks", checks}};
  r.manifest.criteria = {{"selftest", rep.all_pass()}};
  Csv csv({"check", "pass", "detail"});
  for (const auto& ch : rep.checks) {
    csv.cell(ch.name).cell(std::string(ch.pass ? "true" : "false")).cell(ch.detail);
    csv.end();
  }
  r.tables.push_back({"", csv.str()});
  return r;
}

}  // namespace

RunResult run(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  RunResult r;
  const std::string& s = config.subcommand;
  if (s == "sample") r = run_sample(config);
  else if (s == "dos") r = run_dos(config);
  else if (s == "stieltjes") r = run_stieltjes(config);
  else if (s == "deloc") r = run_deloc(config);
  else if (s == "spacing") r = run_spacing(config);
  else if (s == "dbm") r = run_dbm(config);
  else if (s == "flow") r = run_flow(config);
  else if (s == "kernel") r = run_kernel(config);
  else r = run_selftest(config);
  r.manifest.config = config.to_json();
  r.manifest.workers = config.workers;
  r.manifest.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace wigner::cli
