#include "wigner/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wigner/error.hpp"

namespace wigner {

GridLaw::GridLaw(const DensityGrid& h) {
  const auto& v = h.values();
  const std::size_t cells = v.size() - 1;
  std::vector<double> mass(cells);
  double total = 0.0, m1 = 0.0, m2 = 0.0;
  const double dx = h.dx();
  for (std::size_t i = 0; i < cells; ++i) {
    mass[i] = 0.5 * (v[i] + v[i + 1]) * dx;
    const double c = h.x(i) + 0.5 * dx;
    total += mass[i];
    m1 += mass[i] * c;
    m2 += mass[i] * (c * c + dx * dx / 12.0);
  }
  if (!(total > 0.0)) throw ConfigError("grid law has zero mass");
  const double mean = m1 / total;
  const double var = m2 / total - mean * mean;
  if (!(var > 0.0)) throw ConfigError("grid law has zero variance");
  const double sd = std::sqrt(var);
  edges_.resize(cells + 1);
  cdf_.resize(cells + 1);
  cdf_[0] = 0.0;
  for (std::size_t i = 0; i <= cells; ++i) edges_[i] = (h.x(i) - mean) / sd;
  double acc = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    acc += mass[i];
    cdf_[i + 1] = acc / total;
  }
  cdf_.back() = 1.0;
}

double GridLaw::sample(RngStream& rng) const {
  const double u = rng.uniform();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
  if (i == 0) i = 1;
  if (i >= cdf_.size()) i = cdf_.size() - 1;
  const double lo = cdf_[i - 1], hi = cdf_[i];
  const double f = hi > lo ? (u - lo) / (hi - lo) : 0.5;
  return edges_[i - 1] + f * (edges_[i] - edges_[i - 1]);
}

double GridLaw::mean() const {
  double s = 0.0;
  for (std::size_t i = 1; i < cdf_.size(); ++i) s += (cdf_[i] - cdf_[i - 1]) * 0.5 * (edges_[i] + edges_[i - 1]);
  return s;
}

double GridLaw::variance() const {
  double s = 0.0;
  for (std::size_t i = 1; i < cdf_.size(); ++i) {
    const double c = 0.5 * (edges_[i] + edges_[i - 1]);
    const double w = edges_[i] - edges_[i - 1];
    s += (cdf_[i] - cdf_[i - 1]) * (c * c + w * w / 12.0);
  }
  const double m = mean();
  return s - m * m;
}

double EntryLaw::draw(RngStream& rng) const {
  switch (kind) {
    case Kind::gaussian:
      return rng.normal();
    case Kind::rademacher:
      return rng.sign();
    case Kind::uniform:
      return std::sqrt(3.0) * (2.0 * rng.uniform() - 1.0);
    case Kind::grid_custom:
      if (!grid) throw ConfigError("grid-custom law without a grid");
      return grid->sample(rng);
  }
  return 0.0;
}

std::string EntryLaw::name() const {
  switch (kind) {
    case Kind::gaussian:
      return "gaussian";
    case Kind::rademacher:
      return "rademacher";
    case Kind::uniform:
      return "uniform";
    case Kind::grid_custom:
      return "grid:" + (grid ? grid->source() : std::string());
  }
  return "?";
}

EntryLaw EntryLaw::parse(const std::string& text) {
  EntryLaw law;
  if (text == "gaussian") {
    law.kind = Kind::gaussian;
  } else if (text == "rademacher") {
    law.kind = Kind::rademacher;
  } else if (text == "uniform") {
    law.kind = Kind::uniform;
  } else if (text.rfind("grid:", 0) == 0) {
    const std::string path = text.substr(5);
    auto g = std::make_shared<GridLaw>(DensityGrid::load(path));
    g->set_source(path);
    law.kind = Kind::grid_custom;
    law.grid = std::move(g);
  } else {
    throw ConfigError("unknown entry law '" + text + "' (expected gaussian, rademacher, uniform or grid:<path>)");
  }
  return law;
}

void EnsembleSpec::validate() const {
  if (n < 1) throw ConfigError("ensemble dimension n must be >= 1");
  if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("gaussian component t must be finite and >= 0");
  if (law.kind == EntryLaw::Kind::grid_custom && !law.grid) throw ConfigError("grid-custom law without a grid");
}

std::string EnsembleSpec::to_config() const {
  std::ostringstream os;
  os.precision(17);
  os << "n=" << n << "\nlaw=" << law.name() << "\nt=" << t << "\nseed=" << seed << "\n";
  return os.str();
}

EnsembleSpec EnsembleSpec::from_config(const std::map<std::string, std::string>& kv) {
  EnsembleSpec s;
  for (const auto& [key, value] : kv) {
    try {
      if (key == "n") {
        const long long v = std::stoll(value);
        if (v < 1) throw ConfigError("n must be >= 1");
        s.n = static_cast<std::size_t>(v);
      } else if (key == "law") {
        s.law = EntryLaw::parse(value);
      } else if (key == "t") {
        s.t = std::stod(value);
      } else if (key == "seed") {
        s.seed = std::stoull(value);
      } else {
        throw ConfigError("unknown ensemble key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw ConfigError("cannot parse ensemble key '" + key + "' = '" + value + "'");
    } catch (const std::out_of_range&) {
      throw ConfigError("ensemble key '" + key + "' out of range: '" + value + "'");
    }
  }
  s.validate();
  return s;
}

namespace {

// Fills the upper triangle row by row and mirrors it. Off-diagonal real and
// imaginary parts are x/sqrt(2), diagonal entries x, all scaled by 1/sqrt(N).
void fill_wigner(HermitianMatrix& h, const EntryLaw& law, RngStream& rng, double scale) {
  const std::size_t n = h.dim();
  const double off = scale / std::sqrt(2.0);
  for (std::size_t j = 0; j < n; ++j) {
    h.set_diagonal(j, scale * law.draw(rng));
    for (std::size_t l = j + 1; l < n; ++l) {
      const double re = law.draw(rng);
      const double im = law.draw(rng);
      h.set(j, l, cplx(off * re, off * im));
    }
  }
}

}  // namespace

HermitianMatrix sample_gue(std::size_t n, RngStream& stream) {
  if (n < 1) throw ArgumentError("GUE dimension must be >= 1");
  HermitianMatrix h(n);
  fill_wigner(h, EntryLaw{}, stream, 1.0 / std::sqrt(static_cast<double>(n)));
  return h;
}

HermitianMatrix sample_wigner(const EnsembleSpec& spec, RngStream& stream) {
  spec.validate();
  HermitianMatrix h(spec.n);
  fill_wigner(h, spec.law, stream, 1.0 / std::sqrt(static_cast<double>(spec.n)));
  if (spec.t > 0.0) h.add_scaled(sample_gue(spec.n, stream), std::sqrt(spec.t));
  return h;
}

HermitianMatrix sample_realization(const EnsembleSpec& spec, std::uint64_t k) {
  RngStream rng = derive_stream(spec.seed, k);
  return sample_wigner(spec, rng);
}

double gue_joint_density(const std::vector<double>& mu, std::size_t n) {
  if (mu.size() != n) throw ArgumentError("gue_joint_density: vector length differs from N");
  double s = 0.0, q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    q += mu[i] * mu[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::abs(mu[i] - mu[j]);
      if (d == 0.0) return -std::numeric_limits<double>::infinity();
      s += 2.0 * std::log(d);
    }
  }
  return s - 0.5 * static_cast<double>(n) * q;
}

}  // namespace wigner
