#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "wigner/grid.hpp"
#include "wigner/hermitian_matrix.hpp"
#include "wigner/rng.hpp"

namespace wigner {

// Scalar law with mean 0 and variance 1 sampled by inverse CDF. The density is
// treated as piecewise constant between grid nodes with cell mass given by the
// trapezoid rule, and the law is shifted and rescaled exactly to mean 0, variance 1.
class GridLaw {
public:
  explicit GridLaw(const DensityGrid& h);
  double sample(RngStream& rng) const;
  // Moments of the standardized law (0 and 1 up to rounding).
  double mean() const;
  double variance() const;
  const std::string& source() const { return source_; }
  void set_source(std::string s) { source_ = std::move(s); }

private:
  std::vector<double> edges_;  // standardized cell edges
  std::vector<double> cdf_;    // cdf at edges, cdf_.front() = 0, back() = 1
  std::string source_;
};

struct EntryLaw {
  enum class Kind { gaussian, rademacher, uniform, grid_custom };
  Kind kind = Kind::gaussian;
  std::shared_ptr<const GridLaw> grid;  // set iff kind == grid_custom
  double nu = 1.0;                      // sub-Gaussian parameter, declared only

  // Draws a standardized scalar x with E x = 0, E x^2 = 1.
  double draw(RngStream& rng) const;
  std::string name() const;
  // "gaussian", "rademacher", "uniform" or "grid:<path>".
  static EntryLaw parse(const std::string& text);
};

struct EnsembleSpec {
  std::size_t n = 1;
  EntryLaw law;
  double t = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
  std::string to_config() const;
  // Reads the keys n, law, t, seed. Unknown keys are rejected.
  static EnsembleSpec from_config(const std::map<std::string, std::string>& kv);
};

HermitianMatrix sample_wigner(const EnsembleSpec& spec, RngStream& stream);
HermitianMatrix sample_gue(std::size_t n, RngStream& stream);
// Realization k of spec, drawn from derive_stream(spec.seed, k).
HermitianMatrix sample_realization(const EnsembleSpec& spec, std::uint64_t k);

// log of prod_{i<j} (mu_i - mu_j)^2 exp(-N/2 sum mu_j^2); -inf if two coordinates coincide.
double gue_joint_density(const std::vector<double>& mu, std::size_t n);

}  // namespace wigner
