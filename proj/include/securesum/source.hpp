#pragma once

#include <cstddef>
#include <utility>

#include "securesum/gf2.hpp"
#include "securesum/seeds.hpp"

namespace securesum {

/// Doubly symmetric binary source: uniform marginals, Pr(x_i != y_i) = p.
struct DsbsParams {
  double p = 0.0;
  std::size_t n = 1;

  /// Throws ContractViolation unless 0 <= p <= 1/2 and n >= 1.
  void validate() const;
};

/// Draws x uniform, z ~ Bernoulli(p)^n, and returns (x, x ^ z).
std::pair<Gf2Vector, Gf2Vector> sample_pair(const DsbsParams& params, Rng& rng);

/// Product over symbols of p/2 (disagree) or (1-p)/2 (agree).
double pair_probability(const Gf2Vector& x, const Gf2Vector& y, const DsbsParams& params);

/// H2(p) in bits, 0 log 0 := 0.
double binary_entropy(double p);

}  // namespace securesum
