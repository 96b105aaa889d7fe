#include "securesum/source.hpp"

#include <cmath>
#include <string>

#include "securesum/errors.hpp"

namespace securesum {

void DsbsParams::validate() const {
  detail::require(p >= 0.0 && p <= 0.5,
                  [&] { return "DSBS crossover p must lie in [0, 1/2], got " + std::to_string(p); });
  detail::require(n >= 1, "DSBS blocklength n must be positive");
}

std::pair<Gf2Vector, Gf2Vector> sample_pair(const DsbsParams& params, Rng& rng) {
  params.validate();
  Gf2Vector x = random_vector(params.n, rng);
  Gf2Vector z(params.n);
  for (std::size_t i = 0; i < params.n; ++i) z.set(i, bernoulli(rng, params.p));
  Gf2Vector y = x ^ z;
  return {std::move(x), std::move(y)};
}

double pair_probability(const Gf2Vector& x, const Gf2Vector& y, const DsbsParams& params) {
  params.validate();
  detail::require(x.size() == params.n && y.size() == params.n,
                  [&] { return "pair_probability: vectors must both have length n = " + std::to_string(params.n); });
  const std::size_t disagree = (x ^ y).weight();
  const std::size_t agree = params.n - disagree;
  return std::pow(params.p / 2.0, static_cast<double>(disagree)) *
         std::pow((1.0 - params.p) / 2.0, static_cast<double>(agree));
}

double binary_entropy(double p) {
  detail::require(p >= 0.0 && p <= 1.0,
                  [&] { return "binary_entropy: p must lie in [0, 1], got " + std::to_string(p); });
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

}  // namespace securesum
