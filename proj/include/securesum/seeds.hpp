#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace securesum {

/// The one generator type used throughout. mt19937_64 output is fixed by the
/// standard, so seeded runs are reproducible across toolchains as long as we
/// consume raw words (no std:: distributions).
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// FNV-1a over the bytes of `text`.
std::uint64_t hash_text(std::string_view text);

/// Mixes an ordered list of words into one seed.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform_unit(Rng& rng);

/// Bernoulli(p) bit; p = 0 never fires, p = 1 always fires.
bool bernoulli(Rng& rng, double p);

}  // namespace securesum
