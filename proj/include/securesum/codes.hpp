#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "securesum/gf2.hpp"
#include "securesum/seeds.hpp"

namespace securesum {

/// Size guards for table-based decoding.
struct CodeLimits {
  /// Largest syndrome length m whose 2^m-entry leader table may be built.
  std::size_t max_table_bits = 22;
  /// Largest n for which exact_error_probability enumerates all 2^n patterns.
  std::size_t max_enumeration_bits = 24;
};

/// Binary linear code given by a full-rank m x n parity-check matrix H,
/// decoded by a complete minimum-weight coset-leader table.
///
/// Leaders are chosen breadth-first by Hamming weight. Among words of equal
/// weight the lexicographically smallest bit string wins, reading bit 0 as the
/// most significant character. The table is rebuilt on construction and never
/// serialized.
class LinearCode {
 public:
  /// Throws ContractViolation when H is not full row rank, CapacityError when
  /// 2^m exceeds the table budget or n > 64.
  explicit LinearCode(Gf2Matrix parity_check, std::optional<std::uint64_t> seed = std::nullopt, CodeLimits limits = {});

  std::size_t n() const { return h_.cols(); }
  std::size_t m() const { return h_.rows(); }
  double rate() const { return n() == 0 ? 0.0 : static_cast<double>(m()) / static_cast<double>(n()); }
  const Gf2Matrix& parity_check() const { return h_; }
  std::optional<std::uint64_t> seed() const { return seed_; }
  const CodeLimits& limits() const { return limits_; }

  Gf2Vector syndrome(const Gf2Vector& w) const;
  Gf2Vector decode_syndrome(const Gf2Vector& s) const;

  /// Packed fast paths: bit i of the word is coordinate i.
  std::uint64_t syndrome_word(std::uint64_t w) const;
  std::uint64_t leader_word(std::uint64_t s) const { return leaders_[s]; }
  std::size_t table_size() const { return leaders_.size(); }

 private:
  void build_leader_table();

  Gf2Matrix h_;
  std::optional<std::uint64_t> seed_;
  CodeLimits limits_;
  std::vector<std::uint64_t> columns_;  // syndrome of each unit vector
  std::vector<std::uint64_t> leaders_;  // indexed by packed syndrome
};

/// Random full-rank code: rows are drawn uniformly and any row in the span of
/// the rows kept so far is redrawn.
LinearCode build_code(std::size_t n, std::size_t m, Rng& rng, CodeLimits limits = {});

/// Convenience overload that seeds its own generator and records the seed.
LinearCode build_code(std::size_t n, std::size_t m, std::uint64_t seed, CodeLimits limits = {});

Gf2Vector syndrome(const LinearCode& code, const Gf2Vector& w);
Gf2Vector decode_syndrome(const LinearCode& code, const Gf2Vector& s);

/// Probability that the leader decoder misses Z ~ Bernoulli(p)^n, by
/// enumerating every error pattern.
double exact_error_probability(const LinearCode& code, double p);

/// {"n","m","seed","H":[row strings]}.
std::string code_to_json(const LinearCode& code);
LinearCode code_from_json(const std::string& text, CodeLimits limits = {});

}  // namespace securesum
