#include "securesum/codes.hpp"

#include <bit>
#include <cmath>
#include <json.hpp>

#include "securesum/errors.hpp"

namespace securesum {
namespace {

std::uint64_t low_mask(std::size_t bits) { return bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1); }

}  // namespace

LinearCode::LinearCode(Gf2Matrix parity_check, std::optional<std::uint64_t> seed, CodeLimits limits)
    : h_(std::move(parity_check)), seed_(seed), limits_(limits) {
  if (m() > limits_.max_table_bits) {
    throw CapacityError("leader table needs 2^" + std::to_string(m()) + " entries; budget is 2^" +
                        std::to_string(limits_.max_table_bits));
  }
  if (n() > 64) throw CapacityError("table decoding supports n <= 64, got n = " + std::to_string(n()));
  detail::require(m() <= n(), "parity-check matrix has more rows than columns");
  detail::require(rank(h_) == m(), "parity-check matrix is not full row rank");

  columns_.assign(n(), 0);
  for (std::size_t r = 0; r < m(); ++r) {
    for (std::size_t c = 0; c < n(); ++c) {
      if (h_.get(r, c)) columns_[c] |= std::uint64_t{1} << r;
    }
  }
  build_leader_table();
}

void LinearCode::build_leader_table() {
  const std::size_t count = std::size_t{1} << m();
  constexpr std::uint64_t kUnset = ~std::uint64_t{0};
  leaders_.assign(count, kUnset);
  std::size_t filled = 0;
  const std::size_t len = n();

  // Candidates are walked as integers u whose bit (len-1-i) is coordinate i,
  // so increasing u within one weight is increasing lexicographic order.
  for (std::size_t weight = 0; weight <= len && filled < count; ++weight) {
    if (weight == 0) {
      leaders_[0] = 0;
      ++filled;
      continue;
    }
    std::uint64_t u = low_mask(weight);
    const std::uint64_t limit = low_mask(len);
    while (true) {
      std::uint64_t word = 0;
      std::uint64_t s = 0;
      for (std::uint64_t bits = u; bits != 0; bits &= bits - 1) {
        const std::size_t coord = len - 1 - static_cast<std::size_t>(std::countr_zero(bits));
        word |= std::uint64_t{1} << coord;
        s ^= columns_[coord];
      }
      if (leaders_[s] == kUnset) {
        leaders_[s] = word;
        if (++filled == count) break;
      }
      if (u == (limit & ~low_mask(len - weight))) break;  // highest weight-w pattern
      // Gosper's hack: next integer with the same popcount.
      const std::uint64_t c = u & (~u + 1);
      const std::uint64_t r = u + c;
      u = (((r ^ u) >> 2) / c) | r;
    }
  }
}

std::uint64_t LinearCode::syndrome_word(std::uint64_t w) const {
  std::uint64_t s = 0;
  for (std::uint64_t bits = w; bits != 0; bits &= bits - 1) {
    s ^= columns_[static_cast<std::size_t>(std::countr_zero(bits))];
  }
  return s;
}

Gf2Vector LinearCode::syndrome(const Gf2Vector& w) const {
  detail::require(w.size() == n(), [&] {
    return "syndrome: word length " + std::to_string(w.size()) + " does not match code length " + std::to_string(n());
  });
  return matvec(h_, w);
}

Gf2Vector LinearCode::decode_syndrome(const Gf2Vector& s) const {
  detail::require(s.size() == m(), [&] {
    return "decode_syndrome: syndrome length " + std::to_string(s.size()) +
           " does not match m = " + std::to_string(m());
  });
  return Gf2Vector::from_word(leaders_[s.to_word()], n());
}

LinearCode build_code(std::size_t n, std::size_t m, Rng& rng, CodeLimits limits) {
  detail::require(m <= n,
                  [&] { return "build_code: m (" + std::to_string(m) + ") exceeds n (" + std::to_string(n) + ")"; });
  if (m > limits.max_table_bits) {
    throw CapacityError("leader table needs 2^" + std::to_string(m) + " entries; budget is 2^" +
                        std::to_string(limits.max_table_bits));
  }
  std::vector<Gf2Vector> rows;
  rows.reserve(m);
  while (rows.size() < m) {
    rows.push_back(random_vector(n, rng));
    if (rank(Gf2Matrix::from_rows(rows, n)) < rows.size()) rows.pop_back();
  }
  return LinearCode(Gf2Matrix::from_rows(std::move(rows), n), std::nullopt, limits);
}

LinearCode build_code(std::size_t n, std::size_t m, std::uint64_t seed, CodeLimits limits) {
  Rng rng(seed);
  LinearCode drawn = build_code(n, m, rng, limits);
  return LinearCode(drawn.parity_check(), seed, limits);
}

Gf2Vector syndrome(const LinearCode& code, const Gf2Vector& w) { return code.syndrome(w); }

Gf2Vector decode_syndrome(const LinearCode& code, const Gf2Vector& s) { return code.decode_syndrome(s); }

double exact_error_probability(const LinearCode& code, double p) {
  detail::require(p >= 0.0 && p <= 1.0, "exact_error_probability: p must lie in [0, 1]");
  const std::size_t n = code.n();
  if (n > code.limits().max_enumeration_bits) {
    throw CapacityError("exact error enumeration needs 2^" + std::to_string(n) + " patterns; guard is 2^" +
                        std::to_string(code.limits().max_enumeration_bits));
  }
  std::vector<double> weight_prob(n + 1);
  for (std::size_t w = 0; w <= n; ++w) {
    weight_prob[w] = std::pow(p, static_cast<double>(w)) * std::pow(1.0 - p, static_cast<double>(n - w));
  }
  double error = 0.0;
  const std::uint64_t patterns = std::uint64_t{1} << n;
  for (std::uint64_t z = 0; z < patterns; ++z) {
    if (code.leader_word(code.syndrome_word(z)) != z) {
      error += weight_prob[static_cast<std::size_t>(std::popcount(z))];
    }
  }
  return error;
}

std::string code_to_json(const LinearCode& code) {
  nlohmann::json doc;
  doc["n"] = code.n();
  doc["m"] = code.m();
  doc["seed"] = code.seed() ? nlohmann::json(*code.seed()) : nlohmann::json(nullptr);
  doc["H"] = code.parity_check().row_strings();
  return doc.dump();
}

LinearCode code_from_json(const std::string& text, CodeLimits limits) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("code document is not valid JSON: ") + e.what());
  }
  if (!doc.contains("n") || !doc.contains("m") || !doc.contains("H")) {
    throw ConfigError("code document needs n, m and H");
  }
  const auto n = doc["n"].get<std::size_t>();
  const auto m = doc["m"].get<std::size_t>();
  std::vector<Gf2Vector> rows;
  for (const auto& row : doc["H"]) rows.push_back(Gf2Vector::from_string(row.get<std::string>()));
  if (rows.size() != m)
    throw ConfigError("code document: H has " + std::to_string(rows.size()) + " rows, m = " + std::to_string(m));
  for (const auto& r : rows) {
    if (r.size() != n) throw ConfigError("code document: H row length differs from n");
  }
  std::optional<std::uint64_t> seed;
  if (doc.contains("seed") && !doc["seed"].is_null()) seed = doc["seed"].get<std::uint64_t>();
  return LinearCode(Gf2Matrix::from_rows(std::move(rows), n), seed, limits);
}

}  // namespace securesum
