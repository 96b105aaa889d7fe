#include "securesum/information.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "securesum/seeds.hpp"

namespace securesum {
namespace {

// Open-addressing table keyed by packed component values. Iteration walks
// slots in index order and the hash is fixed, so sums are reproducible.
template <typename Value>
class PackedTable {
 public:
  explicit PackedTable(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < 2 * expected) cap <<= 1;
    keys_.resize(cap);
    values_.resize(cap);
    used_.assign(cap, 0);
    mask_ = cap - 1;
  }

  Value& slot(std::uint64_t key, bool& inserted) {
    std::size_t i = static_cast<std::size_t>(splitmix64(key)) & mask_;
    while (used_[i] && keys_[i] != key) i = (i + 1) & mask_;
    inserted = !used_[i];
    if (inserted) {
      used_[i] = 1;
      keys_[i] = key;
      values_[i] = Value{};
      ++count_;
    }
    return values_[i];
  }

  std::size_t count() const { return count_; }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      if (used_[i]) f(keys_[i], values_[i]);
    }
  }

 private:
  std::vector<std::uint64_t> keys_;
  std::vector<Value> values_;
  std::vector<std::uint8_t> used_;
  std::size_t mask_ = 0;
  std::size_t count_ = 0;
};

// Largest key width that uses a direct-indexed array instead of hashing.
constexpr std::size_t kDenseBits = 20;

}  // namespace

double InformationEngine::compute_entropy(VariableSet vars) const {
  const std::size_t atoms = pmf_.size();
  if (vars.empty() || atoms == 0) return 0.0;

  // Fold components into one key per atom; when the packed width would pass
  // 64 bits the prefix is first relabelled to dense ids.
  std::vector<std::uint64_t> keys(atoms, 0);
  std::size_t key_width = 0;
  for (std::size_t v = 0; v < kVariableCount; ++v) {
    const auto var = static_cast<Variable>(v);
    if (!vars.contains(var)) continue;
    const std::size_t w = pmf_.width(var);
    if (w == 0) continue;
    if (key_width + w > 64) {
      PackedTable<std::uint64_t> ids(atoms);
      for (auto& key : keys) {
        bool inserted = false;
        auto& id = ids.slot(key, inserted);
        if (inserted) id = ids.count() - 1;
        key = id;
      }
      key_width = static_cast<std::size_t>(std::bit_width(ids.count()));
    }
    for (std::size_t i = 0; i < atoms; ++i) keys[i] = (keys[i] << w) | pmf_.value(var, i);
    key_width += w;
  }

  // Extended-precision accumulation keeps the cancellation in I(A;B|C) well
  // below the 1e-10 zero threshold at 2^24 atoms.
  long double h = 0.0L;
  auto accumulate = [&h](double q) {
    if (q > 0.0) h -= static_cast<long double>(q) * std::log2(static_cast<long double>(q));
  };
  if (key_width <= kDenseBits) {
    std::vector<double> mass(std::size_t{1} << key_width, 0.0);
    for (std::size_t i = 0; i < atoms; ++i) mass[keys[i]] += pmf_.prob(i);
    for (double q : mass) accumulate(q);
  } else {
    const std::size_t distinct = key_width >= 63 ? atoms : std::min(atoms, std::size_t{1} << key_width);
    PackedTable<double> mass(distinct);
    for (std::size_t i = 0; i < atoms; ++i) {
      bool inserted = false;
      mass.slot(keys[i], inserted) += pmf_.prob(i);
    }
    mass.for_each([&](std::uint64_t, double q) { accumulate(q); });
  }
  return static_cast<double>(h);
}

double InformationEngine::entropy(VariableSet vars) {
  auto& cached = cache_[vars.bits()];
  if (!cached) cached = compute_entropy(vars);
  return *cached;
}

double InformationEngine::conditional_entropy(VariableSet a, VariableSet given) {
  return entropy(a | given) - entropy(given);
}

double InformationEngine::mutual_information(VariableSet a, VariableSet b) {
  return entropy(a) + entropy(b) - entropy(a | b);
}

double InformationEngine::conditional_mutual_information(VariableSet a, VariableSet b, VariableSet given) {
  return entropy(a | given) + entropy(b | given) - entropy(a | b | given) - entropy(given);
}

double entropy(const JointPmf& pmf, VariableSet vars) { return InformationEngine(pmf).entropy(vars); }

double conditional_mutual_information(const JointPmf& pmf, VariableSet a, VariableSet b, VariableSet given) {
  return InformationEngine(pmf).conditional_mutual_information(a, b, given);
}

double conditional_mutual_information(const JointPmf& pmf, std::string_view a, std::string_view b,
                                      std::string_view given) {
  return conditional_mutual_information(pmf, parse_variable_set(a), parse_variable_set(b), parse_variable_set(given));
}

}  // namespace securesum
