#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string_view>
#include <vector>

#include "securesum/codes.hpp"
#include "securesum/gf2.hpp"
#include "securesum/protocol.hpp"
#include "securesum/source.hpp"

namespace securesum {

/// Components of one execution atom.
enum class Variable : std::uint8_t { x, y, z, k, m12, m13, m23, z_hat };
inline constexpr std::size_t kVariableCount = 8;

/// Set of atom components as a bitmask; order never matters for entropies.
class VariableSet {
 public:
  constexpr VariableSet() = default;
  constexpr VariableSet(std::initializer_list<Variable> vars) {
    for (Variable v : vars) bits_ |= bit(v);
  }
  static constexpr VariableSet from_bits(std::uint8_t bits) {
    VariableSet s;
    s.bits_ = bits;
    return s;
  }

  constexpr bool contains(Variable v) const { return (bits_ & bit(v)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }
  constexpr VariableSet operator|(VariableSet o) const { return from_bits(bits_ | o.bits_); }
  friend constexpr bool operator==(VariableSet, VariableSet) = default;

 private:
  static constexpr std::uint8_t bit(Variable v) { return static_cast<std::uint8_t>(1U << static_cast<unsigned>(v)); }
  std::uint8_t bits_ = 0;
};

/// Names: X, Y, Z, K, M12, M13, M23, Zhat. Unknown names are a ConfigError.
Variable parse_variable(std::string_view name);
std::string_view variable_name(Variable v);
/// Comma-separated list of names, e.g. "M13,M12".
VariableSet parse_variable_set(std::string_view names);

using AtomValues = std::array<std::uint32_t, kVariableCount>;

/// Exact joint distribution over execution atoms, stored column-wise. Each
/// component is packed into at most 32 bits (bit i = coordinate i) with a
/// fixed per-pmf width.
class JointPmf {
 public:
  JointPmf() = default;
  /// Every width must be <= 32.
  explicit JointPmf(const std::array<std::size_t, kVariableCount>& widths);

  void resize(std::size_t atoms);
  void set_atom(std::size_t index, const AtomValues& values, double prob);
  void add_atom(const AtomValues& values, double prob);

  std::size_t size() const { return prob_.size(); }
  double prob(std::size_t i) const { return prob_[i]; }
  std::uint32_t value(Variable v, std::size_t i) const { return columns_[idx(v)][i]; }
  Gf2Vector vector(Variable v, std::size_t i) const;
  std::size_t width(Variable v) const { return widths_[idx(v)]; }
  double total_probability() const;

  /// Link payloads concatenated in schedule order (M12, then M13, then M23).
  Gf2Vector digest(std::size_t i) const;

  // Provenance, filled by enumerate_joint.
  std::optional<ProtocolId> protocol;
  std::size_t n = 0;
  std::size_t m = 0;
  /// E[L_ij] in bits, indexed 12, 13, 23.
  std::array<double, 3> expected_length{};

 private:
  static std::size_t idx(Variable v) { return static_cast<std::size_t>(v); }

  std::array<std::size_t, kVariableCount> widths_{};
  std::array<std::vector<std::uint32_t>, kVariableCount> columns_;
  std::vector<double> prob_;
};

std::size_t link_slot(Link link);

struct EnumerationLimits {
  /// Largest log2 atom count, i.e. 2n + |k|.
  std::size_t max_atom_bits = 24;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
};

/// One atom per (x, y, k) with probability pair_probability(x, y) * 2^-|k|,
/// its transcript produced by an honest run of the protocol. Throws
/// CapacityError when 2n + |k| exceeds the guard.
JointPmf enumerate_joint(ProtocolId id, const LinearCode* code, const DsbsParams& params,
                         EnumerationLimits limits = {});

/// Atom count enumerate_joint would produce, as a power of two.
std::size_t atom_bits(ProtocolId id, std::size_t n, std::size_t m);

}  // namespace securesum
