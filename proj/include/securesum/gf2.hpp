#pragma once

#include <boost/container/small_vector.hpp>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "securesum/seeds.hpp"

namespace securesum {

/// Packed binary vector. Bit i lives in word i / 64 at position i % 64, and
/// index 0 is the first source symbol. Words beyond `size()` are kept zero.
class Gf2Vector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Gf2Vector() = default;
  explicit Gf2Vector(std::size_t len);

  /// Parses a string of '0'/'1' characters; anything else is a ConfigError.
  static Gf2Vector from_string(std::string_view bits);
  /// Low `len` bits of `word`, bit i of the vector = bit i of the word. len <= 64.
  static Gf2Vector from_word(Word word, std::size_t len);

  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }

  bool get(std::size_t i) const;
  void set(std::size_t i, bool value);

  /// Inverse of from_word; requires size() <= 64.
  Word to_word() const;
  std::span<const Word> words() const { return {words_.data(), words_.size()}; }

  std::size_t weight() const;
  bool is_zero() const;
  std::string to_string() const;

  Gf2Vector& operator^=(const Gf2Vector& other);
  friend Gf2Vector operator^(Gf2Vector a, const Gf2Vector& b) { return a ^= b; }
  friend bool operator==(const Gf2Vector&, const Gf2Vector&) = default;

 private:
  std::size_t len_ = 0;
  boost::container::small_vector<Word, 1> words_;
};

/// Component-wise sum over GF(2); throws ContractViolation on length mismatch.
Gf2Vector bitwise_xor(const Gf2Vector& a, const Gf2Vector& b);

/// a followed by b.
Gf2Vector concat(const Gf2Vector& a, const Gf2Vector& b);

/// Dense row-major binary matrix.
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols);

  /// All rows must share one length; `cols` disambiguates the zero-row case.
  static Gf2Matrix from_rows(std::vector<Gf2Vector> rows, std::size_t cols);
  /// Rows of '0'/'1' characters separated by ';'. An empty string is the 0x0 matrix.
  static Gf2Matrix from_string(std::string_view text);
  static Gf2Matrix identity(std::size_t k);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool value) { data_[r].set(c, value); }
  const Gf2Vector& row(std::size_t r) const { return data_[r]; }

  std::string to_string() const;
  std::vector<std::string> row_strings() const;

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Gf2Vector> data_;
};

/// M * v over GF(2). v.size() must equal M.cols().
Gf2Vector matvec(const Gf2Matrix& m, const Gf2Vector& v);

/// Row rank by leftmost-pivot Gaussian elimination on a copy.
std::size_t rank(const Gf2Matrix& m);

/// m x n matrix with i.i.d. uniform entries drawn from rng. Requires m <= n.
Gf2Matrix random_matrix(std::size_t m, std::size_t n, Rng& rng);

/// Uniform random vector of length len.
Gf2Vector random_vector(std::size_t len, Rng& rng);

}  // namespace securesum
