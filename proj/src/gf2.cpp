#include "securesum/gf2.hpp"

#include <algorithm>
#include <bit>

#include "securesum/errors.hpp"

namespace securesum {
namespace {

std::size_t word_count(std::size_t bits) { return (bits + Gf2Vector::kWordBits - 1) / Gf2Vector::kWordBits; }

Gf2Vector::Word tail_mask(std::size_t bits) {
  std::size_t rem = bits % Gf2Vector::kWordBits;
  return rem == 0 ? ~Gf2Vector::Word{0} : ((Gf2Vector::Word{1} << rem) - 1);
}

}  // namespace

Gf2Vector::Gf2Vector(std::size_t len) : len_(len), words_(word_count(len), 0) {}

Gf2Vector Gf2Vector::from_string(std::string_view bits) {
  Gf2Vector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i, true);
    } else if (bits[i] != '0') {
      throw ConfigError("bit string may only contain '0' and '1': \"" + std::string(bits) + "\"");
    }
  }
  return v;
}

Gf2Vector Gf2Vector::from_word(Word word, std::size_t len) {
  detail::require(len <= kWordBits, "from_word: length exceeds 64 bits");
  Gf2Vector v(len);
  if (len > 0) v.words_[0] = word & tail_mask(len);
  return v;
}

bool Gf2Vector::get(std::size_t i) const {
  detail::require(i < len_, "Gf2Vector::get: index out of range");
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
}

void Gf2Vector::set(std::size_t i, bool value) {
  detail::require(i < len_, "Gf2Vector::set: index out of range");
  const Word bit = Word{1} << (i % kWordBits);
  if (value) {
    words_[i / kWordBits] |= bit;
  } else {
    words_[i / kWordBits] &= ~bit;
  }
}

Gf2Vector::Word Gf2Vector::to_word() const {
  detail::require(len_ <= kWordBits, "to_word: vector longer than 64 bits");
  return words_.empty() ? 0 : words_[0];
}

std::size_t Gf2Vector::weight() const {
  std::size_t w = 0;
  for (Word word : words_) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

bool Gf2Vector::is_zero() const {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

std::string Gf2Vector::to_string() const {
  std::string out(len_, '0');
  for (std::size_t i = 0; i < len_; ++i) {
    if (get(i)) out[i] = '1';
  }
  return out;
}

Gf2Vector& Gf2Vector::operator^=(const Gf2Vector& other) {
  detail::require(len_ == other.len_, [&] {
    return "xor: length mismatch (" + std::to_string(len_) + " vs " + std::to_string(other.len_) + ")";
  });
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

Gf2Vector bitwise_xor(const Gf2Vector& a, const Gf2Vector& b) { return a ^ b; }

Gf2Vector concat(const Gf2Vector& a, const Gf2Vector& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.size() + b.size() <= Gf2Vector::kWordBits) {
    return Gf2Vector::from_word(a.to_word() | (b.to_word() << a.size()), a.size() + b.size());
  }
  Gf2Vector out(a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.set(i, a.get(i));
  for (std::size_t i = 0; i < b.size(); ++i) out.set(a.size() + i, b.get(i));
  return out;
}

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows, Gf2Vector(cols)) {}

Gf2Matrix Gf2Matrix::from_rows(std::vector<Gf2Vector> rows, std::size_t cols) {
  for (const auto& r : rows) {
    detail::require(r.size() == cols, "Gf2Matrix::from_rows: ragged rows");
  }
  Gf2Matrix m;
  m.rows_ = rows.size();
  m.cols_ = cols;
  m.data_ = std::move(rows);
  return m;
}

Gf2Matrix Gf2Matrix::from_string(std::string_view text) {
  std::vector<Gf2Vector> rows;
  if (text.empty()) return Gf2Matrix{};
  std::size_t start = 0;
  while (true) {
    std::size_t end = text.find(';', start);
    rows.push_back(Gf2Vector::from_string(text.substr(start, end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  const std::size_t cols = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != cols) throw ConfigError("matrix rows have different lengths: \"" + std::string(text) + "\"");
  }
  return from_rows(std::move(rows), cols);
}

Gf2Matrix Gf2Matrix::identity(std::size_t k) {
  Gf2Matrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) m.set(i, i, true);
  return m;
}

std::string Gf2Matrix::to_string() const {
  std::string out;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r > 0) out += ';';
    out += data_[r].to_string();
  }
  return out;
}

std::vector<std::string> Gf2Matrix::row_strings() const {
  std::vector<std::string> out;
  out.reserve(rows_);
  for (const auto& r : data_) out.push_back(r.to_string());
  return out;
}

Gf2Vector matvec(const Gf2Matrix& m, const Gf2Vector& v) {
  detail::require(v.size() == m.cols(), [&] {
    return "matvec: vector length " + std::to_string(v.size()) + " does not match matrix columns " +
           std::to_string(m.cols());
  });
  Gf2Vector out(m.rows());
  const auto vw = v.words();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto rw = m.row(r).words();
    Gf2Vector::Word acc = 0;
    for (std::size_t w = 0; w < vw.size(); ++w) acc ^= rw[w] & vw[w];
    if (std::popcount(acc) & 1) out.set(r, true);
  }
  return out;
}

std::size_t rank(const Gf2Matrix& m) {
  std::vector<Gf2Vector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));

  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < rows.size(); ++col) {
    std::size_t found = pivot_row;
    while (found < rows.size() && !rows[found].get(col)) ++found;
    if (found == rows.size()) continue;
    std::swap(rows[pivot_row], rows[found]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != pivot_row && rows[r].get(col)) rows[r] ^= rows[pivot_row];
    }
    ++pivot_row;
  }
  return pivot_row;
}

Gf2Vector random_vector(std::size_t len, Rng& rng) {
  Gf2Vector v(len);
  for (std::size_t i = 0; i < len; i += Gf2Vector::kWordBits) {
    const Gf2Vector::Word word = rng();
    const std::size_t chunk = std::min(Gf2Vector::kWordBits, len - i);
    for (std::size_t b = 0; b < chunk; ++b) v.set(i + b, (word >> b) & 1U);
  }
  return v;
}

Gf2Matrix random_matrix(std::size_t m, std::size_t n, Rng& rng) {
  detail::require(m <= n, [&] {
    return "random_matrix: rows (" + std::to_string(m) + ") exceed columns (" + std::to_string(n) + ")";
  });
  std::vector<Gf2Vector> rows;
  rows.reserve(m);
  for (std::size_t r = 0; r < m; ++r) rows.push_back(random_vector(n, rng));
  return Gf2Matrix::from_rows(std::move(rows), n);
}

}  // namespace securesum
