#include "rmenum/gf2.hpp"

#include <algorithm>
#include <bit>

namespace rmenum {
namespace {

std::uint64_t tail_mask(std::size_t len) {
  const std::size_t rem = len & 63;
  return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitVec BitVec::ones(std::size_t len) {
  BitVec v(len);
  std::fill(v.words_.begin(), v.words_.end(), ~std::uint64_t{0});
  if (!v.words_.empty()) v.words_.back() &= tail_mask(len);
  return v;
}

BitVec BitVec::from_string(std::string_view bits) {
  BitVec v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i);
    else if (bits[i] != '0')
      throw std::invalid_argument("BitVec::from_string: expected only '0' and '1'");
  }
  return v;
}

BitVec BitVec::from_hex(std::string_view hex, std::size_t len) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  BitVec v(len);
  std::size_t bit = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
    const int nibble = hex_value(*it);
    if (nibble < 0) throw std::invalid_argument("BitVec::from_hex: invalid hex digit");
    for (int b = 0; b < 4; ++b) {
      if (!((nibble >> b) & 1)) continue;
      if (bit + b >= len) throw std::invalid_argument("BitVec::from_hex: value exceeds vector length");
      v.set(bit + b);
    }
  }
  return v;
}

BitVec BitVec::from_support(std::size_t len, std::span<const std::size_t> positions) {
  BitVec v(len);
  for (std::size_t p : positions) {
    if (p >= len) throw std::out_of_range("BitVec::from_support: position out of range");
    v.set(p);
  }
  return v;
}

std::size_t BitVec::weight() const {
  std::size_t w = 0;
  for (std::uint64_t word : words_) w += std::popcount(word);
  return w;
}

bool BitVec::none() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<std::size_t> BitVec::support() const {
  std::vector<std::size_t> out;
  for (std::size_t wi = 0; wi < words_.size(); ++wi) {
    for (std::uint64_t w = words_[wi]; w != 0; w &= w - 1)
      out.push_back(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
  }
  return out;
}

BitVec& BitVec::operator^=(const BitVec& other) {
  if (other.len_ != len_) throw std::invalid_argument("BitVec xor: length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::string BitVec::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

std::string BitVec::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = std::max<std::size_t>(1, (len_ + 3) / 4);
  std::string s(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    int nibble = 0;
    for (int b = 0; b < 4; ++b) {
      const std::size_t i = d * 4 + b;
      if (i < len_ && get(i)) nibble |= 1 << b;
    }
    s[digits - 1 - d] = kDigits[nibble];
  }
  return s;
}

std::size_t hamming_weight(const BitVec& v) { return v.weight(); }

BitVec xor_add(const BitVec& a, const BitVec& b) { return a ^ b; }

std::size_t lex_index(const BitVec& z) {
  if (z.size() >= 64) throw std::invalid_argument("lex_index: point dimension too large");
  std::size_t index = 0;
  for (std::size_t i = 0; i < z.size(); ++i) index = (index << 1) | (z.get(i) ? 1 : 0);
  return index;
}

// GF2Matrix

GF2Matrix GF2Matrix::identity(std::size_t n) {
  GF2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

GF2Matrix GF2Matrix::from_rows(std::span<const BitVec> rows, std::size_t cols) {
  GF2Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("GF2Matrix::from_rows: ragged rows");
    std::copy(rows[r].words().begin(), rows[r].words().end(), m.mutable_row_words(r).begin());
  }
  return m;
}

GF2Matrix GF2Matrix::from_strings(std::initializer_list<std::string_view> rows) {
  std::vector<BitVec> parsed;
  for (auto s : rows) parsed.push_back(BitVec::from_string(s));
  const std::size_t cols = parsed.empty() ? 0 : parsed.front().size();
  return from_rows(parsed, cols);
}

BitVec GF2Matrix::row(std::size_t r) const {
  BitVec v(cols_);
  auto src = row_words(r);
  std::copy(src.begin(), src.end(), v.mutable_words().begin());
  return v;
}

void GF2Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(data_.begin() + a * stride_, data_.begin() + (a + 1) * stride_,
                   data_.begin() + b * stride_);
}

void GF2Matrix::add_row(std::size_t dst, std::size_t src) {
  std::uint64_t* d = data_.data() + dst * stride_;
  const std::uint64_t* s = data_.data() + src * stride_;
  for (std::size_t i = 0; i < stride_; ++i) d[i] ^= s[i];
}

GF2Matrix GF2Matrix::transpose() const {
  GF2Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r);
  return t;
}

GF2Matrix GF2Matrix::select_columns(std::span<const std::size_t> columns) const {
  GF2Matrix out(rows_, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] >= cols_) throw std::out_of_range("GF2Matrix::select_columns");
    for (std::size_t r = 0; r < rows_; ++r)
      if (get(r, columns[j])) out.set(r, j);
  }
  return out;
}

BitVec GF2Matrix::left_multiply(const BitVec& u) const {
  if (u.size() != rows_) throw std::invalid_argument("GF2Matrix::left_multiply: length mismatch");
  BitVec out(cols_);
  auto dst = out.mutable_words();
  for (std::size_t r : u.support()) {
    auto src = row_words(r);
    for (std::size_t i = 0; i < stride_; ++i) dst[i] ^= src[i];
  }
  return out;
}

BitVec GF2Matrix::right_multiply(const BitVec& x) const {
  if (x.size() != cols_) throw std::invalid_argument("GF2Matrix::right_multiply: length mismatch");
  BitVec out(rows_);
  auto xw = x.words();
  for (std::size_t r = 0; r < rows_; ++r) {
    auto rw = row_words(r);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < stride_; ++i) acc ^= rw[i] & xw[i];
    if (std::popcount(acc) & 1) out.set(r);
  }
  return out;
}

GF2Matrix operator*(const GF2Matrix& a, const GF2Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("GF2Matrix multiply: dimension mismatch");
  GF2Matrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    auto dst = out.mutable_row_words(r);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (!a.get(r, k)) continue;
      auto src = b.row_words(k);
      for (std::size_t i = 0; i < out.stride_; ++i) dst[i] ^= src[i];
    }
  }
  return out;
}

std::size_t rank(GF2Matrix m) {
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    std::size_t p = pivot_row;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, pivot_row);
    for (std::size_t r = pivot_row + 1; r < m.rows(); ++r)
      if (m.get(r, c)) m.add_row(r, pivot_row);
    ++pivot_row;
  }
  return pivot_row;
}

GF2Matrix invert(const GF2Matrix& m) {
  if (m.rows() != m.cols()) throw SingularMatrixError("invert: matrix is not square");
  const std::size_t n = m.rows();
  GF2Matrix a = m;
  GF2Matrix inv = GF2Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && !a.get(p, c)) ++p;
    if (p == n) throw SingularMatrixError("invert: matrix is singular");
    a.swap_rows(p, c);
    inv.swap_rows(p, c);
    for (std::size_t r = 0; r < n; ++r) {
      if (r != c && a.get(r, c)) {
        a.add_row(r, c);
        inv.add_row(r, c);
      }
    }
  }
  return inv;
}

namespace detail {

std::size_t mask_rank(std::span<std::uint64_t> rows) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    // Reduce the remaining rows against the lowest set bit of row i.
    std::uint64_t pivot = rows[i];
    if (pivot == 0) continue;
    ++r;
    const std::uint64_t low = pivot & (~pivot + 1);
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (rows[j] & low) rows[j] ^= pivot;
  }
  return r;
}

void sample_full_rank_masks(std::span<std::uint64_t> out, unsigned cols, RngStream& rng) {
  if (cols > 64) throw std::invalid_argument("sample_full_rank_masks: more than 64 columns");
  if (out.size() > cols) throw std::invalid_argument("sample_full_rank: rows exceed cols");
  const std::uint64_t mask = cols == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cols) - 1;
  // Rows are cut from a pool of random bits so narrow matrices cost one draw.
  std::uint64_t pool = 0;
  unsigned pool_bits = 0;
  auto take = [&]() -> std::uint64_t {
    if (cols == 64) return rng.next_u64();
    if (pool_bits < cols) {
      pool = rng.next_u64();
      pool_bits = 64;
    }
    const std::uint64_t row = pool & mask;
    pool >>= cols;
    pool_bits -= cols;
    return row;
  };
  std::uint64_t scratch[64];
  for (;;) {
    for (std::size_t i = 0; i < out.size(); ++i) scratch[i] = out[i] = take();
    if (mask_rank({scratch, out.size()}) == out.size()) return;
  }
}

}  // namespace detail

GF2Matrix sample_full_rank(std::size_t rows, std::size_t cols, RngStream& rng) {
  if (rows > cols) throw std::invalid_argument("sample_full_rank: rows exceed cols");
  GF2Matrix m(rows, cols);
  if (cols <= 64) {
    std::vector<std::uint64_t> masks(rows);
    detail::sample_full_rank_masks(masks, static_cast<unsigned>(cols), rng);
    for (std::size_t r = 0; r < rows; ++r) m.mutable_row_words(r)[0] = masks[r];
    return m;
  }
  const std::uint64_t last = tail_mask(cols);
  do {
    for (std::size_t r = 0; r < rows; ++r) {
      auto w = m.mutable_row_words(r);
      for (auto& word : w) word = rng.next_u64();
      w.back() &= last;
    }
  } while (rank(m) != rows);
  return m;
}

}  // namespace rmenum
