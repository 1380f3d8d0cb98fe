#include "rmenum/rm_code.hpp"

#include <bit>
#include <string>

namespace rmenum {

std::size_t rm_dimension(int m, int r) {
  if (r < 0) return 0;
  std::size_t total = 0;
  std::size_t binom = 1;
  for (int i = 0; i <= std::min(r, m); ++i) {
    total += binom;
    binom = binom * static_cast<std::size_t>(m - i) / static_cast<std::size_t>(i + 1);
  }
  return total;
}

namespace {

void check_params(int m, int r) {
  if (m < 0 || r < 0 || r > m)
    throw std::invalid_argument("RM(" + std::to_string(m) + "," + std::to_string(r) +
                                "): need 0 <= r <= m");
}

}  // namespace

GF2Matrix generator_matrix(int m, int r) {
  check_params(m, r);
  const std::size_t n = std::size_t{1} << m;
  if (r == m) return GF2Matrix::identity(n);
  if (r == 0) {
    GF2Matrix g(1, n);
    for (std::size_t c = 0; c < n; ++c) g.set(0, c);
    return g;
  }
  const GF2Matrix top = generator_matrix(m - 1, r);
  const GF2Matrix bottom = generator_matrix(m - 1, r - 1);
  const std::size_t half = n / 2;
  GF2Matrix g(top.rows() + bottom.rows(), n);
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t c = 0; c < half; ++c)
      if (top.get(i, c)) {
        g.set(i, c);
        g.set(i, c + half);
      }
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t c = 0; c < half; ++c)
      if (bottom.get(i, c)) g.set(top.rows() + i, c + half);
  return g;
}

RmCode::RmCode(int m, int r) : m_(m), r_(r), k_(0) {
  check_params(m, r);
  if (m < 1) throw std::invalid_argument("RM code order m must be at least 1");
  if (m > kMaxRmOrder)
    throw std::invalid_argument("RM code order m = " + std::to_string(m) + " exceeds " +
                                std::to_string(kMaxRmOrder));
  k_ = rm_dimension(m, r);
  auto data = std::make_shared<Data>();
  data->generator = generator_matrix(m, r);
  data->dual = r == m ? GF2Matrix(0, n()) : generator_matrix(m, m - r - 1);

  auto& info = data->info;
  for (std::size_t p = 0; p < n(); ++p)
    if (std::popcount(p) <= r) info.columns.push_back(p);
  info.submatrix = data->generator.select_columns(info.columns);
  info.inverse = invert(info.submatrix);
  data_ = std::move(data);
}

BitVec encode(const RmCode& code, const BitVec& message) {
  if (message.size() != code.k())
    throw std::invalid_argument("encode: message length " + std::to_string(message.size()) +
                                " != k = " + std::to_string(code.k()));
  return code.generator().left_multiply(message);
}

bool contains(const RmCode& code, const BitVec& x) {
  if (x.size() != code.n()) throw std::invalid_argument("contains: length mismatch");
  return code.dual_generator().right_multiply(x).none();
}

BitVec recover_message(const RmCode& code, const BitVec& codeword) {
  if (!contains(code, codeword)) throw NotACodewordError("recover_message: vector is not a codeword");
  const InfoSet& info = code.info_set();
  BitVec restricted(info.columns.size());
  for (std::size_t i = 0; i < info.columns.size(); ++i)
    if (codeword.get(info.columns[i])) restricted.set(i);
  return info.inverse.left_multiply(restricted);
}

namespace detail {

void draw_flat(int m, int dim, RngStream& rng, std::span<std::uint32_t> out) {
  // Bit j of a basis row is bit j of the lex index. Any fixed relabelling of
  // the coordinates maps uniform full-rank A to uniform full-rank A, so the
  // flat stays uniform.
  std::uint64_t basis[64];
  detail::sample_full_rank_masks({basis, static_cast<std::size_t>(dim)}, static_cast<unsigned>(m), rng);
  std::uint64_t point = rng.next_u64() & ((std::uint64_t{1} << m) - 1);
  out[0] = static_cast<std::uint32_t>(point);
  // Gray-code walk over x in F_2^dim.
  for (std::size_t t = 1; t < out.size(); ++t) {
    point ^= basis[std::countr_zero(t)];
    out[t] = static_cast<std::uint32_t>(point);
  }
}

}  // namespace detail

BitVec sample_min_weight(const RmCode& code, RngStream& rng) {
  const int dim = code.m() - code.r();
  std::vector<std::uint32_t> points(std::size_t{1} << dim);
  detail::draw_flat(code.m(), dim, rng, points);
  BitVec c(code.n());
  for (auto p : points) c.set(p);
  return c;
}

}  // namespace rmenum
