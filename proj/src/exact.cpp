#include "rmenum/exact.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "rmenum/parallel.hpp"

namespace rmenum {
namespace {

std::string rm_name(int m, int r) { return "RM(" + std::to_string(m) + "," + std::to_string(r) + ")"; }

// Walks codewords sum_b g_b * row_b for Gray codes g of t in [lo, hi), calling
// visit(weight, g) for each. rows holds row-major packed words.
template <class Visit>
void gray_walk(std::span<const std::uint64_t> rows, std::size_t stride, std::uint64_t lo,
               std::uint64_t hi, Visit&& visit) {
  std::uint64_t g = lo ^ (lo >> 1);
  if (stride == 1) {
    std::uint64_t word = 0;
    for (std::uint64_t bits = g; bits != 0; bits &= bits - 1) word ^= rows[std::countr_zero(bits)];
    visit(static_cast<std::size_t>(std::popcount(word)), g);
    for (std::uint64_t t = lo + 1; t < hi; ++t) {
      const int b = std::countr_zero(t);
      word ^= rows[b];
      g ^= std::uint64_t{1} << b;
      visit(static_cast<std::size_t>(std::popcount(word)), g);
    }
    return;
  }
  std::vector<std::uint64_t> word(stride, 0);
  auto add_row = [&](int b) {
    const std::uint64_t* src = rows.data() + static_cast<std::size_t>(b) * stride;
    for (std::size_t i = 0; i < stride; ++i) word[i] ^= src[i];
  };
  auto weight = [&] {
    std::size_t w = 0;
    for (auto x : word) w += std::popcount(x);
    return w;
  };
  for (std::uint64_t bits = g; bits != 0; bits &= bits - 1) add_row(std::countr_zero(bits));
  visit(weight(), g);
  for (std::uint64_t t = lo + 1; t < hi; ++t) {
    const int b = std::countr_zero(t);
    add_row(b);
    g ^= std::uint64_t{1} << b;
    visit(weight(), g);
  }
}

std::vector<std::uint64_t> pack_rows(std::span<const BitVec> rows, std::size_t stride) {
  std::vector<std::uint64_t> out(rows.size() * stride);
  for (std::size_t r = 0; r < rows.size(); ++r)
    std::copy(rows[r].words().begin(), rows[r].words().end(), out.begin() + r * stride);
  return out;
}

// Schoolbook product of two weight enumerator polynomials, added into out.
void add_product(std::vector<BigInt>& out, const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
  }
}

BitVec monomial_eval(std::uint32_t mask, int m) {
  const std::size_t n = std::size_t{1} << m;
  BitVec v(n);
  for (std::size_t p = 0; p < n; ++p)
    if ((p & mask) == mask) v.set(p);
  return v;
}

// Monomials with degree in (low, high], by increasing degree.
std::vector<std::uint32_t> monomial_band(int m, int low, int high) {
  std::vector<std::uint32_t> out;
  for (int d = std::max(low + 1, 0); d <= std::min(high, m); ++d) {
    auto part = monomials(m, d);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace

WeightDistribution::WeightDistribution(std::vector<BigInt> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw std::invalid_argument("WeightDistribution: need at least one count");
}

BigInt WeightDistribution::total() const { return std::accumulate(counts_.begin(), counts_.end(), BigInt(0)); }

std::vector<std::size_t> WeightDistribution::support() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < counts_.size(); ++w)
    if (!counts_[w].is_zero()) out.push_back(w);
  return out;
}

WeightDistribution& WeightDistribution::operator+=(const WeightDistribution& other) {
  if (other.counts_.size() != counts_.size()) throw std::invalid_argument("WeightDistribution: length mismatch");
  for (std::size_t w = 0; w < counts_.size(); ++w) counts_[w] += other.counts_[w];
  return *this;
}

nlohmann::json to_json(const WeightDistribution& wd) {
  nlohmann::json j;
  j["n"] = wd.n();
  const BigInt total = wd.total();
  if (total > 0 && (total & (total - 1)) == 0) j["k"] = boost::multiprecision::msb(total);
  auto& counts = j["counts"] = nlohmann::json::array();
  for (const auto& c : wd.counts()) counts.push_back(c.str());
  return j;
}

WeightDistribution weight_distribution_from_json(const nlohmann::json& j) {
  const auto& counts = j.at("counts");
  if (!counts.is_array() || counts.empty()) throw std::invalid_argument("weight distribution JSON: missing counts");
  std::vector<BigInt> parsed;
  parsed.reserve(counts.size());
  for (const auto& c : counts) {
    const std::string s = c.is_string() ? c.get<std::string>() : c.dump();
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      throw std::invalid_argument("weight distribution JSON: counts must be nonnegative integers");
    parsed.emplace_back(s);
  }
  if (j.contains("n") && j.at("n").get<std::size_t>() + 1 != parsed.size())
    throw std::invalid_argument("weight distribution JSON: n does not match counts");
  return WeightDistribution(std::move(parsed));
}

WeightDistribution full_space_distribution(std::size_t n) {
  WeightDistribution wd(n);
  BigInt c = 1;
  for (std::size_t w = 0; w <= n; ++w) {
    wd[w] = c;
    c = c * (n - w) / (w + 1);
  }
  return wd;
}

WeightDistribution brute_force_distribution(const RmCode& code, const BruteForceOptions& options) {
  if (code.k() > options.k_max)
    throw ResourceCapExceeded("brute force over " + rm_name(code.m(), code.r()) + " needs 2^" +
                              std::to_string(code.k()) + " codewords, cap is 2^" +
                              std::to_string(options.k_max));
  if (code.k() >= 63) throw ResourceCapExceeded("brute force: dimension too large");
  const std::size_t n = code.n();
  const std::size_t stride = (n + 63) / 64;
  std::vector<BitVec> rows;
  for (std::size_t r = 0; r < code.k(); ++r) rows.push_back(code.generator().row(r));
  const auto packed = pack_rows(rows, stride);

  const std::uint64_t total = std::uint64_t{1} << code.k();
  const std::uint64_t segments =
      options.threads <= 1 ? 1 : std::min<std::uint64_t>(total, std::uint64_t{4} * options.threads);
  std::vector<std::vector<std::uint64_t>> hist(segments, std::vector<std::uint64_t>(n + 1, 0));
  detail::parallel_for(segments, options.threads, [&](std::size_t s) {
    const std::uint64_t lo = total / segments * s;
    const std::uint64_t hi = s + 1 == segments ? total : total / segments * (s + 1);
    auto& h = hist[s];
    gray_walk(packed, stride, lo, hi, [&h](std::size_t w, std::uint64_t) { ++h[w]; });
  });
  WeightDistribution wd(n);
  for (std::size_t w = 0; w <= n; ++w) {
    std::uint64_t sum = 0;
    for (const auto& h : hist) sum += h[w];
    wd[w] = sum;
  }
  return wd;
}

BigInt krawtchouk(std::size_t w, std::size_t v, std::size_t n) {
  if (v > n) throw std::invalid_argument("krawtchouk: v exceeds n");
  BigInt sum = 0;
  for (std::size_t j = 0; j <= std::min(w, v); ++j) {
    if (w - j > n - v) continue;
    // C(v, j) * C(n - v, w - j), built exactly.
    BigInt a = 1, b = 1;
    for (std::size_t i = 0; i < j; ++i) a = a * (v - i) / (i + 1);
    for (std::size_t i = 0; i < w - j; ++i) b = b * (n - v - i) / (i + 1);
    const BigInt term = a * b;
    if (j % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

WeightDistribution macwilliams_transform(const WeightDistribution& wd, std::size_t k) {
  const std::size_t n = wd.n();
  const BigInt size = BigInt(1) << k;
  if (wd.total() != size)
    throw std::domain_error("macwilliams_transform: counts sum to " + wd.total().str() + ", not 2^" +
                            std::to_string(k));
  std::vector<BigInt> acc(n + 1);
  std::vector<BigInt> kraw(n + 1);
  for (std::size_t v = 0; v <= n; ++v) {
    if (wd[v].is_zero()) continue;
    // Three-term recurrence in w:
    // (w + 1) K_{w+1} = (n - 2v) K_w - (n - w + 1) K_{w-1}
    const BigInt slope = BigInt(static_cast<long long>(n)) - 2 * BigInt(static_cast<long long>(v));
    kraw[0] = 1;
    if (n >= 1) kraw[1] = slope;
    for (std::size_t w = 1; w < n; ++w)
      kraw[w + 1] = (slope * kraw[w] - BigInt(static_cast<long long>(n - w + 1)) * kraw[w - 1]) /
                    static_cast<long long>(w + 1);
    for (std::size_t w = 0; w <= n; ++w) acc[w] += wd[v] * kraw[w];
  }
  WeightDistribution out(n);
  for (std::size_t w = 0; w <= n; ++w) {
    if (acc[w] < 0 || (acc[w] & (size - 1)) != 0)
      throw std::domain_error("macwilliams_transform: inexact division at weight " + std::to_string(w) +
                              "; input is not the distribution of a linear code");
    out[w] = acc[w] >> k;
  }
  return out;
}

WeightDistribution plotkin_square(std::span<const WeightDistribution> cosets) {
  if (cosets.empty()) throw std::invalid_argument("plotkin_square: no cosets");
  const std::size_t n = cosets.front().n();
  std::vector<BigInt> acc(2 * n + 1);
  for (const auto& c : cosets) {
    if (c.n() != n) throw std::invalid_argument("plotkin_square: coset lengths differ");
    add_product(acc, c.counts(), c.counts());
  }
  return WeightDistribution(std::move(acc));
}

std::vector<std::uint32_t> monomials(int m, int d) {
  if (m < 0 || d < 0 || d > m) return {};
  if (m == 0) return {0};
  auto out = monomials(m - 1, d);
  const std::uint32_t top = std::uint32_t{1} << (m - 1);
  for (std::uint32_t s : monomials(m - 1, d - 1)) out.push_back(top | s);
  return out;
}

WeightDistribution CosetEnumerators::total() const {
  if (cosets.empty()) throw std::logic_error("CosetEnumerators: empty");
  WeightDistribution sum(cosets.front().n());
  for (const auto& c : cosets) sum += c;
  return sum;
}

CosetEnumerators enumerate_cosets(int m, int outer_r, int middle_r, int inner_r,
                                  const RecursionBudget& budget) {
  if (m < 0 || !(inner_r <= middle_r && middle_r <= outer_r))
    throw std::invalid_argument("enumerate_cosets: need inner_r <= middle_r <= outer_r");
  const auto outer_band = monomial_band(m, middle_r, outer_r);
  const auto inner_band = monomial_band(m, inner_r, middle_r);
  const auto base = monomial_band(m, -1, inner_r);
  const std::size_t dim = outer_band.size() + inner_band.size() + base.size();
  const std::string level = rm_name(m, inner_r) + " in " + rm_name(m, outer_r);
  if (dim > budget.k_max || dim >= 63)
    throw ResourceCapExceeded("coset enumeration of " + level + " needs 2^" + std::to_string(dim) +
                              " codewords, cap is 2^" + std::to_string(budget.k_max));
  const std::size_t coset_bits = outer_band.size() + inner_band.size();
  if (coset_bits > budget.max_coset_bits)
    throw ResourceCapExceeded("coset enumeration of " + level + " has 2^" + std::to_string(coset_bits) +
                              " cosets, cap is 2^" + std::to_string(budget.max_coset_bits));

  CosetEnumerators out;
  out.m = m;
  out.outer_r = outer_r;
  out.middle_r = middle_r;
  out.inner_r = inner_r;
  out.outer_count = std::size_t{1} << outer_band.size();
  out.inner_count = std::size_t{1} << inner_band.size();

  // Basis order: C00 monomials, then the j-band, then the i-band, so the Gray
  // code's high bits are the coset key.
  std::vector<BitVec> rows;
  for (auto mono : base) rows.push_back(monomial_eval(mono, m));
  for (auto mono : inner_band) rows.push_back(monomial_eval(mono, m));
  for (auto mono : outer_band) rows.push_back(monomial_eval(mono, m));
  const std::size_t n = std::size_t{1} << m;
  const std::size_t stride = (n + 63) / 64;
  const auto packed = pack_rows(rows, stride);

  const std::size_t coset_count = out.outer_count * out.inner_count;
  std::vector<std::uint64_t> hist(coset_count * (n + 1), 0);
  const unsigned shift = static_cast<unsigned>(base.size());
  const unsigned j_bits = static_cast<unsigned>(inner_band.size());
  const std::uint64_t j_mask = out.inner_count - 1;
  const std::size_t inner_count = out.inner_count;
  gray_walk(packed, stride, 0, std::uint64_t{1} << dim, [&](std::size_t w, std::uint64_t g) {
    const std::uint64_t j = (g >> shift) & j_mask;
    const std::uint64_t i = g >> (shift + j_bits);
    ++hist[(i * inner_count + j) * (n + 1) + w];
  });
  out.cosets.reserve(coset_count);
  for (std::size_t c = 0; c < coset_count; ++c) {
    WeightDistribution wd(n);
    for (std::size_t w = 0; w <= n; ++w) wd[w] = hist[c * (n + 1) + w];
    out.cosets.push_back(std::move(wd));
  }
  return out;
}

CosetEnumerators coset_recursion_step(const CosetEnumerators& level) {
  if (level.outer_r < 1 || level.middle_r != level.outer_r - 1 || level.inner_r != level.outer_r - 2)
    throw std::invalid_argument("coset_recursion_step: level must be a triple RM(m,r-2) <= RM(m,r-1) <= RM(m,r)");
  if (level.cosets.size() != level.outer_count * level.inner_count || level.cosets.empty())
    throw std::invalid_argument("coset_recursion_step: coset table has the wrong size");
  const std::size_t M = level.outer_count;
  const std::size_t M0 = level.inner_count;
  const std::size_t n = level.cosets.front().n();

  CosetEnumerators out;
  out.m = level.m + 1;
  out.outer_r = level.outer_r;
  out.middle_r = level.outer_r - 1;
  out.inner_r = level.outer_r - 1;
  out.outer_count = M * M0;
  out.inner_count = 1;
  out.cosets.resize(M * M0);
  for (std::size_t j = 0; j < M0; ++j) {
    for (std::size_t i = 0; i < M; ++i) {
      std::vector<BigInt> acc(2 * n + 1);
      for (std::size_t l = 0; l < M0; ++l) add_product(acc, level.at(i, l).counts(), level.at(i, l ^ j).counts());
      out.cosets[i + j * M] = WeightDistribution(std::move(acc));
    }
  }
  return out;
}

WeightDistribution coset_recursion_distribution(int m, int r, const RecursionBudget& budget) {
  if (m < 0 || r < 0) throw std::invalid_argument("coset_recursion_distribution: need m, r >= 0");
  const std::size_t n = std::size_t{1} << m;
  if (r >= m) return full_space_distribution(n);
  if (r == 0) {
    WeightDistribution wd(n);
    wd[0] = 1;
    wd[n] += 1;
    return wd;
  }
  // 1 <= r <= m - 1, so m >= 2.
  const int base_m = m - 2;
  const std::size_t outer_bits = monomial_band(base_m, r - 1, r).size();
  const std::size_t inner_bits = monomial_band(base_m, r - 2, r - 1).size();
  const std::size_t work_bits = outer_bits + 2 * inner_bits;
  if (work_bits > budget.max_work_bits)
    throw ResourceCapExceeded("coset lift from " + rm_name(base_m, r) + " needs 2^" +
                              std::to_string(work_bits) + " enumerator products, cap is 2^" +
                              std::to_string(budget.max_work_bits));
  const std::size_t lifted_bits = outer_bits + inner_bits;
  if (lifted_bits > budget.max_coset_bits)
    throw ResourceCapExceeded("cosets of " + rm_name(m - 1, r - 1) + " in " + rm_name(m - 1, r) +
                              " number 2^" + std::to_string(lifted_bits) + ", cap is 2^" +
                              std::to_string(budget.max_coset_bits));
  const CosetEnumerators base = enumerate_cosets(base_m, r, r - 1, r - 2, budget);
  const CosetEnumerators lifted = coset_recursion_step(base);
  return plotkin_square(lifted.cosets);
}

}  // namespace rmenum
