#include "franklforge/lifting.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace frankl::lifting {

using families::Bitmask;
using families::SetFamily;
using families::WeightSpec;

namespace {

void check_km(int k, int m) {
  if (k < 1 || m < 1) throw DomainError("symbol parameters must be >= 1");
  // codes and the odometer bound k+m must both fit in a SymbolCode
  if (k + m > 255) throw DomainError("alphabet larger than 255 symbols is unsupported");
}

}  // namespace

SymbolCode encode(const Symbol& s, int k, int m) {
  check_km(k, m);
  switch (s.kind) {
    case SymbolKind::Zero:
      return 0;
    case SymbolKind::One:
      return static_cast<SymbolCode>(k);
    case SymbolKind::Eps:
      if (s.exp < 1 || s.exp >= k) {
        throw ExponentOutOfRangeError("eps exponent " + std::to_string(s.exp) +
                                      " outside [1, " + std::to_string(k - 1) + "]");
      }
      return static_cast<SymbolCode>(s.exp);
    case SymbolKind::Zeta:
      if (s.exp < 1 || s.exp >= m) {
        throw ExponentOutOfRangeError("zeta exponent " + std::to_string(s.exp) +
                                      " outside [1, " + std::to_string(m - 1) + "]");
      }
      return static_cast<SymbolCode>(k + s.exp);
  }
  throw ExponentOutOfRangeError("invalid symbol kind");
}

Symbol decode(SymbolCode c, int k, int m) {
  check_km(k, m);
  if (c >= k + m) {
    throw ExponentOutOfRangeError("symbol code " + std::to_string(int(c)) + " outside alphabet");
  }
  if (c == 0) return Symbol::zero();
  if (c < k) return Symbol::eps(c);
  if (c == k) return Symbol::one();
  return Symbol::zeta(c - k);
}

SymbolCode mul_symbol(SymbolCode a, SymbolCode b, int k, int m) {
  check_km(k, m);
  if (a >= k + m || b >= k + m) {
    throw ExponentOutOfRangeError("symbol code outside alphabet");
  }
  if (a == 0 || b == 0) return 0;
  const bool a_eps = a < k;
  const bool b_eps = b < k;
  if (a_eps && b_eps) {
    const int sum = int(a) + int(b);  // eps^a * eps^b, nilpotent at k
    return sum < k ? static_cast<SymbolCode>(sum) : 0;
  }
  if (a_eps) return a;  // eps absorbs any zeta power
  if (b_eps) return b;
  const int sum = (int(a) - k + int(b) - k) % m;  // zeta powers cycle, z^0 = 1
  return static_cast<SymbolCode>(k + sum);
}

Symbol mul_symbol(const Symbol& a, const Symbol& b, int k, int m) {
  return decode(mul_symbol(encode(a, k, m), encode(b, k, m), k, m), k, m);
}

Bitmask theta(std::span<const SymbolCode> tuple, const WeightSpec& w) {
  if (tuple.size() != static_cast<std::size_t>(w.n())) {
    throw DomainError("tuple length does not match weight spec");
  }
  Bitmask out = 0;
  for (int i = 0; i < w.n(); ++i) {
    if (tuple[i] >= w.kvec()[i] + w.mvec()[i]) {
      throw ExponentOutOfRangeError("symbol code outside alphabet at coordinate " +
                                    std::to_string(i + 1));
    }
    if (tuple[i] >= w.kvec()[i]) out |= Bitmask{1} << i;
  }
  return out;
}

BigInt LiftedFamily::predicted_size(const SetFamily& base, const WeightSpec& w) {
  BigInt total = 0;
  for (Bitmask a : base.sets()) {
    BigInt fiber = 1;
    for (int j = 0; j < base.n(); ++j) {
      fiber *= ((a >> j) & 1) ? w.mvec()[j] : w.kvec()[j];
    }
    total += fiber;
  }
  return total;
}

LiftedFamily::LiftedFamily(SetFamily base, WeightSpec w, std::uint64_t budget)
    : base_(std::move(base)), weights_(std::move(w)) {
  if (base_.n() != weights_.n()) throw DomainError("weight spec length does not match family");
  if (base_.size() == 0) throw DomainError("cannot lift an empty family");
  for (int i = 1; i <= base_.n(); ++i) alphabet_size(i);  // validates k_i + m_i <= 256
  const BigInt predicted = predicted_size(base_, weights_);
  if (predicted > budget) {
    throw BudgetExceededError("lift would hold " + predicted.str() + " tuples (budget " +
                                  std::to_string(budget) + ")",
                              predicted.str());
  }
  size_ = predicted.convert_to<std::uint64_t>();
  const int n = base_.n();
  data_.reserve(size_ * static_cast<std::uint64_t>(n));
  std::vector<SymbolCode> row(static_cast<std::size_t>(n));
  for (Bitmask a : base_.sets()) {
    // odometer over the fiber, low coordinate fastest
    std::vector<SymbolCode> lo(n), hi(n);
    for (int j = 0; j < n; ++j) {
      if ((a >> j) & 1) {
        lo[j] = static_cast<SymbolCode>(weights_.kvec()[j]);
        hi[j] = static_cast<SymbolCode>(weights_.kvec()[j] + weights_.mvec()[j]);
      } else {
        lo[j] = 0;
        hi[j] = static_cast<SymbolCode>(weights_.kvec()[j]);
      }
    }
    row.assign(lo.begin(), lo.end());
    while (true) {
      data_.insert(data_.end(), row.begin(), row.end());
      int j = 0;
      while (j < n) {
        if (++row[j] < hi[j]) break;
        row[j] = lo[j];
        ++j;
      }
      if (j == n) break;
    }
  }
  // Canonical order: lexicographic over rows.
  std::vector<std::uint64_t> order(size_);
  for (std::uint64_t i = 0; i < size_; ++i) order[i] = i;
  auto row_less = [&](std::uint64_t lhs, std::uint64_t rhs) {
    const SymbolCode* l = data_.data() + lhs * static_cast<std::uint64_t>(n);
    const SymbolCode* r = data_.data() + rhs * static_cast<std::uint64_t>(n);
    return std::lexicographical_compare(l, l + n, r, r + n);
  };
  std::sort(order.begin(), order.end(), row_less);
  std::vector<SymbolCode> sorted;
  sorted.reserve(data_.size());
  for (std::uint64_t idx : order) {
    const SymbolCode* p = data_.data() + idx * static_cast<std::uint64_t>(n);
    sorted.insert(sorted.end(), p, p + n);
  }
  data_ = std::move(sorted);
}

int LiftedFamily::alphabet_size(int coord) const {
  if (coord < 1 || coord > n()) throw DomainError("coordinate out of range");
  const int k = weights_.kvec()[coord - 1];
  const int m = weights_.mvec()[coord - 1];
  check_km(k, m);
  return k + m;
}

Rational base_marginal(const LiftedFamily& lf, Bitmask a) {
  if (!lf.base().contains(a)) {
    throw SetAbsentError("set " + std::to_string(a) + " is not in the base family");
  }
  BigInt fiber = 1;
  for (int j = 0; j < lf.n(); ++j) {
    fiber *= ((a >> j) & 1) ? lf.weights().mvec()[j] : lf.weights().kvec()[j];
  }
  return Rational(fiber, BigInt(lf.size()));
}

namespace {

// Rows are sorted, so every prefix occupies a contiguous range.
struct PrefixRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
};

PrefixRange find_prefix_range(const LiftedFamily& lf, int coord,
                              std::span<const SymbolCode> prefix) {
  const int plen = coord - 1;
  std::uint64_t lo = 0, hi = lf.size();
  // binary search both ends on the first plen coordinates
  auto cmp_at = [&](std::uint64_t idx) {
    auto row = lf.tuple(idx);
    return std::lexicographical_compare_three_way(row.begin(), row.begin() + plen,
                                                  prefix.begin(), prefix.end());
  };
  std::uint64_t a = lo, b = hi;
  while (a < b) {
    std::uint64_t mid = a + (b - a) / 2;
    if (cmp_at(mid) < 0) {
      a = mid + 1;
    } else {
      b = mid;
    }
  }
  std::uint64_t first = a;
  b = hi;
  while (a < b) {
    std::uint64_t mid = a + (b - a) / 2;
    if (cmp_at(mid) <= 0) {
      a = mid + 1;
    } else {
      b = mid;
    }
  }
  return {first, a};
}

void check_level_equalities(const LiftedFamily& lf, int coord,
                            const std::vector<std::uint64_t>& level_counts) {
  const int k = lf.weights().kvec()[coord - 1];
  const int m = lf.weights().mvec()[coord - 1];
  for (int c = 1; c < k; ++c) {
    if (level_counts[c] != level_counts[0]) {
      throw Error("zero-side level counts differ at coordinate " + std::to_string(coord));
    }
  }
  for (int c = k + 1; c < k + m; ++c) {
    if (level_counts[static_cast<std::size_t>(c)] != level_counts[static_cast<std::size_t>(k)]) {
      throw Error("one-side level counts differ at coordinate " + std::to_string(coord));
    }
  }
}

std::vector<std::uint64_t> level_counts_in_range(const LiftedFamily& lf, int coord,
                                                 PrefixRange range) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(lf.alphabet_size(coord)), 0);
  for (std::uint64_t i = range.begin; i < range.end; ++i) {
    ++counts[lf.tuple(i)[coord - 1]];
  }
  return counts;
}

}  // namespace

Rational conditional_zero_prob(const LiftedFamily& lf, int coord,
                               std::span<const SymbolCode> prefix) {
  if (coord < 1 || coord > lf.n()) throw DomainError("coordinate out of range");
  if (prefix.size() != static_cast<std::size_t>(coord - 1)) {
    throw DomainError("prefix length must be coord-1");
  }
  auto range = find_prefix_range(lf, coord, prefix);
  if (range.begin == range.end) {
    throw ZeroProbabilityPrefixError("prefix has zero probability");
  }
  auto counts = level_counts_in_range(lf, coord, range);
  check_level_equalities(lf, coord, counts);
  return Rational(BigInt(counts[0]), BigInt(range.end - range.begin));
}

Rational RationalMeasure::mean() const {
  Rational s = 0;
  for (const auto& [x, mass] : atoms) s += x * mass;
  return s;
}

RationalMeasure mu_i(const LiftedFamily& lf, int coord) {
  if (coord < 1 || coord > lf.n()) throw DomainError("coordinate out of range");
  const int plen = coord - 1;
  const int k = lf.weights().kvec()[coord - 1];
  std::map<Rational, Rational> atoms;
  std::uint64_t begin = 0;
  const std::uint64_t total = lf.size();
  while (begin < total) {
    auto prefix = lf.tuple(begin).first(static_cast<std::size_t>(plen));
    std::uint64_t end = begin;
    std::uint64_t zero_count = 0;
    while (end < total) {
      auto row = lf.tuple(end);
      if (!std::equal(row.begin(), row.begin() + plen, prefix.begin())) break;
      if (row[plen] == 0) ++zero_count;
      ++end;
    }
    const Rational loc = Rational(BigInt(k) * zero_count, BigInt(end - begin));
    atoms[loc] += Rational(BigInt(end - begin), BigInt(total));
    begin = end;
  }
  RationalMeasure mu;
  mu.atoms.assign(atoms.begin(), atoms.end());
  return mu;
}

}  // namespace frankl::lifting
