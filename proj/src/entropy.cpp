#include "franklforge/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <json.hpp>

#include "franklforge/functional.hpp"
#include "franklforge/numeric.hpp"

namespace frankl::entropy {

using lifting::LiftedFamily;
using lifting::SymbolCode;

void FiniteDistribution::validate() const {
  if (!outcomes.empty() && outcomes.size() != masses.size()) {
    throw DomainError("outcome labels and masses differ in length");
  }
  Rational total = 0;
  for (const auto& p : masses) {
    if (p < 0) throw DomainError("negative probability mass");
    total += p;
  }
  if (total != 1) throw DomainError("masses sum to " + to_string(total) + ", expected 1");
}

double entropy(const FiniteDistribution& d) {
  d.validate();
  KahanSum s;
  for (const auto& p : d.masses) s.add(-xlogx(to_double(p)));
  return s.value();
}

double entropy_from_counts(std::span<const std::uint64_t> counts, std::uint64_t total) {
  if (total == 0) throw DomainError("entropy of an empty distribution");
  KahanSum s;
  for (std::uint64_t c : counts) {
    if (c > 0) s.add(static_cast<double>(c) * std::log(static_cast<double>(c)));
  }
  return std::log(static_cast<double>(total)) - s.value() / static_cast<double>(total);
}

namespace {

struct PrefixGroup {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;                    // half-open row range
  std::vector<std::uint64_t> level_counts;  // of coordinate `coord` within the range
  std::uint64_t count() const { return end - begin; }
};

// Rows are sorted, so groups sharing the first coord-1 symbols are contiguous.
std::vector<PrefixGroup> prefix_groups(const LiftedFamily& lf, int coord) {
  const int plen = coord - 1;
  const std::size_t alpha = static_cast<std::size_t>(lf.alphabet_size(coord));
  std::vector<PrefixGroup> groups;
  const std::uint64_t total = lf.size();
  std::uint64_t begin = 0;
  while (begin < total) {
    PrefixGroup grp;
    grp.begin = begin;
    grp.level_counts.assign(alpha, 0);
    auto prefix = lf.tuple(begin).first(static_cast<std::size_t>(plen));
    std::uint64_t end = begin;
    while (end < total) {
      auto row = lf.tuple(end);
      if (!std::equal(row.begin(), row.begin() + plen, prefix.begin())) break;
      ++grp.level_counts[row[plen]];
      ++end;
    }
    grp.end = end;
    groups.push_back(std::move(grp));
    begin = end;
  }
  return groups;
}

double conditional_entropy_term(const LiftedFamily& lf, int coord) {
  KahanSum s;
  const double total = static_cast<double>(lf.size());
  for (const auto& grp : prefix_groups(lf, coord)) {
    s.add(static_cast<double>(grp.count()) / total *
          entropy_from_counts(grp.level_counts, grp.count()));
  }
  return s.value();
}

void check_pair_budget(const LiftedFamily& lf, std::uint64_t pair_budget) {
  const BigInt pairs = BigInt(lf.size()) * lf.size();
  if (pairs > pair_budget) {
    throw BudgetExceededError("joint enumeration needs " + pairs.str() + " pairs (budget " +
                                  std::to_string(pair_budget) + ")",
                              pairs.str());
  }
}

functional::FunctionalParams coord_params(const LiftedFamily& lf, int coord) {
  return {lf.weights().kvec()[coord - 1], lf.weights().mvec()[coord - 1]};
}

double hfmin_lhs(const LiftedFamily& lf, int coord,
                 const std::vector<PrefixGroup>& groups) {
  const int k = lf.weights().kvec()[coord - 1];
  const int m = lf.weights().mvec()[coord - 1];
  const std::size_t alpha = static_cast<std::size_t>(k + m);
  const double total_sq = static_cast<double>(lf.size()) * static_cast<double>(lf.size());
  // product level table for this coordinate's alphabet
  std::vector<SymbolCode> table(alpha * alpha);
  for (std::size_t a = 0; a < alpha; ++a) {
    for (std::size_t b = 0; b < alpha; ++b) {
      table[a * alpha + b] =
          lifting::mul_symbol(static_cast<SymbolCode>(a), static_cast<SymbolCode>(b), k, m);
    }
  }
  KahanSum s;
  std::vector<std::uint64_t> prod_counts(alpha);
  for (const auto& ga : groups) {
    for (const auto& gb : groups) {
      std::fill(prod_counts.begin(), prod_counts.end(), 0);
      for (std::size_t a = 0; a < alpha; ++a) {
        if (ga.level_counts[a] == 0) continue;
        for (std::size_t b = 0; b < alpha; ++b) {
          prod_counts[table[a * alpha + b]] += ga.level_counts[a] * gb.level_counts[b];
        }
      }
      const std::uint64_t pair_count = ga.count() * gb.count();
      s.add(static_cast<double>(pair_count) / total_sq *
            entropy_from_counts(prod_counts, pair_count));
    }
  }
  return s.value();
}

}  // namespace

std::string to_json(const ResidualReport& r) {
  nlohmann::json doc{{"check", r.check},     {"instance", r.instance}, {"i", r.coord},
                     {"lhs", r.lhs},         {"rhs", r.rhs},           {"residual", r.residual},
                     {"pass", r.pass}};
  return doc.dump();
}

FiniteDistribution joint_product_distribution(const LiftedFamily& lf,
                                              std::uint64_t pair_budget) {
  check_pair_budget(lf, pair_budget);
  const std::uint64_t pairs = lf.size() * lf.size();
  FiniteDistribution d;
  d.masses.assign(pairs, Rational(1, BigInt(pairs)));
  return d;
}

ResidualReport verify_basic_inequality(const LiftedFamily& lf, std::uint64_t pair_budget) {
  check_pair_budget(lf, pair_budget);
  const std::uint64_t total = lf.size();
  const int n = lf.n();
  const auto& kv = lf.weights().kvec();
  const auto& mv = lf.weights().mvec();
  // Products of lift members almost always land back in the lift (always, for
  // an intersection-closed base); count those against the sorted row index
  // and divert strays to a side map.
  std::vector<std::uint64_t> member_counts(total, 0);
  std::unordered_map<std::string, std::uint64_t> stray_counts;
  std::vector<SymbolCode> prod(static_cast<std::size_t>(n));
  for (std::uint64_t a = 0; a < total; ++a) {
    auto ra = lf.tuple(a);
    for (std::uint64_t b = 0; b < total; ++b) {
      auto rb = lf.tuple(b);
      for (int i = 0; i < n; ++i) {
        prod[static_cast<std::size_t>(i)] = lifting::mul_symbol(ra[i], rb[i], kv[i], mv[i]);
      }
      // binary search the product row
      std::uint64_t lo = 0, hi = total;
      while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        auto row = lf.tuple(mid);
        if (std::lexicographical_compare(row.begin(), row.end(), prod.begin(), prod.end())) {
          lo = mid + 1;
        } else {
          hi = mid;
        }
      }
      if (lo < total) {
        auto row = lf.tuple(lo);
        if (std::equal(row.begin(), row.end(), prod.begin())) {
          ++member_counts[lo];
          continue;
        }
      }
      ++stray_counts[std::string(prod.begin(), prod.end())];
    }
  }
  KahanSum clogc;
  for (std::uint64_t c : member_counts) {
    if (c > 0) clogc.add(static_cast<double>(c) * std::log(static_cast<double>(c)));
  }
  for (const auto& [row, c] : stray_counts) {
    clogc.add(static_cast<double>(c) * std::log(static_cast<double>(c)));
  }
  const double pairs = static_cast<double>(total) * static_cast<double>(total);
  ResidualReport rep;
  rep.check = "basic";
  rep.lhs = std::log(pairs) - clogc.value() / pairs;  // H(X1Y1,...,XnYn)
  rep.rhs = std::log(static_cast<double>(total));     // H(X1,...,Xn)
  rep.residual = std::max(0.0, rep.lhs - rep.rhs);
  rep.pass = rep.residual < kResidualTol;
  return rep;
}

std::vector<double> chain_terms(const LiftedFamily& lf) {
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(lf.n()));
  for (int i = 1; i <= lf.n(); ++i) {
    terms.push_back(conditional_entropy_term(lf, i));
  }
  return terms;
}

ResidualReport verify_hf(const LiftedFamily& lf, int coord) {
  const auto groups = prefix_groups(lf, coord);
  const auto params = coord_params(lf, coord);
  const double total = static_cast<double>(lf.size());
  KahanSum rhs;
  for (const auto& grp : groups) {
    const double zero_prob =
        static_cast<double>(grp.level_counts[0]) / static_cast<double>(grp.count());
    rhs.add(static_cast<double>(grp.count()) / total * functional::h(params, zero_prob));
  }
  ResidualReport rep;
  rep.check = "hf";
  rep.coord = coord;
  rep.lhs = conditional_entropy_term(lf, coord);
  rep.rhs = rhs.value();
  rep.residual = std::abs(rep.lhs - rep.rhs);
  rep.pass = rep.residual < kResidualTol;
  return rep;
}

ResidualReport verify_hfmin(const LiftedFamily& lf, int coord, std::uint64_t pair_budget) {
  check_pair_budget(lf, pair_budget);
  const auto groups = prefix_groups(lf, coord);
  const auto params = coord_params(lf, coord);
  const double total_sq = static_cast<double>(lf.size()) * static_cast<double>(lf.size());
  KahanSum rhs;
  for (const auto& ga : groups) {
    const double za = static_cast<double>(ga.level_counts[0]) / static_cast<double>(ga.count());
    for (const auto& gb : groups) {
      const double zb = static_cast<double>(gb.level_counts[0]) / static_cast<double>(gb.count());
      rhs.add(static_cast<double>(ga.count()) * static_cast<double>(gb.count()) / total_sq *
              functional::g(params, za, zb));
    }
  }
  ResidualReport rep;
  rep.check = "hfmin";
  rep.coord = coord;
  rep.lhs = hfmin_lhs(lf, coord, groups);
  rep.rhs = rhs.value();
  rep.residual = std::abs(rep.lhs - rep.rhs);
  rep.pass = rep.residual < kResidualTol;
  return rep;
}

ResidualReport verify_difference_identity(const LiftedFamily& lf, int coord,
                                          std::uint64_t pair_budget) {
  check_pair_budget(lf, pair_budget);
  const auto groups = prefix_groups(lf, coord);
  const auto params = coord_params(lf, coord);
  const auto mu = lifting::mu_i(lf, coord);
  ResidualReport rep;
  rep.check = "diff";
  rep.coord = coord;
  rep.lhs = hfmin_lhs(lf, coord, groups) - conditional_entropy_term(lf, coord);
  rep.rhs = functional::F(params, functional::to_discrete_measure(mu.atoms));
  rep.residual = std::abs(rep.lhs - rep.rhs);
  rep.pass = rep.residual < kResidualTol;
  return rep;
}

}  // namespace frankl::entropy
