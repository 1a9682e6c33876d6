#include "franklforge/families.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <thread>

namespace frankl::families {

namespace {

Bitmask apply_op(Bitmask a, Bitmask b, ClosureOp op) {
  return op == ClosureOp::Intersection ? (a & b) : (a | b);
}

}  // namespace

SetFamily::SetFamily(int n, std::vector<Bitmask> sets) : n_(n), sets_(std::move(sets)) {
  if (n < 1 || n > kMaxGroundSet) {
    throw DomainError("ground-set size must be in [1, " + std::to_string(kMaxGroundSet) +
                      "], got " + std::to_string(n));
  }
  const Bitmask limit = Bitmask{1} << n;
  for (Bitmask a : sets_) {
    if (a >= limit) {
      throw DomainError("set mask " + std::to_string(a) + " has elements beyond n=" +
                        std::to_string(n));
    }
  }
  std::sort(sets_.begin(), sets_.end());
  sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
}

bool SetFamily::contains(Bitmask a) const {
  return std::binary_search(sets_.begin(), sets_.end(), a);
}

Bitmask SetFamily::support() const {
  Bitmask u = 0;
  for (Bitmask a : sets_) u |= a;
  return u;
}

WeightSpec::WeightSpec(std::vector<int> kvec, std::vector<int> mvec, bool boltzmann)
    : kvec_(std::move(kvec)), mvec_(std::move(mvec)), boltzmann_(boltzmann) {}

WeightSpec WeightSpec::product(std::vector<int> kvec, std::vector<int> mvec) {
  if (kvec.empty() || kvec.size() != mvec.size()) {
    throw DomainError("weight vectors must be non-empty and of equal length");
  }
  for (std::size_t i = 0; i < kvec.size(); ++i) {
    if (kvec[i] < 1 || mvec[i] < 1) {
      throw DomainError("weight parameters must be >= 1");
    }
  }
  return WeightSpec(std::move(kvec), std::move(mvec), false);
}

WeightSpec WeightSpec::boltzmann(int n, const Rational& t) {
  if (n < 1) throw DomainError("n must be positive");
  if (t <= 0 || t > 1) throw DomainError("Boltzmann t must lie in (0, 1], got " + to_string(t));
  // t = m/k reduced; cpp_rational keeps the canonical form.
  const BigInt m = numerator(t);
  const BigInt k = denominator(t);
  if (k > std::numeric_limits<int>::max()) {
    throw DomainError("Boltzmann t denominator too large: " + to_string(t));
  }
  std::vector<int> kvec(static_cast<std::size_t>(n), static_cast<int>(k));
  std::vector<int> mvec(static_cast<std::size_t>(n), static_cast<int>(m));
  return WeightSpec(std::move(kvec), std::move(mvec), true);
}

WeightSpec WeightSpec::uniform(int n) {
  if (n < 1) throw DomainError("n must be positive");
  return WeightSpec(std::vector<int>(n, 1), std::vector<int>(n, 1), false);
}

Rational WeightSpec::t() const {
  if (!boltzmann_) throw DomainError("t is only defined in Boltzmann mode");
  return Rational(mvec_[0], kvec_[0]);
}

double WeightSpec::beta() const { return std::log(1.0 / to_double(t())); }

bool is_intersection_closed(const SetFamily& f) {
  const auto& s = f.sets();
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (!f.contains(s[i] & s[j])) return false;
    }
  }
  return true;
}

bool is_union_closed(const SetFamily& f) {
  const auto& s = f.sets();
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (!f.contains(s[i] | s[j])) return false;
    }
  }
  return true;
}

SetFamily close_under(const SetFamily& f, ClosureOp op) {
  if (f.size() == 0) throw DomainError("cannot close an empty family");
  std::set<Bitmask> acc(f.sets().begin(), f.sets().end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Bitmask> cur(acc.begin(), acc.end());
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (std::size_t j = i; j < cur.size(); ++j) {
        if (acc.insert(apply_op(cur[i], cur[j], op)).second) grew = true;
      }
    }
  }
  return SetFamily(f.n(), std::vector<Bitmask>(acc.begin(), acc.end()));
}

SetFamily dualize(const SetFamily& f) {
  const Bitmask full = (Bitmask{1} << f.n()) - 1;
  std::vector<Bitmask> out;
  out.reserve(f.size());
  for (Bitmask a : f.sets()) out.push_back(full & ~a);
  return SetFamily(f.n(), std::move(out));
}

Rational weight(Bitmask a, const WeightSpec& w) {
  if (a >= (Bitmask{1} << w.n())) {
    throw DomainError("mask out of range for weight spec");
  }
  BigInt num = 1, den = 1;
  for (int j = 0; j < w.n(); ++j) {
    if ((a >> j) & 1) {
      num *= w.mvec()[j];
      den *= w.kvec()[j];
    }
  }
  return Rational(num, den);
}

namespace {

// Per-support-element numerators and the common denominator, in one sweep.
struct AbundanceSums {
  Rational denominator;
  std::vector<std::pair<int, Rational>> numerators;  // 1-based element -> sum over sets avoiding it
};

AbundanceSums abundance_sums(const SetFamily& f, const WeightSpec& w) {
  if (f.n() != w.n()) throw DomainError("weight spec length does not match ground set");
  if (f.size() < 2) throw FamilyTooSmallError("family has fewer than 2 sets");
  const Bitmask sup = f.support();
  AbundanceSums sums;
  for (int j = 0; j < f.n(); ++j) {
    if ((sup >> j) & 1) sums.numerators.emplace_back(j + 1, Rational(0));
  }
  for (Bitmask a : f.sets()) {
    Rational wa = weight(a, w);
    sums.denominator += wa;
    for (auto& [elem, num] : sums.numerators) {
      if (!((a >> (elem - 1)) & 1)) num += wa;
    }
  }
  return sums;
}

}  // namespace

Rational abundance(const SetFamily& f, const WeightSpec& w, int element) {
  if (f.size() < 2) throw FamilyTooSmallError("family has fewer than 2 sets");
  if (element < 1 || element > f.n() || !((f.support() >> (element - 1)) & 1)) {
    throw ElementAbsentError("element " + std::to_string(element) +
                             " does not occur in the family");
  }
  Rational num = 0, den = 0;
  for (Bitmask a : f.sets()) {
    Rational wa = weight(a, w);
    den += wa;
    if (!((a >> (element - 1)) & 1)) num += wa;
  }
  return num / den;
}

std::pair<int, Rational> best_element(const SetFamily& f, const WeightSpec& w) {
  auto sums = abundance_sums(f, w);
  if (sums.numerators.empty()) throw ElementAbsentError("family has empty support");
  int best = 0;
  Rational best_val(-1);
  for (const auto& [elem, num] : sums.numerators) {
    Rational v = num / sums.denominator;
    if (v > best_val) {  // strict: ties keep the smaller element index
      best_val = v;
      best = elem;
    }
  }
  return {best, best_val};
}

VerificationRecord verify_frankl(const SetFamily& f, const WeightSpec& w) {
  auto sums = abundance_sums(f, w);
  if (sums.numerators.empty()) throw ElementAbsentError("family has empty support");
  VerificationRecord rec;
  Rational best_val(-1);
  for (const auto& [elem, num] : sums.numerators) {
    Rational v = num / sums.denominator;
    rec.abundances.emplace_back(elem, v);
    if (v > best_val) {
      best_val = v;
      rec.best_element = elem;
    }
  }
  rec.best_abundance = best_val;
  rec.pass = best_val >= Rational(1, 2);
  return rec;
}

namespace {

void enumeration_guard(int n, bool allow_n5) {
  if (n < 1) throw DomainError("n must be positive");
  if (n > kMaxEnumerationGroundSet + 1 || (n == kMaxEnumerationGroundSet + 1 && !allow_n5)) {
    throw GroundSetTooLargeError(
        "exhaustive enumeration capped at n=" + std::to_string(kMaxEnumerationGroundSet) +
        " (n=5 needs the explicit override; 2^32 candidate families)");
  }
}

// Families over [n] are identified with bitmasks over the 2^n subsets.
bool candidate_closed(std::uint64_t cand, const std::vector<Bitmask>& members, ClosureOp op) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (!((cand >> apply_op(members[i], members[j], op)) & 1)) return false;
    }
  }
  return true;
}

template <typename Visit>
void scan_candidate_range(int n, ClosureOp op, int min_size, std::uint64_t begin,
                          std::uint64_t end, Visit&& visit) {
  std::vector<Bitmask> members;
  const int universe = 1 << n;
  for (std::uint64_t cand = begin; cand < end; ++cand) {
    if (std::popcount(cand) < min_size) continue;
    members.clear();
    for (int s = 0; s < universe; ++s) {
      if ((cand >> s) & 1) members.push_back(static_cast<Bitmask>(s));
    }
    if (candidate_closed(cand, members, op)) visit(members);
  }
}

}  // namespace

void for_each_closed_family(int n, ClosureOp op, int min_size,
                            const std::function<void(const SetFamily&)>& visit,
                            bool allow_n5) {
  enumeration_guard(n, allow_n5);
  const std::uint64_t limit = std::uint64_t{1} << (std::uint64_t{1} << n);
  scan_candidate_range(n, op, min_size, 0, limit, [&](const std::vector<Bitmask>& members) {
    visit(SetFamily(n, members));
  });
}

std::vector<SetFamily> enumerate_closed_families(int n, ClosureOp op, int min_size,
                                                 bool allow_n5) {
  std::vector<SetFamily> out;
  for_each_closed_family(n, op, min_size, [&](const SetFamily& f) { out.push_back(f); },
                         allow_n5);
  return out;
}

SetFamily random_closed_family(int n, ClosureOp op, double density, std::uint64_t seed) {
  if (n < 1 || n > kMaxGroundSet) throw DomainError("n out of range");
  if (!(density > 0.0 && density <= 1.0)) throw DomainError("density must lie in (0, 1]");
  constexpr int kMaxRetries = 64;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::mt19937_64 gen(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(attempt));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Bitmask> draw;
    const std::uint64_t universe = std::uint64_t{1} << n;
    for (std::uint64_t s = 0; s < universe; ++s) {
      if (unif(gen) < density) draw.push_back(static_cast<Bitmask>(s));
    }
    if (draw.empty()) continue;
    return close_under(SetFamily(n, std::move(draw)), op);
  }
  throw Error("random family draw failed repeatedly; density too small");
}

ExhaustiveSummary run_exhaustive(int n, const WeightSpec& w, int min_size, int jobs,
                                 bool allow_n5) {
  enumeration_guard(n, allow_n5);
  if (w.n() != n) throw DomainError("weight spec length does not match n");
  if (jobs < 1) jobs = 1;
  const std::uint64_t limit = std::uint64_t{1} << (std::uint64_t{1} << n);
  constexpr std::size_t kMaxStoredCounterexamples = 8;

  // Weight table over the 2^n masks, shared read-only by all workers.
  std::vector<Rational> wtable(std::size_t{1} << n);
  for (std::uint64_t a = 0; a < wtable.size(); ++a) {
    wtable[a] = weight(static_cast<Bitmask>(a), w);
  }

  auto verify_members = [&](const std::vector<Bitmask>& members, ExhaustiveSummary& local) {
    Rational den = 0;
    Bitmask sup = 0;
    for (Bitmask a : members) {
      den += wtable[a];
      sup |= a;
    }
    if (sup == 0) return;  // support empty: {nothing but the empty set} is excluded upstream
    Rational best(-1);
    for (int j = 0; j < n; ++j) {
      if (!((sup >> j) & 1)) continue;
      Rational num = 0;
      for (Bitmask a : members) {
        if (!((a >> j) & 1)) num += wtable[a];
      }
      Rational v = num / den;
      if (v > best) best = v;
    }
    ++local.families_checked;
    if (local.families_checked == 1 || best < local.min_best_abundance) {
      local.min_best_abundance = best;
      local.argmin_sets = members;
    }
    if (best < Rational(1, 2)) {
      ++local.failures;
      if (local.counterexamples.size() < kMaxStoredCounterexamples) {
        local.counterexamples.push_back(members);
      }
    }
  };

  // min_size < 2 would admit {empty set} alone; keep the |f| >= 2 floor.
  min_size = std::max(min_size, 2);

  std::vector<ExhaustiveSummary> partial(static_cast<std::size_t>(jobs));
  auto worker = [&](int idx) {
    const std::uint64_t chunk = limit / static_cast<std::uint64_t>(jobs);
    const std::uint64_t begin = chunk * static_cast<std::uint64_t>(idx);
    const std::uint64_t end = (idx == jobs - 1) ? limit : begin + chunk;
    scan_candidate_range(n, ClosureOp::Intersection, min_size, begin, end,
                         [&](const std::vector<Bitmask>& members) {
                           verify_members(members, partial[static_cast<std::size_t>(idx)]);
                         });
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker, i);
    for (auto& t : pool) t.join();
  }

  // Merge in range order: result is independent of the jobs count.
  ExhaustiveSummary total;
  for (const auto& p : partial) {
    if (p.families_checked == 0) continue;
    if (total.families_checked == 0 || p.min_best_abundance < total.min_best_abundance) {
      total.min_best_abundance = p.min_best_abundance;
      total.argmin_sets = p.argmin_sets;
    }
    total.families_checked += p.families_checked;
    total.failures += p.failures;
    for (const auto& ce : p.counterexamples) {
      if (total.counterexamples.size() < kMaxStoredCounterexamples) {
        total.counterexamples.push_back(ce);
      }
    }
  }
  return total;
}

}  // namespace frankl::families
