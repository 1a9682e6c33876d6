#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "franklforge/families.hpp"

using namespace frankl;
using namespace frankl::families;

namespace {

SetFamily fam(int n, std::initializer_list<Bitmask> masks) {
  return SetFamily(n, std::vector<Bitmask>(masks));
}

// Independent abundance route: integer weights prod_{j in A} m_j * prod_{j not in A} k_j,
// i.e. every set weight rescaled by the constant prod_j k_j.
Rational abundance_integer_weights(const SetFamily& f, const WeightSpec& w, int element) {
  BigInt num = 0, den = 0;
  for (Bitmask a : f.sets()) {
    BigInt wa = 1;
    for (int j = 0; j < f.n(); ++j) {
      wa *= ((a >> j) & 1) ? w.mvec()[j] : w.kvec()[j];
    }
    den += wa;
    if (!((a >> (element - 1)) & 1)) num += wa;
  }
  return Rational(num, den);
}

}  // namespace

TEST_CASE("closure predicates") {
  CHECK(is_intersection_closed(fam(2, {0b00, 0b01, 0b11})));
  CHECK_FALSE(is_intersection_closed(fam(2, {0b01, 0b10})));
  CHECK(is_intersection_closed(fam(1, {0b0})));
  CHECK(is_union_closed(fam(2, {0b01, 0b10, 0b11})));
  CHECK_FALSE(is_union_closed(fam(2, {0b01, 0b10})));
  CHECK(is_union_closed(fam(1, {0b0, 0b1})));
}

TEST_CASE("canonical form") {
  SetFamily f(2, {0b11, 0b01, 0b01, 0b00});
  CHECK(f.sets() == std::vector<Bitmask>{0b00, 0b01, 0b11});
  CHECK(f.support() == 0b11);
  CHECK_THROWS_AS(SetFamily(1, {0b10}), DomainError);
  CHECK_THROWS_AS(SetFamily(0, {}), DomainError);
  CHECK_THROWS_AS(SetFamily(25, {}), DomainError);
}

TEST_CASE("close_under") {
  auto closed = close_under(fam(2, {0b01, 0b10}), ClosureOp::Intersection);
  CHECK(closed.sets() == std::vector<Bitmask>{0b00, 0b01, 0b10});
  CHECK(close_under(closed, ClosureOp::Intersection) == closed);  // idempotent

  auto uclosed = close_under(fam(3, {0b011, 0b110}), ClosureOp::Union);
  CHECK(uclosed.sets() == std::vector<Bitmask>{0b011, 0b110, 0b111});
}

TEST_CASE("dualize") {
  CHECK(dualize(fam(2, {0b00, 0b01})).sets() == std::vector<Bitmask>{0b10, 0b11});
  for (const auto& f : enumerate_closed_families(3, ClosureOp::Union, 2)) {
    CHECK(dualize(dualize(f)) == f);
    CHECK(is_intersection_closed(dualize(f)));
  }
}

TEST_CASE("weight") {
  auto w = WeightSpec::product({5, 5}, {2, 2});
  CHECK(weight(0b11, w) == Rational(4, 25));
  CHECK(weight(0b00, w) == Rational(1));
  auto b = WeightSpec::boltzmann(2, Rational(3, 5));
  CHECK(weight(0b11, b) == Rational(9, 25));
  CHECK(b.t() == Rational(3, 5));
  CHECK(b.beta() == doctest::Approx(std::log(5.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("weight spec validation") {
  CHECK_THROWS_AS(WeightSpec::product({5}, {5, 5}), DomainError);
  CHECK_THROWS_AS(WeightSpec::product({0}, {1}), DomainError);
  CHECK_THROWS_AS(WeightSpec::boltzmann(1, Rational(6, 5)), DomainError);
  CHECK_THROWS_AS(WeightSpec::boltzmann(1, Rational(0)), DomainError);
  CHECK_THROWS_AS(WeightSpec::uniform(2).t(), DomainError);
}

TEST_CASE("abundance basics") {
  auto chain = fam(1, {0b0, 0b1});
  CHECK(abundance(chain, WeightSpec::uniform(1), 1) == Rational(1, 2));
  CHECK(abundance(chain, WeightSpec::product({2}, {1}), 1) == Rational(2, 3));

  auto square = fam(2, {0b00, 0b01, 0b10, 0b11});
  auto w = WeightSpec::product({5, 5}, {2, 2});
  CHECK(abundance(square, w, 1) == Rational(5, 7));

  CHECK_THROWS_AS(abundance(fam(1, {0b0}), WeightSpec::uniform(1), 1), FamilyTooSmallError);
  CHECK_THROWS_AS(abundance(fam(2, {0b00, 0b01}), WeightSpec::uniform(2), 2),
                  ElementAbsentError);
}

TEST_CASE("abundance agrees with the rescaled-integer-weight route") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 3);
    auto f = random_closed_family(n, ClosureOp::Intersection, 0.5, gen());
    if (f.size() < 2) continue;
    std::vector<int> kv(n), mv(n);
    for (int i = 0; i < n; ++i) {
      kv[i] = 1 + static_cast<int>(gen() % 9);
      mv[i] = 1 + static_cast<int>(gen() % 3);
    }
    auto w = WeightSpec::product(kv, mv);
    const Bitmask sup = f.support();
    for (int e = 1; e <= n; ++e) {
      if (!((sup >> (e - 1)) & 1)) continue;
      CHECK(abundance(f, w, e) == abundance_integer_weights(f, w, e));
    }
  }
}

TEST_CASE("boltzmann mode matches constant product weights exactly") {
  auto f = fam(2, {0b00, 0b01, 0b11});
  auto prod = WeightSpec::product({5, 5}, {2, 2});
  auto bolt = WeightSpec::boltzmann(2, Rational(2, 5));
  for (int e = 1; e <= 2; ++e) {
    CHECK(abundance(f, prod, e) == abundance(f, bolt, e));
  }
}

TEST_CASE("normalized weights sum to one") {
  auto f = fam(2, {0b00, 0b01, 0b10, 0b11});
  auto w = WeightSpec::product({5, 3}, {2, 1});
  Rational total = 0;
  for (Bitmask a : f.sets()) total += weight(a, w);
  Rational acc = 0;
  for (Bitmask a : f.sets()) acc += weight(a, w) / total;
  CHECK(acc == Rational(1));
}

TEST_CASE("best_element and tie-breaking") {
  auto chain = fam(1, {0b0, 0b1});
  auto [e, v] = best_element(chain, WeightSpec::uniform(1));
  CHECK(e == 1);
  CHECK(v == Rational(1, 2));

  // symmetric family: elements 1 and 2 tie at 5/7, smaller index wins
  auto square = fam(2, {0b00, 0b01, 0b10, 0b11});
  auto w = WeightSpec::product({5, 5}, {2, 2});
  auto [be, bv] = best_element(square, w);
  CHECK(be == 1);
  CHECK(bv == Rational(5, 7));
}

TEST_CASE("verify_frankl") {
  auto rec = verify_frankl(fam(1, {0b0, 0b1}), WeightSpec::product({5}, {2}));
  CHECK(rec.pass);
  CHECK(rec.best_element == 1);
  CHECK(rec.best_abundance == Rational(5, 7));
  CHECK(rec.abundances.size() == 1);

  CHECK_THROWS_AS(verify_frankl(fam(1, {0b0}), WeightSpec::uniform(1)), FamilyTooSmallError);
}

TEST_CASE("enumerate_closed_families small") {
  auto fams1 = enumerate_closed_families(1, ClosureOp::Intersection, 2);
  REQUIRE(fams1.size() == 1);
  CHECK(fams1[0].sets() == std::vector<Bitmask>{0b0, 0b1});

  // independent route: filter every subset of the 4-element power set of [2]
  std::size_t brute = 0;
  for (unsigned cand = 0; cand < 16; ++cand) {
    std::vector<Bitmask> members;
    for (Bitmask s = 0; s < 4; ++s) {
      if ((cand >> s) & 1) members.push_back(s);
    }
    if (members.size() < 2) continue;
    if (is_intersection_closed(SetFamily(2, members))) ++brute;
  }
  auto fams2 = enumerate_closed_families(2, ClosureOp::Intersection, 2);
  CHECK(fams2.size() == brute);
  CHECK(fams2.size() == 9);
  for (const auto& f : fams2) CHECK(is_intersection_closed(f));

  CHECK(enumerate_closed_families(3, ClosureOp::Intersection, 2).size() == 113);
}

TEST_CASE("enumeration order is ascending in the characteristic bitmask") {
  std::uint64_t prev = 0;
  bool first = true;
  for_each_closed_family(3, ClosureOp::Intersection, 2, [&](const SetFamily& f) {
    std::uint64_t charmask = 0;
    for (Bitmask a : f.sets()) charmask |= std::uint64_t{1} << a;
    if (!first) CHECK(charmask > prev);
    prev = charmask;
    first = false;
  });
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(enumerate_closed_families(5, ClosureOp::Intersection, 2),
                  GroundSetTooLargeError);
  CHECK_THROWS_AS(enumerate_closed_families(6, ClosureOp::Intersection, 2, true),
                  GroundSetTooLargeError);
}

TEST_CASE("random_closed_family") {
  auto a = random_closed_family(4, ClosureOp::Intersection, 0.3, 42);
  auto b = random_closed_family(4, ClosureOp::Intersection, 0.3, 42);
  CHECK(a == b);
  CHECK(is_intersection_closed(a));

  auto u = random_closed_family(3, ClosureOp::Union, 0.4, 7);
  CHECK(is_union_closed(u));

  auto full = random_closed_family(3, ClosureOp::Intersection, 1.0, 1);
  CHECK(full.size() == 8);

  CHECK_THROWS_AS(random_closed_family(3, ClosureOp::Intersection, 0.0, 1), DomainError);
}

TEST_CASE("duality transport under uniform weights") {
  // the membership fraction of i in a union-closed family equals the
  // avoidance fraction of i in the complemented family, element by element;
  // the complement's support excludes exactly the elements lying in every
  // set (trivial membership-1 witnesses)
  for (const auto& g : enumerate_closed_families(3, ClosureOp::Union, 2)) {
    auto dual = dualize(g);
    if (dual.support() == 0) continue;
    int best_elem = 0;
    Rational best_val(-1);
    for (int e = 1; e <= 3; ++e) {
      if (!((dual.support() >> (e - 1)) & 1)) continue;
      int count = 0;
      for (Bitmask a : g.sets()) {
        if ((a >> (e - 1)) & 1) ++count;
      }
      Rational membership(count, g.size());
      CHECK(membership == abundance(dual, WeightSpec::uniform(3), e));
      if (membership > best_val) {
        best_val = membership;
        best_elem = e;
      }
    }
    auto [de, dv] = best_element(dual, WeightSpec::uniform(3));
    CHECK(de == best_elem);
    CHECK(dv == best_val);
  }
}

TEST_CASE("uniform exhaustive check on tiny ground sets") {
  for (int n = 1; n <= 3; ++n) {
    auto summary = run_exhaustive(n, WeightSpec::uniform(n));
    CHECK(summary.failures == 0);
    CHECK(summary.min_best_abundance >= Rational(1, 2));
  }
}

TEST_CASE("run_exhaustive is jobs-invariant") {
  auto w = WeightSpec::product({5, 5, 5}, {2, 2, 2});
  auto one = run_exhaustive(3, w, 2, 1);
  auto four = run_exhaustive(3, w, 2, 4);
  CHECK(one.families_checked == 113);
  CHECK(one.families_checked == four.families_checked);
  CHECK(one.failures == four.failures);
  CHECK(one.min_best_abundance == four.min_best_abundance);
  CHECK(one.argmin_sets == four.argmin_sets);
}
