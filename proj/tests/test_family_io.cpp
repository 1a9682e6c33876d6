#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "franklforge/family_io.hpp"

using namespace frankl;
using namespace frankl::families;

namespace {

std::string write_temp(const std::string& text) {
  static int counter = 0;
  std::string path = "franklforge_io_test_" + std::to_string(counter++) + ".tmp";
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("json parsing") {
  auto f = io::parse_family_json(R"({"n": 3, "sets": [[], [1], [1,2]]})");
  CHECK(f.n() == 3);
  CHECK(f.sets() == std::vector<Bitmask>{0b000, 0b001, 0b011});

  // unsorted input with duplicates canonicalizes
  auto g = io::parse_family_json(R"({"n": 2, "sets": [[2,1], [1], [1], []]})");
  CHECK(g.sets() == std::vector<Bitmask>{0b00, 0b01, 0b11});

  CHECK_THROWS_AS(io::parse_family_json("not json"), ParseError);
  CHECK_THROWS_AS(io::parse_family_json(R"({"sets": []})"), ParseError);
  CHECK_THROWS_AS(io::parse_family_json(R"({"n": 0, "sets": []})"), ParseError);
  CHECK_THROWS_AS(io::parse_family_json(R"({"n": 2, "sets": [[3]]})"), ParseError);
  CHECK_THROWS_AS(io::parse_family_json(R"({"n": 2, "sets": [["x"]]})"), ParseError);
}

TEST_CASE("text parsing") {
  auto f = io::parse_family_text("# comment\n-\n1\n1,2\n\n");
  CHECK(f.n() == 2);
  CHECK(f.sets() == std::vector<Bitmask>{0b00, 0b01, 0b11});

  auto lone = io::parse_family_text("-\n");
  CHECK(lone.n() == 1);
  CHECK(lone.sets() == std::vector<Bitmask>{0});

  CHECK_THROWS_AS(io::parse_family_text(""), ParseError);
  CHECK_THROWS_AS(io::parse_family_text("1,x\n"), ParseError);
  CHECK_THROWS_AS(io::parse_family_text("0\n"), ParseError);
}

TEST_CASE("json round trip") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 4);
    auto f = random_closed_family(n, ClosureOp::Intersection, 0.4, gen());
    CHECK(io::parse_family_json(io::family_to_json(f)) == f);
  }
}

TEST_CASE("file loading dispatches on format") {
  auto jpath = write_temp(R"({"n": 1, "sets": [[], [1]]})");
  auto tpath = write_temp("-\n1\n");
  auto fj = io::load_family_file(jpath);
  auto ft = io::load_family_file(tpath);
  CHECK(fj == ft);
  std::remove(jpath.c_str());
  std::remove(tpath.c_str());

  CHECK_THROWS_AS(io::load_family_file("does_not_exist.json"), ParseError);
  auto empty = write_temp("   \n");
  CHECK_THROWS_AS(io::load_family_file(empty), ParseError);
  std::remove(empty.c_str());
}
