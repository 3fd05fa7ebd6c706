#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "mtasep/config.hpp"
#include "mtasep/io.hpp"

using namespace mtasep;

TEST_SUITE_BEGIN("core");

TEST_CASE("class values order holes above every class") {
  CHECK(ClassValue::of(1) < ClassValue::of(2));
  CHECK(ClassValue::of(7) < ClassValue::hole());
  CHECK(ClassValue::hole() == ClassValue::hole());
  CHECK(ClassValue::hole().encode() == 0);
  CHECK(ClassValue::of(3).encode() == 3);
  CHECK(ClassValue::decode(0).is_hole());
  CHECK(ClassValue::decode(2).klass() == 2);
  CHECK_THROWS_AS(ClassValue::decode(-1), std::domain_error);
  CHECK_THROWS_AS(ClassValue::of(0), std::domain_error);
  CHECK_THROWS_AS(ClassValue::hole().klass(), std::domain_error);
}

TEST_CASE("counts expose per-class and prefix totals") {
  Counts p({2, 0, 1});
  CHECK(p.n() == 3);
  CHECK(p.p(1) == 2);
  CHECK(p.p(3) == 1);
  CHECK(p.q(0) == 0);
  CHECK(p.q(2) == 2);
  CHECK(p.q(3) == 3);
  CHECK(p.total() == 3);
  CHECK(p.prefix() == std::vector<long>{2, 2, 3});
  CHECK_THROWS(Counts({-1}));
}

TEST_CASE("swap on a window sorts the pair") {
  auto u = WindowConfig::decode(0, {0, 1, 2}, 2);
  auto v = swap_adjacent(u, 1);
  CHECK(v.encode() == std::vector<int>{1, 0, 2});

  auto sorted = WindowConfig::decode(0, {1, 2, 0}, 2);
  CHECK(swap_adjacent(sorted, 1) == sorted);
  CHECK_THROWS_AS(swap_adjacent(sorted, 0), std::out_of_range);
}

TEST_CASE("swap on a ring wraps around") {
  auto u = RingConfig::decode({1, 0, 0}, 1);
  auto v = swap_adjacent(u, 0);  // pair is sites 2 and 0
  CHECK(v.encode() == std::vector<int>{0, 0, 1});
}

TEST_CASE("swap is idempotent and preserves counts") {
  auto u = RingConfig::decode({2, 0, 1, 2, 0}, 2);
  for (long i = 0; i < u.size(); ++i) {
    auto once = swap_adjacent(u, i);
    CHECK(swap_adjacent(once, i) == once);
    CHECK(class_counts(once).per_class() == class_counts(u).per_class());
    CHECK(once.at(i - 1) <= once.at(i));
  }
}

TEST_CASE("class counts ignore holes") {
  CHECK(class_counts(RingConfig::decode({0, 2, 1}, 2)).per_class() ==
        std::vector<long>{1, 1});
  CHECK(class_counts(RingConfig::decode({0, 0, 0, 0, 0}, 3)).per_class() ==
        std::vector<long>{0, 0, 0});
  CHECK(class_counts(RingConfig::decode({1, 1, 2, 0, 2, 3}, 3)).per_class() ==
        std::vector<long>{2, 2, 1});
}

TEST_CASE("ring indices reduce modulo the size") {
  auto u = RingConfig::decode({1, 0, 2, 0}, 2);
  CHECK(u.at(-1) == u.at(3));
  CHECK(u.at(7) == u.at(3));
  CHECK(u.index(-5) == 3);
}

TEST_CASE("window addressing is absolute") {
  auto u = WindowConfig::decode(-2, {1, 0, 2}, 2);
  CHECK(u.lo() == -2);
  CHECK(u.hi() == 0);
  CHECK(u.at(-2).klass() == 1);
  CHECK(u.contains(0));
  CHECK(!u.contains(1));
  CHECK_THROWS_AS(u.at(1), std::out_of_range);
  CHECK(u.restrict_to(-1, 0).encode() == std::vector<int>{0, 2});
}

TEST_CASE("configs refuse classes above the declared count") {
  auto u = RingConfig(3, 2);
  CHECK_THROWS(u.set(0, ClassValue::of(3)));
  CHECK_THROWS(RingConfig::decode({3}, 2));
  CHECK_THROWS(RingConfig(0, 1));
}

TEST_CASE("encode and decode round-trip") {
  std::vector<int> codes{2, 0, 1, 1, 0};
  CHECK(RingConfig::decode(codes, 2).encode() == codes);
  CHECK(WindowConfig::decode(-3, codes, 2).encode() == codes);
  CHECK(WindowConfig::decode(-3, codes, 2).lo() == -3);
}

TEST_CASE("json encoding carries topology") {
  auto ring = RingConfig::decode({1, 0, 2}, 2);
  auto ring_text = io::to_json(ring);
  CHECK(ring_text.find("\"ring\"") != std::string::npos);
  CHECK(io::ring_from_json(ring_text) == ring);

  auto window = WindowConfig::decode(-1, {0, 2}, 2);
  auto window_text = io::to_json(window);
  CHECK(window_text.find("\"window\"") != std::string::npos);
  CHECK(window_text.find("\"lo\"") != std::string::npos);
  CHECK(io::window_from_json(window_text) == window);
}

TEST_CASE("sample stream encodings") {
  auto u = RingConfig::decode({1, 0, 2}, 2);
  CHECK(io::encode_line(u) == "[1,0,2]");
  CHECK(io::encode_csv_line(u) == "1,0,2");
}

TEST_SUITE_END();
