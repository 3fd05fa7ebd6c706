#include <doctest.h>

#include <vector>

#include "mtasep/config.hpp"
#include "mtasep/errors.hpp"
#include "mtasep/multiline.hpp"
#include "mtasep/queue.hpp"

using namespace mtasep;
using namespace mtasep::multiline;

namespace {

MultiLineRing stack(std::vector<std::vector<int>> lines) {
  std::vector<RingConfig> configs;
  for (const auto& codes : lines) configs.push_back(RingConfig::decode(codes, 1));
  return MultiLineRing::of(std::move(configs));
}

}  // namespace

TEST_SUITE_BEGIN("multiline");

TEST_CASE("cascades walk upward") {
  SUBCASE("holes shift the bell right on every line") {
    auto x = stack({{0, 0, 0}, {0, 0, 0}});
    auto c = bell_cascade(x, 0);
    CHECK(c.site_on_line == std::vector<long>{1, 0});
    CHECK(c.exit_site == 2);
  }
  SUBCASE("particles hold the bell in place") {
    auto x = stack({{1, 1, 1}, {1, 1, 1}});
    auto c = bell_cascade(x, 1);
    CHECK(c.site_on_line == std::vector<long>{1, 1});
    CHECK(c.exit_site == 1);
  }
  SUBCASE("mixed stack with cyclic wrap") {
    auto x = stack({{1, 0, 0}, {1, 1, 0}});
    auto c = bell_cascade(x, 2);
    CHECK(c.site_on_line == std::vector<long>{0, 2});
    CHECK(c.exit_site == 0);
  }
  SUBCASE("adjacent bell sites differ by at most one") {
    auto x = stack({{1, 0, 1, 0}, {0, 1, 1, 0}, {1, 0, 0, 1}});
    for (long i = 0; i < 4; ++i) {
      auto c = bell_cascade(x, i);
      for (int m = x.lines() - 1; m >= 1; --m) {
        long below = c.site_on_line[static_cast<std::size_t>(m)];
        long above = c.site_on_line[static_cast<std::size_t>(m - 1)];
        long diff = x.line(1).index(above - below);
        CHECK((diff == 0 || diff == 1));
      }
    }
  }
}

TEST_CASE("forward jumps sort pairs along the cascade") {
  SUBCASE("all-hole stack is a fixed point") {
    auto x = stack({{0, 0, 0}, {0, 0, 0}});
    CHECK(forward_jump(x, 1) == x);
  }
  SUBCASE("single line reduces to the pair sort") {
    auto x = stack({{0, 1}});
    CHECK(forward_jump(x, 1).line(1).encode() == std::vector<int>{1, 0});
  }
  SUBCASE("cascade example") {
    auto x = stack({{1, 0, 0}, {1, 1, 0}});
    auto y = forward_jump(x, 2);
    CHECK(y.line(1).encode() == std::vector<int>{0, 0, 1});
    CHECK(y.line(2).encode() == std::vector<int>{1, 1, 0});
  }
  SUBCASE("per-line counts are preserved") {
    auto x = stack({{1, 0, 1, 0}, {0, 1, 1, 1}});
    for (long i = 0; i < 4; ++i)
      CHECK(forward_jump(x, i).line_counts() == x.line_counts());
  }
}

TEST_CASE("forward step returns the exit site") {
  auto x = stack({{0, 0, 0}, {0, 0, 0}});
  auto step = forward_step(x, 0);
  CHECK(step.state == x);
  CHECK(step.exit_site == 2);
}

TEST_CASE("reverse cascades walk downward") {
  SUBCASE("holes shift the bell left") {
    auto y = stack({{0, 0, 0}, {0, 0, 0}});
    auto c = reverse_cascade(y, 2);
    CHECK(c.site_on_line == std::vector<long>{2, 1});
    CHECK(c.exit_site == 0);
  }
  SUBCASE("particles hold the bell") {
    auto y = stack({{1, 1, 1}, {1, 1, 1}});
    auto c = reverse_cascade(y, 1);
    CHECK(c.site_on_line == std::vector<long>{1, 1});
    CHECK(c.exit_site == 1);
  }
}

TEST_CASE("reverse jump undoes the pair sort") {
  auto y = stack({{1, 0}});
  CHECK(reverse_jump(y, 1).line(1).encode() == std::vector<int>{0, 1});
}

TEST_CASE("reverse step inverts forward step") {
  auto x = stack({{1, 0, 0, 1}, {1, 1, 0, 0}});
  for (long i = 0; i < 4; ++i) {
    auto fwd = forward_step(x, i);
    auto back = reverse_step(fwd.state, fwd.exit_site);
    CHECK(back.state == x);
    CHECK(back.exit_site == i);
  }
}

TEST_CASE("assigning classes through the tandem queues") {
  SUBCASE("two lines") {
    auto x = stack({{1, 0, 0}, {1, 1, 0}});
    auto v = assign_classes(x);
    CHECK(v.line(1).encode() == std::vector<int>{1, 0, 0});
    CHECK(v.bottom().encode() == std::vector<int>{1, 2, 0});
  }
  SUBCASE("wraparound service") {
    auto x = stack({{0, 0, 1}, {1, 1, 0}});
    CHECK(assign_classes(x).bottom().encode() == std::vector<int>{1, 2, 0});
  }
  SUBCASE("equal lines stack pure class-1 columns") {
    auto x = stack({{1, 0, 1, 0}, {1, 0, 1, 0}, {1, 0, 1, 0}});
    auto v = assign_classes(x);
    for (int m = 1; m <= 3; ++m)
      CHECK(v.line(m).encode() == std::vector<int>{1, 0, 1, 0});
  }
  SUBCASE("particle positions match line by line") {
    auto x = stack({{0, 1, 0, 0}, {0, 1, 1, 0}, {1, 1, 0, 1}});
    auto v = assign_classes(x);
    for (int m = 1; m <= 3; ++m)
      for (long i = 0; i < 4; ++i)
        CHECK(v.line(m).at(i).is_particle() == x.has_particle(m, i));
  }
  SUBCASE("decreasing line counts are infeasible") {
    auto x = stack({{1, 1, 0}, {1, 0, 0}});
    CHECK_THROWS_AS(assign_classes(x), InfeasibleError);
  }
}

TEST_CASE("assigning classes on a window") {
  auto line1 = WindowConfig::decode(0, {0, 0, 0, 0}, 1);
  auto line2 = WindowConfig::decode(0, {0, 1, 1, 0}, 1);
  auto x = MultiLineWindow::of({line1, line2});
  auto v = assign_classes(x, {queueing::QueueState(1)});
  CHECK(v.bottom().encode() == std::vector<int>{0, 2, 2, 0});

  CHECK_THROWS_AS(assign_classes(x, {}), ShapeError);
}

TEST_CASE("window cascades refuse to leave the window") {
  auto x = MultiLineWindow::of({WindowConfig::decode(0, {0, 0, 0}, 1),
                                WindowConfig::decode(0, {0, 0, 0}, 1)});
  CHECK_THROWS_AS(bell_cascade(x, 2), std::out_of_range);
  auto c = bell_cascade(x, 1);
  CHECK(c.site_on_line == std::vector<long>{2, 1});
}

TEST_CASE("one bell acts on assigned lines as adjacent sorts") {
  auto x = stack({{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 1, 0, 1}});
  for (long i = 0; i < 4; ++i) CHECK(commutation_check(x, i));

  auto holes = stack({{0, 0, 0}, {0, 0, 0}});
  CHECK(commutation_check(holes, 1));

  auto single = stack({{1, 0, 1}});
  CHECK(commutation_check(single, 0));
}

TEST_CASE("stack encode and decode round-trip") {
  auto x = stack({{1, 0, 0, 1}, {1, 1, 0, 0}});
  CHECK(MultiLineRing::decode(x.encode(), 2) == x);
  CHECK(x.encode() == std::vector<int>{1, 0, 0, 1, 1, 1, 0, 0});
  CHECK_THROWS(MultiLineRing::decode({1, 0, 1}, 2));
}

TEST_SUITE_END();
