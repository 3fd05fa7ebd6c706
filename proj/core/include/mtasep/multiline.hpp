#pragma once

// Stacks of binary lines and the bell dynamics on them. A bell on the bottom
// line triggers a cascade upward: on each line the bell rings where a
// particle sits under it, one step right otherwise, and each line sorts the
// pair just left of its bell site. Feeding the lines through tandem queues
// (assign_classes) turns the stack into a multi-type configuration.

#include <vector>

#include "mtasep/config.hpp"
#include "mtasep/errors.hpp"
#include "mtasep/queue.hpp"

namespace mtasep::multiline {

// n binary lines on a common ring; line 1 is the top, line n the bottom.
class MultiLineRing {
 public:
  MultiLineRing() = default;
  MultiLineRing(int n_lines, int n_sites);
  static MultiLineRing of(std::vector<RingConfig> lines);

  int lines() const { return static_cast<int>(lines_.size()); }
  int size() const { return lines_.empty() ? 0 : lines_.front().size(); }
  const RingConfig& line(int m) const;  // 1-based
  bool has_particle(int m, long i) const { return line(m).at(i).is_particle(); }
  void set_particle(int m, long i, bool present);
  std::vector<long> line_counts() const;

  // Flattened external form, line-major, 1 = particle, 0 = hole.
  std::vector<int> encode() const;
  static MultiLineRing decode(const std::vector<int>& flat, int n_lines);

  friend bool operator==(const MultiLineRing&, const MultiLineRing&) = default;
  friend auto operator<=>(const MultiLineRing&, const MultiLineRing&) = default;

 private:
  std::vector<RingConfig> lines_;
};

class MultiLineWindow {
 public:
  MultiLineWindow() = default;
  MultiLineWindow(int n_lines, long lo, long length);
  static MultiLineWindow of(std::vector<WindowConfig> lines);

  int lines() const { return static_cast<int>(lines_.size()); }
  long lo() const { return lines_.empty() ? 0 : lines_.front().lo(); }
  long hi() const { return lines_.empty() ? -1 : lines_.front().hi(); }
  const WindowConfig& line(int m) const;  // 1-based
  bool has_particle(int m, long j) const { return line(m).at(j).is_particle(); }
  void set_particle(int m, long j, bool present);

  friend bool operator==(const MultiLineWindow&, const MultiLineWindow&) = default;

 private:
  std::vector<WindowConfig> lines_;
};

// Bell sites per line for a bell triggered at site i on the bottom line;
// exit_site is where the cascade leaves above the top line.
struct ForwardCascade {
  std::vector<long> site_on_line;  // [m-1] = site on line m
  long exit_site = 0;
};

// Mirror image, walking downward from a site on the top line; exit_site is
// where the cascade leaves below the bottom line.
struct ReverseCascade {
  std::vector<long> site_on_line;
  long exit_site = 0;
};

ForwardCascade bell_cascade(const MultiLineRing& x, long i);
ForwardCascade bell_cascade(const MultiLineWindow& x, long i);

// Sort the pair left of the bell site on every line.
MultiLineRing forward_jump(const MultiLineRing& x, long i);
MultiLineWindow forward_jump(const MultiLineWindow& x, long i);

ReverseCascade reverse_cascade(const MultiLineRing& y, long j);
ReverseCascade reverse_cascade(const MultiLineWindow& y, long j);

// Put the pair left of the reverse bell site back in (high, low) order.
MultiLineRing reverse_jump(const MultiLineRing& y, long j);
MultiLineWindow reverse_jump(const MultiLineWindow& y, long j);

struct LineStep {
  MultiLineRing state;
  long exit_site = 0;
};

// One bell together with its cascade exit; reverse_step(forward_step(x, i))
// returns (x, i) exactly, making the pair a bijection on states x sites.
LineStep forward_step(const MultiLineRing& x, long i);
LineStep reverse_step(const MultiLineRing& y, long j);

// Multi-type lines v_1..v_n, where line m uses classes {1..m}.
class MultiTypeRing {
 public:
  MultiTypeRing() = default;
  explicit MultiTypeRing(std::vector<RingConfig> lines) : lines_(std::move(lines)) {}
  int lines() const { return static_cast<int>(lines_.size()); }
  const RingConfig& line(int m) const;  // 1-based
  const RingConfig& bottom() const { return lines_.back(); }

 private:
  std::vector<RingConfig> lines_;
};

class MultiTypeWindow {
 public:
  MultiTypeWindow() = default;
  explicit MultiTypeWindow(std::vector<WindowConfig> lines) : lines_(std::move(lines)) {}
  int lines() const { return static_cast<int>(lines_.size()); }
  const WindowConfig& line(int m) const;  // 1-based
  const WindowConfig& bottom() const { return lines_.back(); }

 private:
  std::vector<WindowConfig> lines_;
};

// Tandem construction: v_1 takes line 1's particles as class 1; each v_{m+1}
// serves v_m with line m+1 as service process. Requires nondecreasing line
// particle counts.
MultiTypeRing assign_classes(const MultiLineRing& x);

// Window variant; inits[m-1] seeds the queue between lines m and m+1.
MultiTypeWindow assign_classes(const MultiLineWindow& x,
                               const std::vector<queueing::QueueState>& inits);

// True when one forward bell acts on every assigned line as the adjacent
// sort at that line's cascade site.
bool commutation_check(const MultiLineRing& x, long i);

}  // namespace mtasep::multiline
