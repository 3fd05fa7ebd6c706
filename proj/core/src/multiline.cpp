#include "mtasep/multiline.hpp"

#include <algorithm>

namespace mtasep::multiline {

namespace {

const ClassValue kParticle = ClassValue::of(1);

void check_binary_lines(const std::vector<RingConfig>& lines) {
  for (const RingConfig& l : lines) {
    if (l.n_classes() != 1) throw ShapeError("lines must be one-class");
    if (l.size() != lines.front().size()) throw ShapeError("line lengths differ");
  }
}

}  // namespace

MultiLineRing::MultiLineRing(int n_lines, int n_sites) {
  if (n_lines < 1) throw ShapeError("need at least one line");
  lines_.assign(static_cast<std::size_t>(n_lines), RingConfig(n_sites, 1));
}

MultiLineRing MultiLineRing::of(std::vector<RingConfig> lines) {
  if (lines.empty()) throw ShapeError("need at least one line");
  check_binary_lines(lines);
  MultiLineRing x;
  x.lines_ = std::move(lines);
  return x;
}

const RingConfig& MultiLineRing::line(int m) const {
  if (m < 1 || m > lines()) throw std::out_of_range("line index out of range");
  return lines_[static_cast<std::size_t>(m - 1)];
}

void MultiLineRing::set_particle(int m, long i, bool present) {
  if (m < 1 || m > lines()) throw std::out_of_range("line index out of range");
  lines_[static_cast<std::size_t>(m - 1)].set(
      i, present ? kParticle : ClassValue::hole());
}

std::vector<long> MultiLineRing::line_counts() const {
  std::vector<long> out;
  out.reserve(lines_.size());
  for (const RingConfig& l : lines_) out.push_back(class_counts(l).total());
  return out;
}

std::vector<int> MultiLineRing::encode() const {
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(lines() * size()));
  for (const RingConfig& l : lines_)
    for (ClassValue v : l.sites()) flat.push_back(v.is_particle() ? 1 : 0);
  return flat;
}

MultiLineRing MultiLineRing::decode(const std::vector<int>& flat, int n_lines) {
  if (n_lines < 1 || flat.size() % static_cast<std::size_t>(n_lines) != 0)
    throw ShapeError("flat length not divisible by line count");
  int n_sites = static_cast<int>(flat.size()) / n_lines;
  MultiLineRing x(n_lines, n_sites);
  for (int m = 1; m <= n_lines; ++m)
    for (long i = 0; i < n_sites; ++i)
      x.set_particle(m, i, flat[static_cast<std::size_t>((m - 1) * n_sites + i)] != 0);
  return x;
}

MultiLineWindow::MultiLineWindow(int n_lines, long lo, long length) {
  if (n_lines < 1) throw ShapeError("need at least one line");
  lines_.assign(static_cast<std::size_t>(n_lines), WindowConfig(lo, length, 1));
}

MultiLineWindow MultiLineWindow::of(std::vector<WindowConfig> lines) {
  if (lines.empty()) throw ShapeError("need at least one line");
  for (const WindowConfig& l : lines) {
    if (l.n_classes() != 1) throw ShapeError("lines must be one-class");
    if (l.lo() != lines.front().lo() || l.size() != lines.front().size())
      throw ShapeError("line windows differ");
  }
  MultiLineWindow x;
  x.lines_ = std::move(lines);
  return x;
}

const WindowConfig& MultiLineWindow::line(int m) const {
  if (m < 1 || m > lines()) throw std::out_of_range("line index out of range");
  return lines_[static_cast<std::size_t>(m - 1)];
}

void MultiLineWindow::set_particle(int m, long j, bool present) {
  if (m < 1 || m > lines()) throw std::out_of_range("line index out of range");
  lines_[static_cast<std::size_t>(m - 1)].set(
      j, present ? kParticle : ClassValue::hole());
}

namespace {

// Shared cascade walk: next(site, has_particle) decides whether the bell
// stays or moves one step right going up.
template <bool kRing, typename Stack>
ForwardCascade cascade_up(const Stack& x, long i) {
  int n = x.lines();
  ForwardCascade c;
  c.site_on_line.assign(static_cast<std::size_t>(n), 0);
  long site = i;
  for (int m = n; m >= 1; --m) {
    if constexpr (!kRing) {
      if (site > x.line(m).hi())
        throw std::out_of_range("cascade left the window");
    }
    c.site_on_line[static_cast<std::size_t>(m - 1)] = site;
    if (!x.has_particle(m, site)) ++site;
  }
  c.exit_site = site;
  return c;
}

template <bool kRing, typename Stack>
ReverseCascade cascade_down(const Stack& y, long j) {
  int n = y.lines();
  ReverseCascade c;
  c.site_on_line.assign(static_cast<std::size_t>(n), 0);
  long site = j;
  for (int m = 1; m <= n; ++m) {
    if constexpr (!kRing) {
      if (site > y.line(m).hi() || site - 1 < y.line(m).lo())
        throw std::out_of_range("cascade left the window");
    }
    c.site_on_line[static_cast<std::size_t>(m - 1)] = site;
    if (!y.has_particle(m, site - 1)) --site;
  }
  c.exit_site = site;
  return c;
}

}  // namespace

ForwardCascade bell_cascade(const MultiLineRing& x, long i) {
  ForwardCascade c = cascade_up<true>(x, x.line(x.lines()).index(i));
  for (long& s : c.site_on_line) s = x.line(1).index(s);
  c.exit_site = x.line(1).index(c.exit_site);
  return c;
}

ForwardCascade bell_cascade(const MultiLineWindow& x, long i) {
  if (i - 1 < x.lo() || i > x.hi()) throw std::out_of_range("bell outside window");
  return cascade_up<false>(x, i);
}

ReverseCascade reverse_cascade(const MultiLineRing& y, long j) {
  ReverseCascade c = cascade_down<true>(y, y.line(1).index(j));
  for (long& s : c.site_on_line) s = y.line(1).index(s);
  c.exit_site = y.line(1).index(c.exit_site);
  return c;
}

ReverseCascade reverse_cascade(const MultiLineWindow& y, long j) {
  if (j - 1 < y.lo() || j > y.hi()) throw std::out_of_range("bell outside window");
  return cascade_down<false>(y, j);
}

namespace {

template <typename Stack>
Stack sort_pairs(Stack x, const std::vector<long>& site_on_line) {
  for (int m = 1; m <= x.lines(); ++m) {
    long s = site_on_line[static_cast<std::size_t>(m - 1)];
    bool left = x.has_particle(m, s - 1);
    bool right = x.has_particle(m, s);
    // particle < hole: the particle belongs on the left
    x.set_particle(m, s - 1, left || right);
    x.set_particle(m, s, left && right);
  }
  return x;
}

template <typename Stack>
Stack unsort_pairs(Stack y, const std::vector<long>& site_on_line) {
  for (int m = 1; m <= y.lines(); ++m) {
    long s = site_on_line[static_cast<std::size_t>(m - 1)];
    bool left = y.has_particle(m, s - 1);
    bool right = y.has_particle(m, s);
    // put the hole on the left, the particle on the right
    y.set_particle(m, s - 1, left && right);
    y.set_particle(m, s, left || right);
  }
  return y;
}

}  // namespace

MultiLineRing forward_jump(const MultiLineRing& x, long i) {
  return sort_pairs(x, bell_cascade(x, i).site_on_line);
}

MultiLineWindow forward_jump(const MultiLineWindow& x, long i) {
  ForwardCascade c = bell_cascade(x, i);
  for (long s : c.site_on_line)
    if (s - 1 < x.lo()) throw std::out_of_range("pair leaves the window");
  return sort_pairs(x, c.site_on_line);
}

MultiLineRing reverse_jump(const MultiLineRing& y, long j) {
  return unsort_pairs(y, reverse_cascade(y, j).site_on_line);
}

MultiLineWindow reverse_jump(const MultiLineWindow& y, long j) {
  ReverseCascade c = reverse_cascade(y, j);
  return unsort_pairs(y, c.site_on_line);
}

LineStep forward_step(const MultiLineRing& x, long i) {
  ForwardCascade c = bell_cascade(x, i);
  return LineStep{sort_pairs(x, c.site_on_line), c.exit_site};
}

LineStep reverse_step(const MultiLineRing& y, long j) {
  ReverseCascade c = reverse_cascade(y, j);
  return LineStep{unsort_pairs(y, c.site_on_line), c.exit_site};
}

const RingConfig& MultiTypeRing::line(int m) const {
  if (m < 1 || m > lines()) throw std::out_of_range("line index out of range");
  return lines_[static_cast<std::size_t>(m - 1)];
}

const WindowConfig& MultiTypeWindow::line(int m) const {
  if (m < 1 || m > lines()) throw std::out_of_range("line index out of range");
  return lines_[static_cast<std::size_t>(m - 1)];
}

MultiTypeRing assign_classes(const MultiLineRing& x) {
  std::vector<long> counts = x.line_counts();
  for (std::size_t m = 1; m < counts.size(); ++m)
    if (counts[m] < counts[m - 1])
      throw InfeasibleError("line particle counts must be nondecreasing");
  std::vector<RingConfig> v;
  v.reserve(static_cast<std::size_t>(x.lines()));
  v.push_back(x.line(1));  // particles become class 1
  for (int m = 2; m <= x.lines(); ++m)
    v.push_back(queueing::serve_ring(v.back(), x.line(m)));
  return MultiTypeRing(std::move(v));
}

MultiTypeWindow assign_classes(const MultiLineWindow& x,
                               const std::vector<queueing::QueueState>& inits) {
  if (static_cast<int>(inits.size()) != x.lines() - 1)
    throw ShapeError("need one queue init per adjacent line pair");
  std::vector<WindowConfig> v;
  v.reserve(static_cast<std::size_t>(x.lines()));
  v.push_back(x.line(1));
  for (int m = 2; m <= x.lines(); ++m) {
    const queueing::QueueState& init = inits[static_cast<std::size_t>(m - 2)];
    v.push_back(queueing::serve_window(v.back(), x.line(m), init).departures);
  }
  return MultiTypeWindow(std::move(v));
}

bool commutation_check(const MultiLineRing& x, long i) {
  MultiTypeRing v = assign_classes(x);
  ForwardCascade c = bell_cascade(x, i);
  MultiTypeRing vy = assign_classes(forward_jump(x, i));
  for (int m = 1; m <= x.lines(); ++m) {
    RingConfig expect =
        swap_adjacent(v.line(m), c.site_on_line[static_cast<std::size_t>(m - 1)]);
    if (vy.line(m) != expect) return false;
  }
  return true;
}

}  // namespace mtasep::multiline
