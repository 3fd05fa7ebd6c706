#pragma once

// Site configurations for multi-type exclusion dynamics. A site holds a
// particle of class 1..n or a hole; holes sort above every class, so the
// basic update ("bell") at site i is just sorting the pair (i-1, i).

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mtasep/errors.hpp"

namespace mtasep {

class ClassValue {
 public:
  constexpr ClassValue() = default;  // hole
  static constexpr ClassValue hole() { return ClassValue{}; }
  static ClassValue of(int klass) {
    if (klass < 1) throw std::domain_error("class values start at 1");
    return ClassValue{klass};
  }
  constexpr bool is_hole() const { return v_ == kHole; }
  constexpr bool is_particle() const { return v_ != kHole; }
  int klass() const {
    if (is_hole()) throw std::domain_error("hole has no class");
    return v_;
  }
  // External encoding: 0 for a hole, the class number otherwise.
  constexpr int encode() const { return is_hole() ? 0 : v_; }
  static ClassValue decode(int code) {
    if (code < 0) throw std::domain_error("negative site code");
    return code == 0 ? hole() : of(code);
  }
  friend constexpr auto operator<=>(ClassValue a, ClassValue b) = default;

 private:
  explicit constexpr ClassValue(int v) : v_(v) {}
  static constexpr int kHole = std::numeric_limits<int>::max();
  int v_ = kHole;
};

// Per-class particle counts (p_1, ..., p_n) with running totals
// q_m = p_1 + ... + p_m.
class Counts {
 public:
  Counts() = default;
  explicit Counts(std::vector<long> per_class);
  int n() const { return static_cast<int>(p_.size()); }
  long p(int r) const;         // 1-based
  long q(int m) const;         // q(0) = 0
  long total() const { return q(n()); }
  const std::vector<long>& per_class() const { return p_; }
  std::vector<long> prefix() const;  // (q_1, ..., q_n)
  friend bool operator==(const Counts&, const Counts&) = default;

 private:
  std::vector<long> p_;
};

// Configuration on the ring Z_N; site indices are reduced mod N.
class RingConfig {
 public:
  RingConfig() = default;
  RingConfig(int n_sites, int n_classes);  // all holes
  static RingConfig of(std::vector<ClassValue> sites, int n_classes);

  int size() const { return static_cast<int>(sites_.size()); }
  int n_classes() const { return n_classes_; }
  long index(long i) const {
    long n = size();
    long r = i % n;
    return r < 0 ? r + n : r;
  }
  ClassValue at(long i) const { return sites_[index(i)]; }
  void set(long i, ClassValue v);
  const std::vector<ClassValue>& sites() const { return sites_; }

  std::vector<int> encode() const;
  static RingConfig decode(const std::vector<int>& codes, int n_classes);

  friend bool operator==(const RingConfig&, const RingConfig&) = default;
  friend auto operator<=>(const RingConfig&, const RingConfig&) = default;

 private:
  std::vector<ClassValue> sites_;
  int n_classes_ = 0;
};

// Configuration on the integer window [lo, lo + length - 1]. Sites are
// addressed by absolute coordinate; out-of-window access throws.
class WindowConfig {
 public:
  WindowConfig() = default;
  WindowConfig(long lo, long length, int n_classes);  // all holes
  static WindowConfig of(long lo, std::vector<ClassValue> sites, int n_classes);

  long lo() const { return lo_; }
  long hi() const { return lo_ + size() - 1; }
  long size() const { return static_cast<long>(sites_.size()); }
  int n_classes() const { return n_classes_; }
  bool contains(long j) const { return j >= lo_ && j <= hi(); }
  ClassValue at(long j) const;
  void set(long j, ClassValue v);
  const std::vector<ClassValue>& sites() const { return sites_; }

  // Copy of the sub-window [lo, hi] (inclusive); must lie inside.
  WindowConfig restrict_to(long lo, long hi) const;

  std::vector<int> encode() const;
  static WindowConfig decode(long lo, const std::vector<int>& codes, int n_classes);

  friend bool operator==(const WindowConfig&, const WindowConfig&) = default;

 private:
  std::vector<ClassValue> sites_;
  long lo_ = 0;
  int n_classes_ = 0;
};

// Sort the pair (i-1, i) so the lower value ends up on the left. On a ring
// any i works; on a window both i-1 and i must lie inside it.
RingConfig swap_adjacent(const RingConfig& u, long i);
WindowConfig swap_adjacent(const WindowConfig& u, long i);

Counts class_counts(const RingConfig& u);
Counts class_counts(const WindowConfig& u);

}  // namespace mtasep
