#include "mtasep/config.hpp"

#include <algorithm>

namespace mtasep {

Counts::Counts(std::vector<long> per_class) : p_(std::move(per_class)) {
  for (long v : p_) {
    if (v < 0) throw std::domain_error("negative class count");
  }
}

long Counts::p(int r) const {
  if (r < 1 || r > n()) throw std::out_of_range("class index out of range");
  return p_[r - 1];
}

long Counts::q(int m) const {
  if (m < 0 || m > n()) throw std::out_of_range("class index out of range");
  long s = 0;
  for (int r = 0; r < m; ++r) s += p_[r];
  return s;
}

std::vector<long> Counts::prefix() const {
  std::vector<long> out(p_.size());
  long s = 0;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    s += p_[i];
    out[i] = s;
  }
  return out;
}

namespace {

void check_value(ClassValue v, int n_classes) {
  if (v.is_particle() && v.klass() > n_classes)
    throw std::domain_error("class value exceeds declared class count");
}

}  // namespace

RingConfig::RingConfig(int n_sites, int n_classes)
    : sites_(static_cast<std::size_t>(n_sites)), n_classes_(n_classes) {
  if (n_sites < 1) throw ShapeError("ring needs at least one site");
  if (n_classes < 0) throw std::domain_error("negative class count");
}

RingConfig RingConfig::of(std::vector<ClassValue> sites, int n_classes) {
  RingConfig u(static_cast<int>(sites.size()), n_classes);
  for (ClassValue v : sites) check_value(v, n_classes);
  u.sites_ = std::move(sites);
  return u;
}

void RingConfig::set(long i, ClassValue v) {
  check_value(v, n_classes_);
  sites_[index(i)] = v;
}

std::vector<int> RingConfig::encode() const {
  std::vector<int> out(sites_.size());
  std::transform(sites_.begin(), sites_.end(), out.begin(),
                 [](ClassValue v) { return v.encode(); });
  return out;
}

RingConfig RingConfig::decode(const std::vector<int>& codes, int n_classes) {
  std::vector<ClassValue> sites(codes.size());
  std::transform(codes.begin(), codes.end(), sites.begin(), ClassValue::decode);
  return of(std::move(sites), n_classes);
}

WindowConfig::WindowConfig(long lo, long length, int n_classes)
    : sites_(static_cast<std::size_t>(length)), lo_(lo), n_classes_(n_classes) {
  if (length < 0) throw ShapeError("negative window length");
  if (n_classes < 0) throw std::domain_error("negative class count");
}

WindowConfig WindowConfig::of(long lo, std::vector<ClassValue> sites, int n_classes) {
  WindowConfig u(lo, static_cast<long>(sites.size()), n_classes);
  for (ClassValue v : sites) check_value(v, n_classes);
  u.sites_ = std::move(sites);
  return u;
}

ClassValue WindowConfig::at(long j) const {
  if (!contains(j)) throw std::out_of_range("site outside window");
  return sites_[static_cast<std::size_t>(j - lo_)];
}

void WindowConfig::set(long j, ClassValue v) {
  if (!contains(j)) throw std::out_of_range("site outside window");
  check_value(v, n_classes_);
  sites_[static_cast<std::size_t>(j - lo_)] = v;
}

WindowConfig WindowConfig::restrict_to(long lo, long hi) const {
  if (hi < lo) return WindowConfig(lo, 0, n_classes_);
  if (!contains(lo) || !contains(hi)) throw std::out_of_range("sub-window outside window");
  std::vector<ClassValue> part(sites_.begin() + (lo - lo_), sites_.begin() + (hi - lo_ + 1));
  return of(lo, std::move(part), n_classes_);
}

std::vector<int> WindowConfig::encode() const {
  std::vector<int> out(sites_.size());
  std::transform(sites_.begin(), sites_.end(), out.begin(),
                 [](ClassValue v) { return v.encode(); });
  return out;
}

WindowConfig WindowConfig::decode(long lo, const std::vector<int>& codes, int n_classes) {
  std::vector<ClassValue> sites(codes.size());
  std::transform(codes.begin(), codes.end(), sites.begin(), ClassValue::decode);
  return of(lo, std::move(sites), n_classes);
}

RingConfig swap_adjacent(const RingConfig& u, long i) {
  RingConfig out = u;
  ClassValue left = u.at(i - 1), right = u.at(i);
  if (right < left) {
    out.set(i - 1, right);
    out.set(i, left);
  }
  return out;
}

WindowConfig swap_adjacent(const WindowConfig& u, long i) {
  if (!u.contains(i - 1) || !u.contains(i))
    throw std::out_of_range("pair leaves the window");
  WindowConfig out = u;
  ClassValue left = u.at(i - 1), right = u.at(i);
  if (right < left) {
    out.set(i - 1, right);
    out.set(i, left);
  }
  return out;
}

namespace {

template <typename Config>
Counts count_classes(const Config& u) {
  std::vector<long> p(static_cast<std::size_t>(u.n_classes()), 0);
  for (ClassValue v : u.sites()) {
    if (v.is_particle()) ++p[static_cast<std::size_t>(v.klass() - 1)];
  }
  return Counts(std::move(p));
}

}  // namespace

Counts class_counts(const RingConfig& u) { return count_classes(u); }
Counts class_counts(const WindowConfig& u) { return count_classes(u); }

}  // namespace mtasep
