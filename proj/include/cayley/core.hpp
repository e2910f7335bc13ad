#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cayley {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// poset construction / queries
struct CycleError : Error { using Error::Error; };
struct UnknownLabel : Error { using Error::Error; };
struct SizeLimit : Error { using Error::Error; };

// acts and certificates
struct IncompatibleAct : Error { using Error::Error; };
struct NotAPartialOrder : Error { using Error::Error; };
struct NotClosed : Error { using Error::Error; };
struct CertificateInvalid : Error { using Error::Error; };

// certified constructions
struct KindMismatch : Error { using Error::Error; };
struct NotARetract : Error { using Error::Error; };
struct PreconditionFailed : Error { using Error::Error; };
struct NotASemilattice : Error { using Error::Error; };
struct NotJoinIrreducible : Error { using Error::Error; };
struct NotAHomomorphism : Error { using Error::Error; };
struct HypothesisFailed : Error { using Error::Error; };

// monoid presentations
struct ArityMismatch : Error { using Error::Error; };
struct NotPointed : Error { using Error::Error; };
struct Overflow : Error { using Error::Error; };

// file I/O
struct SchemaError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// Dynamic bit set over 64-bit words.  Element sets, upsets and downsets are
// all Masks; sizes stay small (tens of elements) so everything is by value.
class Mask {
public:
  Mask() = default;
  explicit Mask(int n) : n_(n), w_((n + 63) / 64, 0) {}

  static Mask full(int n) {
    Mask m(n);
    for (int i = 0; i < n; ++i) m.set(i);
    return m;
  }
  static Mask single(int n, int i) {
    Mask m(n);
    m.set(i);
    return m;
  }

  int size() const { return n_; }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  int count() const {
    int c = 0;
    for (auto w : w_) c += __builtin_popcountll(w);
    return c;
  }
  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  friend bool operator==(const Mask&, const Mask&) = default;

  Mask& operator&=(const Mask& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  Mask& operator|=(const Mask& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  friend Mask operator&(Mask a, const Mask& b) { return a &= b; }
  friend Mask operator|(Mask a, const Mask& b) { return a |= b; }

  Mask operator~() const {
    Mask r(n_);
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
    r.trim();
    return r;
  }
  // set difference
  friend Mask operator-(Mask a, const Mask& b) {
    for (size_t i = 0; i < a.w_.size(); ++i) a.w_[i] &= ~b.w_[i];
    return a;
  }

  bool subset_of(const Mask& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool intersects(const Mask& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  // first set bit at index >= from, or -1
  int next(int from = 0) const {
    for (int i = from; i < n_;) {
      std::uint64_t w = w_[i >> 6] >> (i & 63);
      if (w) return i + __builtin_ctzll(w);
      i = (i | 63) + 1;
    }
    return -1;
  }

  template <class F>
  void for_each(F f) const {
    for (int i = next(0); i >= 0; i = next(i + 1)) f(i);
  }

  std::vector<int> to_vector() const {
    std::vector<int> v;
    for_each([&](int i) { v.push_back(i); });
    return v;
  }

  // numeric comparison with bit 0 least significant; used where "ascending
  // bitmask order" is part of a determinism contract
  int compare_value(const Mask& o) const {
    for (size_t i = w_.size(); i-- > 0;) {
      if (w_[i] != o.w_[i]) return w_[i] < o.w_[i] ? -1 : 1;
    }
    return 0;
  }

private:
  void trim() {
    if (n_ & 63) w_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
  }
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace cayley
