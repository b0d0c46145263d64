#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "monoidlab/errors.hpp"
#include "monoidlab/natural.hpp"

namespace monoidlab {

/// A permutation of the window [1..n], stored 1-based: image[i-1] = ω(i).
class Permutation {
 public:
  explicit Permutation(std::vector<int> image) : image_(std::move(image)) {
    const int n = static_cast<int>(image_.size());
    if (n < 1) throw InvalidSpec("permutation window must be >= 1");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : image_) {
      if (v < 1 || v > n) throw InvalidSpec("permutation image out of range");
      if (seen[static_cast<std::size_t>(v - 1)]++) throw InvalidSpec("permutation image repeats a value");
    }
    inverse_.resize(image_.size());
    for (int i = 1; i <= n; ++i) inverse_[static_cast<std::size_t>(image_[static_cast<std::size_t>(i - 1)] - 1)] = i;
  }

  static Permutation identity(int n) {
    std::vector<int> im(static_cast<std::size_t>(n));
    std::iota(im.begin(), im.end(), 1);
    return Permutation(std::move(im));
  }

  int n() const noexcept { return static_cast<int>(image_.size()); }
  int apply(int x) const {
    if (x < 1 || x > n()) throw OutOfWindow("permutation argument outside window");
    return image_[static_cast<std::size_t>(x - 1)];
  }
  int apply_inverse(int y) const {
    if (y < 1 || y > n()) throw OutOfWindow("permutation argument outside window");
    return inverse_[static_cast<std::size_t>(y - 1)];
  }

  /// (this ∘ other)(x) = this(other(x)); both must share a window.
  Permutation compose(const Permutation& other) const {
    if (n() != other.n()) throw InvalidSpec("composing permutations of different windows");
    std::vector<int> im(image_.size());
    for (int x = 1; x <= n(); ++x) im[static_cast<std::size_t>(x - 1)] = apply(other.apply(x));
    return Permutation(std::move(im));
  }

  Permutation inverted() const { return Permutation(inverse_); }

  const std::vector<int>& image() const noexcept { return image_; }
  friend bool operator==(const Permutation& a, const Permutation& b) { return a.image_ == b.image_; }

 private:
  std::vector<int> image_;
  std::vector<int> inverse_;
};

namespace detail {

/// Number of members of {(2m)^{2m} : m ≥ 1} that are ≤ x. The set grows
/// double-exponentially, so the scan is a handful of iterations.
inline std::uint64_t even_power_count_leq(const BigInt& x) {
  std::uint64_t count = 0;
  for (BigInt m = 1;; ++m) {
    const BigInt base = 2 * m;
    const BigInt p = big_pow(base, base);
    if (p > x) break;
    ++count;
  }
  return count;
}

/// Is x = (2m)^{2m} for some m? Returns 2m, or 0 if not a member.
inline BigInt even_power_preimage(const BigInt& x) {
  for (BigInt m = 1;; ++m) {
    const BigInt base = 2 * m;
    const BigInt p = big_pow(base, base);
    if (p == x) return base;
    if (p > x) return 0;
  }
}

}  // namespace detail

/// A computable bijection ℕ→ℕ with computable inverse.
///
/// EvenPower sends 2n ↦ (2n)^{2n}; odd arguments enumerate the complement
/// ℕ \ {(2n)^{2n}} in increasing order, so 1↦1, 3↦2, 5↦3, 7↦5 (skipping 4).
class BijectionProgram {
 public:
  enum class Kind { Identity, FiniteSupport, EvenPower };

  static BijectionProgram identity() { return BijectionProgram(Kind::Identity, {}); }
  static BijectionProgram finite(Permutation perm) {
    return BijectionProgram(Kind::FiniteSupport, std::move(perm));
  }
  static BijectionProgram even_power() { return BijectionProgram(Kind::EvenPower, {}); }

  Kind kind() const noexcept { return kind_; }
  const Permutation* perm() const noexcept { return perm_ ? &*perm_ : nullptr; }

  Natural forward(const Natural& x) const {
    switch (kind_) {
      case Kind::Identity:
        return x;
      case Kind::FiniteSupport: {
        if (x.fits_int() && x.as_int() <= perm_->n()) return Natural(perm_->apply(x.as_int()));
        return x;  // fixes every point beyond its window
      }
      case Kind::EvenPower:
        return even_power_forward(x);
    }
    throw InvalidSpec("unreachable bijection kind");
  }

  Natural inverse(const Natural& y) const {
    switch (kind_) {
      case Kind::Identity:
        return y;
      case Kind::FiniteSupport: {
        if (y.fits_int() && y.as_int() <= perm_->n()) return Natural(perm_->apply_inverse(y.as_int()));
        return y;
      }
      case Kind::EvenPower:
        return even_power_inverse(y);
    }
    throw InvalidSpec("unreachable bijection kind");
  }

 private:
  BijectionProgram(Kind k, std::optional<Permutation> p) : kind_(k), perm_(std::move(p)) {}

  static Natural even_power_forward(const Natural& x) {
    const BigInt& v = x.value();
    if (v % 2 == 0) return Natural(big_pow(v, v));
    // Odd 2k-1 maps to the k-th element of the complement: the smallest m
    // with m = k + |S ∩ [1..m]|. The fixpoint iteration is monotone and the
    // first fixpoint cannot lie in S (S has no two consecutive members).
    const BigInt k = (v + 1) / 2;
    BigInt m = k;
    for (;;) {
      const BigInt next = k + BigInt(detail::even_power_count_leq(m));
      if (next == m) break;
      m = next;
    }
    return Natural(m);
  }

  static Natural even_power_inverse(const Natural& y) {
    const BigInt& v = y.value();
    const BigInt even = detail::even_power_preimage(v);
    if (even != 0) return Natural(even);
    const BigInt k = v - BigInt(detail::even_power_count_leq(v));
    return Natural(2 * k - 1);
  }

  Kind kind_;
  std::optional<Permutation> perm_;
};

}  // namespace monoidlab
