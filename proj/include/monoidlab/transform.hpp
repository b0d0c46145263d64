#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "monoidlab/bijection.hpp"
#include "monoidlab/errors.hpp"
#include "monoidlab/natural.hpp"
#include "monoidlab/opspec.hpp"
#include "monoidlab/table.hpp"

namespace monoidlab {

inline OpSpec iterate_op(OpSpec op) { return OpSpec::iterate(std::move(op)); }

inline OpSpec conjugate_op(OpSpec op, BijectionProgram omega) {
  return OpSpec::conjugate(std::move(op), std::move(omega));
}

inline OpSpec pointwise_extend(OpSpec h, OpSpec f, OpSpec g) {
  return OpSpec::pointwise(std::move(h), std::move(f), std::move(g));
}

enum class AffineCase { Case1 = 1, Case2 = 2, Case3 = 3, Case4 = 4 };

struct AffineClassification {
  std::uint64_t alpha = 0, beta = 0, gamma = 0;
  bool associative = false;
  std::optional<AffineCase> case_label;
  bool commutative = false;
};

/// f(a,b) = αa + βb + γab is associative iff α² = α, β = β², and αγ = βγ.
/// The solutions split into four cases: α=β=1 (addition-like, any γ);
/// α=β=0, γ ≥ 1 (multiplication-like); (0,1,0) = right projection;
/// (1,0,0) = left projection.
inline AffineClassification classify_affine(std::uint64_t alpha, std::uint64_t beta,
                                            std::uint64_t gamma) {
  if (alpha == 0 && beta == 0 && gamma == 0)
    throw InvalidSpec("affine(0,0,0) is the constant 0, which is not a value in N");
  AffineClassification r;
  r.alpha = alpha;
  r.beta = beta;
  r.gamma = gamma;
  r.associative = (alpha * alpha == alpha) && (beta == beta * beta) && (alpha * gamma == beta * gamma);
  r.commutative = (alpha == beta);
  if (r.associative) {
    if (alpha == 1 && beta == 1)
      r.case_label = AffineCase::Case1;
    else if (alpha == 0 && beta == 0)
      r.case_label = AffineCase::Case2;
    else if (alpha == 0 && beta == 1)
      r.case_label = AffineCase::Case3;
    else
      r.case_label = AffineCase::Case4;
  }
  return r;
}

struct MonomialClassification {
  Natural lambda{1}, n{1}, m{1};
  bool associative = false;
};

/// f(a,b) = λ aⁿ bᵐ is associative iff n = m = 1 (any λ).
inline MonomialClassification classify_monomial(Natural lambda, Natural n, Natural m) {
  MonomialClassification r;
  r.associative = (n == Natural(1)) && (m == Natural(1));
  r.lambda = std::move(lambda);
  r.n = std::move(n);
  r.m = std::move(m);
  return r;
}

/// Conjugates a closed table by a window permutation:
/// T_ω(a,b) = ω(T(ω⁻¹a, ω⁻¹b)). Closedness guarantees ω applies.
inline Table conjugate_table(const Table& t, const Permutation& omega) {
  if (omega.n() != t.n()) throw InvalidSpec("permutation window does not match table window");
  if (!t.closed()) throw NotClosed("conjugating a non-closed table needs the partial form");
  const int n = t.n();
  std::vector<Natural> entries;
  entries.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      const int inner = t.at_in_window(omega.apply_inverse(a), omega.apply_inverse(b));
      entries.emplace_back(omega.apply(inner));
    }
  return Table(n, std::move(entries));
}

/// Conjugation of a possibly non-closed table: entries whose inner value
/// escapes the window are undefined (ω is unavailable outside it).
struct PartialTable {
  int n = 1;
  std::vector<std::optional<Natural>> entries;  // row-major

  const std::optional<Natural>& at(int a, int b) const {
    return entries[static_cast<std::size_t>(a - 1) * static_cast<std::size_t>(n) +
                   static_cast<std::size_t>(b - 1)];
  }
};

inline PartialTable conjugate_table_partial(const Table& t, const Permutation& omega) {
  if (omega.n() != t.n()) throw InvalidSpec("permutation window does not match table window");
  const int n = t.n();
  PartialTable p;
  p.n = n;
  p.entries.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      const int inner = t.at_in_window(omega.apply_inverse(a), omega.apply_inverse(b));
      if (inner == 0)
        p.entries.emplace_back(std::nullopt);
      else
        p.entries.emplace_back(Natural(omega.apply(inner)));
    }
  return p;
}

/// Largest point moved by a finite-support bijection (0 when none).
inline int max_moved_point(const BijectionProgram& omega) {
  switch (omega.kind()) {
    case BijectionProgram::Kind::Identity:
      return 0;
    case BijectionProgram::Kind::FiniteSupport: {
      const Permutation& p = *omega.perm();
      int last = 0;
      for (int x = 1; x <= p.n(); ++x)
        if (p.apply(x) != x) last = x;
      return last;
    }
    case BijectionProgram::Kind::EvenPower:
      throw InvalidSpec("even-power bijection has no finite support");
  }
  throw InvalidSpec("unreachable bijection kind");
}

struct SeparationWitness {
  Natural a{1}, b{1};
  Natural lhs{1}, rhs{1};  // f_xi(a,b) vs f_chi(a,b)
};

/// Searches for a point where the two conjugates of `base` differ. The two
/// bijections agree beyond their supports, so any disagreement shows up
/// within twice the largest moved point plus 2.
inline std::optional<SeparationWitness> separate_conjugates(const BijectionProgram& xi,
                                                            const BijectionProgram& chi,
                                                            const OpSpec& base = OpSpec::add()) {
  const int radius = 2 * std::max(max_moved_point(xi), max_moved_point(chi)) + 2;
  const OpSpec fxi = conjugate_op(base, xi);
  const OpSpec fchi = conjugate_op(base, chi);
  for (int a = 1; a <= radius; ++a)
    for (int b = 1; b <= radius; ++b) {
      const Natural lhs = eval_op(fxi, Natural(a), Natural(b));
      const Natural rhs = eval_op(fchi, Natural(a), Natural(b));
      if (lhs != rhs) return SeparationWitness{Natural(a), Natural(b), lhs, rhs};
    }
  return std::nullopt;
}

}  // namespace monoidlab
