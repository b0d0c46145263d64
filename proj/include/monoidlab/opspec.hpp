#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "monoidlab/bijection.hpp"
#include "monoidlab/errors.hpp"
#include "monoidlab/natural.hpp"
#include "monoidlab/table.hpp"

namespace monoidlab {

struct OpNode;

/// A symbolic binary operation on ℕ: builtin families, transforms of other
/// operations, or a finite table. Immutable, cheap to copy (shared node).
class OpSpec {
 public:
  static OpSpec add();
  static OpSpec mul();
  static OpSpec constant(Natural c);
  static OpSpec min();
  static OpSpec max();
  static OpSpec left_proj();
  static OpSpec right_proj();
  static OpSpec affine(std::uint64_t alpha, std::uint64_t beta, std::uint64_t gamma);
  static OpSpec monomial(Natural lambda, Natural n, Natural m);
  static OpSpec iterate(OpSpec inner);
  static OpSpec conjugate(OpSpec inner, BijectionProgram omega);
  static OpSpec pointwise(OpSpec h, OpSpec f, OpSpec g);
  static OpSpec table_backed(Table table);

  const OpNode& node() const { return *node_; }

 private:
  explicit OpSpec(std::shared_ptr<const OpNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const OpNode> node_;
};

struct AddOp {};
struct MulOp {};
struct ConstOp {
  Natural value;
};
struct MinOp {};
struct MaxOp {};
struct LeftProjOp {};
struct RightProjOp {};
struct AffineOp {
  std::uint64_t alpha, beta, gamma;  // f(a,b) = αa + βb + γab
};
struct MonomialOp {
  Natural lambda, n, m;  // f(a,b) = λ aⁿ bᵐ
};
struct IterateOp {
  OpSpec inner;
};
struct ConjugateOp {
  OpSpec inner;
  BijectionProgram omega;
};
struct PointwiseOp {
  OpSpec h, f, g;  // (a,b) ↦ h(f(a,b), g(a,b))
};
struct TableOp {
  Table table;
};

struct OpNode {
  std::variant<AddOp, MulOp, ConstOp, MinOp, MaxOp, LeftProjOp, RightProjOp, AffineOp,
               MonomialOp, IterateOp, ConjugateOp, PointwiseOp, TableOp>
      v;
};

inline OpSpec OpSpec::add() { return OpSpec(std::make_shared<const OpNode>(OpNode{AddOp{}})); }
inline OpSpec OpSpec::mul() { return OpSpec(std::make_shared<const OpNode>(OpNode{MulOp{}})); }
inline OpSpec OpSpec::constant(Natural c) {
  return OpSpec(std::make_shared<const OpNode>(OpNode{ConstOp{std::move(c)}}));
}
inline OpSpec OpSpec::min() { return OpSpec(std::make_shared<const OpNode>(OpNode{MinOp{}})); }
inline OpSpec OpSpec::max() { return OpSpec(std::make_shared<const OpNode>(OpNode{MaxOp{}})); }
inline OpSpec OpSpec::left_proj() {
  return OpSpec(std::make_shared<const OpNode>(OpNode{LeftProjOp{}}));
}
inline OpSpec OpSpec::right_proj() {
  return OpSpec(std::make_shared<const OpNode>(OpNode{RightProjOp{}}));
}
inline OpSpec OpSpec::affine(std::uint64_t alpha, std::uint64_t beta, std::uint64_t gamma) {
  if (alpha == 0 && beta == 0 && gamma == 0)
    throw InvalidSpec("affine(0,0,0) is the constant 0, which is not a value in N");
  return OpSpec(std::make_shared<const OpNode>(OpNode{AffineOp{alpha, beta, gamma}}));
}
inline OpSpec OpSpec::monomial(Natural lambda, Natural n, Natural m) {
  return OpSpec(std::make_shared<const OpNode>(
      OpNode{MonomialOp{std::move(lambda), std::move(n), std::move(m)}}));
}
inline OpSpec OpSpec::iterate(OpSpec inner) {
  return OpSpec(std::make_shared<const OpNode>(OpNode{IterateOp{std::move(inner)}}));
}
inline OpSpec OpSpec::conjugate(OpSpec inner, BijectionProgram omega) {
  return OpSpec(std::make_shared<const OpNode>(OpNode{ConjugateOp{std::move(inner), std::move(omega)}}));
}
inline OpSpec OpSpec::pointwise(OpSpec h, OpSpec f, OpSpec g) {
  return OpSpec(
      std::make_shared<const OpNode>(OpNode{PointwiseOp{std::move(h), std::move(f), std::move(g)}}));
}
inline OpSpec OpSpec::table_backed(Table table) {
  return OpSpec(std::make_shared<const OpNode>(OpNode{TableOp{std::move(table)}}));
}

/// Evaluation guards: iterate steps and an overall value-size cap, so a
/// runaway nested spec fails loudly instead of eating the machine.
struct EvalLimits {
  std::uint64_t max_steps = 10'000'000;
  std::size_t max_value_digits = 10'000;
};

namespace detail {

inline void check_value_cap(const BigInt& v, const EvalLimits& limits) {
  if (decimal_digits(v) > limits.max_value_digits)
    throw BudgetExceeded("value exceeds the digit cap of " + std::to_string(limits.max_value_digits));
}

inline Natural checked_pow(const Natural& base, const Natural& exp, const EvalLimits& limits) {
  if (base.value() == 1) return Natural(1);
  const auto bits_per = boost::multiprecision::msb(base.value()) + 1;
  const BigInt bound_bits = BigInt(limits.max_value_digits) * 4;  // digits·log2(10) < digits·4
  if (exp.value() * bits_per > bound_bits)
    throw BudgetExceeded("power would exceed the digit cap");
  return nat_pow(base, exp.value());
}

}  // namespace detail

inline Natural eval_op(const OpSpec& op, const Natural& a, const Natural& b,
                       const EvalLimits& limits = {}) {
  struct Visitor {
    const Natural& a;
    const Natural& b;
    const EvalLimits& limits;

    Natural operator()(const AddOp&) const { return a + b; }
    Natural operator()(const MulOp&) const { return a * b; }
    Natural operator()(const ConstOp& c) const { return c.value; }
    Natural operator()(const MinOp&) const { return a < b ? a : b; }
    Natural operator()(const MaxOp&) const { return a < b ? b : a; }
    Natural operator()(const LeftProjOp&) const { return a; }
    Natural operator()(const RightProjOp&) const { return b; }
    Natural operator()(const AffineOp& f) const {
      return Natural(BigInt(f.alpha) * a.value() + BigInt(f.beta) * b.value() +
                     BigInt(f.gamma) * a.value() * b.value());
    }
    Natural operator()(const MonomialOp& f) const {
      const Natural an = detail::checked_pow(a, f.n, limits);
      const Natural bm = detail::checked_pow(b, f.m, limits);
      Natural r = f.lambda * an * bm;
      detail::check_value_cap(r.value(), limits);
      return r;
    }
    Natural operator()(const IterateOp& f) const {
      // f̃(a,1) = a; f̃(a,b) = f(f̃(a,b−1), a) — note the argument order.
      if (!b.fits_u64() || b.as_u64() > limits.max_steps)
        throw BudgetExceeded("iterate depth " + b.str() + " exceeds the step budget");
      Natural acc = a;
      for (std::uint64_t i = 2; i <= b.as_u64(); ++i) {
        acc = eval_op(f.inner, acc, a, limits);
        detail::check_value_cap(acc.value(), limits);
      }
      return acc;
    }
    Natural operator()(const ConjugateOp& f) const {
      const Natural x = f.omega.inverse(a);
      const Natural y = f.omega.inverse(b);
      return f.omega.forward(eval_op(f.inner, x, y, limits));
    }
    Natural operator()(const PointwiseOp& f) const {
      return eval_op(f.h, eval_op(f.f, a, b, limits), eval_op(f.g, a, b, limits), limits);
    }
    Natural operator()(const TableOp& t) const {
      if (!a.fits_int() || a.as_int() > t.table.n() || !b.fits_int() || b.as_int() > t.table.n())
        throw OutOfWindow("table-backed operation argument outside window");
      return t.table.at(a.as_int(), b.as_int());
    }
  };
  return std::visit(Visitor{a, b, limits}, op.node().v);
}

/// Windows an operation into an n×n Table, rejecting any value above the
/// bound. The scan is row-major, so the reported offender is the first one
/// in that order.
inline Table materialize_table(const OpSpec& op, int n, const Natural& value_bound,
                               const EvalLimits& limits = {}) {
  if (n < 1) throw InvalidSpec("window must be >= 1");
  std::vector<Natural> entries;
  entries.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) {
      Natural v = eval_op(op, Natural(a), Natural(b), limits);
      if (v > value_bound) throw ValueBoundExceeded(a, b, v.str());
      entries.push_back(std::move(v));
    }
  }
  return Table(n, std::move(entries));
}

inline Natural apply_bijection(const BijectionProgram& omega, const Natural& x, bool forward) {
  return forward ? omega.forward(x) : omega.inverse(x);
}

}  // namespace monoidlab
