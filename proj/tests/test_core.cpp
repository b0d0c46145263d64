#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "monoidlab/monoidlab.hpp"

using namespace monoidlab;

TEST_CASE("Natural starts at one and rejects everything below", "[core][natural]") {
  CHECK(Natural() == Natural(1));
  CHECK_THROWS_AS(Natural(0), InvalidSpec);
  CHECK_THROWS_AS(Natural(-3), InvalidSpec);
  CHECK_THROWS_AS(Natural(BigInt(0)), InvalidSpec);

  const std::string big = "123456789012345678901234567890";
  CHECK(Natural::from_string(big).str() == big);
  CHECK_THROWS_AS(Natural::from_string("0"), InvalidSpec);
  CHECK_THROWS_AS(Natural::from_string("-7"), InvalidSpec);
  CHECK_THROWS_AS(Natural::from_string("xyz"), InvalidSpec);
  CHECK_THROWS_AS(Natural::from_string(""), InvalidSpec);
}

TEST_CASE("Natural conversions guard machine-word overflow", "[core][natural]") {
  const Natural max64(std::numeric_limits<std::uint64_t>::max());
  CHECK(max64.fits_u64());
  CHECK(max64.as_u64() == std::numeric_limits<std::uint64_t>::max());

  const Natural beyond(BigInt(1) << 100);
  CHECK_FALSE(beyond.fits_u64());
  CHECK_THROWS_AS(beyond.as_u64(), BudgetExceeded);

  const Natural maxint(std::numeric_limits<int>::max());
  CHECK(maxint.fits_int());
  CHECK(maxint.as_int() == std::numeric_limits<int>::max());
  const Natural above(BigInt(std::numeric_limits<int>::max()) + 1);
  CHECK_FALSE(above.fits_int());
  CHECK_THROWS_AS(above.as_int(), BudgetExceeded);
}

TEST_CASE("Natural arithmetic and ordering are exact", "[core][natural]") {
  CHECK(Natural(2) + Natural(3) == Natural(5));
  CHECK(Natural(7) * Natural(6) == Natural(42));
  const Natural huge = Natural::from_string("999999999999999999999999999999");
  CHECK(huge + Natural(1) == Natural::from_string("1000000000000000000000000000000"));
  CHECK(Natural(2) < Natural(3));
  CHECK(Natural(3) <= Natural(3));
  CHECK(Natural(4) > Natural(3));
  CHECK(Natural(4) >= Natural(4));
  CHECK(Natural(4) != Natural(5));
}

TEST_CASE("big_pow, nat_pow and log2 helpers", "[core][natural]") {
  CHECK(big_pow(BigInt(2), BigInt(10)) == BigInt(1024));
  CHECK(big_pow(BigInt(7), BigInt(0)) == BigInt(1));
  CHECK_THROWS_AS(big_pow(BigInt(2), BigInt(-1)), InvalidSpec);
  CHECK_THROWS_AS(
      big_pow(BigInt(2), BigInt(std::numeric_limits<unsigned>::max()) + 1),
      BudgetExceeded);
  CHECK(nat_pow(Natural(3), BigInt(4)) == Natural(81));

  CHECK(log2_nat(Natural(1)) == 0.0);
  CHECK(log2_nat(Natural(1024)) == Catch::Approx(10.0).margin(1e-12));
  CHECK(log2_big(BigInt(1) << 200) == Catch::Approx(200.0).margin(1e-9));
  // above the 53-bit fast path, off by a perturbation
  CHECK(log2_big((BigInt(1) << 200) + (BigInt(1) << 199)) ==
        Catch::Approx(200.0 + std::log2(1.5)).margin(1e-9));
  CHECK_THROWS_AS(log2_big(BigInt(0)), InvalidSpec);
}

TEST_CASE("Permutation validates, applies, composes, inverts", "[core][bijection]") {
  const Permutation id4 = Permutation::identity(4);
  for (int x = 1; x <= 4; ++x) CHECK(id4.apply(x) == x);

  const Permutation cyc({2, 3, 1});
  CHECK(cyc.apply(1) == 2);
  CHECK(cyc.apply(3) == 1);
  CHECK(cyc.apply_inverse(2) == 1);
  CHECK(cyc.inverted().apply(2) == 1);
  CHECK(cyc.compose(cyc).apply(1) == 3);  // (cyc ∘ cyc)(1) = cyc(2) = 3
  CHECK(cyc.compose(cyc.inverted()) == Permutation::identity(3));

  CHECK_THROWS_AS(Permutation({1, 1}), InvalidSpec);
  CHECK_THROWS_AS(Permutation({0, 2}), InvalidSpec);
  CHECK_THROWS_AS(Permutation({}), InvalidSpec);
  CHECK_THROWS_AS(cyc.apply(4), OutOfWindow);
  CHECK_THROWS_AS(cyc.apply(0), OutOfWindow);
  CHECK_THROWS_AS(cyc.compose(id4), InvalidSpec);
}

TEST_CASE("finite-support bijection acts inside its window, fixes the rest",
          "[core][bijection]") {
  const BijectionProgram omega = BijectionProgram::finite(Permutation({2, 1}));
  CHECK(omega.forward(Natural(1)) == Natural(2));
  CHECK(omega.forward(Natural(2)) == Natural(1));
  CHECK(omega.forward(Natural(5)) == Natural(5));
  CHECK(omega.inverse(Natural(2)) == Natural(1));
  CHECK(omega.inverse(Natural(17)) == Natural(17));
}

TEST_CASE("even-power bijection: small values", "[core][bijection]") {
  const BijectionProgram w = BijectionProgram::even_power();
  // evens: 2n ↦ (2n)^{2n}
  CHECK(w.forward(Natural(2)) == Natural(4));
  CHECK(w.forward(Natural(4)) == Natural(256));
  CHECK(w.forward(Natural(6)) == Natural(46656));
  // odds walk the complement in increasing order
  CHECK(w.forward(Natural(1)) == Natural(1));
  CHECK(w.forward(Natural(3)) == Natural(2));
  CHECK(w.forward(Natural(5)) == Natural(3));
  CHECK(w.forward(Natural(7)) == Natural(5));  // skips 4 = 2^2
  CHECK(w.forward(Natural(9)) == Natural(6));
  // inverse of both kinds
  CHECK(w.inverse(Natural(256)) == Natural(4));
  CHECK(w.inverse(Natural(46656)) == Natural(6));
  CHECK(w.inverse(Natural(1)) == Natural(1));
  CHECK(w.inverse(Natural(2)) == Natural(3));
  CHECK(w.inverse(Natural(5)) == Natural(7));
  CHECK(w.inverse(Natural(6)) == Natural(9));
}

TEST_CASE("every bijection kind round-trips on a sampled range", "[core][bijection]") {
  const std::vector<BijectionProgram> programs = {
      BijectionProgram::identity(),
      BijectionProgram::finite(Permutation({3, 1, 2})),
      BijectionProgram::even_power(),
  };
  for (const auto& w : programs) {
    for (int x = 1; x <= 60; ++x) {
      REQUIRE(w.inverse(w.forward(Natural(x))) == Natural(x));
      REQUIRE(w.forward(w.inverse(Natural(x))) == Natural(x));
    }
  }
  // the doubly-exponential values the growth demos run through
  const BijectionProgram w = BijectionProgram::even_power();
  for (int n = 1; n <= 6; ++n) {
    const Natural y(big_pow(BigInt(2 * n), BigInt(2 * n)));
    REQUIRE(w.inverse(y) == Natural(2 * n));
    REQUIRE(w.forward(w.inverse(y)) == y);
    REQUIRE(w.inverse(w.forward(Natural(2 * n))) == Natural(2 * n));
  }
}

TEST_CASE("even-power forward is injective on [1..10000]", "[core][bijection]") {
  const BijectionProgram w = BijectionProgram::even_power();

  // Even images (2m)^{2m} are strictly increasing, so pairwise distinct.
  BigInt prev_even = 0;
  bool evens_increasing = true;
  BigInt second_even_image = 0;  // ω(4), needed for the cross check below
  for (int x = 2; x <= 10000; x += 2) {
    BigInt img = w.forward(Natural(x)).value();
    if (x == 4) second_even_image = img;
    if (!(img > prev_even)) {
      evens_increasing = false;
      break;
    }
    prev_even = std::move(img);
  }
  REQUIRE(evens_increasing);

  // Odd images are pairwise distinct: collect them (all small).
  std::set<BigInt> odd_images;
  for (int x = 1; x <= 9999; x += 2) odd_images.insert(w.forward(Natural(x)).value());
  REQUIRE(odd_images.size() == 5000);

  // No even image collides with an odd image. Odd images top out just above
  // 5000, and the only even images that small are ω(2) = 4 and ω(4) = 256.
  REQUIRE(*odd_images.rbegin() < BigInt(6000));
  REQUIRE(second_even_image == BigInt(256));
  CHECK(odd_images.count(BigInt(4)) == 0);
  CHECK(odd_images.count(BigInt(256)) == 0);
}

TEST_CASE("even-power forward hits every value in [1..100]", "[core][bijection]") {
  const BijectionProgram w = BijectionProgram::even_power();
  for (int y = 1; y <= 100; ++y) {
    const Natural x = w.inverse(Natural(y));
    REQUIRE(w.forward(x) == Natural(y));
  }
}

TEST_CASE("Table construction and access", "[core][table]") {
  const Table t = Table::from_rows({{1, 2}, {2, 4}});
  CHECK(t.n() == 2);
  CHECK(t.at(1, 2) == Natural(2));
  CHECK(t.at(2, 2) == Natural(4));
  CHECK_THROWS_AS(t.at(0, 1), OutOfWindow);
  CHECK_THROWS_AS(t.at(1, 3), OutOfWindow);

  CHECK(t.at_in_window(1, 1) == 1);
  CHECK(t.at_in_window(2, 2) == 0);  // 4 escapes the 2-window
  CHECK_FALSE(t.closed());
  CHECK(Table::from_rows({{2, 1}, {1, 1}}).closed());

  CHECK_THROWS_AS(Table(0, {}), InvalidSpec);
  CHECK_THROWS_AS(Table(2, std::vector<Natural>(3, Natural(1))), InvalidSpec);
  CHECK_THROWS_AS(Table::from_rows({{1, 2}, {1}}), InvalidSpec);
}

TEST_CASE("Table equality and lexicographic order", "[core][table]") {
  const Table a = Table::from_rows({{1, 2}, {2, 4}});
  const Table b = Table::from_rows({{2, 3}, {3, 4}});
  CHECK(a == a);
  CHECK(a != b);
  CHECK(a < b);
  CHECK_FALSE(b < a);
  CHECK(Table::from_rows({{1}}) < a);  // smaller window sorts first
}

TEST_CASE("eval_op built-in families", "[core][opspec]") {
  CHECK(eval_op(OpSpec::add(), Natural(2), Natural(3)) == Natural(5));
  CHECK(eval_op(OpSpec::mul(), Natural(2), Natural(3)) == Natural(6));
  CHECK(eval_op(OpSpec::constant(Natural(9)), Natural(2), Natural(3)) == Natural(9));
  CHECK(eval_op(OpSpec::min(), Natural(2), Natural(3)) == Natural(2));
  CHECK(eval_op(OpSpec::max(), Natural(2), Natural(3)) == Natural(3));
  CHECK(eval_op(OpSpec::left_proj(), Natural(2), Natural(3)) == Natural(2));
  CHECK(eval_op(OpSpec::right_proj(), Natural(2), Natural(3)) == Natural(3));
  CHECK(eval_op(OpSpec::affine(1, 1, 1), Natural(2), Natural(3)) == Natural(11));
  CHECK(eval_op(OpSpec::affine(2, 2, 0), Natural(3), Natural(4)) == Natural(14));
  CHECK(eval_op(OpSpec::monomial(Natural(3), Natural(2), Natural(1)), Natural(2), Natural(5)) ==
        Natural(60));  // 3·2²·5
  CHECK_THROWS_AS(OpSpec::affine(0, 0, 0), InvalidSpec);
}

TEST_CASE("eval_op transforms", "[core][opspec]") {
  CHECK(eval_op(OpSpec::iterate(OpSpec::add()), Natural(3), Natural(4)) == Natural(12));
  CHECK(eval_op(OpSpec::iterate(OpSpec::mul()), Natural(2), Natural(3)) == Natural(8));
  CHECK(eval_op(OpSpec::conjugate(OpSpec::add(), BijectionProgram::identity()), Natural(7),
                Natural(9)) == Natural(16));
  // pointwise: h(f(a,b), g(a,b))
  const OpSpec sq = OpSpec::pointwise(OpSpec::mul(), OpSpec::add(), OpSpec::add());
  CHECK(eval_op(sq, Natural(2), Natural(3)) == Natural(25));
  // table-backed ops stay inside their window
  const OpSpec tb = OpSpec::table_backed(Table::from_rows({{2, 1}, {1, 1}}));
  CHECK(eval_op(tb, Natural(1), Natural(2)) == Natural(1));
  CHECK_THROWS_AS(eval_op(tb, Natural(3), Natural(1)), OutOfWindow);
}

TEST_CASE("iterate matches its closed forms", "[core][opspec]") {
  const OpSpec it_add = OpSpec::iterate(OpSpec::add());
  const OpSpec it_mul = OpSpec::iterate(OpSpec::mul());
  for (int a = 1; a <= 12; ++a) {
    REQUIRE(eval_op(it_add, Natural(a), Natural(1)) == Natural(a));
    for (int b = 1; b <= 12; ++b)
      REQUIRE(eval_op(it_add, Natural(a), Natural(b)) == Natural(a * b));
  }
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= 8; ++b)
      REQUIRE(eval_op(it_mul, Natural(a), Natural(b)) == nat_pow(Natural(a), BigInt(b)));
}

TEST_CASE("iterate distributes over its base on the right", "[core][opspec]") {
  // f̃(f(a,b), c) = f(f̃(a,c), f̃(b,c)) for f ∈ {+, ·}
  for (const OpSpec& f : {OpSpec::add(), OpSpec::mul()}) {
    const OpSpec ft = OpSpec::iterate(f);
    for (int a = 1; a <= 10; ++a)
      for (int b = 1; b <= 10; ++b)
        for (int c = 1; c <= 10; ++c) {
          const Natural lhs = eval_op(ft, eval_op(f, Natural(a), Natural(b)), Natural(c));
          const Natural rhs =
              eval_op(f, eval_op(ft, Natural(a), Natural(c)), eval_op(ft, Natural(b), Natural(c)));
          REQUIRE(lhs == rhs);
        }
  }
}

TEST_CASE("materialize_table windows an operation", "[core][opspec]") {
  CHECK(materialize_table(OpSpec::add(), 2, Natural(10)) == Table::from_rows({{2, 3}, {3, 4}}));
  CHECK(materialize_table(OpSpec::mul(), 3, Natural(9)) ==
        Table::from_rows({{1, 2, 3}, {2, 4, 6}, {3, 6, 9}}));
  CHECK_THROWS_AS(materialize_table(OpSpec::add(), 0, Natural(10)), InvalidSpec);

  // row-major scan reports the first offender
  try {
    materialize_table(OpSpec::monomial(Natural(1), Natural(2), Natural(1)), 2, Natural(2));
    FAIL("expected ValueBoundExceeded");
  } catch (const ValueBoundExceeded& e) {
    CHECK(e.a() == 2);
    CHECK(e.b() == 1);
    CHECK(e.value() == "4");
  }
}

TEST_CASE("materialize_table agrees with eval_op pointwise", "[core][opspec]") {
  const std::vector<OpSpec> ops = {OpSpec::add(), OpSpec::mul(), OpSpec::affine(1, 1, 1),
                                   OpSpec::iterate(OpSpec::add())};
  for (const OpSpec& op : ops) {
    const Table t = materialize_table(op, 4, Natural(1000));
    for (int a = 1; a <= 4; ++a)
      for (int b = 1; b <= 4; ++b)
        REQUIRE(t.at(a, b) == eval_op(op, Natural(a), Natural(b)));
  }
}

TEST_CASE("evaluation budgets fail loudly", "[core][opspec]") {
  EvalLimits tight;
  tight.max_steps = 5;
  CHECK_THROWS_AS(eval_op(OpSpec::iterate(OpSpec::add()), Natural(2), Natural(10), tight),
                  BudgetExceeded);
  // default limits already stop a 15000-digit power
  CHECK_THROWS_AS(
      eval_op(OpSpec::monomial(Natural(1), Natural(50000), Natural(1)), Natural(2), Natural(2)),
      BudgetExceeded);
  EvalLimits cap;
  cap.max_value_digits = 10;
  CHECK_THROWS_AS(eval_op(OpSpec::iterate(OpSpec::mul()), Natural(10), Natural(20), cap),
                  BudgetExceeded);
  CHECK(eval_op(OpSpec::iterate(OpSpec::mul()), Natural(10), Natural(9), cap) ==
        Natural::from_string("1000000000"));
}

TEST_CASE("apply_bijection dispatches direction", "[core][opspec]") {
  const BijectionProgram w = BijectionProgram::even_power();
  CHECK(apply_bijection(w, Natural(4), true) == Natural(256));
  CHECK(apply_bijection(w, Natural(256), false) == Natural(4));
}
