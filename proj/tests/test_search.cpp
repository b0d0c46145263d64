#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "monoidlab/monoidlab.hpp"

using namespace monoidlab;

namespace {

// Naive generate-and-test reference: every table over [1..vmax], lex order,
// kept when it passes the same laws the engine enforces.
std::vector<Table> oracle_enumerate(int n, int vmax, const SearchFilter& f) {
  std::vector<Table> out;
  const int cells = n * n;
  std::vector<int> digits(static_cast<std::size_t>(cells), 1);
  for (;;) {
    std::vector<Natural> entries(digits.begin(), digits.end());
    Table t(n, std::move(entries));
    bool ok = true;
    if (f.closed && !t.closed()) ok = false;
    if (ok && f.associative) ok = check_associative(t).result.verdict;
    if (ok && f.commutative) ok = check_commutative(t).result.verdict;
    if (ok && f.strictly_monotone) ok = check_strictly_monotone(t).result.verdict;
    if (ok && f.genuine) ok = check_genuine(t).result.verdict;
    if (ok && f.right_regular) ok = check_right_regular(t).result.verdict;
    if (ok) out.push_back(std::move(t));
    int i = cells - 1;
    while (i >= 0 && digits[static_cast<std::size_t>(i)] == vmax) {
      digits[static_cast<std::size_t>(i)] = 1;
      --i;
    }
    if (i < 0) break;
    ++digits[static_cast<std::size_t>(i)];
  }
  return out;
}

// Strictly monotone tables only, grown cell by cell so large bounds stay cheap.
void monotone_tables_rec(int n, int B, std::vector<int>& flat, std::vector<Table>& out) {
  const int k = static_cast<int>(flat.size());
  if (k == n * n) {
    std::vector<Natural> entries(flat.begin(), flat.end());
    out.emplace_back(n, std::move(entries));
    return;
  }
  const int r = k / n, c = k % n;
  int lo = 1;
  if (c > 0) lo = std::max(lo, flat[static_cast<std::size_t>(k - 1)] + 1);
  if (r > 0) lo = std::max(lo, flat[static_cast<std::size_t>(k - n)] + 1);
  // values must still leave room for the strictly larger cells below/right
  const int remaining = (n - 1 - r) + (n - 1 - c);
  for (int v = lo; v + remaining <= B; ++v) {
    flat.push_back(v);
    monotone_tables_rec(n, B, flat, out);
    flat.pop_back();
  }
}

std::vector<Table> oracle_monotone(int n, int B) {
  std::vector<int> flat;
  std::vector<Table> out;
  monotone_tables_rec(n, B, flat, out);
  return out;
}

// MacMahon box formula: plane partitions in an a×b×c box,
// Π (i+j+k-1)/(i+j+k-2). Strictly monotone n×n tables bounded by B biject
// with the a=b=n, c=B-2(n-1)-1 box.
BigInt box_count(int a, int b, int c) {
  BigInt num = 1, den = 1;
  for (int i = 1; i <= a; ++i)
    for (int j = 1; j <= b; ++j)
      for (int k = 1; k <= c; ++k) {
        num *= (i + j + k - 1);
        den *= (i + j + k - 2);
      }
  if (num % den != 0) throw std::logic_error("box formula did not divide");
  return num / den;
}

// Windowed iterate on a table, mirroring the recursion f̃(a,1)=a,
// f̃(a,b)=f(f̃(a,b-1),a); 0 marks undefined (previous value escaped).
int windowed_iterate(const Table& t, int a, int b) {
  int acc = a;
  for (int i = 2; i <= b; ++i) {
    if (acc == 0 || acc > t.n()) return 0;
    const Natural& v = t.at(acc, a);
    acc = v.fits_int() ? v.as_int() : 0;
    if (!v.fits_int()) return 0;
  }
  return acc;
}

bool iterate_commutative_where_defined(const Table& t) {
  for (int a = 1; a <= t.n(); ++a)
    for (int b = a + 1; b <= t.n(); ++b) {
      const int x = windowed_iterate(t, a, b);
      const int y = windowed_iterate(t, b, a);
      if (x != 0 && y != 0 && x != y) return false;
    }
  return true;
}

bool iterate_associative_where_defined(const Table& t) {
  const int n = t.n();
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      const int ab = windowed_iterate(t, a, b);
      if (ab == 0 || ab > n) continue;
      for (int c = 1; c <= n; ++c) {
        const int bc = windowed_iterate(t, b, c);
        if (bc == 0 || bc > n) continue;
        const int lhs = windowed_iterate(t, ab, c);
        const int rhs = windowed_iterate(t, a, bc);
        if (lhs != 0 && rhs != 0 && lhs != rhs) return false;
      }
    }
  return true;
}

SearchFilter closed_assoc(int n) {
  SearchFilter f;
  f.window = n;
  f.value_bound = Natural(n);
  f.closed = true;
  f.associative = true;
  return f;
}

SearchFilter mono_assoc(int n, int B) {
  SearchFilter f;
  f.window = n;
  f.value_bound = Natural(B);
  f.associative = true;
  f.strictly_monotone = true;
  return f;
}

SearchOptions retaining() {
  SearchOptions o;
  o.retain_tables = true;
  return o;
}

}  // namespace

TEST_CASE("closed associative enumeration matches generate-and-test", "[search][oracle]") {
  for (int n = 1; n <= 3; ++n) {
    const SearchReport r = enumerate_associative(n, closed_assoc(n), retaining());
    const std::vector<Table> expect = oracle_enumerate(n, n, closed_assoc(n));
    REQUIRE_FALSE(r.partial);
    REQUIRE(r.count == expect.size());
    REQUIRE(r.tables == expect);
  }
  CHECK(enumerate_associative(1, closed_assoc(1)).count == 1);
  CHECK(enumerate_associative(2, closed_assoc(2)).count == 8);
  CHECK(enumerate_associative(3, closed_assoc(3)).count == 113);
}

TEST_CASE("every filter combination agrees with the oracle on closed 2-windows",
          "[search][oracle]") {
  for (int bits = 0; bits < 32; ++bits) {
    SearchFilter f;
    f.window = 2;
    f.value_bound = Natural(2);
    f.closed = true;
    f.associative = bits & 1;
    f.commutative = bits & 2;
    f.strictly_monotone = bits & 4;
    f.genuine = bits & 8;
    f.right_regular = bits & 16;
    const SearchReport r = enumerate_associative(2, f, retaining());
    REQUIRE(r.tables == oracle_enumerate(2, 2, f));
  }
}

TEST_CASE("non-closed windows agree with the oracle", "[search][oracle]") {
  for (int bits : {1, 4, 5, 9, 21}) {
    SearchFilter f;
    f.window = 2;
    f.value_bound = Natural(4);
    f.associative = bits & 1;
    f.commutative = bits & 2;
    f.strictly_monotone = bits & 4;
    f.genuine = bits & 8;
    f.right_regular = bits & 16;
    const SearchReport r = enumerate_associative(2, f, retaining());
    REQUIRE(r.tables == oracle_enumerate(2, 4, f));
  }
  for (int bits : {1, 5}) {
    SearchFilter f;
    f.window = 3;
    f.value_bound = Natural(4);
    f.associative = true;
    f.strictly_monotone = bits & 4;
    const SearchReport r = enumerate_associative(3, f, retaining());
    REQUIRE(r.tables == oracle_enumerate(3, 4, f));
  }
}

TEST_CASE("commutative closed associative 2-window count", "[search]") {
  SearchFilter f = closed_assoc(2);
  f.commutative = true;
  CHECK(enumerate_associative(2, f).count == 6);
}

TEST_CASE("no closed strictly monotone table for n >= 2", "[search]") {
  for (int n = 2; n <= 3; ++n) {
    SearchFilter f;
    f.window = n;
    f.value_bound = Natural(n);
    f.closed = true;
    f.strictly_monotone = true;
    CHECK(enumerate_associative(n, f).count == 0);
  }
  SearchFilter one;
  one.window = 1;
  one.value_bound = Natural(1);
  one.closed = true;
  one.strictly_monotone = true;
  CHECK(enumerate_associative(1, one).count == 1);
}

TEST_CASE("monotone-only counts follow the box formula", "[search][oracle]") {
  for (int B = 3; B <= 7; ++B) {
    SearchFilter f;
    f.window = 2;
    f.value_bound = Natural(B);
    f.strictly_monotone = true;
    const std::uint64_t engine = enumerate_associative(2, f).count;
    CHECK(BigInt(engine) == box_count(2, 2, B - 3));
    CHECK(engine == oracle_monotone(2, B).size());
  }
  for (int B = 5; B <= 9; ++B) {
    SearchFilter f;
    f.window = 3;
    f.value_bound = Natural(B);
    f.strictly_monotone = true;
    const SearchReport r = enumerate_associative(3, f, retaining());
    CHECK(BigInt(r.count) == box_count(3, 3, B - 5));
    CHECK(r.tables == oracle_monotone(3, B));
  }
  CHECK(box_count(3, 3, 3) == BigInt(980));
  CHECK(box_count(3, 3, 25) == BigInt(1215006156));  // the B=30 probe domain
}

TEST_CASE("monotone windowed-associative counts", "[search][oracle]") {
  const std::vector<std::pair<int, std::uint64_t>> two = {{3, 1}, {4, 6}, {5, 18}, {6, 42}};
  for (auto [B, expect] : two) {
    const SearchReport r = enumerate_associative(2, mono_assoc(2, B), retaining());
    REQUIRE(r.count == expect);
    std::vector<Table> ref;
    for (const Table& t : oracle_monotone(2, B))
      if (check_associative(t).result.verdict) ref.push_back(t);
    REQUIRE(r.tables == ref);
  }
  const std::vector<std::pair<int, std::uint64_t>> three = {{7, 57}, {8, 322}, {9, 1422}};
  for (auto [B, expect] : three) {
    const SearchReport r = enumerate_associative(3, mono_assoc(3, B), retaining());
    REQUIRE(r.count == expect);
    std::vector<Table> ref;
    for (const Table& t : oracle_monotone(3, B))
      if (check_associative(t).result.verdict) ref.push_back(t);
    REQUIRE(r.tables == ref);
  }
}

TEST_CASE("emitted tables re-verify and the set is permutation-closed", "[search]") {
  const SearchReport r = enumerate_associative(3, closed_assoc(3), retaining());
  std::set<Table> members(r.tables.begin(), r.tables.end());
  std::vector<int> image = {1, 2, 3};
  for (const Table& t : r.tables) {
    REQUIRE(check_associative(t).result.verdict);
    REQUIRE(t.closed());
    do {
      REQUIRE(members.count(conjugate_table(t, Permutation(image))) == 1);
    } while (std::next_permutation(image.begin(), image.end()));
  }

  const SearchReport m = enumerate_associative(3, mono_assoc(3, 8), retaining());
  for (const Table& t : m.tables) {
    REQUIRE(check_associative(t).result.verdict);
    REQUIRE(check_strictly_monotone(t).result.verdict);
  }
}

TEST_CASE("canonical forms", "[search][orbits]") {
  const Table group2 = Table::from_rows({{1, 2}, {2, 1}});
  CHECK(canonicalize(group2) == group2);
  CHECK(canonicalize(Table::from_rows({{2, 2}, {2, 2}})) == Table::from_rows({{1, 1}, {1, 1}}));
  CHECK_THROWS_AS(canonicalize(materialize_table(OpSpec::mul(), 2, Natural(4))), NotClosed);

  const SearchReport r = enumerate_associative(3, closed_assoc(3), retaining());
  std::vector<int> image = {1, 2, 3};
  for (const Table& t : r.tables) {
    const Table canon = canonicalize(t);
    CHECK_FALSE(t < canon);  // canonical form is the lex-least conjugate
    CHECK(canonicalize(canon) == canon);
    do {
      REQUIRE(canonicalize(conjugate_table(t, Permutation(image))) == canon);
    } while (std::next_permutation(image.begin(), image.end()));
  }
}

TEST_CASE("orbit counting quotients the enumeration", "[search][orbits]") {
  const OrbitReport one = count_orbits(1, closed_assoc(1));
  CHECK(one.orbit_count == 1);
  CHECK(one.labeled_total == 1);

  const OrbitReport two = count_orbits(2, closed_assoc(2));
  CHECK(two.orbit_count == 5);
  CHECK(two.labeled_total == 8);
  CHECK(two.orbit_sizes == std::vector<std::uint64_t>{2, 2, 1, 1, 2});

  const OrbitReport three = count_orbits(3, closed_assoc(3));
  CHECK(three.orbit_count == 24);
  CHECK(three.labeled_total == 113);
  CHECK(std::accumulate(three.orbit_sizes.begin(), three.orbit_sizes.end(), std::uint64_t{0}) ==
        113);
  std::map<std::uint64_t, int> histogram;
  for (std::uint64_t s : three.orbit_sizes) {
    CHECK(6 % s == 0);  // orbit sizes divide |S_3|
    ++histogram[s];
  }
  CHECK(histogram == std::map<std::uint64_t, int>{{1, 2}, {3, 7}, {6, 15}});

  REQUIRE(three.representatives.size() == 24);
  CHECK(std::is_sorted(three.representatives.begin(), three.representatives.end()));
  for (const Table& rep : three.representatives) {
    CHECK(canonicalize(rep) == rep);
    CHECK(check_associative(rep).result.verdict);
  }

  SearchFilter open = mono_assoc(2, 5);
  CHECK_THROWS_AS(count_orbits(2, open), NotClosed);
}

TEST_CASE("theorem probes against the generate-and-test oracle", "[search][probe]") {
  // which=1: windowed associativity + iterate commutative wherever defined
  // which=2: + right regularity + iterate associative wherever defined
  for (int which : {1, 2}) {
    const SearchReport r = theorem_probe(which, 2, Natural(4), retaining());
    std::vector<Table> expect;
    SearchFilter f;
    f.associative = true;
    f.right_regular = (which == 2);
    for (const Table& t : oracle_enumerate(2, 4, f)) {
      const bool keep = (which == 1) ? iterate_commutative_where_defined(t)
                                     : iterate_associative_where_defined(t);
      if (keep) expect.push_back(t);
    }
    REQUIRE(r.tables == expect);
    REQUIRE(r.count == (which == 1 ? 10u : 102u));
    CHECK(r.vacuous_count == 0);
  }
  CHECK(theorem_probe(1, 2, Natural(6)).count == 26);
  CHECK(theorem_probe(2, 2, Natural(6)).count == 720);
  CHECK_THROWS_AS(theorem_probe(3, 2, Natural(4)), InvalidSpec);
}

TEST_CASE("the addition table survives both theorem probes flagged", "[search][probe]") {
  const Table plus = materialize_table(OpSpec::add(), 2, Natural(4));
  for (int which : {1, 2}) {
    const SearchReport r = theorem_probe(which, 2, Natural(4), retaining());
    bool found = false;
    for (std::size_t i = 0; i < r.tables.size(); ++i) {
      if (r.tables[i] == plus) {
        found = true;
        CHECK(r.family_flags[i] == "agrees_with_plus");
      } else {
        CHECK(r.family_flags[i].find("fragment") == 0);
      }
    }
    REQUIRE(found);
    REQUIRE_FALSE(r.notes.empty());
  }
}

TEST_CASE("row realization: g = (2,3,4)", "[search][probe]") {
  const std::vector<Natural> g = {Natural(2), Natural(3), Natural(4)};
  const SearchReport r = row_realization_probe(g, 3, Natural(6), retaining());
  REQUIRE(r.count == 3);
  REQUIRE(r.tables == std::vector<Table>{
                          Table::from_rows({{1, 2, 3}, {2, 3, 4}, {3, 4, 5}}),
                          Table::from_rows({{1, 2, 3}, {2, 3, 4}, {3, 4, 6}}),
                          Table::from_rows({{2, 3, 4}, {3, 4, 5}, {4, 5, 6}}),
                      });
  REQUIRE(r.realizations.size() == 6);
  // + realizes g as its first row and first column
  const Table plus = materialize_table(OpSpec::add(), 3, Natural(6));
  CHECK(r.realizations[4].table == plus);
  CHECK(r.realizations[4].index == 1);
  CHECK(r.realizations[4].is_row);
  CHECK(r.realizations[5].table == plus);
  CHECK(r.realizations[5].index == 1);
  CHECK_FALSE(r.realizations[5].is_row);
  for (const RowRealization& real : r.realizations) {
    for (int j = 1; j <= 3; ++j) {
      const Natural& v = real.is_row ? real.table.at(real.index, j) : real.table.at(j, real.index);
      REQUIRE(v == g[static_cast<std::size_t>(j - 1)]);
    }
    REQUIRE(check_associative(real.table).result.verdict);
    REQUIRE(check_strictly_monotone(real.table).result.verdict);
  }
}

TEST_CASE("row realization: g = (2,4,6) finds multiplication", "[search][probe]") {
  const std::vector<Natural> g = {Natural(2), Natural(4), Natural(6)};
  const SearchReport r = row_realization_probe(g, 3, Natural(9), retaining());
  REQUIRE(r.count == 190);
  REQUIRE(r.realizations.size() == 228);
  const Table mul = materialize_table(OpSpec::mul(), 3, Natural(9));
  int mul_hits = 0;
  for (const RowRealization& real : r.realizations)
    if (real.table == mul) {
      ++mul_hits;
      CHECK(real.index == 2);
    }
  CHECK(mul_hits == 2);  // row 2 and column 2
}

TEST_CASE("row realization: squares and edge cases", "[search][probe]") {
  const std::vector<Natural> squares = {Natural(1), Natural(4), Natural(9)};
  const SearchReport r = row_realization_probe(squares, 3, Natural(12));
  CHECK(r.count == 1612);
  CHECK(r.realizations.size() == 1638);

  const std::vector<Natural> beyond = {Natural(2), Natural(3), Natural(100)};
  const SearchReport none = row_realization_probe(beyond, 3, Natural(6));
  CHECK(none.count == 0);
  CHECK(none.realizations.empty());
  REQUIRE_FALSE(none.notes.empty());
  CHECK(none.notes.back().find("inconclusive") != std::string::npos);

  CHECK_THROWS_AS(
      row_realization_probe({Natural(3), Natural(2), Natural(1)}, 3, Natural(6)),
      InvalidSpec);
  CHECK_THROWS_AS(row_realization_probe({Natural(1), Natural(2)}, 3, Natural(6)), InvalidSpec);
}

TEST_CASE("conjecture probe flags the closed-form families", "[search][probe]") {
  const SearchReport r = conjecture_probe(2, Natural(5), retaining());
  REQUIRE(r.count == 18);
  REQUIRE(r.tables.size() == 18);
  REQUIRE(r.family_flags.size() == 18);
  std::map<std::string, Table> flagged;
  for (std::size_t i = 0; i < r.tables.size(); ++i)
    if (r.family_flags[i] != "none") flagged.emplace(r.family_flags[i], r.tables[i]);
  REQUIRE(flagged.size() == 2);  // bound 5 rules the affine family out
  CHECK(flagged.at("addition") == Table::from_rows({{2, 3}, {3, 4}}));
  CHECK(flagged.at("product(1)") == Table::from_rows({{1, 2}, {2, 4}}));

  // the probe surfaces value-pattern coincidences for inspection
  const auto pairs = candidate_equiv_pairs(r.tables);
  REQUIRE_FALSE(pairs.empty());
  bool plus_vs_product = false;
  for (auto [i, j] : pairs) {
    if ((r.tables[i] == flagged.at("product(1)") && r.tables[j] == flagged.at("addition")) ||
        (r.tables[j] == flagged.at("product(1)") && r.tables[i] == flagged.at("addition")))
      plus_vs_product = true;
  }
  CHECK(plus_vs_product);
  REQUIRE(r.notes.size() == 1 + pairs.size());
  CHECK(r.notes[1].find("share a value pattern") != std::string::npos);
}

TEST_CASE("conjecture probe at a bound that excludes addition", "[search][probe]") {
  const SearchReport r = conjecture_probe(2, Natural(3), retaining());
  REQUIRE(r.count == 1);
  CHECK(r.tables == std::vector<Table>{Table::from_rows({{1, 2}, {2, 3}})});
  const Table plus = materialize_table(OpSpec::add(), 2, Natural(4));
  for (const Table& t : r.tables) CHECK(t != plus);  // f(2,2)=4 > 3 excludes +

  CHECK_THROWS_AS(conjecture_probe(1, Natural(5)), InvalidSpec);
  CHECK_THROWS_AS(conjecture_probe(2, Natural(2)), InvalidSpec);
}

TEST_CASE("count-only conjecture probe still surfaces family hits", "[search][probe]") {
  const SearchReport r = conjecture_probe(2, Natural(5));
  CHECK(r.count == 18);
  REQUIRE(r.tables.size() == 2);
  // hits arrive in lex order of their tables: [[1,2],[2,4]] before [[2,3],[3,4]]
  CHECK(r.family_flags == std::vector<std::string>{"product(1)", "addition"});
  CHECK(r.tables[0] == Table::from_rows({{1, 2}, {2, 4}}));
  CHECK(r.tables[1] == Table::from_rows({{2, 3}, {3, 4}}));
}

TEST_CASE("value patterns screen for relabelings", "[search][pattern]") {
  CHECK(value_pattern(Table::from_rows({{2, 3}, {3, 4}})) == std::vector<int>{1, 2, 2, 3});
  CHECK(value_pattern(Table::from_rows({{1, 2}, {2, 4}})) == std::vector<int>{1, 2, 2, 3});
  CHECK(value_pattern(Table::from_rows({{1, 1}, {2, 3}})) == std::vector<int>{1, 1, 2, 3});

  const std::vector<Table> ts = {Table::from_rows({{2, 3}, {3, 4}}),
                                 Table::from_rows({{1, 2}, {2, 4}}),
                                 Table::from_rows({{1, 1}, {2, 3}})};
  const auto pairs = candidate_equiv_pairs(ts);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0] == std::pair<std::size_t, std::size_t>{0, 1});
  // identical tables are not candidate pairs
  CHECK(candidate_equiv_pairs({ts[0], ts[0]}).empty());
}

TEST_CASE("family window tables are pairwise non-conjugate", "[search][probe]") {
  CHECK(family_tables_pairwise_nonconjugate(2, Natural(5)));
  CHECK(family_tables_pairwise_nonconjugate(3, Natural(30)));
}

TEST_CASE("node budgets produce deterministic partial reports", "[search][budget]") {
  SearchOptions tight = retaining();
  tight.node_budget = 100;
  const SearchReport a = enumerate_associative(3, closed_assoc(3), tight);
  const SearchReport b = enumerate_associative(3, closed_assoc(3), tight);
  CHECK(a.partial);
  CHECK(a.count < 113);
  CHECK(a.count == b.count);
  CHECK(a.nodes_explored == b.nodes_explored);
  CHECK(a.tables == b.tables);

  SearchFilter f = closed_assoc(3);
  SearchOptions opts;
  opts.node_budget = 100;
  CHECK_THROWS_AS(count_orbits(3, f, opts), BudgetExceeded);
}

TEST_CASE("retain_limit caps retention but not counting", "[search][budget]") {
  SearchOptions o = retaining();
  o.retain_limit = 10;
  const SearchReport r = enumerate_associative(3, closed_assoc(3), o);
  CHECK(r.count == 113);
  CHECK(r.tables.size() == 10);
  const SearchReport full = enumerate_associative(3, closed_assoc(3), retaining());
  CHECK(std::equal(r.tables.begin(), r.tables.end(), full.tables.begin()));
}

TEST_CASE("thread count never changes results", "[search][threads]") {
  for (int threads : {1, 2, 4}) {
    SearchOptions o = retaining();
    o.threads = threads;
    const SearchReport r = enumerate_associative(3, mono_assoc(3, 9), o);
    const SearchReport base = enumerate_associative(3, mono_assoc(3, 9), retaining());
    REQUIRE(r.count == base.count);
    REQUIRE(r.tables == base.tables);
    REQUIRE(r.family_flags == base.family_flags);

    SearchOptions c;
    c.threads = threads;
    REQUIRE(enumerate_associative(3, closed_assoc(3), c).count == 113);
  }
}

TEST_CASE("search guardrails", "[search][budget]") {
  SearchFilter f;
  f.value_bound = Natural(2);
  CHECK_THROWS_AS(enumerate_associative(0, f), InvalidSpec);

  SearchFilter big;
  big.value_bound = Natural(BigInt(1) << 40);
  CHECK_THROWS_AS(enumerate_associative(2, big), InvalidSpec);

  SearchFilter closed_small;
  closed_small.closed = true;
  closed_small.value_bound = Natural(2);
  CHECK_THROWS_AS(enumerate_associative(3, closed_small), InvalidSpec);
}
