#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monoidlab/errors.hpp"
#include "monoidlab/natural.hpp"
#include "monoidlab/opspec.hpp"
#include "monoidlab/table.hpp"

namespace monoidlab {

enum class Law { associative, commutative, right_regular, strictly_monotone, genuine, translation_closed };
enum class Method { naive, light, sampled };

inline const char* law_name(Law law) {
  switch (law) {
    case Law::associative: return "associative";
    case Law::commutative: return "commutative";
    case Law::right_regular: return "right_regular";
    case Law::strictly_monotone: return "strictly_monotone";
    case Law::genuine: return "genuine";
    case Law::translation_closed: return "translation_closed";
  }
  return "?";
}

inline const char* method_name(Method m) {
  switch (m) {
    case Method::naive: return "naive";
    case Method::light: return "light";
    case Method::sampled: return "sampled";
  }
  return "?";
}

struct Witness {
  std::vector<Natural> points;  // up to 3 window coordinates
  Natural lhs{1};
  Natural rhs{1};
  std::string note;  // human-readable restatement of the violation
};

struct CheckResult {
  bool verdict = true;
  std::optional<Witness> witness;
  std::string checked_domain;
};

struct LawReport {
  Law law = Law::associative;
  Method method = Method::naive;
  CheckResult result;
  std::uint64_t triples_checked = 0;
  std::uint64_t triples_defined = 0;
  // Informational: all translation maps strictly increasing (only meaningful
  // for translation_closed reports; equivalent to strict monotonicity).
  std::optional<bool> translations_increasing;
};

namespace detail {

inline std::string window_domain(int n) {
  return "window [1.." + std::to_string(n) + "], triples testable iff f(a,b)<=n and f(b,c)<=n";
}

}  // namespace detail

/// Windowed associativity. A triple (a,b,c) is testable iff f(a,b) ≤ n and
/// f(b,c) ≤ n; the verdict is true iff no testable triple disagrees. On a
/// closed table this decides associativity of the finite magma exactly.
inline LawReport check_associative(const Table& t, Method method = Method::naive) {
  if (method == Method::sampled) throw InvalidSpec("sampled method applies to symbolic ops only");
  const int n = t.n();
  LawReport report;
  report.law = Law::associative;
  report.method = method;
  report.result.checked_domain = detail::window_domain(n);

  if (method == Method::naive) {
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) {
        const int ab = t.at_in_window(a, b);
        for (int c = 1; c <= n; ++c) {
          ++report.triples_checked;
          const int bc = t.at_in_window(b, c);
          if (ab == 0 || bc == 0) continue;
          ++report.triples_defined;
          const Natural& lhs = t.at(ab, c);
          const Natural& rhs = t.at(a, bc);
          if (lhs != rhs && !report.result.witness) {
            report.result.witness =
                Witness{{Natural(a), Natural(b), Natural(c)},
                        lhs,
                        rhs,
                        "f(f(a,b),c) != f(a,f(b,c)) at (a,b,c)"};
          }
        }
      }
  } else {
    // Light's test: composed row maps f_{a.} ∘ f_{b.} must equal f_{f(a,b).}
    // wherever both are defined. Same testable set as naive, visited in the
    // same lexicographic order, hence identical verdicts and witnesses.
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) {
        const int ab = t.at_in_window(a, b);
        if (ab == 0) continue;
        for (int c = 1; c <= n; ++c) {
          ++report.triples_checked;
          const int bc = t.at_in_window(b, c);
          if (bc == 0) continue;
          ++report.triples_defined;
          const Natural& composed = t.at(a, bc);   // (f_{a.} ∘ f_{b.})(c)
          const Natural& direct = t.at(ab, c);     // f_{f(a,b).}(c)
          if (direct != composed && !report.result.witness) {
            report.result.witness = Witness{{Natural(a), Natural(b), Natural(c)},
                                            direct,
                                            composed,
                                            "row map composition disagrees at (a,b,c)"};
          }
        }
      }
  }
  report.result.verdict = !report.result.witness.has_value();
  return report;
}

inline LawReport check_commutative(const Table& t) {
  const int n = t.n();
  LawReport report;
  report.law = Law::commutative;
  report.method = Method::naive;
  report.result.checked_domain = "all pairs in window [1.." + std::to_string(n) + "]";
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      ++report.triples_checked;
      ++report.triples_defined;
      if (t.at(a, b) != t.at(b, a) && !report.result.witness) {
        report.result.witness = Witness{
            {Natural(a), Natural(b)}, t.at(a, b), t.at(b, a), "f(a,b) != f(b,a)"};
      }
    }
  report.result.verdict = !report.result.witness.has_value();
  return report;
}

/// Right regularity on the window: every b != c is separated by some a with
/// f(a,b) != f(a,c). Necessary for Definition (1.10) on all of ℕ, not
/// sufficient — the checked_domain says so.
inline LawReport check_right_regular(const Table& t) {
  const int n = t.n();
  LawReport report;
  report.law = Law::right_regular;
  report.method = Method::naive;
  report.result.checked_domain =
      "pairs b<c in [1.." + std::to_string(n) + "], separators a quantified over the window only (necessary condition)";
  for (int b = 1; b <= n; ++b)
    for (int c = b + 1; c <= n; ++c) {
      ++report.triples_checked;
      ++report.triples_defined;
      bool separated = false;
      for (int a = 1; a <= n; ++a)
        if (t.at(a, b) != t.at(a, c)) {
          separated = true;
          break;
        }
      if (!separated && !report.result.witness) {
        report.result.witness = Witness{{Natural(b), Natural(c)},
                                        t.at(1, b),
                                        t.at(1, c),
                                        "columns b and c coincide for every a in the window"};
      }
    }
  report.result.verdict = !report.result.witness.has_value();
  return report;
}

inline LawReport check_strictly_monotone(const Table& t) {
  const int n = t.n();
  LawReport report;
  report.law = Law::strictly_monotone;
  report.method = Method::naive;
  report.result.checked_domain =
      "adjacent pairs along every row and column of window [1.." + std::to_string(n) + "]";
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b + 1 <= n; ++b) {
      ++report.triples_checked;
      ++report.triples_defined;
      if (!(t.at(a, b) < t.at(a, b + 1)) && !report.result.witness) {
        report.result.witness =
            Witness{{Natural(a), Natural(b), Natural(b + 1)},
                    t.at(a, b),
                    t.at(a, b + 1),
                    "row " + std::to_string(a) + " is not strictly increasing at column " + std::to_string(b)};
      }
    }
  for (int b = 1; b <= n; ++b)
    for (int a = 1; a + 1 <= n; ++a) {
      ++report.triples_checked;
      ++report.triples_defined;
      if (!(t.at(a, b) < t.at(a + 1, b)) && !report.result.witness) {
        report.result.witness =
            Witness{{Natural(a), Natural(a + 1), Natural(b)},
                    t.at(a, b),
                    t.at(a + 1, b),
                    "column " + std::to_string(b) + " is not strictly increasing at row " + std::to_string(a)};
      }
    }
  report.result.verdict = !report.result.witness.has_value();
  return report;
}

/// Genuine dependence: injective in a for every fixed b, and in b for every
/// fixed a.
inline LawReport check_genuine(const Table& t) {
  const int n = t.n();
  LawReport report;
  report.law = Law::genuine;
  report.method = Method::naive;
  report.result.checked_domain =
      "injectivity in each argument separately over window [1.." + std::to_string(n) + "]";
  for (int b = 1; b <= n; ++b)
    for (int a1 = 1; a1 <= n; ++a1)
      for (int a2 = a1 + 1; a2 <= n; ++a2) {
        ++report.triples_checked;
        ++report.triples_defined;
        if (t.at(a1, b) == t.at(a2, b) && !report.result.witness) {
          report.result.witness = Witness{{Natural(a1), Natural(a2), Natural(b)},
                                          t.at(a1, b),
                                          t.at(a2, b),
                                          "a -> f(a,b) is not injective at fixed b"};
        }
      }
  for (int a = 1; a <= n; ++a)
    for (int b1 = 1; b1 <= n; ++b1)
      for (int b2 = b1 + 1; b2 <= n; ++b2) {
        ++report.triples_checked;
        ++report.triples_defined;
        if (t.at(a, b1) == t.at(a, b2) && !report.result.witness) {
          report.result.witness = Witness{{Natural(a), Natural(b1), Natural(b2)},
                                          t.at(a, b1),
                                          t.at(a, b2),
                                          "b -> f(a,b) is not injective at fixed a"};
        }
      }
  report.result.verdict = !report.result.witness.has_value();
  return report;
}

struct NeutralReport {
  std::optional<int> neutral;       // two-sided
  std::vector<int> left_neutrals;   // informational: f(e,b) = b for all b
  std::vector<int> right_neutrals;  // informational: f(a,e) = a for all a
};

inline NeutralReport neutral_flags(const Table& t) {
  const int n = t.n();
  NeutralReport r;
  for (int e = 1; e <= n; ++e) {
    bool left = true, right = true;
    for (int x = 1; x <= n; ++x) {
      if (t.at(e, x) != Natural(x)) left = false;
      if (t.at(x, e) != Natural(x)) right = false;
    }
    if (left) r.left_neutrals.push_back(e);
    if (right) r.right_neutrals.push_back(e);
    if (left && right) {
      if (r.neutral) throw InvalidSpec("two distinct two-sided neutrals — impossible");
      r.neutral = e;
    }
  }
  return r;
}

inline std::optional<Natural> find_neutral(const Table& t) {
  const auto flags = neutral_flags(t);
  if (flags.neutral) return Natural(*flags.neutral);
  return std::nullopt;
}

/// Row/column translation maps of a closed table, as window self-maps.
inline std::vector<int> row_map(const Table& t, int a) {
  std::vector<int> m(static_cast<std::size_t>(t.n()));
  for (int b = 1; b <= t.n(); ++b) {
    const int v = t.at_in_window(a, b);
    if (v == 0) throw NotClosed("row map of a non-closed table is not a window self-map");
    m[static_cast<std::size_t>(b - 1)] = v;
  }
  return m;
}

inline std::vector<int> column_map(const Table& t, int a) {
  std::vector<int> m(static_cast<std::size_t>(t.n()));
  for (int b = 1; b <= t.n(); ++b) {
    const int v = t.at_in_window(b, a);
    if (v == 0) throw NotClosed("column map of a non-closed table is not a window self-map");
    m[static_cast<std::size_t>(b - 1)] = v;
  }
  return m;
}

/// Translation closure on a closed table: the row family must satisfy
/// f_{a.} ∘ f_{b.} = f_{f(a,b).} and the column family
/// f_{.a} ∘ f_{.b} = f_{.f(b,a)}. Equivalent to associativity (Light).
inline LawReport check_translation_closure(const Table& t) {
  if (!t.closed()) throw NotClosed("translation closure needs a closed table");
  const int n = t.n();
  LawReport report;
  report.law = Law::translation_closed;
  report.method = Method::light;
  report.result.checked_domain =
      "row and column translation families of closed window [1.." + std::to_string(n) + "]";
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      const int ab = t.at_in_window(a, b);
      const int ba = t.at_in_window(b, a);
      for (int c = 1; c <= n; ++c) {
        ++report.triples_checked;
        ++report.triples_defined;
        const Natural& row_lhs = t.at(a, t.at_in_window(b, c));  // (f_{a.} ∘ f_{b.})(c)
        const Natural& row_rhs = t.at(ab, c);
        if (row_lhs != row_rhs && !report.result.witness) {
          report.result.witness = Witness{{Natural(a), Natural(b), Natural(c)},
                                          row_rhs,
                                          row_lhs,
                                          "row family not closed: f_{a.}∘f_{b.} != f_{f(a,b).} at c"};
        }
        ++report.triples_checked;
        ++report.triples_defined;
        const Natural& col_lhs = t.at(t.at_in_window(c, b), a);  // (f_{.a} ∘ f_{.b})(c)
        const Natural& col_rhs = t.at(c, ba);                    // f_{.f(b,a)}(c)
        if (col_lhs != col_rhs && !report.result.witness) {
          report.result.witness = Witness{{Natural(a), Natural(b), Natural(c)},
                                          col_rhs,
                                          col_lhs,
                                          "column family not closed: f_{.a}∘f_{.b} != f_{.f(b,a)} at c"};
        }
      }
    }
  report.result.verdict = !report.result.witness.has_value();
  report.translations_increasing = check_strictly_monotone(t).result.verdict;
  return report;
}

/// Sampled checks for symbolic operations (total on ℕ, no windowing).
inline CheckResult check_op_associative_sampled(const OpSpec& op, int bound,
                                                const EvalLimits& limits = {}) {
  CheckResult r;
  r.checked_domain = "sampled a,b,c in [1.." + std::to_string(bound) + "]";
  for (int a = 1; a <= bound; ++a)
    for (int b = 1; b <= bound; ++b)
      for (int c = 1; c <= bound; ++c) {
        const Natural lhs = eval_op(op, eval_op(op, Natural(a), Natural(b), limits), Natural(c), limits);
        const Natural rhs = eval_op(op, Natural(a), eval_op(op, Natural(b), Natural(c), limits), limits);
        if (lhs != rhs) {
          r.verdict = false;
          r.witness = Witness{{Natural(a), Natural(b), Natural(c)}, lhs, rhs,
                              "f(f(a,b),c) != f(a,f(b,c)) at (a,b,c)"};
          return r;
        }
      }
  r.verdict = true;
  return r;
}

inline CheckResult check_op_commutative_sampled(const OpSpec& op, int bound,
                                                const EvalLimits& limits = {}) {
  CheckResult r;
  r.checked_domain = "sampled a,b in [1.." + std::to_string(bound) + "]";
  for (int a = 1; a <= bound; ++a)
    for (int b = 1; b <= bound; ++b) {
      const Natural lhs = eval_op(op, Natural(a), Natural(b), limits);
      const Natural rhs = eval_op(op, Natural(b), Natural(a), limits);
      if (lhs != rhs) {
        r.verdict = false;
        r.witness = Witness{{Natural(a), Natural(b)}, lhs, rhs, "f(a,b) != f(b,a)"};
        return r;
      }
    }
  r.verdict = true;
  return r;
}

inline LawReport check_law(const Table& t, Law law, Method method = Method::naive) {
  switch (law) {
    case Law::associative: return check_associative(t, method);
    case Law::commutative: return check_commutative(t);
    case Law::right_regular: return check_right_regular(t);
    case Law::strictly_monotone: return check_strictly_monotone(t);
    case Law::genuine: return check_genuine(t);
    case Law::translation_closed: return check_translation_closure(t);
  }
  throw InvalidSpec("unknown law");
}

}  // namespace monoidlab
