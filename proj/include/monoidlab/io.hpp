#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "monoidlab/bijection.hpp"
#include "monoidlab/errors.hpp"
#include "monoidlab/growth.hpp"
#include "monoidlab/natural.hpp"
#include "monoidlab/opspec.hpp"
#include "monoidlab/search.hpp"
#include "monoidlab/table.hpp"
#include "monoidlab/transform.hpp"
#include "monoidlab/verify.hpp"

namespace monoidlab {

using ordered_json = nlohmann::ordered_json;

// --- numbers -----------------------------------------------------------

/// Values below 2^53 are exact in every JSON reader; larger ones go out as
/// decimal strings.
inline ordered_json json_of_natural(const Natural& v) {
  static const BigInt kSafe = BigInt(1) << 53;
  if (v.value() < kSafe) return v.value().convert_to<std::uint64_t>();
  return v.str();
}

inline Natural natural_of_json(const ordered_json& j) {
  if (j.is_number_unsigned()) {
    const std::uint64_t v = j.get<std::uint64_t>();
    if (v < 1) throw IoError("natural number must be >= 1, got 0");
    return Natural(BigInt(v));
  }
  if (j.is_number_integer()) {
    const std::int64_t v = j.get<std::int64_t>();
    if (v < 1) throw IoError("natural number must be >= 1, got " + std::to_string(v));
    return Natural(BigInt(v));
  }
  if (j.is_string()) {
    try {
      return Natural::from_string(j.get<std::string>());
    } catch (const Error& e) {
      throw IoError(e.what());
    }
  }
  throw IoError("expected a natural number (integer or decimal string)");
}

// --- tables ------------------------------------------------------------

inline ordered_json json_of_table(const Table& t) {
  ordered_json rows = ordered_json::array();
  for (int a = 1; a <= t.n(); ++a) {
    ordered_json row = ordered_json::array();
    for (int b = 1; b <= t.n(); ++b) row.push_back(json_of_natural(t.at(a, b)));
    rows.push_back(std::move(row));
  }
  return ordered_json{{"n", t.n()}, {"entries", std::move(rows)}};
}

inline Table table_of_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw IoError("table JSON needs fields 'n' and 'entries'");
  const int n = j.at("n").get<int>();
  const auto& rows = j.at("entries");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw IoError("table 'entries' must be an array of n rows");
  std::vector<Natural> entries;
  entries.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw IoError("every table row must have exactly n values");
    for (const auto& cell : row) entries.push_back(natural_of_json(cell));
  }
  try {
    return Table(n, std::move(entries));
  } catch (const Error& e) {
    throw IoError(std::string("invalid table: ") + e.what());
  }
}

// --- bijections and op specs --------------------------------------------

inline ordered_json json_of_bijection(const BijectionProgram& omega) {
  switch (omega.kind()) {
    case BijectionProgram::Kind::Identity:
      return ordered_json{{"kind", "identity"}};
    case BijectionProgram::Kind::FiniteSupport: {
      ordered_json image = ordered_json::array();
      for (int v : omega.perm()->image()) image.push_back(v);
      return ordered_json{{"kind", "finite"}, {"image", std::move(image)}};
    }
    case BijectionProgram::Kind::EvenPower:
      return ordered_json{{"kind", "even_power"}};
  }
  throw IoError("unreachable bijection kind");
}

inline BijectionProgram bijection_of_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("kind")) throw IoError("bijection JSON needs a 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "identity") return BijectionProgram::identity();
  if (kind == "even_power") return BijectionProgram::even_power();
  if (kind == "finite") {
    if (!j.contains("image") || !j.at("image").is_array())
      throw IoError("finite bijection needs an 'image' array");
    std::vector<int> image;
    for (const auto& v : j.at("image")) image.push_back(v.get<int>());
    try {
      return BijectionProgram::finite(Permutation(std::move(image)));
    } catch (const Error& e) {
      throw IoError(std::string("invalid permutation: ") + e.what());
    }
  }
  throw IoError("unknown bijection kind '" + kind + "'");
}

inline ordered_json json_of_op(const OpSpec& op) {
  struct Visitor {
    ordered_json operator()(const AddOp&) const { return {{"op", "add"}}; }
    ordered_json operator()(const MulOp&) const { return {{"op", "mul"}}; }
    ordered_json operator()(const ConstOp& c) const {
      return {{"op", "const"}, {"value", json_of_natural(c.value)}};
    }
    ordered_json operator()(const MinOp&) const { return {{"op", "min"}}; }
    ordered_json operator()(const MaxOp&) const { return {{"op", "max"}}; }
    ordered_json operator()(const LeftProjOp&) const { return {{"op", "lproj"}}; }
    ordered_json operator()(const RightProjOp&) const { return {{"op", "rproj"}}; }
    ordered_json operator()(const AffineOp& f) const {
      return {{"op", "affine"}, {"alpha", f.alpha}, {"beta", f.beta}, {"gamma", f.gamma}};
    }
    ordered_json operator()(const MonomialOp& f) const {
      return {{"op", "monomial"},
              {"lambda", json_of_natural(f.lambda)},
              {"n", json_of_natural(f.n)},
              {"m", json_of_natural(f.m)}};
    }
    ordered_json operator()(const IterateOp& f) const {
      return {{"op", "iterate"}, {"inner", json_of_op(f.inner)}};
    }
    ordered_json operator()(const ConjugateOp& f) const {
      return {{"op", "conjugate"}, {"inner", json_of_op(f.inner)}, {"omega", json_of_bijection(f.omega)}};
    }
    ordered_json operator()(const PointwiseOp& f) const {
      return {{"op", "pointwise"},
              {"h", json_of_op(f.h)},
              {"f", json_of_op(f.f)},
              {"g", json_of_op(f.g)}};
    }
    ordered_json operator()(const TableOp& t) const {
      return {{"op", "table"}, {"table", json_of_table(t.table)}};
    }
  };
  return std::visit(Visitor{}, op.node().v);
}

inline OpSpec op_of_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("op")) throw IoError("op spec JSON needs an 'op' field");
  const std::string kind = j.at("op").get<std::string>();
  try {
    if (kind == "add") return OpSpec::add();
    if (kind == "mul") return OpSpec::mul();
    if (kind == "min") return OpSpec::min();
    if (kind == "max") return OpSpec::max();
    if (kind == "lproj") return OpSpec::left_proj();
    if (kind == "rproj") return OpSpec::right_proj();
    if (kind == "const") return OpSpec::constant(natural_of_json(j.at("value")));
    if (kind == "affine")
      return OpSpec::affine(j.at("alpha").get<std::uint64_t>(), j.at("beta").get<std::uint64_t>(),
                            j.at("gamma").get<std::uint64_t>());
    if (kind == "monomial")
      return OpSpec::monomial(natural_of_json(j.at("lambda")), natural_of_json(j.at("n")),
                              natural_of_json(j.at("m")));
    if (kind == "iterate") return OpSpec::iterate(op_of_json(j.at("inner")));
    if (kind == "conjugate")
      return OpSpec::conjugate(op_of_json(j.at("inner")), bijection_of_json(j.at("omega")));
    if (kind == "pointwise")
      return OpSpec::pointwise(op_of_json(j.at("h")), op_of_json(j.at("f")), op_of_json(j.at("g")));
    if (kind == "table") return OpSpec::table_backed(table_of_json(j.at("table")));
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw IoError(std::string("invalid op spec: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed op spec: ") + e.what());
  }
  throw IoError("unknown op kind '" + kind + "'");
}

// --- reports ------------------------------------------------------------

inline ordered_json json_of_law_report(const LawReport& r) {
  ordered_json witness = nullptr;
  if (r.result.witness) {
    ordered_json points = ordered_json::array();
    for (const Natural& p : r.result.witness->points) points.push_back(json_of_natural(p));
    witness = ordered_json{{"points", std::move(points)},
                           {"lhs", json_of_natural(r.result.witness->lhs)},
                           {"rhs", json_of_natural(r.result.witness->rhs)},
                           {"note", r.result.witness->note}};
  }
  ordered_json j{{"law", law_name(r.law)},
                 {"method", method_name(r.method)},
                 {"verdict", r.result.verdict},
                 {"witness", std::move(witness)},
                 {"triples_checked", r.triples_checked},
                 {"triples_defined", r.triples_defined},
                 {"checked_domain", r.result.checked_domain}};
  if (r.translations_increasing.has_value())
    j["translations_increasing"] = *r.translations_increasing;
  return j;
}

inline ordered_json json_of_affine(const AffineClassification& c) {
  ordered_json j{{"alpha", c.alpha}, {"beta", c.beta}, {"gamma", c.gamma},
                 {"associative", c.associative}};
  j["case"] = c.case_label ? ordered_json(std::to_string(static_cast<int>(*c.case_label)))
                           : ordered_json(nullptr);
  j["commutative"] = c.commutative;
  return j;
}

inline ordered_json json_of_monomial(const MonomialClassification& c) {
  return ordered_json{{"lambda", json_of_natural(c.lambda)},
                      {"n", json_of_natural(c.n)},
                      {"m", json_of_natural(c.m)},
                      {"associative", c.associative}};
}

inline ordered_json json_of_filter(const SearchFilter& f) {
  return ordered_json{{"window", f.window},
                      {"value_bound", json_of_natural(f.value_bound)},
                      {"associative", f.associative},
                      {"commutative", f.commutative},
                      {"strictly_monotone", f.strictly_monotone},
                      {"genuine", f.genuine},
                      {"right_regular", f.right_regular},
                      {"closed", f.closed}};
}

inline ordered_json json_of_search_report(const SearchReport& r, bool include_tables = true,
                                          bool include_timings = false) {
  ordered_json j;
  j["filter"] = json_of_filter(r.filter);
  j["count"] = r.count;
  if (include_tables) {
    ordered_json tables = ordered_json::array();
    for (const Table& t : r.tables) tables.push_back(json_of_table(t));
    j["tables"] = std::move(tables);
    j["family_flags"] = r.family_flags;
  }
  if (!r.realizations.empty()) {
    ordered_json reals = ordered_json::array();
    for (const RowRealization& real : r.realizations) {
      reals.push_back(ordered_json{{"table", json_of_table(real.table)},
                                   {"index", real.index},
                                   {"side", real.is_row ? "row" : "column"}});
    }
    j["realizations"] = std::move(reals);
  }
  j["nodes_explored"] = r.nodes_explored;
  if (r.vacuous_count) j["vacuous_count"] = r.vacuous_count;
  j["partial"] = r.partial;
  j["notes"] = r.notes;
  if (include_timings) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

inline ordered_json json_of_orbit_report(const OrbitReport& r, bool include_representatives = false) {
  ordered_json j{{"n", r.window},
                 {"orbit_count", r.orbit_count},
                 {"orbit_sizes", r.orbit_sizes},
                 {"labeled_total", r.labeled_total}};
  if (include_representatives) {
    ordered_json reps = ordered_json::array();
    for (const Table& t : r.representatives) reps.push_back(json_of_table(t));
    j["representatives"] = std::move(reps);
  }
  return j;
}

inline ordered_json json_of_growth_records(const std::vector<GrowthDemoRecord>& records) {
  ordered_json arr = ordered_json::array();
  for (const auto& rec : records) {
    arr.push_back(ordered_json{{"n", rec.n},
                               {"input", json_of_natural(rec.input_value)},
                               {"output", json_of_natural(rec.output_value)},
                               {"expected", json_of_natural(rec.expected)},
                               {"equal", rec.output_value == rec.expected},
                               {"ratio_log2", rec.ratio_log2}});
  }
  return arr;
}

inline ordered_json json_of_ratio_records(const std::vector<RatioRecord>& records) {
  ordered_json arr = ordered_json::array();
  for (const auto& rec : records)
    arr.push_back(ordered_json{{"n", rec.n}, {"ratio", json_of_natural(rec.ratio)}});
  return arr;
}

inline ordered_json json_of_selfcompose(const SelfcomposeReport& r) {
  return ordered_json{{"alpha", json_of_natural(r.alpha)},
                      {"beta", json_of_natural(r.beta)},
                      {"n_checked", r.n_checked},
                      {"identity_exact", r.identity_exact},
                      {"ratio_constant", r.ratio_constant},
                      {"ratio_increasing", r.ratio_increasing},
                      {"ratio_first", json_of_natural(r.ratio_first)},
                      {"ratio_last", json_of_natural(r.ratio_last)}};
}

inline ordered_json json_of_exponents(const ExponentEstimate& e) {
  return ordered_json{{"alpha_hat", e.alpha_hat},
                      {"beta_hat", e.beta_hat},
                      {"ls_slope", e.ls_slope},
                      {"residual", e.residual},
                      {"sample_grid", e.sample_grid},
                      {"tolerance", e.tolerance},
                      {"alpha_le_beta", e.check_alpha_le_beta},
                      {"alpha_sq_le_beta", e.check_alpha_sq_le_beta},
                      {"alpha_le_beta_sq", e.check_alpha_le_beta_sq}};
}

// --- CSV ----------------------------------------------------------------

inline std::string csv_of_search_report(const SearchReport& r) {
  std::ostringstream out;
  out << "entries,flag\n";
  for (std::size_t i = 0; i < r.tables.size(); ++i) {
    const Table& t = r.tables[i];
    for (std::size_t k = 0; k < t.entries().size(); ++k)
      out << (k ? " " : "") << t.entries()[k].str();
    out << "," << (i < r.family_flags.size() ? r.family_flags[i] : "") << "\n";
  }
  return out.str();
}

inline std::string csv_of_growth_records(const std::vector<GrowthDemoRecord>& records) {
  std::ostringstream out;
  out << "n,input,output,expected,equal\n";
  for (const auto& rec : records)
    out << rec.n << "," << rec.input_value.str() << "," << rec.output_value.str() << ","
        << rec.expected.str() << "," << (rec.output_value == rec.expected ? "true" : "false")
        << "\n";
  return out.str();
}

inline std::string csv_of_ratio_records(const std::vector<RatioRecord>& records) {
  std::ostringstream out;
  out << "n,ratio\n";
  for (const auto& rec : records) out << rec.n << "," << rec.ratio.str() << "\n";
  return out.str();
}

inline std::string csv_of_orbit_report(const OrbitReport& r) {
  std::ostringstream out;
  out << "orbit,size\n";
  for (std::size_t i = 0; i < r.orbit_sizes.size(); ++i)
    out << (i + 1) << "," << r.orbit_sizes[i] << "\n";
  return out.str();
}

// --- files --------------------------------------------------------------

inline ordered_json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cannot parse '" + path + "': " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace monoidlab
