#pragma once

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "monoidlab/io.hpp"

namespace monoidlab {

enum class Command {
  help,
  verify,
  classify,
  enumerate_cmd,
  orbits,
  probe_conjecture,
  probe_theorem,
  probe_row,
  growth,
  demo_iterate,
};

struct RunConfig {
  Command command = Command::help;
  std::string help_text;

  std::string input_path;
  std::string output_path;
  std::string emit_path;
  std::string format = "text";

  std::string law = "assoc";       // verify
  std::vector<std::string> laws;   // enumerate filters
  std::string method = "naive";

  int window = 1;
  long long bound = -1;            // -1 = unset
  bool closed = false;
  bool count_only = false;
  bool representatives = false;

  int which = 1;                   // probe-theorem
  std::string g_csv;               // probe-row

  std::vector<std::string> affine;    // classify --affine a,b,g
  std::vector<std::string> monomial;  // classify --monomial l,n,m

  std::string demo = "plus";       // growth
  std::string op = "add";          // growth ratios/exponents, demo-iterate
  std::uint64_t alpha = 1, beta = 1, gamma = 0;
  std::string a_fixed = "2", b_fixed = "3";
  std::string grid = "2,4,8,16,32";
  int nmax = -1;                   // -1 = per-demo default

  std::uint64_t node_budget = 100'000'000ULL;
  int threads = 1;
  bool timings = false;
};

namespace detail {

inline std::vector<std::string> split_commas(const std::string& raw) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : raw) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

inline std::vector<Natural> naturals_of_csv(const std::string& raw, const char* flag) {
  std::vector<Natural> out;
  for (const std::string& part : split_commas(raw)) {
    if (part.empty()) throw UsageError(std::string(flag) + " has an empty list entry");
    try {
      out.push_back(Natural::from_string(part));
    } catch (const Error&) {
      throw UsageError(std::string(flag) + " entry '" + part + "' is not a positive integer");
    }
  }
  return out;
}

inline std::uint64_t u64_of_string(const std::string& raw, const char* flag) {
  Natural v = [&] {
    try {
      return Natural::from_string(raw);
    } catch (const Error&) {
      throw UsageError(std::string(flag) + " value '" + raw + "' is not a positive integer");
    }
  }();
  if (!v.fits_u64()) throw UsageError(std::string(flag) + " value '" + raw + "' is too large");
  return v.as_u64();
}

// Affine coefficients may be zero, so --affine gets a wider parser than the
// strictly positive flags.
inline std::uint64_t nonneg_of_string(const std::string& raw, const char* flag) {
  if (raw.empty() || raw.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError(std::string(flag) + " value '" + raw + "' is not a nonnegative integer");
  try {
    return std::stoull(raw);
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + " value '" + raw + "' is too large");
  }
}

inline std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace detail

/// Parses the words after the program name. Throws UsageError on anything the
/// grammar rejects; a help request comes back as Command::help with the text.
inline RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  std::uint64_t budget_default = cfg.node_budget;
  if (const char* env = std::getenv("MONOIDLAB_NODE_BUDGET")) {
    try {
      budget_default = detail::u64_of_string(env, "MONOIDLAB_NODE_BUDGET");
    } catch (const UsageError&) {
      throw UsageError("MONOIDLAB_NODE_BUDGET is set but is not a positive integer");
    }
  }
  cfg.node_budget = budget_default;

  CLI::App app{"monoidlab: a laboratory for binary operations on the positive integers"};
  app.require_subcommand(0, 1);

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--output", cfg.output_path, "Write the report to this file");
    sub->add_option("--budget", cfg.node_budget, "Search node budget");
    sub->add_flag("--timings", cfg.timings, "Include wall-clock timings in reports");
  };

  CLI::App* verify = app.add_subcommand("verify", "Check a law on a finite windowed table");
  verify->add_option("--input", cfg.input_path, "Table JSON file")->required();
  verify->add_option("--law", cfg.law, "Law to check")
      ->check(CLI::IsMember({"assoc", "comm", "rreg", "mono", "genuine", "closure"}));
  verify->add_option("--method", cfg.method, "Associativity method")
      ->check(CLI::IsMember({"naive", "light"}));
  add_common(verify);

  CLI::App* classify = app.add_subcommand("classify", "Classify an affine or monomial operation");
  classify->add_option("--affine", cfg.affine, "alpha,beta,gamma")->delimiter(',')->expected(3);
  classify->add_option("--monomial", cfg.monomial, "lambda,n,m")->delimiter(',')->expected(3);
  add_common(classify);

  CLI::App* enumerate = app.add_subcommand("enumerate", "Enumerate tables under law filters");
  enumerate->add_option("--n", cfg.window, "Window size")->required();
  enumerate->add_option("--bound", cfg.bound, "Value bound B");
  enumerate->add_flag("--closed", cfg.closed, "Restrict to closed tables (values <= n)");
  enumerate->add_option("--law", cfg.laws, "Law filter (repeatable)")
      ->check(CLI::IsMember({"assoc", "comm", "rreg", "mono", "genuine"}));
  enumerate->add_flag("--count-only", cfg.count_only, "Report the count without table listings");
  enumerate->add_option("--emit", cfg.emit_path, "Write surviving tables to this JSON file");
  enumerate->add_option("--threads", cfg.threads, "Worker threads for the search");
  add_common(enumerate);

  CLI::App* orbits = app.add_subcommand("orbits", "Count conjugacy orbits of closed associative tables");
  orbits->add_option("--n", cfg.window, "Window size")->required();
  orbits->add_flag("--representatives", cfg.representatives, "Include canonical representatives");
  orbits->add_option("--threads", cfg.threads, "Worker threads for the search");
  add_common(orbits);

  CLI::App* probe_c = app.add_subcommand("probe-conjecture", "Survey associative strictly monotone tables");
  probe_c->add_option("--n", cfg.window, "Window size")->required();
  probe_c->add_option("--bound", cfg.bound, "Value bound B")->required();
  probe_c->add_option("--threads", cfg.threads, "Worker threads for the search");
  add_common(probe_c);

  CLI::App* probe_t = app.add_subcommand("probe-theorem", "Probe iterate-based theorem statements");
  probe_t->add_option("--which", cfg.which, "Theorem selector")->check(CLI::IsMember({1, 2}));
  probe_t->add_option("--n", cfg.window, "Window size")->required();
  probe_t->add_option("--bound", cfg.bound, "Value bound B")->required();
  add_common(probe_t);

  CLI::App* probe_r = app.add_subcommand("probe-row", "Search for tables realizing a map as a row or column");
  probe_r->add_option("--g", cfg.g_csv, "Comma-separated values g(1),...,g(n)")->required();
  probe_r->add_option("--n", cfg.window, "Window size")->required();
  probe_r->add_option("--bound", cfg.bound, "Value bound B")->required();
  add_common(probe_r);

  CLI::App* growth = app.add_subcommand("growth", "Exact growth demos for conjugated operations");
  growth->add_option("--demo", cfg.demo, "Which demo to run")
      ->required()
      ->check(CLI::IsMember({"plus", "times", "ratios", "selfcompose", "exponents"}));
  growth->add_option("--op", cfg.op, "Operation parameter for ratios/exponents");
  growth->add_option("--nmax", cfg.nmax, "Largest index to demo");
  growth->add_option("--alpha", cfg.alpha, "alpha parameter");
  growth->add_option("--beta", cfg.beta, "beta parameter");
  growth->add_option("--gamma", cfg.gamma, "gamma parameter");
  growth->add_option("--a", cfg.a_fixed, "Fixed first argument for exponent estimation");
  growth->add_option("--b", cfg.b_fixed, "Fixed second argument for exponent estimation");
  growth->add_option("--grid", cfg.grid, "Comma-separated strictly increasing c grid");
  add_common(growth);

  CLI::App* demo_it = app.add_subcommand("demo-iterate", "Tabulate the iterate of a base operation");
  demo_it->add_option("--op", cfg.op, "Base operation")
      ->required()
      ->check(CLI::IsMember({"add", "mul"}));
  demo_it->add_option("--window", cfg.window, "Display window")->required();
  add_common(demo_it);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("monoidlab");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    cfg.command = Command::help;
    cfg.help_text = app.help();
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (verify->parsed()) cfg.command = Command::verify;
  else if (classify->parsed()) cfg.command = Command::classify;
  else if (enumerate->parsed()) cfg.command = Command::enumerate_cmd;
  else if (orbits->parsed()) cfg.command = Command::orbits;
  else if (probe_c->parsed()) cfg.command = Command::probe_conjecture;
  else if (probe_t->parsed()) cfg.command = Command::probe_theorem;
  else if (probe_r->parsed()) cfg.command = Command::probe_row;
  else if (growth->parsed()) cfg.command = Command::growth;
  else if (demo_it->parsed()) cfg.command = Command::demo_iterate;
  else {
    cfg.command = Command::help;
    cfg.help_text = app.help();
    return cfg;
  }

  if (cfg.window < 1) throw UsageError("--n must be >= 1");
  if (cfg.bound == 0 || cfg.bound < -1) throw UsageError("--bound must be >= 1");
  if (cfg.threads < 1) throw UsageError("--threads must be >= 1");
  if (cfg.command == Command::enumerate_cmd && cfg.bound < 0 && !cfg.closed)
    throw UsageError("--bound is required unless --closed is given");
  if (cfg.command == Command::classify && cfg.affine.empty() == cfg.monomial.empty())
    throw UsageError("classify needs exactly one of --affine or --monomial");
  return cfg;
}

namespace detail {

inline Law law_of_token(const std::string& token) {
  if (token == "assoc") return Law::associative;
  if (token == "comm") return Law::commutative;
  if (token == "rreg") return Law::right_regular;
  if (token == "mono") return Law::strictly_monotone;
  if (token == "genuine") return Law::genuine;
  if (token == "closure") return Law::translation_closed;
  throw UsageError("--law value '" + token + "' is not recognized");
}

inline std::string render_law_text(const LawReport& r) {
  std::ostringstream out;
  out << "law: " << law_name(r.law) << "\n";
  out << "method: " << method_name(r.method) << "\n";
  out << "verdict: " << (r.result.verdict ? "true" : "false") << "\n";
  if (r.result.witness) {
    const Witness& w = *r.result.witness;
    out << "witness: (";
    for (std::size_t i = 0; i < w.points.size(); ++i) out << (i ? "," : "") << w.points[i].str();
    out << "): lhs=" << w.lhs.str() << ", rhs=" << w.rhs.str() << "\n";
    if (!w.note.empty()) out << "note: " << w.note << "\n";
  }
  out << "triples_checked: " << r.triples_checked << "\n";
  out << "triples_defined: " << r.triples_defined << "\n";
  if (r.translations_increasing.has_value())
    out << "translations_increasing: " << (*r.translations_increasing ? "true" : "false") << "\n";
  return out.str();
}

inline std::string render_law_csv(const LawReport& r) {
  std::ostringstream out;
  out << "law,method,verdict,witness,lhs,rhs,triples_checked,triples_defined\n";
  out << law_name(r.law) << "," << method_name(r.method) << ","
      << (r.result.verdict ? "true" : "false") << ",";
  if (r.result.witness) {
    const Witness& w = *r.result.witness;
    for (std::size_t i = 0; i < w.points.size(); ++i) out << (i ? " " : "") << w.points[i].str();
    out << "," << w.lhs.str() << "," << w.rhs.str();
  } else {
    out << ",,";
  }
  out << "," << r.triples_checked << "," << r.triples_defined << "\n";
  return out.str();
}

inline std::string render_entries(const Table& t) {
  std::ostringstream out;
  for (std::size_t k = 0; k < t.entries().size(); ++k)
    out << (k ? " " : "") << t.entries()[k].str();
  return out.str();
}

inline std::string render_search_text(const SearchReport& r, bool count_only) {
  if (count_only) return std::to_string(r.count) + "\n";
  std::ostringstream out;
  out << "count: " << r.count << "\n";
  if (r.vacuous_count) out << "vacuous: " << r.vacuous_count << "\n";
  out << "nodes_explored: " << r.nodes_explored << "\n";
  out << "partial: " << (r.partial ? "true" : "false") << "\n";
  for (std::size_t i = 0; i < r.tables.size(); ++i) {
    out << "table: " << render_entries(r.tables[i]);
    if (i < r.family_flags.size() && !r.family_flags[i].empty() && r.family_flags[i] != "none")
      out << " flag=" << r.family_flags[i];
    out << "\n";
  }
  for (const RowRealization& real : r.realizations)
    out << "realization " << (real.is_row ? "row" : "column") << " " << real.index << ": "
        << render_entries(real.table) << "\n";
  for (const std::string& note : r.notes) out << "note: " << note << "\n";
  return out.str();
}

inline std::string render_orbits_text(const OrbitReport& r, bool reps) {
  std::ostringstream out;
  out << "n: " << r.window << "\n";
  out << "orbit_count: " << r.orbit_count << "\n";
  out << "orbit_sizes:";
  for (std::uint64_t s : r.orbit_sizes) out << " " << s;
  out << "\n";
  out << "labeled_total: " << r.labeled_total << "\n";
  if (reps)
    for (const Table& t : r.representatives) out << "representative: " << render_entries(t) << "\n";
  return out.str();
}

inline std::string render_growth_text(GrowthOp which, const std::vector<GrowthDemoRecord>& records) {
  const char* sym = which == GrowthOp::plus ? "(+)_ω" : "(·)_ω";
  std::ostringstream out;
  for (const auto& rec : records) {
    out << "n=" << rec.n << ": " << sym << "(" << rec.input_value.str() << ","
        << rec.input_value.str() << ") = " << rec.output_value.str();
    if (rec.output_value == rec.expected)
      out << " = expected ✓\n";
    else
      out << " ✗ expected " << rec.expected.str() << "\n";
  }
  return out.str();
}

inline std::string render_ratios_text(const std::vector<RatioRecord>& records) {
  std::ostringstream out;
  for (const auto& rec : records) out << "n=" << rec.n << ": ratio = " << rec.ratio.str() << "\n";
  return out.str();
}

inline std::string render_selfcompose_text(const SelfcomposeReport& r) {
  std::ostringstream out;
  out << "alpha: " << r.alpha.str() << "\n";
  out << "beta: " << r.beta.str() << "\n";
  out << "n_checked: " << r.n_checked << "\n";
  out << "identity_exact: " << (r.identity_exact ? "true" : "false") << "\n";
  out << "ratio_constant: " << (r.ratio_constant ? "true" : "false") << "\n";
  out << "ratio_increasing: " << (r.ratio_increasing ? "true" : "false") << "\n";
  out << "ratio_first: " << r.ratio_first.str() << "\n";
  out << "ratio_last: " << r.ratio_last.str() << "\n";
  return out.str();
}

inline std::string render_exponents_text(const ExponentEstimate& e) {
  std::ostringstream out;
  out << "alpha_hat: " << fmt6(e.alpha_hat) << "\n";
  out << "beta_hat: " << fmt6(e.beta_hat) << "\n";
  out << "ls_slope: " << fmt6(e.ls_slope) << "\n";
  out << "residual: " << fmt6(e.residual) << "\n";
  out << "sample_grid: " << e.sample_grid << "\n";
  out << "alpha_le_beta: " << (e.check_alpha_le_beta ? "true" : "false") << "\n";
  out << "alpha_sq_le_beta: " << (e.check_alpha_sq_le_beta ? "true" : "false") << "\n";
  out << "alpha_le_beta_sq: " << (e.check_alpha_le_beta_sq ? "true" : "false") << "\n";
  return out.str();
}

inline std::string render_classify_text(const AffineClassification& c) {
  std::ostringstream out;
  out << "kind: affine\n";
  out << "alpha: " << c.alpha << "\nbeta: " << c.beta << "\ngamma: " << c.gamma << "\n";
  out << "associative: " << (c.associative ? "true" : "false") << "\n";
  out << "case: " << (c.case_label ? std::to_string(static_cast<int>(*c.case_label)) : "none") << "\n";
  out << "commutative: " << (c.commutative ? "true" : "false") << "\n";
  return out.str();
}

inline std::string render_classify_text(const MonomialClassification& c) {
  std::ostringstream out;
  out << "kind: monomial\n";
  out << "lambda: " << c.lambda.str() << "\nn: " << c.n.str() << "\nm: " << c.m.str() << "\n";
  out << "associative: " << (c.associative ? "true" : "false") << "\n";
  return out.str();
}

inline std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

inline SearchOptions options_from(const RunConfig& cfg, bool retain) {
  SearchOptions opts;
  opts.node_budget = cfg.node_budget;
  opts.threads = cfg.threads;
  opts.retain_tables = retain;
  return opts;
}

struct CommandOutput {
  std::string text;
  int code = 0;
};

inline CommandOutput run_verify(const RunConfig& cfg) {
  Table t = table_of_json(read_json_file(cfg.input_path));
  const Law law = law_of_token(cfg.law);
  const Method method = cfg.method == "light" ? Method::light : Method::naive;
  LawReport report = check_law(t, law, method);
  CommandOutput out;
  out.code = report.result.verdict ? 0 : 1;
  if (cfg.format == "json") out.text = dump_json(json_of_law_report(report));
  else if (cfg.format == "csv") out.text = render_law_csv(report);
  else out.text = render_law_text(report);
  return out;
}

inline CommandOutput run_classify(const RunConfig& cfg) {
  CommandOutput out;
  if (!cfg.affine.empty()) {
    AffineClassification c =
        classify_affine(nonneg_of_string(cfg.affine[0], "--affine"),
                        nonneg_of_string(cfg.affine[1], "--affine"),
                        nonneg_of_string(cfg.affine[2], "--affine"));
    if (cfg.format == "json") out.text = dump_json(json_of_affine(c));
    else out.text = render_classify_text(c);
  } else {
    MonomialClassification c = classify_monomial(Natural::from_string(cfg.monomial[0]),
                                                 Natural::from_string(cfg.monomial[1]),
                                                 Natural::from_string(cfg.monomial[2]));
    if (cfg.format == "json") out.text = dump_json(json_of_monomial(c));
    else out.text = render_classify_text(c);
  }
  return out;
}

inline SearchFilter filter_from(const RunConfig& cfg) {
  SearchFilter f;
  f.window = cfg.window;
  f.closed = cfg.closed;
  f.value_bound = cfg.bound > 0 ? Natural(cfg.bound) : Natural(cfg.window);
  for (const std::string& token : cfg.laws) {
    if (token == "assoc") f.associative = true;
    else if (token == "comm") f.commutative = true;
    else if (token == "rreg") f.right_regular = true;
    else if (token == "mono") f.strictly_monotone = true;
    else if (token == "genuine") f.genuine = true;
    else throw UsageError("--law value '" + token + "' is not an enumeration filter");
  }
  return f;
}

inline CommandOutput render_search(const RunConfig& cfg, const SearchReport& report,
                                   bool count_only) {
  CommandOutput out;
  out.code = report.partial ? 3 : 0;
  if (cfg.format == "json")
    out.text = dump_json(json_of_search_report(report, /*include_tables=*/!count_only, cfg.timings));
  else if (cfg.format == "csv")
    out.text = csv_of_search_report(report);
  else
    out.text = render_search_text(report, count_only);
  return out;
}

inline CommandOutput run_enumerate(const RunConfig& cfg) {
  SearchFilter filter = filter_from(cfg);
  const bool retain = !cfg.count_only || !cfg.emit_path.empty();
  SearchReport report = enumerate_associative(cfg.window, filter, options_from(cfg, retain));
  if (!cfg.emit_path.empty()) {
    ordered_json tables = ordered_json::array();
    for (const Table& t : report.tables) tables.push_back(json_of_table(t));
    write_text_file(cfg.emit_path, dump_json(tables));
  }
  return render_search(cfg, report, cfg.count_only);
}

inline CommandOutput run_orbits(const RunConfig& cfg) {
  SearchFilter filter;
  filter.window = cfg.window;
  filter.associative = true;
  filter.closed = true;
  filter.value_bound = Natural(cfg.window);
  OrbitReport report = count_orbits(cfg.window, filter, options_from(cfg, true));
  CommandOutput out;
  if (cfg.format == "json")
    out.text = dump_json(json_of_orbit_report(report, cfg.representatives));
  else if (cfg.format == "csv")
    out.text = csv_of_orbit_report(report);
  else
    out.text = render_orbits_text(report, cfg.representatives);
  return out;
}

inline CommandOutput run_growth(const RunConfig& cfg) {
  CommandOutput out;
  if (cfg.demo == "plus" || cfg.demo == "times") {
    const GrowthOp which = cfg.demo == "plus" ? GrowthOp::plus : GrowthOp::times;
    const int nmax = cfg.nmax > 0 ? cfg.nmax : 5;
    auto records = conjugate_growth_demo(which, nmax);
    if (cfg.format == "json") out.text = dump_json(json_of_growth_records(records));
    else if (cfg.format == "csv") out.text = csv_of_growth_records(records);
    else out.text = render_growth_text(which, records);
    return out;
  }
  if (cfg.demo == "ratios") {
    GrowthOp which = GrowthOp::plus;
    if (cfg.op == "times" || cfg.op == "mul") which = GrowthOp::times;
    else if (cfg.op != "plus" && cfg.op != "add")
      throw UsageError("--op for the ratios demo must be plus or times");
    const int nmax = cfg.nmax > 0 ? cfg.nmax : 5;
    auto records = ratio_stream(which, nmax);
    if (cfg.format == "json") out.text = dump_json(json_of_ratio_records(records));
    else if (cfg.format == "csv") out.text = csv_of_ratio_records(records);
    else out.text = render_ratios_text(records);
    return out;
  }
  if (cfg.demo == "selfcompose") {
    const int nmax = cfg.nmax > 0 ? cfg.nmax : 100;
    if (cfg.alpha < 1 || cfg.beta < 1) throw UsageError("--alpha and --beta must be >= 1");
    SelfcomposeReport report =
        selfcompose_growth_check(Natural(cfg.alpha), Natural(cfg.beta), nmax);
    if (cfg.format == "json") out.text = dump_json(json_of_selfcompose(report));
    else out.text = render_selfcompose_text(report);
    return out;
  }
  if (cfg.demo == "exponents") {
    OpSpec op = [&] {
      if (cfg.op == "add") return OpSpec::add();
      if (cfg.op == "mul") return OpSpec::mul();
      if (cfg.op == "affine") return OpSpec::affine(cfg.alpha, cfg.beta, cfg.gamma);
      throw UsageError("--op for the exponents demo must be add, mul, or affine");
    }();
    std::vector<Natural> grid = naturals_of_csv(cfg.grid, "--grid");
    ExponentEstimate estimate =
        estimate_growth_exponents(op, Natural::from_string(cfg.a_fixed),
                                  Natural::from_string(cfg.b_fixed), grid);
    if (cfg.format == "json") out.text = dump_json(json_of_exponents(estimate));
    else out.text = render_exponents_text(estimate);
    return out;
  }
  throw UsageError("--demo value '" + cfg.demo + "' is not recognized");
}

inline CommandOutput run_demo_iterate(const RunConfig& cfg) {
  const OpSpec base = cfg.op == "mul" ? OpSpec::mul() : OpSpec::add();
  const OpSpec it = OpSpec::iterate(base);
  const int n = cfg.window;
  std::vector<Natural> entries;
  entries.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) entries.push_back(eval_op(it, Natural(a), Natural(b)));
  Table t(n, std::move(entries));
  CommandOutput out;
  if (cfg.format == "json") {
    out.text = dump_json(json_of_table(t));
  } else if (cfg.format == "csv") {
    std::ostringstream s;
    s << "a,b,value\n";
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) s << a << "," << b << "," << t.at(a, b).str() << "\n";
    out.text = s.str();
  } else {
    std::ostringstream s;
    for (int a = 1; a <= n; ++a) {
      for (int b = 1; b <= n; ++b) s << (b > 1 ? " " : "") << t.at(a, b).str();
      s << "\n";
    }
    out.text = s.str();
  }
  return out;
}

}  // namespace detail

/// Runs one parsed command. When `captured` is non-null the report text goes
/// there; otherwise it goes to --output or standard output.
inline int dispatch(const RunConfig& cfg, std::string* captured = nullptr) {
  detail::CommandOutput out;
  switch (cfg.command) {
    case Command::help:
      out.text = cfg.help_text;
      break;
    case Command::verify:
      out = detail::run_verify(cfg);
      break;
    case Command::classify:
      out = detail::run_classify(cfg);
      break;
    case Command::enumerate_cmd:
      out = detail::run_enumerate(cfg);
      break;
    case Command::orbits:
      out = detail::run_orbits(cfg);
      break;
    case Command::probe_conjecture: {
      SearchReport report = conjecture_probe(cfg.window, Natural(cfg.bound),
                                             detail::options_from(cfg, false));
      out = detail::render_search(cfg, report, false);
      break;
    }
    case Command::probe_theorem: {
      SearchReport report = theorem_probe(cfg.which, cfg.window, Natural(cfg.bound),
                                          detail::options_from(cfg, false));
      out = detail::render_search(cfg, report, false);
      break;
    }
    case Command::probe_row: {
      std::vector<Natural> g = detail::naturals_of_csv(cfg.g_csv, "--g");
      SearchReport report = row_realization_probe(g, cfg.window, Natural(cfg.bound),
                                                  detail::options_from(cfg, false));
      out = detail::render_search(cfg, report, false);
      break;
    }
    case Command::growth:
      out = detail::run_growth(cfg);
      break;
    case Command::demo_iterate:
      out = detail::run_demo_iterate(cfg);
      break;
  }
  if (captured) *captured = out.text;
  else if (!cfg.output_path.empty()) write_text_file(cfg.output_path, out.text);
  else std::cout << out.text;
  return out.code;
}

/// Exit codes: 0 ok, 1 law verified false, 2 usage, 3 budget-limited partial
/// result, 4 I/O failure.
inline int run_cli(int argc, const char* const* argv) {
  try {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    RunConfig cfg = parse_args(args);
    return dispatch(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace monoidlab
