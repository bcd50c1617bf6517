// Command-line front end: load possibilistic Kripke structures, check PoCTL
// formulae, translate CTL into qualitative PoCTL, run the brute-force
// oracle, and export Graphviz views.
//
// Exit codes: 0 verdict true (or success for verdict-less commands),
// 1 verdict false (or invalid model for `validate`), 2 usage/parse/model
// errors, 3 checker/oracle mismatch under `check --oracle`.

#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "poctl/poctl.hpp"

namespace {

using nlohmann::json;
using namespace poctl;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;
constexpr int kExitMismatch = 3;

struct TableRow {
  std::string state;
  std::optional<std::string> value;
  bool sat;
};

struct RunReport {
  std::string model_path;
  std::string formula_text;
  std::vector<TableRow> rows;
  bool verdict = false;
  double wall_time_ms = 0.0;
};

void print_report(const RunReport& report, const std::string& format) {
  if (format == "json-lines") {
    for (const auto& row : report.rows) {
      json line{{"state", row.state}, {"sat", row.sat}};
      line["value"] = row.value ? json(*row.value) : json(nullptr);
      std::cout << line.dump() << "\n";
    }
    json verdict{{"model", report.model_path},
                 {"formula", report.formula_text},
                 {"verdict", report.verdict},
                 {"wall_time_ms", report.wall_time_ms}};
    std::cout << verdict.dump() << "\n";
    return;
  }
  std::cout << "# model: " << report.model_path << "\n";
  std::cout << "# formula: " << report.formula_text << "\n";
  for (const auto& row : report.rows)
    std::cout << row.state << "\t" << (row.value ? *row.value : "-") << "\t"
              << (row.sat ? "yes" : "no") << "\n";
  std::cout << "verdict: " << (report.verdict ? "true" : "false") << "\n";
  std::cerr << "wall_time_ms: " << report.wall_time_ms << "\n";
}

PossibilisticKripkeStructure load_valid_model(const std::string& path) {
  PossibilisticKripkeStructure m = load_model(path);
  const auto violations = validate(m);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "invalid model: " << v << "\n";
    throw std::runtime_error("model validation failed");
  }
  return m;
}

bool verdict_over(const PossibilisticKripkeStructure& m, const StateSet& sat_set,
                  const std::optional<std::string>& state) {
  if (state) return sat_set[m.state_index(*state)];
  for (std::size_t i = 0; i < m.state_count(); ++i)
    if (!m.initial[i].is_zero() && !sat_set[i]) return false;
  return true;
}

void collect_po_nodes(const StateFormulaPtr& f, std::vector<StateFormulaPtr>& out) {
  if (!f) return;
  if (f->kind == StateKind::Po) out.push_back(f);
  collect_po_nodes(f->left, out);
  collect_po_nodes(f->right, out);
  if (f->path) {
    collect_po_nodes(f->path->left, out);
    collect_po_nodes(f->path->right, out);
  }
}

int run_check(const std::string& model_path, const std::string& formula_text,
              const std::optional<std::string>& state, bool cross_check,
              const std::string& format) {
  const PossibilisticKripkeStructure m = load_valid_model(model_path);
  const StateFormulaPtr f = parse_poctl(formula_text);

  const auto start = std::chrono::steady_clock::now();
  const CheckResult result = sat(m, f);
  const auto stop = std::chrono::steady_clock::now();

  RunReport report;
  report.model_path = model_path;
  report.formula_text = formula_text;
  report.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  const PossibilityVector* outer = nullptr;
  if (f->kind == StateKind::Po) outer = &result.po_values.at(to_string(f));
  for (std::size_t i = 0; i < m.state_count(); ++i) {
    TableRow row{m.states[i], std::nullopt, static_cast<bool>(result.sat[i])};
    if (outer) row.value = (*outer)[i].str();
    report.rows.push_back(std::move(row));
  }
  report.verdict = verdict_over(m, result.sat, state);
  print_report(report, format);

  if (cross_check) {
    const StateSet reference = oracle_sat(m, f);
    if (reference != result.sat) {
      std::cerr << "oracle mismatch: satisfaction sets differ\n";
      return kExitMismatch;
    }
    std::vector<StateFormulaPtr> po_nodes;
    collect_po_nodes(f, po_nodes);
    const StateResolver resolve = [&](const StateFormulaPtr& sub) { return oracle_sat(m, sub); };
    for (const auto& node : po_nodes) {
      const PossibilityVector& got = result.po_values.at(to_string(node));
      for (std::size_t s = 0; s < m.state_count(); ++s) {
        const Possibility expected = oracle_po(m, s, node->path, resolve).value;
        if (expected != got[s]) {
          std::cerr << "oracle mismatch: " << to_string(node) << " at state " << m.states[s]
                    << ": checker " << got[s].str() << ", oracle " << expected.str() << "\n";
          return kExitMismatch;
        }
      }
    }
  }
  return report.verdict ? kExitTrue : kExitFalse;
}

int run_oracle(const std::string& model_path, const std::string& formula_text,
               const std::optional<std::string>& state, const OracleBudget& budget,
               const std::string& format) {
  const PossibilisticKripkeStructure m = load_valid_model(model_path);
  const StateFormulaPtr f = parse_poctl(formula_text);

  const auto start = std::chrono::steady_clock::now();
  const StateSet sat_set = oracle_sat(m, f, budget);
  const auto stop = std::chrono::steady_clock::now();

  RunReport report;
  report.model_path = model_path;
  report.formula_text = formula_text;
  report.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  bool all_exact = true;
  for (std::size_t i = 0; i < m.state_count(); ++i) {
    TableRow row{m.states[i], std::nullopt, static_cast<bool>(sat_set[i])};
    if (f->kind == StateKind::Po) {
      const StateResolver resolve = [&](const StateFormulaPtr& sub) {
        return oracle_sat(m, sub, budget);
      };
      const OracleValue v = oracle_po(m, i, f->path, resolve, budget);
      all_exact = all_exact && v.exact;
      row.value = v.value.str();
    }
    report.rows.push_back(std::move(row));
  }
  if (!all_exact)
    std::cerr << "warning: budget below exactness threshold; values are lower bounds only\n";
  report.verdict = verdict_over(m, sat_set, state);
  print_report(report, format);
  return report.verdict ? kExitTrue : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PoCTL model checker over finite possibilistic Kripke structures"};
  app.require_subcommand(1);

  std::string model_path;
  std::string formula_text;
  std::optional<std::string> state;
  std::string format = "table";
  bool cross_check = false;
  std::string alpha_text;
  bool plus = false;
  OracleBudget budget;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"table", "json-lines"}));
  };

  auto* check = app.add_subcommand("check", "Check a PoCTL formula against a model");
  check->add_option("model", model_path, "Model file")->required();
  check->add_option("formula", formula_text, "PoCTL state formula")->required();
  check->add_option("--state", state, "Restrict the verdict to one state");
  check->add_flag("--oracle", cross_check, "Cross-check against the brute-force oracle");
  add_format(check);

  auto* translate = app.add_subcommand("translate", "Translate a CTL formula into PoCTL");
  translate->add_option("formula", formula_text, "CTL state formula")->required();
  translate->add_option("--alpha", alpha_text, "Use the alpha-equivalent embedding");

  auto* oracle = app.add_subcommand("oracle", "Check a formula by brute-force enumeration");
  oracle->add_option("model", model_path, "Model file")->required();
  oracle->add_option("formula", formula_text, "PoCTL state formula")->required();
  oracle->add_option("--state", state, "Restrict the verdict to one state");
  oracle->add_option("--max-stem", budget.max_stem, "Lasso stem budget (0 = state count)");
  oracle->add_option("--max-cycle", budget.max_cycle, "Lasso cycle budget (0 = state count)");
  oracle->add_option("--max-prefix", budget.max_prefix, "Until prefix budget (0 = state count)");
  add_format(oracle);

  auto* export_dot = app.add_subcommand("export-dot", "Write a Graphviz view of a model");
  export_dot->add_option("model", model_path, "Model file")->required();
  auto* plus_flag = export_dot->add_flag("--plus", plus, "Export the transitive-closure structure");
  export_dot->add_option("--alpha", alpha_text, "Export the alpha-cut transition system")
      ->excludes(plus_flag);

  auto* validate_cmd = app.add_subcommand("validate", "Check the normality conditions of a model");
  validate_cmd->add_option("model", model_path, "Model file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitError : kExitTrue;
  }

  try {
    if (check->parsed()) return run_check(model_path, formula_text, state, cross_check, format);

    if (translate->parsed()) {
      const StateFormulaPtr f = parse_ctl(formula_text);
      const StateFormulaPtr embedded =
          alpha_text.empty() ? embed_ctl(f) : embed_ctl_alpha(f, Possibility::parse(alpha_text));
      std::cout << to_string(embedded) << "\n";
      return kExitTrue;
    }

    if (oracle->parsed()) return run_oracle(model_path, formula_text, state, budget, format);

    if (export_dot->parsed()) {
      const PossibilisticKripkeStructure m = load_valid_model(model_path);
      if (!alpha_text.empty())
        std::cout << to_dot_alpha(m, Possibility::parse(alpha_text));
      else
        std::cout << to_dot(plus ? plus_structure(m) : m);
      return kExitTrue;
    }

    if (validate_cmd->parsed()) {
      const PossibilisticKripkeStructure m = load_model(model_path);
      const auto violations = validate(m);
      if (violations.empty()) {
        std::cout << "ok\n";
        return kExitTrue;
      }
      for (const auto& v : violations) std::cout << v << "\n";
      return kExitFalse;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
