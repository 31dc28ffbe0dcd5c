#include "gk/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "gk/model.hpp"
#include "gk/normalform.hpp"
#include "gk/parser.hpp"
#include "gk/rewrite.hpp"

namespace gk {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

struct Options {
  std::string presentation;
  std::string term, left, right;
  std::string model_path, trace_path;
  int depth = 6;
  int max_states = 100000;
  bool expand = false;
};

int cmd_validate(const Options& opt, std::ostream& out) {
  Presentation p = parse_presentation(read_file(opt.presentation));
  ValidationReport report = validate_presentation(p);
  out << report.to_string();
  return report.ok() ? 0 : 1;
}

int cmd_normalize(const Options& opt, std::ostream& out) {
  Presentation p = parse_presentation(read_file(opt.presentation));
  FormalSum s = parse_term(p, opt.term);
  FormalSum normal = normalize_sum(p, s);
  out << print_sum(p, normal) << "\n";
  if (!opt.trace_path.empty()) {
    RuleSet rules = instantiate_rules(p);
    write_file(opt.trace_path, trace_to_json(p, normalize_trace(p, rules, s)));
  }
  return 0;
}

int cmd_equiv(const Options& opt, std::ostream& out) {
  Presentation p = parse_presentation(read_file(opt.presentation));
  FormalSum l = parse_term(p, opt.left);
  FormalSum r = parse_term(p, opt.right);
  if (l.dom != r.dom || l.cod != r.cod)
    throw ParseError("terms have different types", {});
  RuleSet rules = instantiate_rules(p);
  SearchBudget budget;
  budget.depth = opt.depth;
  budget.max_states = opt.max_states;
  budget.expansions = opt.expand;
  Verdict v = decide_equiv(p, rules, l, r, budget);
  if (v.equivalent) {
    out << "Equivalent (" << v.trace->steps.size() << " steps, "
        << v.stats.explored << " states)\n";
    if (!opt.trace_path.empty()) write_file(opt.trace_path, trace_to_json(p, *v.trace));
    return 0;
  }
  out << "Unknown (" << v.stats.explored << " states, frontiers "
      << v.stats.frontier_left << "/" << v.stats.frontier_right
      << (v.stats.states_exhausted ? ", state budget exhausted" : "") << ")\n";
  return 1;
}

int cmd_eval(const Options& opt, std::ostream& out) {
  Presentation p = parse_presentation(read_file(opt.presentation));
  MatrixModel m = load_model(p, read_file(opt.model_path));
  ModelReport report = validate_model(p, m);
  if (!report.ok()) {
    out << report.to_string();
    return 1;
  }
  FormalSum s = parse_term(p, opt.term);
  out << eval(p, m, s).to_string() << "\n";
  return 0;
}

int cmd_check_trace(const Options& opt, std::ostream& out) {
  Presentation p = parse_presentation(read_file(opt.presentation));
  ProofTrace trace = trace_from_json(p, read_file(opt.trace_path));
  CheckResult res = check_trace(p, trace);
  if (!res.ok) {
    out << "invalid trace at step " << res.failed_step << ": " << res.reason << "\n";
    return 1;
  }
  if (!opt.model_path.empty()) {
    MatrixModel m = load_model(p, read_file(opt.model_path));
    ModelReport report = validate_model(p, m);
    if (!report.ok()) {
      out << report.to_string();
      return 1;
    }
    if (!soundness_check_trace(p, m, trace)) {
      out << "trace is structurally valid but changes the model value\n";
      return 1;
    }
    out << "ok (structure and model soundness)\n";
    return 0;
  }
  out << "ok (structure)\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"finitely presented additive categories with localized "
               "stability and split-exactness: terms, rewriting, proofs, "
               "integer-matrix models"};
  app.require_subcommand(1);
  Options opt;

  auto* validate = app.add_subcommand("validate", "check a presentation");
  validate->add_option("presentation", opt.presentation)->required();

  auto* normalize = app.add_subcommand("normalize", "alternating normal form");
  normalize->add_option("presentation", opt.presentation)->required();
  normalize->add_option("-e,--expr", opt.term, "term to normalize")->required();
  normalize->add_option("--trace", opt.trace_path, "write the witness derivation");

  auto* equiv = app.add_subcommand("equiv", "bounded equivalence search");
  equiv->add_option("presentation", opt.presentation)->required();
  equiv->add_option("-l,--left", opt.left)->required();
  equiv->add_option("-r,--right", opt.right)->required();
  equiv->add_option("--depth", opt.depth, "maximum chain length");
  equiv->add_option("--max-states", opt.max_states);
  equiv->add_flag("--expand", opt.expand, "search cancelling-pair expansions");
  equiv->add_option("--trace", opt.trace_path, "write the found derivation");

  auto* ev = app.add_subcommand("eval", "evaluate in an integer-matrix model");
  ev->add_option("presentation", opt.presentation)->required();
  ev->add_option("--model", opt.model_path)->required();
  ev->add_option("-e,--expr", opt.term)->required();

  auto* check = app.add_subcommand("check-trace", "verify a derivation");
  check->add_option("presentation", opt.presentation)->required();
  check->add_option("--trace", opt.trace_path)->required();
  check->add_option("--model", opt.model_path, "also check model soundness");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(opt, out);
    if (normalize->parsed()) return cmd_normalize(opt, out);
    if (equiv->parsed()) return cmd_equiv(opt, out);
    if (ev->parsed()) return cmd_eval(opt, out);
    if (check->parsed()) return cmd_check_trace(opt, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace gk
