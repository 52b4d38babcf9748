#include "cli.hpp"

#include <secview/analysis.hpp>
#include <secview/answers.hpp>
#include <secview/asp/program.hpp>
#include <secview/asp/solver.hpp>
#include <secview/asp/text.hpp>
#include <secview/error.hpp>
#include <secview/eval.hpp>
#include <secview/instances.hpp>
#include <secview/parser.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

namespace secview::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Config {
  std::string schema, facts, views, query;
  std::string mode = "paper";
  std::string dialect = "clingo";
  std::string via = "direct";
  std::string format = "text";
  std::string solver;
  bool dcs = false;
  std::size_t max_cells = 20;
  std::size_t max_models = 0;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SemanticError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// A query argument is a file when one exists at that path, else query text.
std::string query_text(const std::string& arg) {
  std::error_code ec;
  return fs::is_regular_file(arg, ec) ? slurp(arg) : arg;
}

struct Inputs {
  std::shared_ptr<const Schema> schema;
  Instance d;
  std::vector<ViewDef> views;
  std::optional<Query> query;
};

Inputs load(const Config& c, bool need_views, bool need_query) {
  auto schema = std::make_shared<const Schema>(parse_schema(slurp(c.schema)));
  Inputs in{schema, c.facts.empty() ? Instance(schema) : parse_facts(slurp(c.facts), schema), {}, {}};
  if (!c.views.empty()) in.views = parse_views(slurp(c.views), *schema);
  else if (need_views) throw SemanticError("--views is required");
  if (!c.query.empty()) in.query = parse_query(query_text(c.query), *schema);
  else if (need_query) throw SemanticError("--query is required");
  return in;
}

EnumerationOptions enum_options(const Config& c) {
  EnumerationOptions o;
  o.mode = c.mode == "exhaustive" ? EnumerationMode::Exhaustive : EnumerationMode::Paper;
  o.max_cells = c.max_cells;
  return o;
}

json to_json(const Value& v) {
  if (v.is_null()) return nullptr;
  if (v.is_int()) return v.as_int();
  return v.text();
}

json to_json(const AnswerSet& a) {
  json rows = json::array();
  for (const auto& r : a.rows) {
    json row = json::array();
    for (const auto& v : r) row.push_back(to_json(v));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Instance& d) {
  json facts = json::array();
  for (const auto& rel : d.schema().relations())
    for (const auto& t : d.tuples(rel.name)) {
      json values = json::array();
      for (const auto& v : t.values) values.push_back(to_json(v));
      facts.push_back({{"relation", rel.name}, {"tid", t.tid}, {"values", std::move(values)}});
    }
  return facts;
}

json to_json(const ChangeSet& cs) {
  json out = json::array();
  for (const auto& c : cs) out.push_back(to_string(c));
  return out;
}

std::string indent(const std::string& text) {
  std::string out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out += "  " + line + "\n";
  return out;
}

// Runs an external solver on the program text. nullopt when the binary
// cannot be started, so the caller falls back to the internal engine.
std::optional<std::vector<asp::StableModel>> run_external(const std::string& solver, asp::Dialect dialect,
                                                          const std::string& program, std::ostream& err) {
  char path[] = "/tmp/secview-XXXXXX";
  int fd = mkstemp(path);
  if (fd < 0) {
    err << "warning: cannot create a temporary file, using the internal solver\n";
    return std::nullopt;
  }
  {
    std::ofstream f(path);
    f << program;
  }
  close(fd);
  std::string cmd = "'" + solver + "' " + (dialect == asp::Dialect::Clingo ? "0 " : "") + "'" + path + "' 2>/dev/null";
  std::string output;
  int status = -1;
  if (FILE* p = popen(cmd.c_str(), "r")) {
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) output.append(buf, n);
    status = pclose(p);
  }
  fs::remove(path);
  if (status == -1 || (WIFEXITED(status) && (WEXITSTATUS(status) == 126 || WEXITSTATUS(status) == 127))) {
    err << "warning: cannot run " << solver << ", using the internal solver\n";
    return std::nullopt;
  }
  return asp::parse_answer_sets(output);
}

std::vector<asp::StableModel> models_of(const asp::Program& p, const Config& c, std::ostream& err) {
  if (!c.solver.empty()) {
    auto dialect = asp::parse_dialect(c.dialect);
    if (auto ms = run_external(c.solver, dialect, asp::export_program(p, dialect), err)) {
      if (c.max_models && ms->size() > c.max_models)
        throw BoundExceeded("more than " + std::to_string(c.max_models) + " stable models");
      return *ms;
    }
  }
  asp::SolveOptions o;
  if (c.max_models) o.max_models = c.max_models + 1;
  auto ms = asp::stable_models(asp::ground(p), o);
  if (c.max_models && ms.size() > c.max_models)
    throw BoundExceeded("more than " + std::to_string(c.max_models) + " stable models");
  return ms;
}

int cmd_eval(const Config& c, std::ostream& out) {
  auto in = load(c, false, true);
  AnswerSet n = eval_n(in.d, *in.query), cl = eval_classical(in.d, *in.query);
  if (c.format == "json") {
    out << json{{"n_answers", to_json(n)}, {"classical_answers", to_json(cl)}}.dump() << "\n";
  } else {
    out << "n-answers: " << n.to_string() << "\n";
    out << "classical answers: " << cl.to_string() << "\n";
  }
  return Ok;
}

int cmd_instances(const Config& c, std::ostream& out) {
  auto in = load(c, true, false);
  auto opts = enum_options(c);
  auto sis = enumerate_secrecy_instances(in.d, in.views, opts);
  std::set<ChangeSet> paper;
  if (opts.mode == EnumerationMode::Exhaustive) {
    EnumerationOptions p = opts;
    p.mode = EnumerationMode::Paper;
    for (const auto& s : enumerate_secrecy_instances(in.d, in.views, p)) paper.insert(s.changes);
  }
  auto exhaustive_only = [&](const SecrecySolution& s) {
    return opts.mode == EnumerationMode::Exhaustive && !paper.count(s.changes);
  };
  if (c.format == "json") {
    json list = json::array();
    for (const auto& s : sis)
      list.push_back(
          {{"changes", to_json(s.changes)}, {"facts", to_json(s.instance)}, {"exhaustive_only", exhaustive_only(s)}});
    out << json{{"mode", mode_name(opts.mode)}, {"instances", std::move(list)}}.dump() << "\n";
  } else {
    out << sis.size() << " secrecy instance" << (sis.size() == 1 ? "" : "s") << " (" << mode_name(opts.mode)
        << ")\n";
    for (std::size_t i = 0; i < sis.size(); ++i) {
      out << "#" << i + 1 << " changes " << to_string(sis[i].changes)
          << (exhaustive_only(sis[i]) ? " exhaustive-only" : "") << "\n";
      out << indent(sis[i].instance.to_string());
    }
  }
  return Ok;
}

int cmd_answer(const Config& c, std::ostream& out, std::ostream& err) {
  if (c.via == "asp" || c.via == "both") asp::parse_dialect(c.dialect);
  auto in = load(c, true, true);
  std::optional<AnswerSet> direct, via_asp;
  if (c.via != "asp") direct = secret_answers(in.d, in.views, *in.query, enum_options(c)).answers;
  if (c.via != "direct") {
    auto p = asp::compile_program(in.d, in.views);
    p.program.rules.push_back(asp::compile_query_program(*in.query));
    via_asp = asp::cautious_answers(models_of(p.program, c, err));
  }
  if (direct && via_asp && *direct != *via_asp) {
    err << "error: secret answers " << direct->to_string() << " differ from cautious answers " << via_asp->to_string()
        << "\n";
    return CrossCheckFailure;
  }
  const AnswerSet& a = direct ? *direct : *via_asp;
  if (c.format == "json")
    out << json{{"via", c.via}, {"answers", to_json(a)}}.dump() << "\n";
  else
    out << "secret answers: " << a.to_string() << "\n";
  return Ok;
}

int cmd_compile(const Config& c, std::ostream& out) {
  auto dialect = asp::parse_dialect(c.dialect);
  auto in = load(c, true, false);
  auto p = asp::compile_program(in.d, in.views);
  if (in.query) p.program.rules.push_back(asp::compile_query_program(*in.query));
  std::vector<asp::DenialConstraint> dcs;
  if (c.dcs)
    for (const auto& v : in.views) {
      auto more = asp::to_denial_constraints(v);
      dcs.insert(dcs.end(), more.begin(), more.end());
    }
  if (c.format == "json") {
    json list = json::array();
    for (const auto& dc : dcs) list.push_back({{"variable", dc.variable}, {"text", dc.text}, {"rule", dc.rule.to_string()}});
    json j{{"dialect", asp::dialect_name(dialect)}, {"program", asp::export_program(p, dialect)}};
    if (c.dcs) j["denial_constraints"] = std::move(list);
    out << j.dump() << "\n";
    return Ok;
  }
  out << asp::export_program(p, dialect);
  if (c.dcs) {
    // Commented out: the base facts violate them by construction.
    out << "% denial constraints\n";
    for (const auto& dc : dcs) out << "% " << dc.text << "\n%   " << dc.rule.to_string() << "\n";
  }
  return Ok;
}

int cmd_solve(const Config& c, std::ostream& out, std::ostream& err) {
  auto in = load(c, true, false);
  auto p = asp::compile_program(in.d, in.views);
  auto models = models_of(p.program, c, err);
  std::vector<SecrecySolution> sols;
  try {
    sols = asp::models_to_instances(models, p, in.d);
  } catch (const SemanticError& e) {
    err << "error: stable models do not read back as instances: " << e.what() << "\n";
    return CrossCheckFailure;
  }
  if (c.format == "json") {
    json list = json::array();
    for (const auto& s : sols) list.push_back({{"changes", to_json(s.changes)}, {"facts", to_json(s.instance)}});
    out << json{{"models", models.size()}, {"instances", std::move(list)}}.dump() << "\n";
  } else {
    out << models.size() << " stable model" << (models.size() == 1 ? "" : "s") << ", " << sols.size()
        << " instance" << (sols.size() == 1 ? "" : "s") << "\n";
    for (std::size_t i = 0; i < sols.size(); ++i) {
      out << "#" << i + 1 << " changes " << to_string(sols[i].changes) << "\n";
      out << indent(sols[i].instance.to_string());
    }
  }
  return Ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Secret answers to conjunctive queries under null-based secrecy views"};
  app.require_subcommand(1);
  Config c;

  auto common = [&](CLI::App* sub, bool views, bool query) {
    sub->add_option("--schema", c.schema, "schema file")->required()->check(CLI::ExistingFile);
    sub->add_option("--facts", c.facts, "facts file")->check(CLI::ExistingFile);
    if (views) sub->add_option("--views", c.views, "secrecy views file")->check(CLI::ExistingFile);
    if (query) sub->add_option("--query", c.query, "query text or file");
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto enumeration = [&](CLI::App* sub) {
    sub->add_option("--mode", c.mode, "enumeration mode")->check(CLI::IsMember({"paper", "exhaustive"}));
    sub->add_option("--max-cells", c.max_cells, "candidate cell bound")->check(CLI::PositiveNumber);
  };
  auto solving = [&](CLI::App* sub) {
    sub->add_option("--solver", c.solver, "external ASP solver binary");
    sub->add_option("--dialect", c.dialect, "dlv or clingo");
    sub->add_option("--max-models", c.max_models, "stable model bound")->check(CLI::PositiveNumber);
  };

  auto* eval = app.add_subcommand("eval", "N-answers and classical answers to a query");
  common(eval, false, true);
  auto* inst = app.add_subcommand("instances", "secrecy instances with their change sets");
  common(inst, true, false);
  enumeration(inst);
  auto* ans = app.add_subcommand("answer", "secret answers to a query");
  common(ans, true, true);
  enumeration(ans);
  solving(ans);
  ans->add_option("--via", c.via, "direct, asp or both")->check(CLI::IsMember({"direct", "asp", "both"}));
  auto* comp = app.add_subcommand("compile", "secrecy program text");
  common(comp, true, true);
  comp->add_option("--dialect", c.dialect, "dlv or clingo");
  comp->add_flag("--dcs", c.dcs, "also print the denial constraints of each view");
  auto* solve = app.add_subcommand("solve", "secrecy instances read off the stable models");
  common(solve, true, false);
  solving(solve);

  std::vector<std::string> argv_store{"secview"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Ok : ParseFailure;
  }

  try {
    if (*eval) return cmd_eval(c, out);
    if (*inst) return cmd_instances(c, out);
    if (*ans) return cmd_answer(c, out, err);
    if (*comp) return cmd_compile(c, out);
    if (*solve) return cmd_solve(c, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return ParseFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return ParseFailure;
  } catch (const SemanticError& e) {
    err << "semantic error: " << e.what() << "\n";
    return SemanticFailure;
  } catch (const InconsistencyError& e) {
    err << "inconsistency: " << e.what() << "\n";
    return CrossCheckFailure;
  } catch (const BoundExceeded& e) {
    err << "bound exceeded: " << e.what() << "\n";
    return BoundFailure;
  }
  return Ok;
}

} // namespace secview::cli
