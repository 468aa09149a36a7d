#include "bsc/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsc/abstraction.hpp"
#include "bsc/atm.hpp"
#include "bsc/bisim.hpp"
#include "bsc/error.hpp"
#include "bsc/mucheck.hpp"
#include "bsc/parser.hpp"
#include "bsc/serialize.hpp"
#include "bsc/transforms.hpp"

namespace bsc {

namespace {

using Json = nlohmann::ordered_json;

struct RunReport {
  std::string command;
  Json inputs = Json::object();
  std::string verdict;
  std::size_t states = 0, transitions = 0, adom = 0, bprime = 0, cap = 0;
  bool has_stats = false;
  std::vector<std::string> path;
  std::string path_kind;
  std::vector<std::string> notes;
  double seconds = 0;

  void stats(const AbstractionResult& r) {
    has_stats = true;
    states = r.ts.num_states();
    transitions = r.ts.num_transitions();
    adom = r.adom_size;
    bprime = r.bounds.bprime;
    cap = r.bounds.cap;
  }

  void print(std::ostream& os, bool json) const {
    if (json) {
      Json j;
      j["command"] = command;
      j["inputs"] = inputs;
      j["verdict"] = verdict;
      if (has_stats) {
        j["stats"] = Json{{"states", states}, {"transitions", transitions}, {"adom", adom}, {"bprime", bprime},
                          {"cap", cap}};
      }
      if (!path_kind.empty()) j[path_kind] = path;
      if (!notes.empty()) j["notes"] = notes;
      j["seconds"] = seconds;
      os << j.dump(2) << "\n";
      return;
    }
    os << command << ": " << verdict << "\n";
    if (has_stats) {
      os << "  states " << states << ", transitions " << transitions << ", |adom(Q)| " << adom << ", b' " << bprime
         << ", cap " << cap << "\n";
    }
    if (!path_kind.empty()) {
      os << "  " << path_kind << ":";
      if (path.empty()) os << " (initial situation)";
      for (const std::string& s : path) os << " " << s;
      os << "\n";
    }
    for (const std::string& n : notes) os << "  " << n << "\n";
    os << "  time " << seconds << " s\n";
  }
};

std::size_t bound_or_declared(const std::optional<std::size_t>& b, const Theory& t) {
  if (b) return *b;
  if (t.declared_bound) return *t.declared_bound;
  throw Error("no --bound given and the theory declares no bound");
}

// Action labels along a path of states.
std::vector<std::string> labels_along(const AbstractionResult& r, const std::vector<std::size_t>& path) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) out.push_back(r.edge_label.at({path[k], path[k + 1]}));
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification of bounded action theories"};
  app.require_subcommand(1);
  bool json = false, trace = false;
  app.add_flag("--json", json, "Report as JSON");
  app.add_flag("--trace", trace, "Print abstraction expansion events to standard error");

  std::string theory_path, formula, out_path, ts1, ts2, machine, input;
  std::optional<std::size_t> bound;
  std::size_t ell = 0, max_states = 100000;
  std::optional<std::size_t> blocking, primed_b;
  std::vector<std::size_t> fading;
  bool atm_verify = false;

  auto add_bound = [&](CLI::App* c) { c->add_option("--bound,-b", bound, "Fluent bound b"); };
  auto add_cap = [&](CLI::App* c) { c->add_option("--max-states", max_states, "Abstract state guard"); };

  CLI::App* verify = app.add_subcommand("verify", "Check a temporal property");
  verify->add_option("theory", theory_path)->required();
  verify->add_option("--formula,-f", formula)->required();
  add_bound(verify);
  add_cap(verify);

  CLI::App* checkb = app.add_subcommand("check-bounded", "Decide whether the theory stays within a bound");
  checkb->add_option("theory", theory_path)->required();
  add_bound(checkb);
  add_cap(checkb);

  CLI::App* abstract = app.add_subcommand("abstract", "Build the finite abstraction");
  abstract->add_option("theory", theory_path)->required();
  add_bound(abstract);
  add_cap(abstract);
  abstract->add_option("--out,-o", out_path, "Write the transition system as JSON");

  CLI::App* bisim = app.add_subcommand("bisim", "Compare two transition systems");
  bisim->add_option("ts1", ts1)->required();
  bisim->add_option("ts2", ts2)->required();

  CLI::App* transform = app.add_subcommand("transform", "Print a transformed theory");
  transform->add_option("theory", theory_path)->required();
  auto* ob = transform->add_option("--blocking", blocking, "Block actions leaving the bound");
  auto* of = transform->add_option("--fading", fading, "Fading fluents: ell b")->expected(2);
  auto* op = transform->add_option("--primed", primed_b, "Theory used by the boundedness check");
  ob->excludes(of)->excludes(op);
  of->excludes(op);
  transform->add_option("--out,-o", out_path);

  CLI::App* vinc = app.add_subcommand("verify-incomplete", "Check a property over all bounded initial models");
  vinc->add_option("theory", theory_path)->required();
  vinc->add_option("--formula,-f", formula)->required();
  add_bound(vinc);
  add_cap(vinc);

  CLI::App* atm = app.add_subcommand("atm", "Encode an alternating Turing machine");
  atm->add_option("machine", machine)->required();
  atm->add_option("--input,-i", input, "Tape contents, one symbol per character");
  atm->add_option("--ell,-l", ell, "Index of the last tape cell")->required();
  atm->add_flag("--verify", atm_verify, "Model check acceptance instead of printing the theory");
  add_cap(atm);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitHolds;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitHolds;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  RunReport rep;
  const auto t0 = std::chrono::steady_clock::now();
  auto finish = [&](int code) {
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.print(out, json);
    return code;
  };
  AbstractionConfig cfg;
  if (trace) cfg.trace = [&](const std::string& s) { err << s << "\n"; };

  try {
    if (*verify) {
      rep.command = "verify";
      Theory t = load_theory(theory_path);
      std::size_t b = bound_or_declared(bound, t);
      cfg.max_states = max_states;
      rep.inputs = Json{{"theory", theory_path}, {"formula", formula}, {"bound", b}};
      MuFormula f = parse_formula(formula, t);
      if (!t.has_complete_init())
        throw Error("theory has init-constraints; use verify-incomplete");
      AbstractionResult abs = build_abstract_ts(t, b, cfg);
      rep.stats(abs);
      Verdict v = check(abs.ts, f);
      rep.verdict = v.holds ? "holds" : "fails";
      if (!v.path_kind.empty()) {
        rep.path_kind = v.path_kind;
        rep.path = labels_along(abs, v.path);
      }
      return finish(v.holds ? kExitHolds : kExitFails);
    }
    if (*checkb) {
      rep.command = "check-bounded";
      Theory t = load_theory(theory_path);
      std::size_t b = bound_or_declared(bound, t);
      cfg.max_states = max_states;
      rep.inputs = Json{{"theory", theory_path}, {"bound", b}};
      BoundednessVerdict v = check_bounded(t, b, cfg);
      rep.verdict = v.bounded ? "bounded" : "not bounded";
      rep.has_stats = true;
      rep.states = v.states;
      rep.transitions = v.transitions;
      rep.adom = v.adom;
      AdomBounds ab = adom_bounds(t, b);
      rep.bprime = ab.bprime;
      rep.cap = ab.cap;
      if (!v.bounded) {
        rep.path_kind = "counterexample";
        rep.path = v.counter_labels;
      }
      rep.notes.push_back(v.reason);
      return finish(v.bounded ? kExitHolds : kExitFails);
    }
    if (*abstract) {
      rep.command = "abstract";
      Theory t = load_theory(theory_path);
      std::size_t b = bound_or_declared(bound, t);
      cfg.max_states = max_states;
      AbstractionResult abs = build_abstract_ts(t, b, cfg);
      std::string js = ts_to_json(abs.ts);
      if (out_path.empty()) {
        out << js;
        return kExitHolds;
      }
      write_text(out_path, js);
      rep.inputs = Json{{"theory", theory_path}, {"bound", b}, {"out", out_path}};
      rep.verdict = "written";
      rep.stats(abs);
      return finish(kExitHolds);
    }
    if (*bisim) {
      rep.command = "bisim";
      rep.inputs = Json{{"ts1", ts1}, {"ts2", ts2}};
      BisimResult r = is_bisimilar(load_ts(ts1), load_ts(ts2));
      rep.verdict = r.bisimilar ? "bisimilar" : "not bisimilar";
      rep.notes.push_back("refinement rounds " + std::to_string(r.rounds));
      return finish(r.bisimilar ? kExitHolds : kExitFails);
    }
    if (*transform) {
      Theory t = load_theory(theory_path);
      Theory r;
      if (blocking)
        r = blocking_transform(t, *blocking);
      else if (fading.size() == 2)
        r = fading_transform(t, fading[0], fading[1]);
      else if (primed_b)
        r = boundedness_check_theory(t, *primed_b);
      else
        throw Error("transform needs one of --blocking, --fading, --primed");
      std::string dsl = to_dsl(r);
      if (out_path.empty())
        out << dsl;
      else
        write_text(out_path, dsl);
      return kExitHolds;
    }
    if (*vinc) {
      rep.command = "verify-incomplete";
      Theory t = load_theory(theory_path);
      std::size_t b = bound_or_declared(bound, t);
      cfg.max_states = max_states;
      rep.inputs = Json{{"theory", theory_path}, {"formula", formula}, {"bound", b}};
      MuFormula f = parse_formula(formula, t);
      IncompleteVerdict v = verify_incomplete(t, f, b, cfg);
      rep.verdict = v.holds ? "holds" : "fails";
      rep.notes.push_back("initial models up to isomorphism: " + std::to_string(v.cells.interpretations.size()));
      for (std::size_t k = 0; k < v.cell_holds.size(); ++k) {
        rep.notes.push_back("model " + std::to_string(k) + " [" +
                            to_string(v.cells.interpretations[k], t.signature()) + "]: " +
                            (v.cell_holds[k] ? "holds" : "fails"));
      }
      return finish(v.holds ? kExitHolds : kExitFails);
    }
    if (*atm) {
      AtmEncoding enc = atm_theory(load_atm(machine), input, ell);
      if (!atm_verify) {
        out << enc.dsl;
        return kExitHolds;
      }
      rep.command = "atm";
      rep.inputs = Json{{"machine", machine}, {"input", input}, {"ell", ell}};
      cfg.max_states = max_states;
      AbstractionResult abs = build_abstract_ts(enc.theory, *enc.theory.declared_bound, cfg);
      rep.stats(abs);
      bool acc = check(abs.ts, enc.acceptance).holds;
      rep.verdict = acc ? "accepts" : "rejects";
      return finish(acc ? kExitHolds : kExitFails);
    }
  } catch (const BoundViolation& e) {
    err << "bound violation: " << e.what() << "\n";
    if (!e.trace().empty()) {
      err << "  trace:";
      for (const std::string& s : e.trace()) err << " " << s;
      err << "\n";
    }
    return kExitBound;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  err << "error: no command\n";
  return kExitError;
}

}  // namespace bsc
