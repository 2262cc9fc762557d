#include "idll/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "idll/bridge.hpp"
#include "idll/corpus.hpp"
#include "idll/cutelim.hpp"
#include "idll/proof_io.hpp"
#include "idll/semantics.hpp"
#include "idll/totspace.hpp"

namespace idll::cli {

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  bool machine = false;

  void kv(std::string_view key, const std::string& value) const { out << key << '=' << value << '\n'; }
};

std::string read_input(const Context& cx, const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(cx.in), std::istreambuf_iterator<char>()};
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open " + path);
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

std::size_t line_of(std::string_view text, std::size_t position) {
  position = std::min(position, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(position), '\n'));
}

std::vector<Proof> read_proofs(const Context& cx, const std::string& path) {
  const std::string text = read_input(cx, path);
  try {
    std::vector<Proof> proofs = parse_proofs(text);
    if (proofs.empty()) throw InputError(path + ": no proof found");
    return proofs;
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(line_of(text, e.position())) + ": " + e.what());
  }
}

Sequent read_sequent(const std::string& text) {
  try {
    return parse_sequent(text);
  } catch (const ParseError& e) {
    throw InputError("sequent, column " + std::to_string(e.position() + 1) + ": " + e.what());
  }
}

tot::TotSpace read_space(const Context& cx, const std::string& path) {
  try {
    return tot::parse_space(read_input(cx, path));
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string one_line(const std::string& text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (c == '\n' || c == ' ') {
      space = true;
      continue;
    }
    if (space && !out.empty() && c != ')') out += ' ';
    space = false;
    out += c;
  }
  return out;
}

System make_system(const std::string& logic, const std::string& axioms) {
  return System{logic == "ll" ? Logic::LL : Logic::IdLL, axioms == "atomic" ? AxiomMode::Atomic : AxiomMode::General};
}

void emit_proof(const Context& cx, const Proof& p) {
  if (cx.machine) {
    cx.kv("proof", one_line(print_proof(p)));
  } else {
    cx.out << print_proof(p) << '\n';
  }
}

// Reports a rejected proof; returns true when the proof checks.
bool report_check(const Context& cx, const Proof& p, const System& sys) {
  const auto error = check(p, sys);
  if (cx.machine) {
    cx.out << check_report(error);
  } else if (!error) {
    cx.out << "ok\n";
  } else {
    cx.out << "rejected: " << reason_code(error->reason) << " at " << print_path(error->path) << " ("
           << rule_name(error->rule) << "): " << error->message << '\n';
  }
  return !error;
}

void emit_space(const Context& cx, const tot::TotSpace& a) {
  if (!cx.machine) {
    cx.out << tot::print_space(a);
    return;
  }
  std::string base;
  for (const auto& x : a.base) base += (base.empty() ? "" : " ") + x;
  cx.kv("base", base);
  cx.kv("totals", std::to_string(a.totals.size()));
  for (tot::Mask m : a.totals) cx.kv("total", tot::set_label(a, m));
}

struct Flags {
  std::string system = "idll";
  std::string axioms = "general";
  std::vector<std::string> files;
  std::string sequent;
  std::string to;
  std::string env;
  std::string op;
  std::string kind = "cuts";
  bool trace = false;
  bool normalize_after = false;
  bool show = false;
  std::optional<std::uint64_t> fuel;
  std::size_t max_nodes = 64;
  unsigned contractions = 0;
  unsigned depth = 12;
  unsigned search_contractions = 2;
  std::size_t atoms = 3;
  std::size_t random = 50;
  std::size_t samples = 400;
  std::uint64_t seed = 1;
  std::uint64_t corpus_seed = CorpusOptions{}.seed;
  std::size_t count = CorpusOptions{}.per_system;
  std::size_t corpus_nodes = CorpusOptions{}.max_nodes;
};

int cmd_check(const Context& cx, const Flags& f) {
  const System sys = make_system(f.system, f.axioms);
  int code = 0;
  for (const auto& file : f.files) {
    const auto proofs = read_proofs(cx, file);
    for (std::size_t i = 0; i < proofs.size(); ++i) {
      if (proofs.size() > 1 || f.files.size() > 1) {
        if (cx.machine) cx.kv("proof", file + "#" + std::to_string(i));
        else cx.out << file << '#' << i << ": ";
      }
      if (!report_check(cx, proofs[i], sys)) code = 1;
    }
  }
  return code;
}

int cmd_normalize(const Context& cx, const Flags& f) {
  const System sys = make_system(f.system, f.axioms);
  const auto proofs = read_proofs(cx, f.files.front());
  int code = 0;
  for (std::size_t i = 0; i < proofs.size(); ++i) {
    const Proof& p = proofs[i];
    if (auto error = check(p, sys)) {
      cx.err << "input proof " << i << " is rejected: " << error->message << '\n';
      return 1;
    }
    const ReductionTrace trace = normalize(p, sys, f.fuel.value_or(default_fuel(p)));
    if (i > 0 && !cx.machine) cx.out << '\n';
    if (cx.machine) {
      cx.kv("steps", std::to_string(trace.steps.size()));
      cx.kv("fuel_exhausted", trace.fuel_exhausted ? "true" : "false");
      cx.kv("cut_free", is_cut_free(trace.final) ? "true" : "false");
    }
    if (f.trace) {
      for (const auto& step : trace.steps) {
        if (cx.machine) cx.kv("step", step.kind + " " + print_path(step.path));
        else cx.out << "; " << step.kind << ' ' << print_path(step.path) << '\n';
      }
    }
    emit_proof(cx, trace.final);
    if (trace.fuel_exhausted) {
      cx.err << "fuel exhausted after " << trace.steps.size() << " steps\n";
      code = 1;
    }
  }
  return code;
}

int cmd_translate(const Context& cx, const Flags& f) {
  const bool to_ll = f.to == "ll";
  const System source = make_system(to_ll ? "idll" : "ll", f.axioms);
  const System target = make_system(to_ll ? "ll" : "idll", f.axioms);
  const AxiomMode axioms = source.axioms;
  const auto proofs = read_proofs(cx, f.files.front());
  for (std::size_t i = 0; i < proofs.size(); ++i) {
    if (auto error = check(proofs[i], source)) {
      cx.err << "input proof " << i << " is rejected: " << error->message << '\n';
      return 1;
    }
    const Proof q = to_ll ? idll_to_ll(proofs[i], axioms) : ll_to_idll(proofs[i], axioms, f.normalize_after);
    if (auto error = check(q, target)) {
      cx.err << "translation of proof " << i << " is rejected: " << error->message << '\n';
      return 1;
    }
    if (i > 0 && !cx.machine) cx.out << '\n';
    emit_proof(cx, q);
  }
  return 0;
}

int cmd_count(const Context& cx, const Flags& f) {
  const Sequent goal = read_sequent(f.sequent);
  const Enumeration e = enumerate_cutfree(goal, make_system(f.system, f.axioms), f.max_nodes, f.contractions);
  const std::string flag = e.exact ? "exact" : "bounded";
  if (cx.machine) {
    cx.kv("count", std::to_string(e.proofs.size()));
    cx.kv("completeness", flag);
  } else {
    cx.out << e.proofs.size() << ' ' << flag << '\n';
  }
  if (f.show) {
    for (const Proof& p : e.proofs) emit_proof(cx, p);
  }
  return 0;
}

int cmd_prove(const Context& cx, const Flags& f) {
  const Sequent goal = read_sequent(f.sequent);
  const SearchResult r = provable(goal, make_system(f.system, f.axioms), SearchBounds{f.depth, f.search_contractions});
  if (cx.machine) cx.kv("verdict", std::string(verdict_name(r.verdict)));
  else cx.out << verdict_name(r.verdict) << '\n';
  if (f.show && r.witness) emit_proof(cx, *r.witness);
  return r.verdict == Verdict::Yes ? 0 : 1;
}

std::vector<tot::TotSpace> law_family(const Flags& f) {
  std::vector<tot::TotSpace> family = tot::exhaustive_family(f.atoms);
  std::mt19937_64 rng(f.seed);
  for (std::size_t i = 0; i < f.random; ++i) family.push_back(tot::random_space(rng, 4));
  return family;
}

int cmd_model(const Context& cx, const Flags& f) {
  const std::string& op = f.op;
  if (op == "laws") {
    if (f.atoms > 3) throw InputError("--atoms: the exhaustive family stops at 3 atoms");
    const auto results = tot::check_laws(law_family(f), tot::LawOptions{f.seed, f.samples});
    int code = 0;
    for (const auto& r : results) {
      if (!r.pass()) code = 1;
      if (cx.machine) {
        cx.kv("law", r.name);
        cx.kv("pass", r.pass() ? "true" : "false");
        cx.kv("cases", std::to_string(r.cases));
        cx.kv("failures", std::to_string(r.failures));
        if (!r.pass()) cx.kv("counterexample", one_line(r.counterexample));
      } else {
        cx.out << (r.pass() ? "PASS " : "FAIL ") << r.name << " (" << r.failures << '/' << r.cases << " failing)\n";
        if (!r.pass()) cx.out << "  counterexample: " << r.counterexample << '\n';
      }
    }
    return code;
  }
  const bool binary = op == "tensor" || op == "par" || op == "with" || op == "plus";
  if (f.files.size() != (binary ? 2u : 1u)) {
    throw InputError("model " + op + " takes " + (binary ? "two space files" : "one space file"));
  }
  const tot::TotSpace a = read_space(cx, f.files[0]);
  if (op == "show" || op == "check") {
    const bool closed = tot::is_totality_space(a);
    emit_space(cx, a);
    if (cx.machine) cx.kv("totality_space", closed ? "true" : "false");
    else cx.out << (closed ? "totality space\n" : "not biclosed\n");
    return op == "check" && !closed ? 1 : 0;
  }
  if (op == "dual") emit_space(cx, tot::dual(a));
  else if (op == "bidual") emit_space(cx, tot::closure(a));
  else if (op == "bang") emit_space(cx, tot::bang(a));
  else if (op == "whynot") emit_space(cx, tot::whynot(a));
  else {
    const tot::TotSpace b = read_space(cx, f.files[1]);
    if (op == "tensor") emit_space(cx, tot::tensor(a, b));
    else if (op == "par") emit_space(cx, tot::par(a, b));
    else if (op == "with") emit_space(cx, tot::with_(a, b));
    else emit_space(cx, tot::plus(a, b));
  }
  return 0;
}

sem::Environment read_environment(const Context& cx, const std::string& path) {
  const std::filesystem::path dir = path == "-" ? std::filesystem::path{} : std::filesystem::path(path).parent_path();
  try {
    return sem::parse_environment(read_input(cx, path), dir);
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

int cmd_interp(const Context& cx, const Flags& f) {
  const sem::Environment env = read_environment(cx, f.env);
  const auto proofs = read_proofs(cx, f.files.front());
  int code = 0;
  for (std::size_t i = 0; i < proofs.size(); ++i) {
    const Proof& p = proofs[i];
    if (auto error = check(p, sem::infer_system(p))) {
      cx.err << "input proof " << i << " is rejected: " << error->message << '\n';
      return 1;
    }
    sem::Interpreter interp(env);
    const sem::Denotation d = interp.interpret(p);
    const bool total = interp.is_total(d, p.conclusion());
    if (!total) code = 1;
    if (cx.machine) {
      cx.kv("tuples", std::to_string(d.value.size()));
      std::istringstream lines(sem::print_denotation(d));
      for (std::string line; std::getline(lines, line);) cx.kv("tuple", line);
      cx.kv("total", total ? "true" : "false");
    } else {
      if (i > 0) cx.out << '\n';
      cx.out << sem::print_denotation(d) << (total ? "total\n" : "not total\n");
    }
  }
  return code;
}

int cmd_soundness(const Context& cx, const Flags& f) {
  const std::vector<Proof> corpus = f.files.empty()
                                        ? cut_corpus(CorpusOptions{f.corpus_seed, f.count, f.corpus_nodes})
                                        : read_proofs(cx, f.files.front());
  std::vector<sem::Environment> envs;
  if (!f.env.empty()) envs.push_back(read_environment(cx, f.env));
  const sem::SoundnessReport r = sem::soundness_suite(corpus, envs);
  if (cx.machine) {
    cx.kv("proofs", std::to_string(r.proofs));
    cx.kv("denotations", std::to_string(r.denotations));
    cx.kv("steps", std::to_string(r.steps));
    cx.kv("skipped", std::to_string(r.skipped));
    cx.kv("failures", std::to_string(r.failures.size()));
    for (const auto& failure : r.failures) cx.kv("failure", failure);
  } else {
    cx.out << r.proofs << " proofs, " << r.denotations << " denotations, " << r.steps << " reduction steps, "
           << r.skipped << " skipped, " << r.failures.size() << " failures\n";
    for (const auto& failure : r.failures) cx.out << "  " << failure << '\n';
  }
  return r.ok() ? 0 : 1;
}

int cmd_corpus(const Context& cx, const Flags& f) {
  if (f.kind == "sequents") {
    for (const Sequent& s : sequent_corpus(f.corpus_seed, f.count)) {
      if (cx.machine) cx.kv("sequent", print_sequent(s));
      else cx.out << print_sequent(s) << '\n';
    }
    return 0;
  }
  const auto corpus = cut_corpus(CorpusOptions{f.corpus_seed, f.count, f.corpus_nodes});
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (i > 0 && !cx.machine) cx.out << '\n';
    emit_proof(cx, corpus[i]);
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proof checker, cut eliminator and finite model checker for idempotent linear logic", "idll"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "text or machine (key=value lines)")->check(CLI::IsMember({"text", "machine"}));

  Flags f;
  std::function<int(const Context&, const Flags&)> action;
  const auto systems = CLI::IsMember({"idll", "ll"});
  const auto axiom_modes = CLI::IsMember({"general", "atomic"});
  const auto on = [&](CLI::App* sub, int (*fn)(const Context&, const Flags&)) {
    sub->callback([&action, fn] { action = fn; });
  };

  auto* check_cmd = app.add_subcommand("check", "Check proofs");
  check_cmd->add_option("--system", f.system)->check(systems);
  check_cmd->add_option("--axioms", f.axioms)->check(axiom_modes);
  check_cmd->add_option("files", f.files, "Proof files ('-' for stdin)")->required();
  on(check_cmd, cmd_check);

  auto* norm_cmd = app.add_subcommand("normalize", "Eliminate cuts");
  norm_cmd->add_option("--system", f.system)->check(systems);
  norm_cmd->add_option("--axioms", f.axioms)->check(axiom_modes);
  norm_cmd->add_flag("--trace", f.trace, "Print one line per reduction step");
  norm_cmd->add_option("--fuel", f.fuel, "Step budget (default 2^size)");
  norm_cmd->add_option("file", f.files)->required()->expected(1);
  on(norm_cmd, cmd_normalize);

  auto* tr_cmd = app.add_subcommand("translate", "Translate proofs between LL and IdLL");
  tr_cmd->add_option("--to", f.to)->required()->check(systems);
  tr_cmd->add_option("--axioms", f.axioms)->check(axiom_modes);
  tr_cmd->add_flag("--normalize", f.normalize_after, "Eliminate the lemma cuts of an LL to IdLL translation");
  tr_cmd->add_option("file", f.files)->required()->expected(1);
  on(tr_cmd, cmd_translate);

  auto* count_cmd = app.add_subcommand("count", "Count cut-free proofs of a sequent");
  count_cmd->add_option("--system", f.system)->check(systems);
  count_cmd->add_option("--axioms", f.axioms, "Identity axioms (default atomic)")->check(axiom_modes);
  count_cmd->add_option("--max-nodes", f.max_nodes);
  count_cmd->add_option("--contractions", f.contractions, "Contractions allowed per proof");
  count_cmd->add_flag("--show", f.show, "Print the proofs");
  count_cmd->add_option("sequent", f.sequent)->required();
  count_cmd->preparse_callback([&f](std::size_t) { f.axioms = "atomic"; });
  on(count_cmd, cmd_count);

  auto* prove_cmd = app.add_subcommand("prove", "Bounded provability search");
  prove_cmd->add_option("--system", f.system)->check(systems);
  prove_cmd->add_option("--axioms", f.axioms)->check(axiom_modes);
  prove_cmd->add_option("--depth", f.depth);
  prove_cmd->add_option("--contractions", f.search_contractions, "Contractions per formula per branch");
  prove_cmd->add_flag("--witness", f.show, "Print the proof found");
  prove_cmd->add_option("sequent", f.sequent)->required();
  on(prove_cmd, cmd_prove);

  auto* model_cmd = app.add_subcommand("model", "Operations on finite totality spaces");
  model_cmd
      ->add_option("op", f.op, "show, check, dual, bidual, bang, whynot, tensor, par, with, plus or laws")
      ->required()
      ->check(CLI::IsMember({"show", "check", "dual", "bidual", "bang", "whynot", "tensor", "par", "with", "plus", "laws"}));
  model_cmd->add_option("files", f.files, "Space description files");
  model_cmd->add_option("--atoms", f.atoms, "laws: exhaustive family up to this many atoms");
  model_cmd->add_option("--random", f.random, "laws: number of random spaces");
  model_cmd->add_option("--seed", f.seed, "laws: seed for random spaces and samples");
  model_cmd->add_option("--samples", f.samples, "laws: sampled pairs per binary law");
  on(model_cmd, cmd_model);

  auto* interp_cmd = app.add_subcommand("interp", "Denotation of a proof");
  interp_cmd->add_option("--env", f.env, "Environment file")->required();
  interp_cmd->add_option("file", f.files)->required()->expected(1);
  on(interp_cmd, cmd_interp);

  auto* sound_cmd = app.add_subcommand("soundness", "Denotations are total and invariant under cut elimination");
  sound_cmd->add_option("--env", f.env, "Single environment (default: all Dis(2)/Dis(3) assignments)");
  sound_cmd->add_option("--seed", f.corpus_seed, "Seed of the generated corpus");
  sound_cmd->add_option("--count", f.count, "Generated proofs per system");
  sound_cmd->add_option("--max-nodes", f.corpus_nodes);
  sound_cmd->add_option("file", f.files, "Proof corpus (default: generated)")->expected(0, 1);
  on(sound_cmd, cmd_soundness);

  auto* corpus_cmd = app.add_subcommand("corpus", "Print a generated test corpus");
  corpus_cmd->add_option("--kind", f.kind)->check(CLI::IsMember({"cuts", "sequents"}));
  corpus_cmd->add_option("--seed", f.corpus_seed);
  corpus_cmd->add_option("--count", f.count, "Proofs per system, or sequents");
  corpus_cmd->add_option("--max-nodes", f.corpus_nodes);
  on(corpus_cmd, cmd_corpus);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const Context cx{in, out, err, format == "machine"};
  try {
    return action(cx, f);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const sem::UnassignedLiteral& e) {
    err << "error: environment: " << e.what() << '\n';
  } catch (const tot::CapExceeded& e) {
    err << "error: " << e.what() << '\n';
  } catch (const sem::SemanticFault& e) {
    err << "semantic fault: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace idll::cli
