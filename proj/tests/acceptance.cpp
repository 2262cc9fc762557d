// Acceptance runner: one numbered check per line, `--criterion N` to run a
// single one. Exit status is 0 only if every selected check passes.

#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "idll/bridge.hpp"
#include "idll/corpus.hpp"
#include "idll/cutelim.hpp"
#include "idll/proof_io.hpp"
#include "idll/semantics.hpp"
#include "idll/totspace.hpp"

using namespace idll;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes << "  failed: " << what << '\n';
    }
  }
};

const Formula p0 = Formula::pos(0);

Proof cut_of(const Proof& left, const Proof& right) {
  return build(Rule::cut(left.conclusion().back()), {left, right}, System::idll());
}

void checker_fidelity(Outcome& v) {
  const Proof pi1 = eta_block(2, 1, p0);
  const Proof pi2 = eta_block(1, 2, p0);
  for (const Proof& p : {pi1, pi2, eta_block(1, 1, p0), eta_block(2, 2, p0)}) {
    v.require(!check(p, System::idll()), "worked proof " + print_sequent(p.conclusion()) + " checks");
    v.require(!check(parse_proof(print_proof(p)), System::idll()), "worked proof survives its text form");
  }

  struct Mutation {
    const char* name;
    const char* text;
    Reason reason;
  };
  const std::vector<Mutation> mutations = {
      {"n-dereliction over a ?-headed premise",
       R"((nder :at 0 :n 1 "|- ??p0, p0^" (nder :at 0 :n 1 "|- ?p0, p0^" (id "|- p0, p0^"))))",
       Reason::SideCondition},
      {"n-promotion over a !-headed premise",
       R"((nprom :at 1 :n 1 "|- ?p0, !!p0^" (nprom :at 1 :n 1 "|- ?p0, !p0^" (nder :at 0 :n 1 "|- ?p0, p0^" (id "|- p0, p0^")))))",
       Reason::SideCondition},
      {"n-promotion next to a literal", R"((nprom :at 1 :n 1 "|- p0, !p0^" (id "|- p0, p0^")))",
       Reason::PromotionContext},
      {"n-promotion next to a tensor",
       R"((nprom :at 2 :n 1 "|- ?p0, p0^ * p0, !p0^" (times :split 1 "|- ?p0, p0^ * p0, p0^" (nder :at 0 :n 1 "|- ?p0, p0^" (id "|- p0, p0^")) (id "|- p0, p0^"))))",
       Reason::PromotionContext},
      {"cut on mismatched blocks",
       R"((cut :cut "!p0^" "|- ??p0, ??p0, !p0^" (nprom :at 1 :n 1 "|- ??p0, !p0^" (nder :at 0 :n 2 "|- ??p0, p0^" (id "|- p0, p0^"))) (nprom :at 1 :n 1 "|- ??p0, !p0^" (nder :at 0 :n 2 "|- ??p0, p0^" (id "|- p0, p0^")))))",
       Reason::CutMismatch},
      {"cut formula that is not the left premise's last",
       R"((cut :cut "p0" "|- p0^, p0" (id "|- p0, p0^") (id "|- p0^, p0")))", Reason::CutMismatch},
      {"LL dereliction", R"((der :at 0 "|- ?p0, p0^" (id "|- p0, p0^")))", Reason::WrongSystem},
      {"LL promotion", R"((prom :at 1 "|- ?p0, !p0^" (nder :at 0 :n 1 "|- ?p0, p0^" (id "|- p0, p0^"))))",
       Reason::WrongSystem},
      {"identity with a premise", R"((id "|- p0, p0^" (id "|- p0, p0^")))", Reason::Arity},
      {"times with one premise", R"((times :split 1 "|- p0, p0^ * p1" (id "|- p0, p0^")))", Reason::Arity},
  };
  for (const auto& m : mutations) {
    const auto error = check(parse_proof(m.text), System::idll());
    const std::string got = error ? std::string(reason_code(error->reason)) : "ok";
    v.require(error && error->reason == m.reason,
              std::string(m.name) + ": expected " + std::string(reason_code(m.reason)) + ", got " + got);
  }
  v.notes << "  4 worked proofs, " << mutations.size() << " mutations\n";
}

void cut_elimination(Outcome& v) {
  const auto corpus = cut_corpus();
  v.require(corpus.size() >= 100, "corpus has at least 100 proofs");
  std::size_t steps = 0, idll = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Proof& p = corpus[i];
    const System sys = sem::infer_system(p);
    if (sys.logic == Logic::IdLL) ++idll;
    const std::string id = "proof " + std::to_string(i);
    v.require(!check(p, sys), id + " checks");
    v.require(!is_cut_free(p), id + " contains a Cut");
    v.require(p.size() <= 40, id + " has at most 40 nodes");
    const ReductionTrace t = normalize(p, sys, default_fuel(p));
    steps += t.steps.size();
    v.require(!t.fuel_exhausted, id + " normalizes within fuel 2^size");
    v.require(is_cut_free(t.final), id + " normal form is cut-free");
    v.require(!check(t.final, sys), id + " normal form checks");
    v.require(same_multiset(t.final.conclusion(), p.conclusion()), id + " keeps its conclusion");
  }
  v.require(idll > 0 && idll < corpus.size(), "corpus covers both systems");
  v.notes << "  " << corpus.size() << " proofs (" << idll << " IdLL), " << steps << " reduction steps\n";
}

void eta_isomorphism(Outcome& v) {
  const Proof pi1 = eta_block(2, 1, p0);
  const Proof pi2 = eta_block(1, 2, p0);
  const auto run = [&](const Proof& cut, const Proof& expected, const std::string& pair) {
    const ReductionTrace t = normalize(cut, System::idll(), default_fuel(cut));
    v.require(is_cut_free(t.final) && !check(t.final, System::idll()), pair + " normal form checks");
    v.require(exchange_normal_form(t.final) == exchange_normal_form(expected),
              pair + " normalizes to " + print_sequent(expected.conclusion()) + " eta identity");
    v.notes << "  " << pair << ": " << print_sequent(t.final.conclusion()) << " in " << t.steps.size() << " steps\n";
  };
  run(cut_of(pi2, pi1), eta_block(1, 1, p0), "!!/?? cut");
  run(cut_of(pi1, pi2), eta_block(2, 2, p0), "!/? cut");
}

void provability_equivalence(Outcome& v) {
  const auto sequents = sequent_corpus(CorpusOptions{}.seed, 50, 8);
  v.require(sequents.size() == 50, "50 sequents");
  std::size_t decided = 0, provable_count = 0;
  std::vector<std::pair<Proof, System>> proofs;
  for (const Sequent& s : sequents) {
    const SearchResult ll = provable(s, System::ll());
    const SearchResult idll = provable(s, System::idll());
    if (ll.verdict != Verdict::Unknown && idll.verdict != Verdict::Unknown) {
      ++decided;
      v.require(ll.verdict == idll.verdict, "verdicts agree on " + print_sequent(s));
      if (ll.verdict == Verdict::Yes) ++provable_count;
    }
    if (ll.witness) proofs.emplace_back(*ll.witness, System::ll());
    if (idll.witness) proofs.emplace_back(*idll.witness, System::idll());
  }
  for (const Proof& p : cut_corpus()) proofs.emplace_back(p, sem::infer_system(p));
  for (const auto& [p, sys] : proofs) {
    const bool from_idll = sys.logic == Logic::IdLL;
    const Proof there = from_idll ? idll_to_ll(p) : ll_to_idll(p);
    const Proof back = from_idll ? ll_to_idll(there) : idll_to_ll(there);
    const System other = from_idll ? System::ll() : System::idll();
    v.require(!check(there, other) && there.conclusion() == p.conclusion(),
              "translation of " + print_sequent(p.conclusion()) + " checks with the same conclusion");
    v.require(!check(back, sys) && back.conclusion() == p.conclusion(),
              "round trip of " + print_sequent(p.conclusion()) + " checks with the same conclusion");
  }
  v.notes << "  " << decided << "/50 decided (" << provable_count << " provable), " << proofs.size()
          << " proofs translated both ways\n";
}

// Interleavings of single-step derelictions and promotions for
// |- ?^j p0^, !^k p0; a promotion needs a ?-headed context.
std::size_t hand_count(unsigned j, unsigned k) {
  if (j == 0) return k == 0 ? 1 : 0;
  return hand_count(j - 1, k) + (k > 0 ? hand_count(j, k - 1) : 0);
}

void proof_counting(Outcome& v) {
  const auto goal = [](unsigned n) { return Sequent{whynot_n(dual(p0), n), bang_n(p0, n)}; };
  for (unsigned n = 1; n <= 3; ++n) {
    const Enumeration e = enumerate_cutfree(goal(n), System::idll(AxiomMode::Atomic), 64);
    v.require(e.exact && e.proofs.size() == 1, "IdLL n=" + std::to_string(n) + " has exactly 1 proof");
    v.notes << "  IdLL n=" << n << ": " << e.proofs.size() << (e.exact ? " exact" : " bounded") << '\n';
  }
  const std::array<std::size_t, 3> expected{1, 3, 10};
  for (unsigned n = 1; n <= 3; ++n) {
    const Enumeration e = enumerate_cutfree(goal(n), System::ll(AxiomMode::Atomic), 64);
    v.require(hand_count(n, n) == expected[n - 1], "hand count for n=" + std::to_string(n));
    v.require(e.exact && e.proofs.size() == hand_count(n, n), "LL n=" + std::to_string(n) + " matches the hand count");
    v.notes << "  LL n=" << n << ": " << e.proofs.size() << (e.exact ? " exact" : " bounded") << '\n';
  }
}

void totality_laws(Outcome& v) {
  std::vector<tot::TotSpace> family = tot::exhaustive_family(3);
  const std::size_t exhaustive = family.size();
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) family.push_back(tot::random_space(rng, 4));
  for (const auto& r : tot::check_laws(family)) {
    v.require(r.pass(), r.name + " (" + std::to_string(r.failures) + "/" + std::to_string(r.cases) + " failing)");
    if (!r.pass()) v.notes << "    counterexample: " << r.counterexample << '\n';
  }
  v.notes << "  family: " << exhaustive << " exhaustive + 50 random spaces\n";
}

void semantic_soundness(Outcome& v) {
  const sem::SoundnessReport r = sem::soundness_suite(cut_corpus(), {});
  v.require(r.ok(), "no failures");
  v.require(r.skipped == 0, "no environment skipped by the caps");
  v.require(r.steps > 0, "reduction steps were compared");
  for (std::size_t i = 0; i < r.failures.size() && i < 10; ++i) v.notes << "    " << r.failures[i] << '\n';
  v.notes << "  " << r.proofs << " proofs, " << r.denotations << " denotations, " << r.steps << " steps, "
          << r.skipped << " skipped\n";
}

std::string capture(const std::string& command) {
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) return "<popen failed>";
  std::string out;
  std::array<char, 4096> buffer;
  while (std::size_t n = std::fread(buffer.data(), 1, buffer.size(), pipe.get())) out.append(buffer.data(), n);
  return out;
}

void determinism(Outcome& v) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const Formula f = random_formula(rng, FormulaShape{3, 10, 3});
    const std::string text = print_formula(f);
    const Formula back = parse_formula(text);
    v.require(back == f && print_formula(back) == text, "round trip of " + text);
  }

  const std::string bin = IDLL_BINARY;
  const std::string dir = IDLL_DATA_DIR;
  const std::vector<std::string> script = {
      "check --system idll " + dir + "/pi1.proof " + dir + "/pi2.proof",
      "normalize --trace " + dir + "/cut_pi2_pi1.proof",
      "normalize --trace " + dir + "/cut_pi1_pi2.proof",
      "count --system ll --max-nodes 32 '|- ??p0^, !!p0'",
      "count --system idll --show '|- ???p0^, !!!p0'",
      "prove --system ll --witness '|- (p0 * p1) -o (p1 * p0)'",
      "translate --to ll " + dir + "/pi1.proof",
      "interp --env " + dir + "/mixed.env " + dir + "/pi2.proof",
      "corpus --kind sequents",
      "corpus --count 10",
      "--format machine model laws",
      "--format machine soundness",
  };
  std::string first, second;
  for (const auto& cmd : script) first += capture(bin + " " + cmd + " 2>&1; echo exit=$?");
  for (const auto& cmd : script) second += capture(bin + " " + cmd + " 2>&1; echo exit=$?");
  v.require(!first.empty() && first.find("<popen failed>") == std::string::npos, "CLI ran");
  v.require(first == second, "CLI transcripts are byte-identical");
  v.notes << "  1000 formulas, " << script.size() << " CLI commands, transcript of " << first.size() << " bytes\n";
}

struct Criterion {
  const char* name;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"checker fidelity", checker_fidelity},
      {"cut elimination", cut_elimination},
      {"eta isomorphism", eta_isomorphism},
      {"provability equivalence", provability_equivalence},
      {"proof counting", proof_counting},
      {"totality-space laws", totality_laws},
      {"semantic soundness", semantic_soundness},
      {"determinism and round trip", determinism},
  };
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      const std::size_t n = std::stoul(argv[++i]);
      if (n < 1 || n > criteria.size()) {
        std::cerr << "no criterion " << n << '\n';
        return 2;
      }
      selected.push_back(n);
    } else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 2;
    }
  }
  if (selected.empty()) {
    for (std::size_t n = 1; n <= criteria.size(); ++n) selected.push_back(n);
  }

  bool all = true;
  for (std::size_t n : selected) {
    Outcome v;
    try {
      criteria[n - 1].run(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    all = all && v.pass;
    std::cout << "criterion " << n << " (" << criteria[n - 1].name << "): " << (v.pass ? "PASS" : "FAIL") << '\n'
              << v.notes.str();
  }
  return all ? 0 : 1;
}
