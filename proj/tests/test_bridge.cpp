#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "idll/bridge.hpp"
#include "idll/corpus.hpp"
#include "idll/cutelim.hpp"
#include "idll/proof_io.hpp"

using namespace idll;

namespace {

const Formula p0 = Formula::pos(0);

Sequent block_goal(unsigned n) { return {whynot_n(dual(p0), n), bang_n(p0, n)}; }

// Counts derivations of |- ?^j p0^, !^k p0 read bottom-up: a promotion
// needs a ?-headed context, and only the axiom closes (0, 0). With blocks,
// each rule consumes its whole prefix at once.
std::size_t interleavings(unsigned j, unsigned k, bool blocks) {
  if (j == 0 && k == 0) return 1;
  const unsigned dj = blocks ? j : 1, dk = blocks ? k : 1;
  std::size_t total = 0;
  if (j > 0) total += interleavings(j - dj, k, blocks);
  if (j > 0 && k > 0) total += interleavings(j, k - dk, blocks);
  return total;
}

// Brute-force MALL provability over multisets, with atomic axioms.
class MallOracle {
 public:
  bool provable(Sequent s) {
    std::sort(s.begin(), s.end());
    const std::string key = print_sequent(s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const bool result = search(s);
    memo_[key] = result;
    return result;
  }

 private:
  bool search(const Sequent& s) {
    if (s.size() == 2 && s[0].is_literal() && s[1] == dual(s[0])) return true;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const Formula& f = s[i];
      if (f.is_literal()) continue;
      Sequent rest = s;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      const auto with = [&](std::initializer_list<Formula> extra) {
        Sequent t = rest;
        t.insert(t.end(), extra);
        return provable(t);
      };
      switch (f.connective()) {
        case Connective::Par:
          if (with({f.left(), f.right()})) return true;
          break;
        case Connective::With:
          if (with({f.left()}) && with({f.right()})) return true;
          break;
        case Connective::Plus:
          if (with({f.left()}) || with({f.right()})) return true;
          break;
        case Connective::Tensor:
          for (std::size_t mask = 0; mask < (std::size_t{1} << rest.size()); ++mask) {
            Sequent l{f.left()}, r{f.right()};
            for (std::size_t k = 0; k < rest.size(); ++k) (mask >> k & 1 ? l : r).push_back(rest[k]);
            if (provable(l) && provable(r)) return true;
          }
          break;
        default: break;
      }
    }
    return false;
  }

  std::map<std::string, bool> memo_;
};

Formula random_mall(std::mt19937_64& rng, unsigned connectives) {
  if (connectives == 0) {
    const auto i = static_cast<std::uint32_t>(rng() % 2);
    return rng() % 2 ? Formula::pos(i) : Formula::neg(i);
  }
  const auto left = static_cast<unsigned>(rng() % connectives);
  const Formula a = random_mall(rng, left), b = random_mall(rng, connectives - 1 - left);
  switch (rng() % 4) {
    case 0: return Formula::tensor(a, b);
    case 1: return Formula::par(a, b);
    case 2: return Formula::with(a, b);
    default: return Formula::plus(a, b);
  }
}

}  // namespace

TEST(InterleavingOracle, MatchesHandCounts) {
  EXPECT_EQ(interleavings(1, 1, false), 1u);
  EXPECT_EQ(interleavings(2, 2, false), 3u);
  EXPECT_EQ(interleavings(3, 3, false), 10u);
  for (unsigned n = 1; n <= 4; ++n) EXPECT_EQ(interleavings(n, n, true), 1u);
}

TEST(Enumeration, IdLLHasOneProofPerBlockFamily) {
  for (unsigned n = 1; n <= 3; ++n) {
    const Enumeration e = enumerate_cutfree(block_goal(n), System::idll(AxiomMode::Atomic), 64);
    EXPECT_TRUE(e.exact);
    ASSERT_EQ(e.proofs.size(), interleavings(n, n, true)) << n;
    EXPECT_EQ(exchange_normal_form(e.proofs[0]), exchange_normal_form(eta_block(n, n, dual(p0))));
  }
}

TEST(Enumeration, LLCountsMatchTheInterleavingOracle) {
  for (unsigned n = 1; n <= 3; ++n) {
    const Enumeration e = enumerate_cutfree(block_goal(n), System::ll(AxiomMode::Atomic), 64);
    EXPECT_TRUE(e.exact);
    EXPECT_EQ(e.proofs.size(), interleavings(n, n, false)) << n;
  }
}

TEST(Enumeration, ProofsCheckAndAreDistinct) {
  const System ll = System::ll(AxiomMode::Atomic);
  const Enumeration e = enumerate_cutfree(block_goal(3), ll, 64);
  std::vector<std::string> forms;
  for (const Proof& p : e.proofs) {
    EXPECT_FALSE(check(p, ll));
    EXPECT_TRUE(same_multiset(p.conclusion(), block_goal(3)));
    forms.push_back(exchange_normal_form(p));
  }
  std::sort(forms.begin(), forms.end());
  EXPECT_EQ(std::unique(forms.begin(), forms.end()), forms.end());
}

TEST(Enumeration, BudgetIsMonotone) {
  const System ll = System::ll(AxiomMode::Atomic);
  std::size_t previous = 0;
  for (std::size_t budget = 2; budget <= 12; ++budget) {
    const Enumeration e = enumerate_cutfree(block_goal(2), ll, budget);
    EXPECT_GE(e.proofs.size(), previous);
    previous = e.proofs.size();
    if (e.exact) EXPECT_EQ(e.proofs.size(), 3u);
  }
  EXPECT_FALSE(enumerate_cutfree(block_goal(2), ll, 3).exact);
}

TEST(Enumeration, MultiplicativeSequents) {
  const System ll = System::ll(AxiomMode::Atomic);
  EXPECT_EQ(enumerate_cutfree(parse_sequent("|- p0^ @ p1^, p0 * p1"), ll).proofs.size(), 1u);
  EXPECT_EQ(enumerate_cutfree(parse_sequent("|- p0 * p0"), ll).proofs.size(), 0u);
  // With below both Plus choices, or a Plus choice below With.
  EXPECT_EQ(enumerate_cutfree(parse_sequent("|- p0^ & p0^, p0 + p0"), ll).proofs.size(), 6u);
}

TEST(Search, SmallVerdicts) {
  for (const System sys : {System::ll(), System::idll()}) {
    EXPECT_EQ(provable(parse_sequent("|- p0 @ p0^"), sys).verdict, Verdict::Yes);
    EXPECT_EQ(provable(parse_sequent("|- p0 * p0"), sys).verdict, Verdict::No);
    EXPECT_EQ(provable(parse_sequent("|- ?p0^, !p0"), sys).verdict, Verdict::Yes);
    EXPECT_EQ(provable(parse_sequent("|- (p0 * p1) -o (p1 * p0)"), sys).verdict, Verdict::Yes);
  }
}

TEST(Search, WitnessesCheck) {
  for (const System sys : {System::ll(), System::idll()}) {
    const SearchResult r = provable(parse_sequent("|- ??p0^, !!p0"), sys);
    ASSERT_EQ(r.verdict, Verdict::Yes);
    ASSERT_TRUE(r.witness);
    EXPECT_FALSE(check(*r.witness, sys));
  }
}

TEST(Search, AgreesWithMallOracle) {
  std::mt19937_64 rng(5);
  MallOracle oracle;
  std::size_t decided = 0;
  for (int i = 0; i < 300; ++i) {
    Sequent s;
    const std::size_t width = 1 + rng() % 3;
    for (std::size_t k = 0; k < width; ++k) s.push_back(random_mall(rng, static_cast<unsigned>(rng() % 4)));
    const SearchResult r = provable(s, System::ll());
    const bool expected = oracle.provable(s);
    if (r.verdict == Verdict::Unknown) continue;
    ++decided;
    EXPECT_EQ(r.verdict == Verdict::Yes, expected) << print_sequent(s);
  }
  EXPECT_EQ(decided, 300u);
}

TEST(Search, SystemsAgreeOnTheSequentCorpus) {
  for (const Sequent& s : sequent_corpus(17)) {
    const Verdict ll = provable(s, System::ll()).verdict;
    const Verdict idll = provable(s, System::idll()).verdict;
    if (ll != Verdict::Unknown && idll != Verdict::Unknown) EXPECT_EQ(ll, idll) << print_sequent(s);
  }
}

TEST(Translation, IdLLToLLUnfoldsBlocks) {
  const Proof q = idll_to_ll(eta_block(2, 3, p0));
  EXPECT_FALSE(check(q, System::ll()));
  EXPECT_EQ(q.conclusion(), eta_block(2, 3, p0).conclusion());
  EXPECT_FALSE(contains_rule(q, RuleKind::NPromotion));
}

TEST(Translation, LLToIdLLEmulatesStackedRulesWithCuts) {
  const Proof ll = idll_to_ll(eta_block(2, 2, p0));
  const Proof raw = ll_to_idll(ll);
  EXPECT_FALSE(check(raw, System::idll()));
  EXPECT_EQ(raw.conclusion(), ll.conclusion());
  const Proof normal = ll_to_idll(ll, AxiomMode::General, true);
  EXPECT_TRUE(is_cut_free(normal));
  EXPECT_EQ(exchange_normal_form(normal), exchange_normal_form(eta_block(2, 2, p0)));
}

TEST(Translation, GeneratedProofsTranslateBothWays) {
  for (const System sys : {System::idll(), System::ll()}) {
    ProofGenerator gen(sys, 23);
    for (int i = 0; i < 100; ++i) {
      const Proof p = gen.decorate(gen.principal(random_formula(gen.rng())));
      const Proof q = sys.logic == Logic::IdLL ? idll_to_ll(p) : ll_to_idll(p);
      const System target = sys.logic == Logic::IdLL ? System::ll() : System::idll();
      EXPECT_FALSE(check(q, target)) << print_proof(p);
      EXPECT_EQ(q.conclusion(), p.conclusion());
    }
  }
}
