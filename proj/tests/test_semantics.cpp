#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "idll/bridge.hpp"
#include "idll/corpus.hpp"
#include "idll/semantics.hpp"

using namespace idll;
using namespace idll::sem;

namespace {

const Formula p0 = Formula::pos(0);
const Formula p1 = Formula::pos(1);

Environment env_of(std::size_t n) { return Environment{{0, dis_n(n)}, {1, dis_n(2)}}; }

}  // namespace

TEST(Eval, FormulasFollowTheSpaceOperations) {
  const Environment env = env_of(3);
  EXPECT_EQ(eval_formula(p0, env), dis_n(3));
  EXPECT_EQ(eval_formula(dual(p0), env), tot::dual(dis_n(3)));
  EXPECT_EQ(eval_formula(Formula::tensor(p0, p1), env), tot::tensor(dis_n(3), dis_n(2)));
  EXPECT_EQ(eval_formula(Formula::bang(p0), env), tot::bang(dis_n(3)));
  EXPECT_EQ(eval_formula(Formula::whynot(dual(p0)), env), tot::dual(tot::bang(dis_n(3))));
}

TEST(Eval, UnassignedLiteralIsAnError) {
  EXPECT_THROW(eval_formula(Formula::pos(7), env_of(2)), UnassignedLiteral);
}

TEST(Interpret, IdentityIsTheDiagonal) {
  const Proof id = build(Rule::identity(p0), {}, System::ll());
  const Denotation d = interpret(id, env_of(3));
  EXPECT_EQ(d.value, (std::vector<Tuple>{{0, 0}, {1, 1}, {2, 2}}));
  EXPECT_TRUE(is_total(d));
  EXPECT_EQ(print_denotation(d), "(a, a)\n(b, b)\n(c, c)\n");
}

TEST(Interpret, CutComposesRelations) {
  const System sys = System::ll();
  const Proof id = build(Rule::identity(p0), {}, sys);
  const Proof c = build(Rule::cut(dual(p0)), {id, id}, sys);
  EXPECT_EQ(interpret(c, env_of(2)).value, interpret(id, env_of(2)).value);
}

TEST(Interpret, WorkedBlocksAreTotal) {
  for (std::size_t n : {2u, 3u}) {
    for (unsigned j = 1; j <= 2; ++j) {
      for (unsigned k = 1; k <= 2; ++k) {
        const Denotation d = interpret(eta_block(j, k, p0), env_of(n));
        EXPECT_TRUE(is_total(d)) << j << "," << k;
        EXPECT_FALSE(d.value.empty());
      }
    }
  }
}

TEST(Interpret, BlockRulesEqualIteratedRules) {
  for (unsigned j = 1; j <= 3; ++j) {
    const Proof block = eta_block(j, 2, p0);
    EXPECT_EQ(interpret(block, env_of(3)).value, interpret(idll_to_ll(block), env_of(3)).value);
  }
}

TEST(Interpret, PromotionOverANonWhyNotContextFaults) {
  const Proof id = build(Rule::identity(p0), {}, System::ll());
  const Proof bad = Proof::raw(Rule::at_position(RuleKind::Promotion, 1), parse_sequent("|- p0, !p0^"), {id});
  ASSERT_TRUE(check(bad, System::ll()));
  EXPECT_THROW(interpret(bad, env_of(2)), SemanticFault);
}

TEST(Environment, ParsesEveryForm) {
  const auto dir = std::filesystem::temp_directory_path() / "idll_env_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "s.space") << "base x y\ntotal x y\n";
  const Environment env = parse_environment("# spaces\np0 dis 3\np1 codis 2\np2 one\np3 file s.space\n", dir);
  ASSERT_EQ(env.size(), 4u);
  EXPECT_EQ(env.at(0), dis_n(3));
  EXPECT_EQ(env.at(1), tot::dual(dis_n(2)));
  EXPECT_EQ(env.at(2), tot::one());
  EXPECT_EQ(env.at(3).totals, std::vector<tot::Mask>{0b11});
  EXPECT_THROW(parse_environment("p0 dis\n"), std::invalid_argument);
  EXPECT_THROW(parse_environment("q0 dis 2\n"), std::invalid_argument);
  EXPECT_THROW(parse_environment("p0 weird 2\n"), std::invalid_argument);
}

TEST(Environment, DiscreteAssignments) {
  const auto envs = discrete_environments({0, 1});
  EXPECT_EQ(envs.size(), 4u);
  EXPECT_EQ(discrete_environments({}).size(), 1u);
}

TEST(Soundness, SmallGeneratedCorpus) {
  const auto corpus = cut_corpus(CorpusOptions{5, 10, 40});
  const SoundnessReport r = soundness_suite(corpus, {});
  EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_EQ(r.skipped, 0u);
  EXPECT_EQ(r.proofs, 20u);
  EXPECT_GT(r.steps, 0u);
}

TEST(Soundness, InfersTheSystem) {
  EXPECT_EQ(infer_system(eta_block(1, 1, p0)).logic, Logic::IdLL);
  EXPECT_EQ(infer_system(idll_to_ll(eta_block(1, 1, p0))).logic, Logic::LL);
}
