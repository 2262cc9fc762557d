#include <gtest/gtest.h>

#include <sstream>

#include "idll/cli.hpp"
#include "idll/proof_io.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = idll::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(IDLL_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Check, WorkedProofIsOk) {
  const Outcome o = run({"check", "--system", "idll", data("pi1.proof")});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "ok\n");
}

TEST(Check, RejectionNamesTheReason) {
  const Outcome o = run({"check", "-"}, R"((der :at 0 "|- ?p0, p0^" (id "|- p0, p0^")))");
  EXPECT_EQ(o.code, 1);
  EXPECT_EQ(o.out, "rejected: wrong-system at root (der): der is not a rule of idll\n");
  EXPECT_EQ(run({"check", "--system", "ll", "-"}, R"((der :at 0 "|- ?p0, p0^" (id "|- p0, p0^")))").code, 0);
}

TEST(Check, MachineFormatIsKeyValue) {
  const Outcome o = run({"--format", "machine", "check", data("pi2.proof")});
  EXPECT_EQ(o.out, "status=ok\n");
  const Outcome after = run({"check", data("pi2.proof"), "--format", "machine"});
  EXPECT_EQ(after.out, "status=ok\n");
}

TEST(Count, LLDoubleBlock) {
  const Outcome o = run({"count", "--system", "ll", "--max-nodes", "32", "|- ??p0^, !!p0"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "3 exact\n");
  EXPECT_EQ(run({"count", "--system", "idll", "|- ??p0^, !!p0"}).out, "1 exact\n");
  EXPECT_EQ(run({"count", "--system", "ll", "--max-nodes", "4", "|- ??p0^, !!p0"}).out, "0 bounded\n");
}

TEST(Normalize, WritesACutFreeProof) {
  const Outcome o = run({"normalize", "--system", "idll", data("cut_pi2_pi1.proof")});
  ASSERT_EQ(o.code, 0) << o.err;
  const idll::Proof p = idll::parse_proof(o.out);
  EXPECT_TRUE(idll::is_cut_free(p));
  EXPECT_EQ(idll::exchange_normal_form(p), idll::exchange_normal_form(idll::eta_block(1, 1, idll::Formula::pos(0))));
}

TEST(Normalize, TraceLinesNameCaseAndPath) {
  const Outcome o = run({"--format", "machine", "normalize", "--trace", data("cut_pi2_pi1.proof")});
  EXPECT_EQ(o.out.substr(0, o.out.find("proof=")),
            "steps=3\nfuel_exhausted=false\ncut_free=true\n"
            "step=commute-right:nprom root\nstep=prom-der root/0\nstep=axiom-right root/0\n");
}

TEST(Normalize, FuelExhaustionIsANegativeVerdict) {
  EXPECT_EQ(run({"normalize", "--fuel", "1", data("cut_pi2_pi1.proof")}).code, 1);
}

TEST(Translate, BothDirections) {
  const Outcome to_ll = run({"translate", "--to", "ll", data("pi1.proof")});
  ASSERT_EQ(to_ll.code, 0) << to_ll.err;
  const Outcome back = run({"translate", "--to", "idll", "--normalize", "-"}, to_ll.out);
  ASSERT_EQ(back.code, 0) << back.err;
  EXPECT_EQ(run({"check", "-"}, back.out).out, "ok\n");
  EXPECT_EQ(run({"translate", "--to", "idll", data("pi1.proof")}).code, 1);
}

TEST(Prove, VerdictsAndExitCodes) {
  EXPECT_EQ(run({"prove", "|- ?p0^, !p0"}).out, "yes\n");
  const Outcome no = run({"prove", "--system", "ll", "|- p0 * p0"});
  EXPECT_EQ(no.out, "no\n");
  EXPECT_EQ(no.code, 1);
}

TEST(Model, SpaceOperations) {
  const Outcome b = run({"model", "bang", data("dis2.space")});
  EXPECT_EQ(b.out, "base {a} {b}\ntotal {a}\ntotal {b}\n");
  const Outcome c = run({"model", "check", data("uneven.space")});
  EXPECT_EQ(c.code, 1);
  EXPECT_EQ(run({"model", "tensor", data("dis2.space")}).code, 2);
}

TEST(Model, LawReportCoversEveryLaw) {
  const Outcome o = run({"--format", "machine", "model", "laws", "--random", "5", "--samples", "40"});
  std::istringstream lines(o.out);
  std::size_t laws = 0, failing = 0;
  for (std::string line; std::getline(lines, line);) {
    ASSERT_NE(line.find('='), std::string::npos) << line;
    if (line.rfind("law=", 0) == 0) ++laws;
    if (line == "pass=false") ++failing;
  }
  EXPECT_GE(laws, 20u);
  EXPECT_EQ(o.code, failing > 0 ? 1 : 0);
}

TEST(Interp, DenotationAndVerdict) {
  const Outcome o = run({"interp", "--env", data("dis2.env"), data("pi1.proof")});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out.substr(o.out.size() - 6), "total\n");
  const Outcome mixed = run({"--format", "machine", "interp", "--env", data("mixed.env"), data("pi2.proof")});
  EXPECT_NE(mixed.out.find("total=true"), std::string::npos);
}

TEST(Soundness, GeneratedCorpusReport) {
  const Outcome o = run({"--format", "machine", "soundness", "--count", "5"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("proofs=10\n"), std::string::npos);
  EXPECT_NE(o.out.find("failures=0\n"), std::string::npos);
}

TEST(Corpus, FeedsOtherCommands) {
  const Outcome corpus = run({"corpus", "--count", "3"});
  ASSERT_EQ(corpus.code, 0);
  const Outcome sound = run({"soundness", "-"}, corpus.out);
  EXPECT_EQ(sound.code, 0) << sound.out << sound.err;
  EXPECT_EQ(idll::parse_proofs(corpus.out).size(), 6u);
}

TEST(Usage, ErrorsExitWithTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"check"}).code, 2);
  EXPECT_EQ(run({"check", "--system", "xx", data("pi1.proof")}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  const Outcome missing = run({"check", "/nonexistent/file.proof"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_EQ(missing.err, "error: cannot open /nonexistent/file.proof\n");
  const Outcome bad = run({"check", "-"}, "(id \"|- p0, p0^\")\n(idd \"|- p0\")\n");
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(bad.err.rfind("error: -:2:", 0), 0u) << bad.err;
  EXPECT_EQ(run({"count", "|- p0 **"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Determinism, RepeatedRunsAreIdentical) {
  const std::vector<std::string> args{"--format", "machine", "model", "laws", "--random", "3", "--samples", "20"};
  EXPECT_EQ(run(args).out, run(args).out);
  EXPECT_EQ(run({"corpus", "--kind", "sequents"}).out, run({"corpus", "--kind", "sequents"}).out);
}
