// Seeded generators for test corpora: random formulas, cut-free proofs with
// a chosen principal formula, proofs containing Cuts, and sequents for the
// provability cross-check. Everything is a deterministic function of the seed.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "idll/proof.hpp"
#include "idll/totspace.hpp"

namespace idll {

struct FormulaShape {
  unsigned literals = 2;         // p0 .. p(literals-1)
  unsigned max_connectives = 3;
  unsigned max_exponential_depth = 2;
};

Formula random_formula(std::mt19937_64& rng, const FormulaShape& shape = {});

// Largest base among the formula's subformula spaces when every literal is
// Dis(n); nullopt when some space exceeds the caps.
std::optional<std::size_t> widest_space(const Formula& f, std::size_t n, const tot::Caps& caps = {});

class ProofGenerator {
 public:
  ProofGenerator(System sys, std::uint64_t seed);

  // A cut-free proof of |- Gamma, f whose last logical rule introduces f.
  Proof principal(const Formula& f);
  // Applies a few rules to context formulas (not the last one), leaving the
  // last formula in place. A Times may bring in a proof ending in a Cut.
  Proof decorate(const Proof& p);
  // Cut on f between two independently generated proofs.
  Proof cut_on(const Formula& f);

  std::mt19937_64& rng() { return rng_; }

 private:
  Proof with_last(const Proof& p, std::size_t index);
  Proof derelict_context(const Proof& p);
  Proof dereliction(const Proof& p, std::size_t at, unsigned n);
  Proof promotion(const Proof& p, std::size_t at, unsigned n);
  bool coin(double p);

  System sys_;
  std::mt19937_64 rng_;
};

struct CorpusOptions {
  std::uint64_t seed = 20240601;
  std::size_t per_system = 60;  // proofs per system
  std::size_t max_nodes = 40;
};

// Checked proofs containing at least one Cut, half IdLL and half LL, whose
// formulas stay within the caps under Dis(2) and Dis(3) environments.
std::vector<Proof> cut_corpus(const CorpusOptions& options = {});

// Sequents with at most `max_connectives` connectives and exponential depth
// at most 2: half are conclusions of generated cut-free proofs, half random.
std::vector<Sequent> sequent_corpus(std::uint64_t seed, std::size_t count = 50, unsigned max_connectives = 8);

}  // namespace idll
