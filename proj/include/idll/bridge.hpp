// Moving between LL and IdLL: proof translations in both directions,
// exhaustive enumeration of cut-free proofs, and bounded proof search.

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "idll/proof.hpp"

namespace idll {

// n-Dereliction and n-Promotion unfold into n single LL steps.
Proof idll_to_ll(const Proof& p, AxiomMode axioms = AxiomMode::General);

// LL Dereliction/Promotion on a formula that is already ?- or !-headed is
// emulated by a Cut against an eta_block lemma; `normalize_after` removes
// those Cuts afterwards.
Proof ll_to_idll(const Proof& p, AxiomMode axioms = AxiomMode::General, bool normalize_after = false);

struct Enumeration {
  std::vector<Proof> proofs;  // sorted by exchange_normal_form
  bool exact = true;          // false if the node budget pruned a branch
};

// All cut-free proofs of `goal` with atomic axioms and at most `max_nodes`
// logical (non-Exchange) nodes. Proofs are counted modulo Exchange; the
// Exchange nodes present only realize the order of `goal`. Contraction is
// offered at most `max_contractions` times per branch.
Enumeration enumerate_cutfree(const Sequent& goal, const System& sys, std::size_t max_nodes = 64,
                              unsigned max_contractions = 0);

enum class Verdict { Yes, No, Unknown };
std::string_view verdict_name(Verdict v);

struct SearchBounds {
  unsigned depth = 12;
  unsigned contractions_per_formula = 2;
};

struct SearchResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Proof> witness;
};

// `No` is only reported for exponential-free goals whose search space was
// exhausted without hitting the depth bound.
SearchResult provable(const Sequent& goal, const System& sys, SearchBounds bounds = {});

}  // namespace idll
