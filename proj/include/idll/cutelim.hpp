// Cut elimination for LL and IdLL.
//
// Strategy: always reduce the leftmost topmost Cut (one whose premises are
// cut-free). In IdLL the exponential cases treat a whole ?^n / !^n block as a
// single connective, so the n-Promotion / n-Dereliction key case cuts the
// block cores directly.
//
// Every reduction reproduces the reduced Cut's conclusion in the same order,
// so the coordinate permutation of a step is always the identity.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "idll/proof.hpp"

namespace idll {

struct ReductionStep {
  std::string kind;  // e.g. "tensor-par", "prom-contr", "commute-left:with"
  Path path;         // location of the reduced Cut
};

struct Reduction {
  Proof proof;
  ReductionStep step;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  Proof final;
  bool fuel_exhausted = false;
};

// Path to the leftmost Cut whose premises are cut-free.
std::optional<Path> topmost_cut(const Proof& p);

// Reduces the Cut at `path`, which must have cut-free premises.
Reduction reduce_at(const Proof& p, const Path& path, const System& sys);

// One reduction of the topmost Cut; nullopt on cut-free proofs.
std::optional<Reduction> reduce_step(const Proof& p, const System& sys);

ReductionTrace normalize(const Proof& p, const System& sys, std::uint64_t fuel);

// 2^size, saturating.
std::uint64_t default_fuel(const Proof& p);

}  // namespace idll
