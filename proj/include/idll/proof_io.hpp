// Proof text format: one s-expression per node,
//   (rule-name {:param value} "|- conclusion" premise*)
// e.g. (nprom :n 2 "|- ??p0^, !!p0" (nder :n 2 "|- ??p0^, p0" (id "|- p0^, p0")))

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "idll/proof.hpp"

namespace idll {

// Parameters omitted from the text (positions, idle disjuncts, cut
// formulas) are recovered from the conclusions where they are determined.
Proof parse_proof(std::string_view text);
std::vector<Proof> parse_proofs(std::string_view text);

std::string print_proof(const Proof& p);

// key=value lines describing a check verdict.
std::string check_report(const std::optional<RuleError>& error);

}  // namespace idll
