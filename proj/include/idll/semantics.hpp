// Relational interpretation of formulas and proofs in finite totality spaces.
//
// A sequent |- A1, ..., Ak denotes the par of its formulas; a proof denotes a
// set of k-tuples, the i-th coordinate being an atom of the i-th formula's
// space. Totality of such a set is checked against every product of
// cototals, without building the par space itself.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "idll/proof.hpp"
#include "idll/totspace.hpp"

namespace idll::sem {

using tot::TotSpace;
using Tuple = std::vector<std::uint32_t>;
using Environment = std::map<std::uint32_t, TotSpace>;

class UnassignedLiteral : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a promotion slice is not a total set.
class SemanticFault : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Denotation {
  std::vector<TotSpace> spaces;
  std::vector<Tuple> value;  // sorted
  friend bool operator==(const Denotation&, const Denotation&) = default;
};

class Interpreter {
 public:
  explicit Interpreter(Environment env, tot::Caps caps = {});

  const TotSpace& eval(const Formula& f);
  const std::vector<tot::Mask>& cototals(const Formula& f);
  Denotation interpret(const Proof& p);
  bool is_total(const Denotation& d, const Sequent& conclusion);

 private:
  Denotation node(const Proof& p);
  std::vector<Tuple> dereliction(std::vector<Tuple> v, std::size_t at, Formula a, unsigned n);
  std::vector<Tuple> promotion(std::vector<Tuple> v, const Sequent& premise, std::size_t at, unsigned n);

  Environment env_;
  tot::Caps caps_;
  std::map<Formula, TotSpace> spaces_;
  std::map<Formula, std::vector<tot::Mask>> cototals_;
};

TotSpace eval_formula(const Formula& f, const Environment& env, const tot::Caps& caps = {});
Denotation interpret(const Proof& p, const Environment& env, const tot::Caps& caps = {});
// Totality of a denotation in the par of its component spaces.
bool is_total(const Denotation& d, const tot::Caps& caps = {});

std::string print_denotation(const Denotation& d);

// One assignment per line: `p<i> dis N`, `p<i> codis N`, `p<i> one`, or
// `p<i> file PATH` (PATH relative to `base_dir`).
Environment parse_environment(std::string_view text, const std::filesystem::path& base_dir = {});

// Every assignment of Dis(n), n in `sizes`, to the given literals.
std::vector<Environment> discrete_environments(const std::vector<std::uint32_t>& literals,
                                               const std::vector<std::size_t>& sizes = {2, 3});

TotSpace dis_n(std::size_t n);

struct SoundnessReport {
  std::size_t proofs = 0;
  std::size_t denotations = 0;  // totality checks performed
  std::size_t steps = 0;        // reduction steps compared
  std::size_t skipped = 0;      // (proof, environment) pairs over the caps
  std::vector<std::string> failures;
  bool ok() const noexcept { return failures.empty(); }
};

// For each proof and environment: the denotation is total, and every
// reduction step of its normalization leaves it unchanged. With no
// environments given, each proof runs under every Dis(2)/Dis(3) assignment to
// its literals. Reductions keep
// the conclusion order, so the coordinate permutation of each step is the
// identity and denotations are compared directly.
SoundnessReport soundness_suite(const std::vector<Proof>& corpus, const std::vector<Environment>& envs,
                                const tot::Caps& caps = {});

// IdLL if the proof uses n-rules, LL if it uses Dereliction or Promotion.
System infer_system(const Proof& p);

}  // namespace idll::sem
