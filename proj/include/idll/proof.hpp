// Sequent-calculus proofs for LL and IdLL, and the rule-by-rule checker.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "idll/formula.hpp"

namespace idll {

enum class Logic : std::uint8_t { LL, IdLL };
enum class AxiomMode : std::uint8_t { General, Atomic };

struct System {
  Logic logic = Logic::IdLL;
  AxiomMode axioms = AxiomMode::General;

  static System ll(AxiomMode m = AxiomMode::General) { return {Logic::LL, m}; }
  static System idll(AxiomMode m = AxiomMode::General) { return {Logic::IdLL, m}; }
};

std::string_view logic_name(Logic l);

enum class RuleKind : std::uint8_t {
  Identity,
  Cut,
  Exchange,
  Times,
  Par,
  With,
  PlusLeft,
  PlusRight,
  Contraction,
  Weakening,
  Dereliction,
  Promotion,
  NDereliction,
  NPromotion,
};

// Short names used by the proof text format ("id", "cut", "nprom", ...).
std::string_view rule_name(RuleKind k);
std::optional<RuleKind> rule_from_name(std::string_view name);
std::size_t rule_arity(RuleKind k);
bool rule_allowed(RuleKind k, Logic l);
inline bool is_dereliction_family(RuleKind k) {
  return k == RuleKind::Dereliction || k == RuleKind::NDereliction;
}
inline bool is_promotion_family(RuleKind k) {
  return k == RuleKind::Promotion || k == RuleKind::NPromotion;
}

// A rule instance. Positions index the conclusion:
//   Exchange  swaps `at` and `other` (which must be at + 1);
//   Times     `at` is the position of A*B, i.e. the length of the left context;
//   Par       A@B at `at` comes from A, B at `at`, `at`+1 of the premise;
//   unary rules act in place at `at`; Contraction merges `at`, `at`+1.
// `formula` carries the cut formula (Cut), the introduced formula
// (Weakening), the idle disjunct (PlusLeft/PlusRight) or A (Identity).
struct Rule {
  RuleKind kind = RuleKind::Identity;
  std::size_t at = 0;
  std::size_t other = 0;
  unsigned n = 1;
  std::optional<Formula> formula;

  static Rule identity(Formula a) { return {RuleKind::Identity, 0, 0, 1, std::move(a)}; }
  static Rule cut(Formula a) { return {RuleKind::Cut, 0, 0, 1, std::move(a)}; }
  static Rule exchange(std::size_t i) { return {RuleKind::Exchange, i, i + 1, 1, std::nullopt}; }
  static Rule times(std::size_t at) { return {RuleKind::Times, at, 0, 1, std::nullopt}; }
  static Rule at_position(RuleKind k, std::size_t at, unsigned n = 1) { return {k, at, 0, n, std::nullopt}; }
  static Rule plus_left(std::size_t at, Formula idle) { return {RuleKind::PlusLeft, at, 0, 1, std::move(idle)}; }
  static Rule plus_right(std::size_t at, Formula idle) { return {RuleKind::PlusRight, at, 0, 1, std::move(idle)}; }
  static Rule weakening(std::size_t at, Formula introduced) {
    return {RuleKind::Weakening, at, 0, 1, std::move(introduced)};
  }
};

class Proof;

struct ProofNode {
  Rule rule;
  Sequent conclusion;
  std::vector<Proof> premises;
};

// Immutable derivation tree with shared subtrees.
class Proof {
 public:
  // Assembles a node without checking it (used by readers and tests).
  static Proof raw(Rule rule, Sequent conclusion, std::vector<Proof> premises);

  const Rule& rule() const noexcept { return node_->rule; }
  RuleKind kind() const noexcept { return node_->rule.kind; }
  const Sequent& conclusion() const noexcept { return node_->conclusion; }
  const std::vector<Proof>& premises() const noexcept { return node_->premises; }
  const Proof& premise(std::size_t i) const { return node_->premises.at(i); }

  std::size_t size() const noexcept;
  // Size ignoring Exchange nodes.
  std::size_t logical_size() const noexcept;
  bool same_node(const Proof& other) const noexcept { return node_ == other.node_; }

 private:
  explicit Proof(std::shared_ptr<const ProofNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ProofNode> node_;
};

using Path = std::vector<std::size_t>;
std::string print_path(const Path& path);

enum class Reason : std::uint8_t {
  Arity,
  WrongSystem,
  BadParameter,
  AxiomMismatch,
  CutMismatch,
  ContextMismatch,
  ConclusionMismatch,
  SideCondition,
  PromotionContext,
};

std::string_view reason_code(Reason r);

struct RuleError {
  Path path;
  RuleKind rule;
  Reason reason;
  std::string message;
};

class ProofError : public std::runtime_error {
 public:
  explicit ProofError(RuleError error);
  const RuleError& error() const noexcept { return error_; }

 private:
  RuleError error_;
};

// Conclusion a rule instance yields from the given premise conclusions,
// or the reason it does not apply.
struct Conclusion {
  std::optional<Sequent> sequent;
  std::optional<RuleError> error;
};
Conclusion conclude(const Rule& rule, const std::vector<const Sequent*>& premises, const System& sys);

std::optional<RuleError> check(const Proof& p, const System& sys);

// Builds a node whose conclusion is computed from the rule and premises.
// Throws ProofError when the rule does not apply.
Proof build(const Rule& rule, std::vector<Proof> premises, const System& sys);

// Exchange chains. `permute` yields a proof of the sequent whose k-th
// formula is the premise's `order[k]`-th formula.
Proof exchange(const Proof& p, std::size_t i, const System& sys);
Proof move_formula(const Proof& p, std::size_t from, std::size_t to, const System& sys);
Proof permute(const Proof& p, const std::vector<std::size_t>& order, const System& sys);

bool is_cut_free(const Proof& p);
bool contains_rule(const Proof& p, RuleKind k);

const Proof& subproof(const Proof& p, const Path& path);
Proof replace_subproof(const Proof& p, const Path& path, const Proof& replacement);

// Canonical text of a proof with Exchange nodes deleted and every conclusion
// sorted; two proofs are equal modulo Exchange iff their canonical forms match.
std::string exchange_normal_form(const Proof& p);

// eta-expanded identity with atomic axioms: a proof of |- A, dual(A).
Proof expanded_identity(const Formula& a, const System& sys);

// |- ?^n core, !^m dual(core) by Identity, n-Dereliction, m-Promotion.
// Requires core not ?-headed.
Proof eta_block(unsigned n, unsigned m, const Formula& core, AxiomMode axioms = AxiomMode::General);

}  // namespace idll
