// Formulas of linear logic in negation normal form.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace idll {

enum class Connective : std::uint8_t {
  PosLit,
  NegLit,
  Tensor,
  Par,
  With,
  Plus,
  Bang,
  WhyNot,
};

// Immutable, structurally shared formula tree. Negation only occurs on
// literals; compound negation is computed by `dual`.
class Formula {
 public:
  static Formula pos(std::uint32_t index);
  static Formula neg(std::uint32_t index);
  static Formula tensor(Formula left, Formula right);
  static Formula par(Formula left, Formula right);
  static Formula with(Formula left, Formula right);
  static Formula plus(Formula left, Formula right);
  static Formula bang(Formula body);
  static Formula whynot(Formula body);

  Connective connective() const noexcept;
  bool is_literal() const noexcept;
  bool is_binary() const noexcept;
  bool is_modal() const noexcept;
  bool is_bang() const noexcept { return connective() == Connective::Bang; }
  bool is_whynot() const noexcept { return connective() == Connective::WhyNot; }

  // Literal index; only meaningful on literals.
  std::uint32_t index() const noexcept;
  // Left operand of a binary connective, or body of a modality.
  const Formula& left() const;
  const Formula& right() const;
  const Formula& body() const { return left(); }

  // Number of connectives (literals count zero).
  std::size_t connective_count() const noexcept;
  bool has_exponential() const noexcept;
  void collect_literals(std::vector<std::uint32_t>& out) const;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Connective kind, std::uint32_t index, const Formula* l, const Formula* r);

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Connective kind;
  std::uint32_t index = 0;
  std::vector<Formula> children;
};

inline Connective Formula::connective() const noexcept { return node_->kind; }
inline std::uint32_t Formula::index() const noexcept { return node_->index; }
inline bool Formula::is_literal() const noexcept {
  return node_->kind == Connective::PosLit || node_->kind == Connective::NegLit;
}
inline bool Formula::is_modal() const noexcept {
  return node_->kind == Connective::Bang || node_->kind == Connective::WhyNot;
}

// Linear negation, by the De Morgan table.
Formula dual(const Formula& f);

// a -o b := dual(a) @ b
Formula implication(const Formula& a, const Formula& b);

enum class ModalKind : std::uint8_t { None, Bang, WhyNot };

struct ModalPrefix {
  ModalKind kind;
  unsigned count;
  Formula core;
};

// Strips the maximal run of identical modalities heading `f`.
ModalPrefix modal_prefix(const Formula& f);

// !^n f and ?^n f.
Formula bang_n(Formula f, unsigned n);
Formula whynot_n(Formula f, unsigned n);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

Formula parse_formula(std::string_view text);
std::string print_formula(const Formula& f);

using Sequent = std::vector<Formula>;

// Accepts "|- A, B, ..." (the turnstile is optional) and the empty sequent.
Sequent parse_sequent(std::string_view text);
std::string print_sequent(const Sequent& s);

// Order-forgetting projection; two sequents are Exchange-equivalent iff
// their multisets compare equal.
std::vector<Formula> sequent_multiset(const Sequent& s);
bool same_multiset(const Sequent& a, const Sequent& b);

}  // namespace idll
