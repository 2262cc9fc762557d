#include "idll/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace idll {

Formula Formula::make(Connective kind, std::uint32_t index, const Formula* l, const Formula* r) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->index = index;
  if (l != nullptr) node->children.push_back(*l);
  if (r != nullptr) node->children.push_back(*r);
  return Formula(std::move(node));
}

Formula Formula::pos(std::uint32_t index) { return make(Connective::PosLit, index, nullptr, nullptr); }
Formula Formula::neg(std::uint32_t index) { return make(Connective::NegLit, index, nullptr, nullptr); }
Formula Formula::tensor(Formula l, Formula r) { return make(Connective::Tensor, 0, &l, &r); }
Formula Formula::par(Formula l, Formula r) { return make(Connective::Par, 0, &l, &r); }
Formula Formula::with(Formula l, Formula r) { return make(Connective::With, 0, &l, &r); }
Formula Formula::plus(Formula l, Formula r) { return make(Connective::Plus, 0, &l, &r); }
Formula Formula::bang(Formula b) { return make(Connective::Bang, 0, &b, nullptr); }
Formula Formula::whynot(Formula b) { return make(Connective::WhyNot, 0, &b, nullptr); }

bool Formula::is_binary() const noexcept {
  switch (node_->kind) {
    case Connective::Tensor:
    case Connective::Par:
    case Connective::With:
    case Connective::Plus:
      return true;
    default:
      return false;
  }
}

const Formula& Formula::left() const {
  if (node_->children.empty()) throw std::logic_error("literal has no operands");
  return node_->children[0];
}

const Formula& Formula::right() const {
  if (node_->children.size() < 2) throw std::logic_error("formula has no right operand");
  return node_->children[1];
}

std::size_t Formula::connective_count() const noexcept {
  std::size_t n = is_literal() ? 0 : 1;
  for (const auto& c : node_->children) n += c.connective_count();
  return n;
}

bool Formula::has_exponential() const noexcept {
  if (is_modal()) return true;
  return std::any_of(node_->children.begin(), node_->children.end(),
                     [](const Formula& c) { return c.has_exponential(); });
}

void Formula::collect_literals(std::vector<std::uint32_t>& out) const {
  if (is_literal()) {
    if (std::find(out.begin(), out.end(), index()) == out.end()) out.push_back(index());
    return;
  }
  for (const auto& c : node_->children) c.collect_literals(out);
}

bool operator==(const Formula& a, const Formula& b) noexcept { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
  if (auto c = a.node_->index <=> b.node_->index; c != 0) return c;
  const auto& ac = a.node_->children;
  const auto& bc = b.node_->children;
  for (std::size_t i = 0; i < ac.size() && i < bc.size(); ++i) {
    if (auto c = ac[i] <=> bc[i]; c != 0) return c;
  }
  return ac.size() <=> bc.size();
}

Formula dual(const Formula& f) {
  switch (f.connective()) {
    case Connective::PosLit: return Formula::neg(f.index());
    case Connective::NegLit: return Formula::pos(f.index());
    case Connective::Tensor: return Formula::par(dual(f.left()), dual(f.right()));
    case Connective::Par: return Formula::tensor(dual(f.left()), dual(f.right()));
    case Connective::With: return Formula::plus(dual(f.left()), dual(f.right()));
    case Connective::Plus: return Formula::with(dual(f.left()), dual(f.right()));
    case Connective::Bang: return Formula::whynot(dual(f.body()));
    case Connective::WhyNot: return Formula::bang(dual(f.body()));
  }
  throw std::logic_error("unreachable connective");
}

Formula implication(const Formula& a, const Formula& b) { return Formula::par(dual(a), b); }

ModalPrefix modal_prefix(const Formula& f) {
  if (!f.is_modal()) return ModalPrefix{ModalKind::None, 0, f};
  const bool bang = f.is_bang();
  unsigned count = 0;
  Formula core = f;
  while (core.connective() == f.connective()) {
    ++count;
    core = core.body();
  }
  return ModalPrefix{bang ? ModalKind::Bang : ModalKind::WhyNot, count, core};
}

Formula bang_n(Formula f, unsigned n) {
  for (unsigned i = 0; i < n; ++i) f = Formula::bang(f);
  return f;
}

Formula whynot_n(Formula f, unsigned n) {
  for (unsigned i = 0; i < n; ++i) f = Formula::whynot(f);
  return f;
}

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("at " + std::to_string(position) + ": " + message), position_(position) {}

namespace {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text, std::size_t offset = 0) : text_(text), offset_(offset) {}

  Formula parse_all() {
    Formula f = implication_level();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

  // Parses a formula and stops before a top-level ',' (for sequents).
  Formula parse_item() { return implication_level(); }

  bool at_end() {
    skip_ws();
    return pos_ == text_.size();
  }
  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::size_t position() const { return offset_ + pos_; }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(position(), message); }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_implication() {
    skip_ws();
    return text_.substr(pos_, 2) == "-o";
  }

  Formula implication_level() {
    Formula lhs = binary_level(0);
    if (peek_implication()) {
      pos_ += 2;
      Formula rhs = implication_level();
      return implication(lhs, rhs);
    }
    return lhs;
  }

  // Precedence, loosest first: + & @ *
  Formula binary_level(int level) {
    static constexpr char kOps[] = {'+', '&', '@', '*'};
    if (level == 4) return prefix_level();
    Formula lhs = binary_level(level + 1);
    while (consume(kOps[level])) {
      Formula rhs = binary_level(level + 1);
      switch (kOps[level]) {
        case '+': lhs = Formula::plus(lhs, rhs); break;
        case '&': lhs = Formula::with(lhs, rhs); break;
        case '@': lhs = Formula::par(lhs, rhs); break;
        default: lhs = Formula::tensor(lhs, rhs); break;
      }
    }
    return lhs;
  }

  Formula prefix_level() {
    if (consume('!')) return Formula::bang(prefix_level());
    if (consume('?')) return Formula::whynot(prefix_level());
    Formula f = primary();
    while (consume('^')) f = dual(f);
    return f;
  }

  Formula primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Formula inner = implication_level();
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'p') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected literal index after 'p'");
      const std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 9) fail("literal index too large");
      return Formula::pos(static_cast<std::uint32_t>(std::stoul(digits)));
    }
    fail("unknown token '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

int precedence(const Formula& f) {
  switch (f.connective()) {
    case Connective::Plus: return 1;
    case Connective::With: return 2;
    case Connective::Par: return 3;
    case Connective::Tensor: return 4;
    case Connective::Bang:
    case Connective::WhyNot: return 5;
    default: return 6;
  }
}

void print_into(const Formula& f, std::ostringstream& out) {
  const auto wrapped = [&out](const Formula& sub, bool parens) {
    if (parens) out << '(';
    print_into(sub, out);
    if (parens) out << ')';
  };
  switch (f.connective()) {
    case Connective::PosLit: out << 'p' << f.index(); return;
    case Connective::NegLit: out << 'p' << f.index() << '^'; return;
    case Connective::Bang:
    case Connective::WhyNot:
      out << (f.is_bang() ? '!' : '?');
      wrapped(f.body(), precedence(f.body()) < 5);
      return;
    default: break;
  }
  const int prec = precedence(f);
  static constexpr const char* kSymbols[] = {"", " + ", " & ", " @ ", " * "};
  wrapped(f.left(), precedence(f.left()) < prec);
  out << kSymbols[prec];
  wrapped(f.right(), precedence(f.right()) <= prec);
}

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse_all(); }

std::string print_formula(const Formula& f) {
  std::ostringstream out;
  print_into(f, out);
  return out.str();
}

Sequent parse_sequent(std::string_view text) {
  std::size_t start = 0;
  while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
  if (text.substr(start, 2) == "|-") start += 2;
  FormulaParser parser(text.substr(start), start);
  Sequent out;
  if (parser.at_end()) return out;
  out.push_back(parser.parse_item());
  while (parser.consume(',')) out.push_back(parser.parse_item());
  if (!parser.at_end()) parser.fail("expected ',' or end of sequent");
  return out;
}

std::string print_sequent(const Sequent& s) {
  std::string out = "|-";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += i == 0 ? " " : ", ";
    out += print_formula(s[i]);
  }
  return out;
}

std::vector<Formula> sequent_multiset(const Sequent& s) {
  std::vector<Formula> out = s;
  std::sort(out.begin(), out.end());
  return out;
}

bool same_multiset(const Sequent& a, const Sequent& b) {
  return a.size() == b.size() && sequent_multiset(a) == sequent_multiset(b);
}

}  // namespace idll
