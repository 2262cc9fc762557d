#include "idll/proof_io.hpp"

#include <cctype>
#include <sstream>

namespace idll {

namespace {

struct Param {
  std::string key;
  bool is_number = false;
  unsigned long number = 0;
  std::string text;
  std::size_t position = 0;
};

class ProofReader {
 public:
  explicit ProofReader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  Proof node() {
    skip();
    expect('(');
    const std::size_t name_pos = pos_;
    const std::string name = symbol();
    const auto kind = rule_from_name(name);
    if (!kind) throw ParseError(name_pos, "unknown rule '" + name + "'");

    std::vector<Param> params;
    skip();
    while (peek() == ':') {
      ++pos_;
      Param p;
      p.position = pos_;
      p.key = symbol();
      skip();
      if (peek() == '"') {
        p.text = string_literal();
      } else {
        p.is_number = true;
        p.number = number();
      }
      params.push_back(std::move(p));
      skip();
    }

    if (peek() != '"') fail("expected conclusion string");
    const std::size_t seq_pos = pos_ + 1;
    Sequent conclusion;
    try {
      conclusion = parse_sequent(string_literal());
    } catch (const ParseError& e) {
      throw ParseError(seq_pos + e.position(), std::string("in conclusion: ") + e.what());
    }

    std::vector<Proof> premises;
    skip();
    while (peek() == '(') {
      premises.push_back(node());
      skip();
    }
    expect(')');
    Rule rule = make_rule(*kind, params, conclusion, premises);
    return Proof::raw(std::move(rule), std::move(conclusion), std::move(premises));
  }

 private:
  Rule make_rule(RuleKind kind, const std::vector<Param>& params, const Sequent& conclusion,
                 const std::vector<Proof>& premises) {
    Rule rule;
    rule.kind = kind;
    bool have_at = false;
    for (const auto& p : params) {
      const auto need_number = [&] {
        if (!p.is_number) throw ParseError(p.position, "parameter :" + p.key + " expects a number");
      };
      const auto need_formula = [&] {
        if (p.is_number) throw ParseError(p.position, "parameter :" + p.key + " expects a formula string");
        try {
          return parse_formula(p.text);
        } catch (const ParseError& e) {
          throw ParseError(p.position, std::string("in :") + p.key + ": " + e.what());
        }
      };
      if (p.key == "at" || p.key == "i" || p.key == "split") {
        need_number();
        rule.at = p.number;
        have_at = true;
      } else if (p.key == "j") {
        need_number();
        rule.other = p.number;
      } else if (p.key == "n") {
        need_number();
        rule.n = static_cast<unsigned>(p.number);
      } else if (p.key == "cut" || p.key == "formula") {
        rule.formula = need_formula();
      } else {
        throw ParseError(p.position, "unknown parameter :" + p.key);
      }
    }
    if (kind == RuleKind::Exchange && rule.other == 0) rule.other = rule.at + 1;
    if (kind == RuleKind::Identity && !rule.formula && !conclusion.empty()) rule.formula = conclusion.front();
    if (kind == RuleKind::Cut && !rule.formula && !premises.empty() && !premises[0].conclusion().empty()) {
      rule.formula = premises[0].conclusion().back();
    }
    if (kind == RuleKind::Times && !have_at && !premises.empty() && !premises[0].conclusion().empty()) {
      rule.at = premises[0].conclusion().size() - 1;
      have_at = true;
    }
    const bool positional = rule_arity(kind) == 1 || kind == RuleKind::With;
    if (positional && kind != RuleKind::Exchange) {
      if (have_at) {
        fill_implicit(rule, conclusion);
      } else {
        infer_position(rule, conclusion, premises);
      }
    }
    return rule;
  }

  static void fill_implicit(Rule& rule, const Sequent& conclusion) {
    if (rule.formula || rule.at >= conclusion.size()) return;
    const Formula& f = conclusion[rule.at];
    if (rule.kind == RuleKind::Weakening) rule.formula = f;
    if (rule.kind == RuleKind::PlusLeft && f.connective() == Connective::Plus) rule.formula = f.right();
    if (rule.kind == RuleKind::PlusRight && f.connective() == Connective::Plus) rule.formula = f.left();
  }

  // The first position at which the rule reproduces the stated conclusion.
  static void infer_position(Rule& rule, const Sequent& conclusion, const std::vector<Proof>& premises) {
    std::vector<const Sequent*> prem;
    for (const auto& q : premises) prem.push_back(&q.conclusion());
    for (const Logic logic : {Logic::IdLL, Logic::LL}) {
      for (std::size_t at = 0; at < conclusion.size(); ++at) {
        Rule candidate = rule;
        candidate.at = at;
        fill_implicit(candidate, conclusion);
        const Conclusion c = conclude(candidate, prem, System{logic, AxiomMode::General});
        if (c.sequent && *c.sequent == conclusion) {
          rule = candidate;
          return;
        }
      }
    }
    fill_implicit(rule, conclusion);
  }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  [[noreturn]] void fail(const std::string& message) const {
    std::size_t line = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) line += text_[i] == '\n';
    throw ParseError(pos_, "line " + std::to_string(line) + ": " + message);
  }
  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string symbol() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-')) ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }
  unsigned long number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 9) fail("expected a number");
    return std::stoul(std::string(text_.substr(start, pos_ - start)));
  }
  std::string string_literal() {
    expect('"');
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') out += text_[pos_++];
    if (pos_ >= text_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print_into(const Proof& p, std::ostringstream& out, int indent) {
  out << std::string(static_cast<std::size_t>(indent), ' ') << '(' << rule_name(p.kind());
  const Rule& r = p.rule();
  switch (p.kind()) {
    case RuleKind::Identity: break;
    case RuleKind::Cut: out << " :cut \"" << print_formula(*r.formula) << '"'; break;
    case RuleKind::Exchange: out << " :i " << r.at << " :j " << r.other; break;
    case RuleKind::Times: out << " :split " << r.at; break;
    case RuleKind::NDereliction:
    case RuleKind::NPromotion: out << " :at " << r.at << " :n " << r.n; break;
    default: out << " :at " << r.at; break;
  }
  out << " \"" << print_sequent(p.conclusion()) << '"';
  for (const auto& q : p.premises()) {
    out << '\n';
    print_into(q, out, indent + 2);
  }
  out << ')';
}

}  // namespace

Proof parse_proof(std::string_view text) {
  ProofReader reader(text);
  Proof p = reader.node();
  if (!reader.at_end()) throw ParseError(text.size(), "trailing input after proof");
  return p;
}

std::vector<Proof> parse_proofs(std::string_view text) {
  ProofReader reader(text);
  std::vector<Proof> out;
  while (!reader.at_end()) out.push_back(reader.node());
  return out;
}

std::string print_proof(const Proof& p) {
  std::ostringstream out;
  print_into(p, out, 0);
  return out.str();
}

std::string check_report(const std::optional<RuleError>& error) {
  if (!error) return "status=ok\n";
  std::ostringstream out;
  out << "status=error\n"
      << "path=" << print_path(error->path) << '\n'
      << "rule=" << rule_name(error->rule) << '\n'
      << "reason=" << reason_code(error->reason) << '\n'
      << "message=" << error->message << '\n';
  return out.str();
}

}  // namespace idll
