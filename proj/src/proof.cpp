#include "idll/proof.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

namespace idll {

std::string_view logic_name(Logic l) { return l == Logic::LL ? "ll" : "idll"; }

namespace {

struct RuleInfo {
  RuleKind kind;
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<RuleInfo, 14> kRules = {{
    {RuleKind::Identity, "id", 0},
    {RuleKind::Cut, "cut", 2},
    {RuleKind::Exchange, "ex", 1},
    {RuleKind::Times, "times", 2},
    {RuleKind::Par, "par", 1},
    {RuleKind::With, "with", 2},
    {RuleKind::PlusLeft, "plusl", 1},
    {RuleKind::PlusRight, "plusr", 1},
    {RuleKind::Contraction, "contr", 1},
    {RuleKind::Weakening, "weak", 1},
    {RuleKind::Dereliction, "der", 1},
    {RuleKind::Promotion, "prom", 1},
    {RuleKind::NDereliction, "nder", 1},
    {RuleKind::NPromotion, "nprom", 1},
}};

const RuleInfo& info(RuleKind k) { return kRules[static_cast<std::size_t>(k)]; }

}  // namespace

std::string_view rule_name(RuleKind k) { return info(k).name; }

std::optional<RuleKind> rule_from_name(std::string_view name) {
  for (const auto& r : kRules) {
    if (r.name == name) return r.kind;
  }
  return std::nullopt;
}

std::size_t rule_arity(RuleKind k) { return info(k).arity; }

bool rule_allowed(RuleKind k, Logic l) {
  switch (k) {
    case RuleKind::Dereliction:
    case RuleKind::Promotion: return l == Logic::LL;
    case RuleKind::NDereliction:
    case RuleKind::NPromotion: return l == Logic::IdLL;
    default: return true;
  }
}

Proof Proof::raw(Rule rule, Sequent conclusion, std::vector<Proof> premises) {
  auto node = std::make_shared<ProofNode>();
  node->rule = std::move(rule);
  node->conclusion = std::move(conclusion);
  node->premises = std::move(premises);
  return Proof(std::move(node));
}

std::size_t Proof::size() const noexcept {
  std::size_t n = 1;
  for (const auto& p : premises()) n += p.size();
  return n;
}

std::size_t Proof::logical_size() const noexcept {
  std::size_t n = kind() == RuleKind::Exchange ? 0 : 1;
  for (const auto& p : premises()) n += p.logical_size();
  return n;
}

std::string print_path(const Path& path) {
  std::string out = "root";
  for (auto i : path) out += "/" + std::to_string(i);
  return out;
}

std::string_view reason_code(Reason r) {
  switch (r) {
    case Reason::Arity: return "arity";
    case Reason::WrongSystem: return "wrong-system";
    case Reason::BadParameter: return "bad-parameter";
    case Reason::AxiomMismatch: return "axiom-mismatch";
    case Reason::CutMismatch: return "cut-mismatch";
    case Reason::ContextMismatch: return "context-mismatch";
    case Reason::ConclusionMismatch: return "conclusion-mismatch";
    case Reason::SideCondition: return "side-condition";
    case Reason::PromotionContext: return "promotion-context";
  }
  return "unknown";
}

ProofError::ProofError(RuleError error)
    : std::runtime_error(std::string(rule_name(error.rule)) + " at " + print_path(error.path) + ": " +
                         std::string(reason_code(error.reason)) + " (" + error.message + ")"),
      error_(std::move(error)) {}

namespace {

Conclusion fail(const Rule& rule, Reason reason, std::string message) {
  return Conclusion{std::nullopt, RuleError{{}, rule.kind, reason, std::move(message)}};
}

Conclusion ok(Sequent s) { return Conclusion{std::move(s), std::nullopt}; }

Sequent erase_at(Sequent s, std::size_t i) {
  s.erase(s.begin() + static_cast<std::ptrdiff_t>(i));
  return s;
}

bool all_whynot_except(const Sequent& s, std::size_t skip) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i != skip && !s[i].is_whynot()) return false;
  }
  return true;
}

Conclusion conclude_unary(const Rule& rule, const Sequent& prem, const System& sys) {
  const std::size_t at = rule.at;
  const auto need = [&](std::size_t width) { return at + width <= prem.size(); };
  switch (rule.kind) {
    case RuleKind::Exchange: {
      if (rule.other != at + 1) return fail(rule, Reason::BadParameter, "exchange must swap adjacent positions");
      if (!need(2)) return fail(rule, Reason::BadParameter, "exchange position out of range");
      Sequent out = prem;
      std::swap(out[at], out[at + 1]);
      return ok(std::move(out));
    }
    case RuleKind::Par: {
      if (!need(2)) return fail(rule, Reason::BadParameter, "par position out of range");
      Sequent out = prem;
      out[at] = Formula::par(prem[at], prem[at + 1]);
      return ok(erase_at(std::move(out), at + 1));
    }
    case RuleKind::PlusLeft:
    case RuleKind::PlusRight: {
      if (!need(1)) return fail(rule, Reason::BadParameter, "plus position out of range");
      if (!rule.formula) return fail(rule, Reason::BadParameter, "plus needs the idle disjunct");
      Sequent out = prem;
      out[at] = rule.kind == RuleKind::PlusLeft ? Formula::plus(prem[at], *rule.formula)
                                                : Formula::plus(*rule.formula, prem[at]);
      return ok(std::move(out));
    }
    case RuleKind::Contraction: {
      if (!need(2)) return fail(rule, Reason::BadParameter, "contraction position out of range");
      if (!(prem[at] == prem[at + 1])) return fail(rule, Reason::ContextMismatch, "contracted formulas differ");
      if (!prem[at].is_whynot()) return fail(rule, Reason::SideCondition, "contracted formula is not ?-headed");
      return ok(erase_at(prem, at + 1));
    }
    case RuleKind::Weakening: {
      if (at > prem.size()) return fail(rule, Reason::BadParameter, "weakening position out of range");
      if (!rule.formula) return fail(rule, Reason::BadParameter, "weakening needs the introduced formula");
      if (!rule.formula->is_whynot()) return fail(rule, Reason::SideCondition, "weakened formula is not ?-headed");
      Sequent out = prem;
      out.insert(out.begin() + static_cast<std::ptrdiff_t>(at), *rule.formula);
      return ok(std::move(out));
    }
    case RuleKind::Dereliction: {
      if (!need(1)) return fail(rule, Reason::BadParameter, "dereliction position out of range");
      Sequent out = prem;
      out[at] = Formula::whynot(prem[at]);
      return ok(std::move(out));
    }
    case RuleKind::NDereliction: {
      if (!need(1)) return fail(rule, Reason::BadParameter, "n-dereliction position out of range");
      if (rule.n < 1) return fail(rule, Reason::BadParameter, "n must be positive");
      if (prem[at].is_whynot()) return fail(rule, Reason::SideCondition, "main connective of the premise formula is ?");
      Sequent out = prem;
      out[at] = whynot_n(prem[at], rule.n);
      return ok(std::move(out));
    }
    case RuleKind::Promotion:
    case RuleKind::NPromotion: {
      if (!need(1)) return fail(rule, Reason::BadParameter, "promotion position out of range");
      if (rule.kind == RuleKind::NPromotion) {
        if (rule.n < 1) return fail(rule, Reason::BadParameter, "n must be positive");
        if (prem[at].is_bang()) return fail(rule, Reason::SideCondition, "main connective of the premise formula is !");
      }
      if (!all_whynot_except(prem, at)) return fail(rule, Reason::PromotionContext, "promotion context is not ?-headed");
      Sequent out = prem;
      out[at] = bang_n(prem[at], rule.kind == RuleKind::NPromotion ? rule.n : 1);
      return ok(std::move(out));
    }
    default: break;
  }
  (void)sys;
  return fail(rule, Reason::Arity, "not a unary rule");
}

}  // namespace

Conclusion conclude(const Rule& rule, const std::vector<const Sequent*>& premises, const System& sys) {
  if (!rule_allowed(rule.kind, sys.logic)) {
    return fail(rule, Reason::WrongSystem,
                std::string(rule_name(rule.kind)) + " is not a rule of " + std::string(logic_name(sys.logic)));
  }
  if (premises.size() != rule_arity(rule.kind)) {
    return fail(rule, Reason::Arity,
                "expected " + std::to_string(rule_arity(rule.kind)) + " premises, got " + std::to_string(premises.size()));
  }
  switch (rule.kind) {
    case RuleKind::Identity: {
      if (!rule.formula) return fail(rule, Reason::BadParameter, "identity needs its formula");
      if (sys.axioms == AxiomMode::Atomic && !rule.formula->is_literal()) {
        return fail(rule, Reason::AxiomMismatch, "atomic axiom mode requires a literal");
      }
      return ok(Sequent{*rule.formula, dual(*rule.formula)});
    }
    case RuleKind::Cut: {
      const Sequent& l = *premises[0];
      const Sequent& r = *premises[1];
      if (l.empty() || r.empty()) return fail(rule, Reason::CutMismatch, "cut premise is empty");
      const Formula& a = rule.formula ? *rule.formula : l.back();
      if (!(l.back() == a)) return fail(rule, Reason::CutMismatch, "cut formula is not last in the left premise");
      if (!(r.front() == dual(a))) return fail(rule, Reason::CutMismatch, "right premise does not start with the dual");
      Sequent out(l.begin(), l.end() - 1);
      out.insert(out.end(), r.begin() + 1, r.end());
      return ok(std::move(out));
    }
    case RuleKind::Times: {
      const Sequent& l = *premises[0];
      const Sequent& r = *premises[1];
      if (l.empty() || r.empty()) return fail(rule, Reason::ContextMismatch, "times premise is empty");
      if (rule.at != l.size() - 1) return fail(rule, Reason::BadParameter, "times split must equal the left context length");
      Sequent out(l.begin(), l.end() - 1);
      out.push_back(Formula::tensor(l.back(), r.front()));
      out.insert(out.end(), r.begin() + 1, r.end());
      return ok(std::move(out));
    }
    case RuleKind::With: {
      const Sequent& l = *premises[0];
      const Sequent& r = *premises[1];
      if (l.size() != r.size() || rule.at >= l.size()) return fail(rule, Reason::ContextMismatch, "with premises differ in width");
      for (std::size_t i = 0; i < l.size(); ++i) {
        if (i != rule.at && !(l[i] == r[i])) return fail(rule, Reason::ContextMismatch, "with premises have different contexts");
      }
      Sequent out = l;
      out[rule.at] = Formula::with(l[rule.at], r[rule.at]);
      return ok(std::move(out));
    }
    default: return conclude_unary(rule, *premises[0], sys);
  }
}

namespace {

std::optional<RuleError> check_at(const Proof& p, const System& sys, Path& path) {
  for (std::size_t i = 0; i < p.premises().size(); ++i) {
    path.push_back(i);
    if (auto e = check_at(p.premise(i), sys, path)) return e;
    path.pop_back();
  }
  std::vector<const Sequent*> prem;
  for (const auto& q : p.premises()) prem.push_back(&q.conclusion());
  Conclusion c = conclude(p.rule(), prem, sys);
  if (c.error) {
    c.error->path = path;
    return c.error;
  }
  if (*c.sequent != p.conclusion()) {
    return RuleError{path, p.kind(), Reason::ConclusionMismatch,
                     "stated " + print_sequent(p.conclusion()) + ", rule yields " + print_sequent(*c.sequent)};
  }
  return std::nullopt;
}

}  // namespace

std::optional<RuleError> check(const Proof& p, const System& sys) {
  Path path;
  return check_at(p, sys, path);
}

Proof build(const Rule& rule, std::vector<Proof> premises, const System& sys) {
  std::vector<const Sequent*> prem;
  for (const auto& q : premises) prem.push_back(&q.conclusion());
  Conclusion c = conclude(rule, prem, sys);
  if (c.error) throw ProofError(*c.error);
  Rule stored = rule;
  if (stored.kind == RuleKind::Cut && !stored.formula) stored.formula = premises[0].conclusion().back();
  return Proof::raw(std::move(stored), std::move(*c.sequent), std::move(premises));
}

Proof exchange(const Proof& p, std::size_t i, const System& sys) { return build(Rule::exchange(i), {p}, sys); }

Proof move_formula(const Proof& p, std::size_t from, std::size_t to, const System& sys) {
  Proof out = p;
  for (; from < to; ++from) out = exchange(out, from, sys);
  for (; from > to; --from) out = exchange(out, from - 1, sys);
  return out;
}

Proof permute(const Proof& p, const std::vector<std::size_t>& order, const System& sys) {
  const std::size_t width = p.conclusion().size();
  if (order.size() != width) throw std::invalid_argument("permutation width mismatch");
  // cur[k] = premise position currently at position k
  std::vector<std::size_t> cur(width);
  std::iota(cur.begin(), cur.end(), 0);
  Proof out = p;
  for (std::size_t k = 0; k < width; ++k) {
    auto it = std::find(cur.begin() + static_cast<std::ptrdiff_t>(k), cur.end(), order[k]);
    if (it == cur.end()) throw std::invalid_argument("not a permutation");
    for (auto m = static_cast<std::size_t>(it - cur.begin()); m > k; --m) {
      out = exchange(out, m - 1, sys);
      std::swap(cur[m - 1], cur[m]);
    }
  }
  return out;
}

bool is_cut_free(const Proof& p) { return !contains_rule(p, RuleKind::Cut); }

bool contains_rule(const Proof& p, RuleKind k) {
  if (p.kind() == k) return true;
  return std::any_of(p.premises().begin(), p.premises().end(), [k](const Proof& q) { return contains_rule(q, k); });
}

const Proof& subproof(const Proof& p, const Path& path) {
  const Proof* cur = &p;
  for (auto i : path) cur = &cur->premise(i);
  return *cur;
}

namespace {

Proof replace_from(const Proof& p, const Path& path, std::size_t depth, const Proof& replacement) {
  if (depth == path.size()) return replacement;
  std::vector<Proof> prem = p.premises();
  prem.at(path[depth]) = replace_from(p.premise(path[depth]), path, depth + 1, replacement);
  return Proof::raw(p.rule(), p.conclusion(), std::move(prem));
}

void canonical_into(const Proof& p, std::ostringstream& out) {
  if (p.kind() == RuleKind::Exchange) {
    canonical_into(p.premise(0), out);
    return;
  }
  out << '(' << rule_name(p.kind());
  if (p.kind() == RuleKind::NDereliction || p.kind() == RuleKind::NPromotion) out << ' ' << p.rule().n;
  out << " [";
  for (const auto& f : sequent_multiset(p.conclusion())) out << print_formula(f) << ';';
  out << ']';
  for (const auto& q : p.premises()) {
    out << ' ';
    canonical_into(q, out);
  }
  out << ')';
}

}  // namespace

Proof replace_subproof(const Proof& p, const Path& path, const Proof& replacement) {
  return replace_from(p, path, 0, replacement);
}

std::string exchange_normal_form(const Proof& p) {
  std::ostringstream out;
  canonical_into(p, out);
  return out.str();
}

Proof expanded_identity(const Formula& a, const System& sys) {
  const auto swapped = [&](const Formula& f) { return exchange(expanded_identity(dual(f), sys), 0, sys); };
  switch (a.connective()) {
    case Connective::PosLit:
    case Connective::NegLit: return build(Rule::identity(a), {}, sys);
    case Connective::Tensor: {
      // |- X^, X  and  |- Y, Y^  give  |- X^, X*Y, Y^
      Proof left = expanded_identity(dual(a.left()), sys);
      Proof right = expanded_identity(a.right(), sys);
      Proof t = build(Rule::times(1), {left, right}, sys);
      t = exchange(t, 0, sys);
      return build(Rule::at_position(RuleKind::Par, 1), {t}, sys);
    }
    case Connective::With: {
      const Formula dl = dual(a.left());
      const Formula dr = dual(a.right());
      Proof l = build(Rule::plus_left(1, dr), {expanded_identity(a.left(), sys)}, sys);
      Proof r = build(Rule::plus_right(1, dl), {expanded_identity(a.right(), sys)}, sys);
      return build(Rule::at_position(RuleKind::With, 0), {l, r}, sys);
    }
    case Connective::Bang: {
      if (sys.logic == Logic::LL) {
        Proof inner = expanded_identity(a.body(), sys);
        inner = build(Rule::at_position(RuleKind::Dereliction, 1), {inner}, sys);
        return build(Rule::at_position(RuleKind::Promotion, 0), {inner}, sys);
      }
      const ModalPrefix m = modal_prefix(a);
      Proof inner = expanded_identity(m.core, sys);
      inner = build(Rule::at_position(RuleKind::NDereliction, 1, m.count), {inner}, sys);
      return build(Rule::at_position(RuleKind::NPromotion, 0, m.count), {inner}, sys);
    }
    case Connective::Par:
    case Connective::Plus:
    case Connective::WhyNot: return swapped(a);
  }
  throw std::logic_error("unreachable connective");
}

Proof eta_block(unsigned n, unsigned m, const Formula& core, AxiomMode axioms) {
  const System sys = System::idll(axioms);
  if (core.is_whynot()) {
    throw ProofError(RuleError{{}, RuleKind::NDereliction, Reason::SideCondition, "eta_block core is ?-headed"});
  }
  Proof p = axioms == AxiomMode::Atomic ? expanded_identity(core, sys) : build(Rule::identity(core), {}, sys);
  p = build(Rule::at_position(RuleKind::NDereliction, 0, n), {p}, sys);
  return build(Rule::at_position(RuleKind::NPromotion, 1, m), {p}, sys);
}

}  // namespace idll
