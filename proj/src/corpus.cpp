#include "idll/corpus.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "idll/semantics.hpp"

namespace idll {

namespace {

unsigned exponential_depth(const Formula& f) {
  switch (f.connective()) {
    case Connective::PosLit:
    case Connective::NegLit: return 0;
    case Connective::Bang:
    case Connective::WhyNot: return 1 + exponential_depth(f.body());
    default: return std::max(exponential_depth(f.left()), exponential_depth(f.right()));
  }
}

void subformulas(const Formula& f, std::set<Formula>& out) {
  if (!out.insert(f).second) return;
  if (f.is_literal()) return;
  subformulas(f.left(), out);
  if (f.is_binary()) subformulas(f.right(), out);
}

void proof_formulas(const Proof& p, std::set<Formula>& out) {
  for (const Formula& f : p.conclusion()) subformulas(f, out);
  for (const Proof& q : p.premises()) proof_formulas(q, out);
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

Formula build_random(std::mt19937_64& rng, unsigned connectives, unsigned exp_depth, unsigned literals) {
  if (connectives == 0) {
    const auto index = static_cast<std::uint32_t>(pick(rng, literals));
    return pick(rng, 2) ? Formula::pos(index) : Formula::neg(index);
  }
  const std::size_t kinds = exp_depth > 0 ? 6 : 4;
  const std::size_t k = pick(rng, kinds);
  if (k >= 4) {
    Formula body = build_random(rng, connectives - 1, exp_depth - 1, literals);
    return k == 4 ? Formula::bang(body) : Formula::whynot(body);
  }
  const auto left = static_cast<unsigned>(pick(rng, connectives));
  Formula a = build_random(rng, left, exp_depth, literals);
  Formula b = build_random(rng, connectives - 1 - left, exp_depth, literals);
  switch (k) {
    case 0: return Formula::tensor(a, b);
    case 1: return Formula::par(a, b);
    case 2: return Formula::with(a, b);
    default: return Formula::plus(a, b);
  }
}

std::optional<std::size_t> widest(const std::set<Formula>& formulas, std::size_t n, const tot::Caps& caps) {
  std::set<std::uint32_t> literals;
  for (const Formula& f : formulas) {
    if (f.is_literal()) literals.insert(f.index());
  }
  sem::Environment env;
  for (std::uint32_t i : literals) env[i] = sem::dis_n(n);
  sem::Interpreter in(env, caps);
  std::size_t widest = 0;
  try {
    for (const Formula& f : formulas) {
      widest = std::max(widest, in.eval(f).size());
      in.cototals(f);
    }
  } catch (const tot::CapExceeded&) {
    return std::nullopt;
  }
  return widest;
}

}  // namespace

Formula random_formula(std::mt19937_64& rng, const FormulaShape& shape) {
  const auto connectives = static_cast<unsigned>(pick(rng, shape.max_connectives + 1));
  return build_random(rng, connectives, shape.max_exponential_depth, shape.literals);
}

std::optional<std::size_t> widest_space(const Formula& f, std::size_t n, const tot::Caps& caps) {
  std::set<Formula> all;
  subformulas(f, all);
  return widest(all, n, caps);
}

ProofGenerator::ProofGenerator(System sys, std::uint64_t seed) : sys_(sys), rng_(seed) {}

bool ProofGenerator::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

Proof ProofGenerator::with_last(const Proof& p, std::size_t index) {
  return move_formula(p, index, p.conclusion().size() - 1, sys_);
}

Proof ProofGenerator::dereliction(const Proof& p, std::size_t at, unsigned n) {
  if (sys_.logic == Logic::IdLL) return build(Rule::at_position(RuleKind::NDereliction, at, n), {p}, sys_);
  Proof cur = p;
  for (unsigned k = 0; k < n; ++k) cur = build(Rule::at_position(RuleKind::Dereliction, at), {cur}, sys_);
  return cur;
}

Proof ProofGenerator::promotion(const Proof& p, std::size_t at, unsigned n) {
  if (sys_.logic == Logic::IdLL) return build(Rule::at_position(RuleKind::NPromotion, at, n), {p}, sys_);
  Proof cur = p;
  for (unsigned k = 0; k < n; ++k) cur = build(Rule::at_position(RuleKind::Promotion, at), {cur}, sys_);
  return cur;
}

Proof ProofGenerator::derelict_context(const Proof& p) {
  Proof cur = p;
  for (std::size_t j = 0; j + 1 < cur.conclusion().size(); ++j) {
    if (!cur.conclusion()[j].is_whynot()) cur = dereliction(cur, j, coin(0.7) ? 1 : 2);
  }
  return cur;
}

Proof ProofGenerator::principal(const Formula& f) {
  const ModalPrefix mp = modal_prefix(f);
  switch (f.connective()) {
    case Connective::PosLit:
    case Connective::NegLit: return build(Rule::identity(dual(f)), {}, sys_);
    case Connective::Tensor: {
      const Proof l = principal(f.left());
      const Proof pr = principal(f.right());
      const Proof r = move_formula(pr, pr.conclusion().size() - 1, 0, sys_);
      const Proof t = build(Rule::times(l.conclusion().size() - 1), {l, r}, sys_);
      return with_last(t, l.conclusion().size() - 1);
    }
    case Connective::Par: {
      const Proof l = principal(f.left());
      const Proof r = principal(f.right());
      const std::size_t gl = l.conclusion().size() - 1, gr = r.conclusion().size() - 1;
      // |- Gamma1', A, C  and  |- D, B, Gamma2'
      const Proof left = with_last(l, pick(rng_, gl));
      Proof right = move_formula(r, gr, 0, sys_);
      right = move_formula(right, 1 + pick(rng_, gr), 0, sys_);
      const Proof t = build(Rule::times(gl), {left, right}, sys_);
      // |- Gamma1', A, C*D, B, Gamma2'  ->  |- Gamma1', A, B, C*D, Gamma2'
      const Proof adj = move_formula(t, gl + 1, gl, sys_);
      const Proof p = build(Rule::at_position(RuleKind::Par, gl - 1), {adj}, sys_);
      return with_last(p, gl - 1);
    }
    case Connective::With: {
      const auto single = [&](const Formula& a) {
        Proof p = principal(a);
        return p.conclusion().size() == 2 ? p : build(Rule::identity(dual(a)), {}, sys_);
      };
      const Proof l = single(f.left());
      const Proof r = single(f.right());
      const Formula g1 = l.conclusion()[0], g2 = r.conclusion()[0];
      const Proof pl = build(Rule::plus_left(0, g2), {l}, sys_);
      const Proof pr = build(Rule::plus_right(0, g1), {r}, sys_);
      return build(Rule::at_position(RuleKind::With, 1), {pl, pr}, sys_);
    }
    case Connective::Plus: {
      const bool left = coin(0.5);
      const Proof p = principal(left ? f.left() : f.right());
      const std::size_t at = p.conclusion().size() - 1;
      return build(left ? Rule::plus_left(at, f.right()) : Rule::plus_right(at, f.left()), {p}, sys_);
    }
    case Connective::Bang: {
      const Proof p = derelict_context(principal(mp.core));
      return promotion(p, p.conclusion().size() - 1, mp.count);
    }
    case Connective::WhyNot: {
      const auto derelicted = [&] {
        const Proof p = principal(mp.core);
        return dereliction(p, p.conclusion().size() - 1, mp.count);
      };
      const double roll = std::uniform_real_distribution<double>(0, 1)(rng_);
      if (roll < 0.45) return derelicted();
      if (roll < 0.7) {
        const Proof p = principal(build_random(rng_, 0, 0, 2));
        return build(Rule::weakening(p.conclusion().size(), f), {p}, sys_);
      }
      // Two occurrences of f merged by Contraction.
      const Proof p = derelicted();
      const std::size_t n = p.conclusion().size();
      const Proof two = build(Rule::weakening(n, f), {p}, sys_);
      return build(Rule::at_position(RuleKind::Contraction, n - 1), {two}, sys_);
    }
  }
  throw std::logic_error("unreachable");
}

Proof ProofGenerator::decorate(const Proof& p) {
  Proof cur = p;
  const std::size_t rounds = pick(rng_, 3);
  for (std::size_t round = 0; round < rounds; ++round) {
    const std::size_t last = cur.conclusion().size() - 1;
    if (last == 0) break;
    const std::size_t j = pick(rng_, last);
    const Formula g = cur.conclusion()[j];
    switch (pick(rng_, 8)) {
      case 0:
        if (j + 1 < last) cur = build(Rule::at_position(RuleKind::Par, j), {cur}, sys_);
        break;
      case 1: {
        const Formula idle = build_random(rng_, 0, 0, 2);
        cur = build(coin(0.5) ? Rule::plus_left(j, idle) : Rule::plus_right(j, idle), {cur}, sys_);
        break;
      }
      case 2: {
        const Formula x = Formula::whynot(build_random(rng_, 0, 0, 2));
        cur = build(Rule::weakening(0, x), {cur}, sys_);
        break;
      }
      case 3:
        if (!g.is_whynot()) cur = dereliction(cur, j, coin(0.7) ? 1 : 2);
        break;
      case 4: cur = build(Rule::at_position(RuleKind::With, j), {cur, cur}, sys_); break;
      case 5:
      case 6: {
        // G * X with X from a fresh proof; case 6 takes a proof containing a Cut.
        const Formula x = build_random(rng_, 0, 0, 2);
        Proof q = pick(rng_, 2) == 0 || round > 0 ? principal(x) : cut_on(x);
        if (q.conclusion().size() < 2 || q.conclusion().back() != x) break;
        const std::size_t qi = pick(rng_, q.conclusion().size());
        q = move_formula(q, qi, 0, sys_);
        const Proof l = with_last(cur, j);
        const Proof t = build(Rule::times(last), {l, q}, sys_);
        cur = move_formula(t, last - 1, t.conclusion().size() - 1, sys_);
        break;
      }
      default: {
        const Formula f = cur.conclusion()[last];
        if (!f.is_whynot() || g.is_bang()) break;
        Proof q = cur;
        for (std::size_t k = 0; k < last; ++k) {
          if (k != j && !q.conclusion()[k].is_whynot()) q = dereliction(q, k, 1);
        }
        cur = promotion(q, j, coin(0.7) ? 1 : 2);
        break;
      }
    }
  }
  return cur;
}

Proof ProofGenerator::cut_on(const Formula& f) {
  const Proof left = decorate(principal(f));
  const Proof right = decorate(principal(dual(f)));
  const Proof r = move_formula(right, right.conclusion().size() - 1, 0, sys_);
  return build(Rule::cut(f), {left, r}, sys_);
}

std::vector<Proof> cut_corpus(const CorpusOptions& options) {
  std::vector<Proof> out;
  const tot::Caps caps;
  for (const System sys : {System::idll(), System::ll()}) {
    ProofGenerator gen(sys, options.seed + (sys.logic == Logic::LL ? 1 : 0));
    std::size_t made = 0;
    for (std::size_t attempt = 0; made < options.per_system; ++attempt) {
      if (attempt > options.per_system * 1000) throw std::runtime_error("cut corpus generation stalled");
      const Formula f = random_formula(gen.rng(), FormulaShape{2, 3, 2});
      const Proof p = gen.cut_on(f);
      if (p.size() > options.max_nodes) continue;
      std::set<Formula> all;
      proof_formulas(p, all);
      const auto w = widest(all, 3, caps);
      if (!w || *w > caps.max_base) continue;
      if (auto err = check(p, sys)) throw std::logic_error("generator produced an invalid proof: " + err->message);
      out.push_back(p);
      ++made;
    }
  }
  return out;
}

std::vector<Sequent> sequent_corpus(std::uint64_t seed, std::size_t count, unsigned max_connectives) {
  std::mt19937_64 rng(seed);
  ProofGenerator gen(System::idll(), seed + 7);
  std::vector<Sequent> out;
  std::set<std::string> seen;
  const auto fits = [&](const Sequent& s) {
    std::size_t total = 0;
    for (const Formula& f : s) {
      if (exponential_depth(f) > 2) return false;
      total += f.connective_count();
    }
    return total <= max_connectives && !s.empty();
  };
  const auto add = [&](const Sequent& s) {
    if (fits(s) && seen.insert(print_sequent(s)).second) out.push_back(s);
  };
  for (std::size_t attempt = 0; out.size() < count / 2; ++attempt) {
    if (attempt > count * 1000) throw std::runtime_error("sequent corpus generation stalled");
    const Formula f = random_formula(gen.rng(), FormulaShape{2, 3, 2});
    add(gen.decorate(gen.principal(f)).conclusion());
  }
  for (std::size_t attempt = 0; out.size() < count; ++attempt) {
    if (attempt > count * 1000) throw std::runtime_error("sequent corpus generation stalled");
    Sequent s;
    const std::size_t width = 1 + pick(rng, 3);
    for (std::size_t k = 0; k < width; ++k) s.push_back(random_formula(rng, FormulaShape{2, 3, 2}));
    add(s);
  }
  return out;
}

}  // namespace idll
