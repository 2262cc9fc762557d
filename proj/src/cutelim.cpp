#include "idll/cutelim.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace idll {

namespace {

// A proof whose conclusion occurrences carry labels, so that formula
// occurrences can be followed through a rewrite independently of order.
struct Labeled {
  Proof proof;
  std::vector<int> labels;
};

std::size_t index_of(const std::vector<int>& labels, int label) {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw std::logic_error("cut elimination lost a formula occurrence");
  return static_cast<std::size_t>(it - labels.begin());
}

std::vector<int> without(const std::vector<int>& labels, std::initializer_list<int> drop) {
  std::vector<int> out;
  for (int l : labels) {
    if (std::find(drop.begin(), drop.end(), l) == drop.end()) out.push_back(l);
  }
  return out;
}

std::vector<int> replaced(std::vector<int> labels, std::size_t at, std::initializer_list<int> with) {
  labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(at));
  labels.insert(labels.begin() + static_cast<std::ptrdiff_t>(at), with);
  return labels;
}

struct Decomposition {
  std::vector<std::vector<int>> premise_labels;
  std::vector<int> active;  // labels of the active formulas, in premise order
  int principal = -1;
};

class Reducer {
 public:
  Reducer(const System& sys, int first_free) : sys_(sys), next_(first_free) {}

  Labeled reduce_cut(const Proof& cut, std::string& kind) {
    const Proof& left = cut.premise(0);
    const Proof& right = cut.premise(1);
    const int g = static_cast<int>(left.conclusion().size()) - 1;
    const int d = static_cast<int>(right.conclusion().size()) - 1;
    std::vector<int> left_labels, right_labels, target;
    const int cl = fresh();
    const int cr = fresh();
    for (int i = 0; i < g; ++i) left_labels.push_back(i);
    left_labels.push_back(cl);
    right_labels.push_back(cr);
    for (int i = 0; i < d; ++i) right_labels.push_back(g + i);
    for (int i = 0; i < g + d; ++i) target.push_back(i);

    Labeled result = dispatch(strip({left, left_labels}), cl, strip({right, right_labels}), cr, kind);
    return reorder(result, target);
  }

 private:
  int fresh() { return next_++; }

  static Labeled strip(Labeled x) {
    while (x.proof.kind() == RuleKind::Exchange) {
      const std::size_t i = x.proof.rule().at;
      std::swap(x.labels[i], x.labels[i + 1]);
      x.proof = x.proof.premise(0);
    }
    return x;
  }

  Labeled reorder(Labeled x, const std::vector<int>& target) const {
    x = strip(std::move(x));
    if (x.labels.size() != target.size()) throw std::logic_error("reorder width mismatch");
    std::vector<std::size_t> order;
    for (int l : target) order.push_back(index_of(x.labels, l));
    return {permute(x.proof, order, sys_), target};
  }

  static const Formula& formula_of(const Labeled& x, int label) {
    return x.proof.conclusion()[index_of(x.labels, label)];
  }

  static Labeled relabel(Labeled x, int from, int to) {
    x.labels[index_of(x.labels, from)] = to;
    return x;
  }

  Labeled relabel_all(Labeled x, std::map<int, int>& fresh_map) {
    for (int& l : x.labels) {
      auto [it, inserted] = fresh_map.try_emplace(l, 0);
      if (inserted) it->second = fresh();
      l = it->second;
    }
    return x;
  }

  // ---- label-aware rule builders ----

  Labeled cut(const Labeled& a, int la, const Labeled& b, int lb) {
    std::vector<int> ta = without(a.labels, {la});
    ta.push_back(la);
    std::vector<int> tb{lb};
    for (int l : without(b.labels, {lb})) tb.push_back(l);
    Labeled ra = reorder(a, ta);
    Labeled rb = reorder(b, tb);
    Proof p = build(Rule::cut(ra.proof.conclusion().back()), {ra.proof, rb.proof}, sys_);
    std::vector<int> labels(ta.begin(), ta.end() - 1);
    labels.insert(labels.end(), tb.begin() + 1, tb.end());
    return {p, labels};
  }

  Labeled times(const Labeled& a, int la, const Labeled& b, int lb, int out) {
    std::vector<int> ta = without(a.labels, {la});
    ta.push_back(la);
    std::vector<int> tb{lb};
    for (int l : without(b.labels, {lb})) tb.push_back(l);
    Labeled ra = reorder(a, ta);
    Labeled rb = reorder(b, tb);
    Proof p = build(Rule::times(ta.size() - 1), {ra.proof, rb.proof}, sys_);
    std::vector<int> labels(ta.begin(), ta.end() - 1);
    labels.push_back(out);
    labels.insert(labels.end(), tb.begin() + 1, tb.end());
    return {p, labels};
  }

  Labeled par(const Labeled& a, int l1, int l2, int out) {
    std::vector<int> t = without(a.labels, {l1, l2});
    const std::size_t at = t.size();
    t.push_back(l1);
    t.push_back(l2);
    Labeled r = reorder(a, t);
    Proof p = build(Rule::at_position(RuleKind::Par, at), {r.proof}, sys_);
    t.resize(at);
    t.push_back(out);
    return {p, t};
  }

  Labeled with(const Labeled& a, int la, const Labeled& b, int lb, int out) {
    std::vector<int> ctx = without(a.labels, {la});
    std::vector<int> ta = ctx, tb = ctx;
    ta.push_back(la);
    tb.push_back(lb);
    Labeled ra = reorder(a, ta);
    Labeled rb = reorder(b, tb);
    Proof p = build(Rule::at_position(RuleKind::With, ctx.size()), {ra.proof, rb.proof}, sys_);
    ctx.push_back(out);
    return {p, ctx};
  }

  Labeled contract(const Labeled& a, int l1, int l2, int out) {
    std::vector<int> t = without(a.labels, {l1, l2});
    const std::size_t at = t.size();
    t.push_back(l1);
    t.push_back(l2);
    Labeled r = reorder(a, t);
    Proof p = build(Rule::at_position(RuleKind::Contraction, at), {r.proof}, sys_);
    t.resize(at);
    t.push_back(out);
    return {p, t};
  }

  Labeled weaken(const Labeled& a, const Formula& f, int out) {
    Proof p = build(Rule::weakening(a.labels.size(), f), {a.proof}, sys_);
    std::vector<int> labels = a.labels;
    labels.push_back(out);
    return {p, labels};
  }

  // Rules acting in place on one formula: plus, dereliction, promotion.
  Labeled in_place(Rule rule, const Labeled& a, int la, int out) {
    rule.at = index_of(a.labels, la);
    Proof p = build(rule, {a.proof}, sys_);
    return {p, replaced(a.labels, rule.at, {out})};
  }

  // ---- structure of a rule node in terms of labels ----

  Decomposition decompose(const Labeled& x) {
    const Rule& r = x.proof.rule();
    const std::vector<int>& l = x.labels;
    Decomposition d;
    switch (r.kind) {
      case RuleKind::Times: {
        const int a = fresh(), b = fresh();
        std::vector<int> p0(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(r.at));
        p0.push_back(a);
        std::vector<int> p1{b};
        p1.insert(p1.end(), l.begin() + static_cast<std::ptrdiff_t>(r.at) + 1, l.end());
        d.premise_labels = {p0, p1};
        d.active = {a, b};
        break;
      }
      case RuleKind::Par: {
        const int a = fresh(), b = fresh();
        d.premise_labels = {replaced(l, r.at, {a, b})};
        d.active = {a, b};
        break;
      }
      case RuleKind::With: {
        const int a = fresh(), b = fresh();
        d.premise_labels = {replaced(l, r.at, {a}), replaced(l, r.at, {b})};
        d.active = {a, b};
        break;
      }
      case RuleKind::Contraction: {
        const int a = fresh(), b = fresh();
        d.premise_labels = {replaced(l, r.at, {a, b})};
        d.active = {a, b};
        break;
      }
      case RuleKind::Weakening: {
        d.premise_labels = {replaced(l, r.at, {})};
        break;
      }
      case RuleKind::PlusLeft:
      case RuleKind::PlusRight:
      case RuleKind::Dereliction:
      case RuleKind::Promotion:
      case RuleKind::NDereliction:
      case RuleKind::NPromotion: {
        const int a = fresh();
        d.premise_labels = {replaced(l, r.at, {a})};
        d.active = {a};
        break;
      }
      default: throw std::logic_error("cannot decompose " + std::string(rule_name(r.kind)));
    }
    d.principal = l.at(r.at);
    return d;
  }

  Labeled premise(const Labeled& x, const Decomposition& d, std::size_t i) {
    return {x.proof.premise(i), d.premise_labels[i]};
  }

  Labeled rebuild(const Labeled& node, const Decomposition& d, std::vector<Labeled> prem) {
    const Rule& r = node.proof.rule();
    switch (r.kind) {
      case RuleKind::Times: return times(prem[0], d.active[0], prem[1], d.active[1], d.principal);
      case RuleKind::Par: return par(prem[0], d.active[0], d.active[1], d.principal);
      case RuleKind::With: return with(prem[0], d.active[0], prem[1], d.active[1], d.principal);
      case RuleKind::Contraction: return contract(prem[0], d.active[0], d.active[1], d.principal);
      case RuleKind::Weakening: return weaken(prem[0], *r.formula, d.principal);
      default: return in_place(r, prem[0], d.active[0], d.principal);
    }
  }

  static bool principal_in(const Labeled& x, int label) { return x.labels.at(x.proof.rule().at) == label; }

  // Permutes the Cut above the last rule of `node`, in which the cut
  // occurrence `c` is not principal.
  Labeled commute(const Labeled& node, int c, const Labeled& other, int oc, bool node_is_left, std::string& kind) {
    kind = std::string(node_is_left ? "commute-left:" : "commute-right:") + std::string(rule_name(node.proof.kind()));
    Decomposition d = decompose(node);
    std::vector<Labeled> prem;
    for (std::size_t i = 0; i < d.premise_labels.size(); ++i) {
      Labeled p = premise(node, d, i);
      const auto& pl = d.premise_labels[i];
      if (std::find(pl.begin(), pl.end(), c) != pl.end()) {
        p = node_is_left ? cut(p, c, other, oc) : cut(other, oc, p, c);
      }
      prem.push_back(std::move(p));
    }
    return rebuild(node, d, std::move(prem));
  }

  // Key case for a promotion against a ?-side rule.
  Labeled exponential(const Labeled& prom, int pc, const Labeled& side, int sc, bool prom_is_left, std::string& kind) {
    const auto oriented = [&](const Labeled& p, int lp, const Labeled& s, int ls) {
      return prom_is_left ? cut(p, lp, s, ls) : cut(s, ls, p, lp);
    };
    Decomposition ds = decompose(side);
    const RuleKind sk = side.proof.kind();
    if (is_dereliction_family(sk)) {
      kind = "prom-der";
      Decomposition dp = decompose(prom);
      return oriented(premise(prom, dp, 0), dp.active[0], premise(side, ds, 0), ds.active[0]);
    }
    if (sk == RuleKind::Weakening) {
      kind = "prom-weak";
      Labeled out = premise(side, ds, 0);
      for (int l : prom.labels) {
        if (l != pc) out = weaken(out, formula_of(prom, l), l);
      }
      return out;
    }
    if (sk == RuleKind::Contraction) {
      kind = "prom-contr";
      std::map<int, int> copy_of;
      Labeled second = relabel_all(prom, copy_of);
      Labeled out = oriented(prom, pc, premise(side, ds, 0), ds.active[0]);
      out = oriented(second, copy_of.at(pc), out, ds.active[1]);
      for (int l : prom.labels) {
        if (l != pc) out = contract(out, l, copy_of.at(l), l);
      }
      return out;
    }
    throw std::logic_error("no exponential reduction against " + std::string(rule_name(sk)));
  }

  Labeled principal(const Labeled& l0, int cl, const Labeled& r0, int cr, std::string& kind) {
    const RuleKind lk = l0.proof.kind();
    const RuleKind rk = r0.proof.kind();
    if (lk == RuleKind::Times && rk == RuleKind::Par) {
      kind = "tensor-par";
      Decomposition dl = decompose(l0), dr = decompose(r0);
      Labeled x = cut(premise(l0, dl, 0), dl.active[0], premise(r0, dr, 0), dr.active[0]);
      return cut(premise(l0, dl, 1), dl.active[1], x, dr.active[1]);
    }
    if (lk == RuleKind::Par && rk == RuleKind::Times) {
      kind = "par-tensor";
      Decomposition dl = decompose(l0), dr = decompose(r0);
      Labeled x = cut(premise(l0, dl, 0), dl.active[0], premise(r0, dr, 0), dr.active[0]);
      return cut(x, dl.active[1], premise(r0, dr, 1), dr.active[1]);
    }
    if (lk == RuleKind::With && (rk == RuleKind::PlusLeft || rk == RuleKind::PlusRight)) {
      kind = "with-plus";
      Decomposition dl = decompose(l0), dr = decompose(r0);
      const std::size_t side = rk == RuleKind::PlusLeft ? 0 : 1;
      return cut(premise(l0, dl, side), dl.active[side], premise(r0, dr, 0), dr.active[0]);
    }
    if ((lk == RuleKind::PlusLeft || lk == RuleKind::PlusRight) && rk == RuleKind::With) {
      kind = "plus-with";
      Decomposition dl = decompose(l0), dr = decompose(r0);
      const std::size_t side = lk == RuleKind::PlusLeft ? 0 : 1;
      return cut(premise(l0, dl, 0), dl.active[0], premise(r0, dr, side), dr.active[side]);
    }
    if (is_promotion_family(lk)) return exponential(l0, cl, r0, cr, true, kind);
    if (is_promotion_family(rk)) return exponential(r0, cr, l0, cl, false, kind);
    throw std::logic_error("no principal reduction for " + std::string(rule_name(lk)) + " against " +
                           std::string(rule_name(rk)));
  }

  Labeled dispatch(const Labeled& l0, int cl, const Labeled& r0, int cr, std::string& kind) {
    if (l0.proof.kind() == RuleKind::Identity) {
      kind = "axiom-left";
      const int other = l0.labels[0] == cl ? l0.labels[1] : l0.labels[0];
      return relabel(r0, cr, other);
    }
    if (r0.proof.kind() == RuleKind::Identity) {
      kind = "axiom-right";
      const int other = r0.labels[0] == cr ? r0.labels[1] : r0.labels[0];
      return relabel(l0, cl, other);
    }
    const bool lp = principal_in(l0, cl);
    const bool rp = principal_in(r0, cr);
    if (!lp && !is_promotion_family(l0.proof.kind())) return commute(l0, cl, r0, cr, true, kind);
    if (!rp && !is_promotion_family(r0.proof.kind())) return commute(r0, cr, l0, cl, false, kind);
    if (lp && rp) return principal(l0, cl, r0, cr, kind);
    // A promotion whose ?-context holds the cut formula, facing a
    // promotion of the dual: the Cut moves inside the context.
    if (!lp) return commute(l0, cl, r0, cr, true, kind);
    return commute(r0, cr, l0, cl, false, kind);
  }

  System sys_;
  int next_;
};

}  // namespace

std::optional<Path> topmost_cut(const Proof& p) {
  if (is_cut_free(p)) return std::nullopt;
  Path path;
  const Proof* cur = &p;
  for (;;) {
    bool descended = false;
    for (std::size_t i = 0; i < cur->premises().size(); ++i) {
      if (!is_cut_free(cur->premise(i))) {
        path.push_back(i);
        cur = &cur->premise(i);
        descended = true;
        break;
      }
    }
    if (!descended) return path;
  }
}

Reduction reduce_at(const Proof& p, const Path& path, const System& sys) {
  const Proof& cut = subproof(p, path);
  if (cut.kind() != RuleKind::Cut || !is_cut_free(cut.premise(0)) || !is_cut_free(cut.premise(1))) {
    throw std::invalid_argument("no topmost cut at " + print_path(path));
  }
  const int width = static_cast<int>(cut.conclusion().size());
  Reducer reducer(sys, width);
  std::string kind;
  Labeled out = reducer.reduce_cut(cut, kind);
  if (out.proof.conclusion() != cut.conclusion()) throw std::logic_error("reduction changed the conclusion");
  return Reduction{replace_subproof(p, path, out.proof), ReductionStep{kind, path}};
}

std::optional<Reduction> reduce_step(const Proof& p, const System& sys) {
  auto path = topmost_cut(p);
  if (!path) return std::nullopt;
  return reduce_at(p, *path, sys);
}

ReductionTrace normalize(const Proof& p, const System& sys, std::uint64_t fuel) {
  ReductionTrace trace{{}, p, false};
  while (auto path = topmost_cut(trace.final)) {
    if (trace.steps.size() >= fuel) {
      trace.fuel_exhausted = true;
      break;
    }
    Reduction r = reduce_at(trace.final, *path, sys);
    trace.final = r.proof;
    trace.steps.push_back(std::move(r.step));
  }
  return trace;
}

std::uint64_t default_fuel(const Proof& p) {
  const std::size_t n = p.size();
  return n >= 63 ? (std::uint64_t{1} << 63) : (std::uint64_t{1} << n);
}

}  // namespace idll
