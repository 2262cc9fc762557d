#include "idll/bridge.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "idll/cutelim.hpp"

namespace idll {

namespace {

// One backward rule application: the rule, the premise sequents it needs,
// and the Exchange permutation taking its conclusion to the goal order.
struct Step {
  Rule rule;
  std::vector<Sequent> premises;
  std::vector<std::size_t> order;
};

bool first_occurrence(const Sequent& s, std::size_t i) {
  return std::find(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i), s[i]) ==
         s.begin() + static_cast<std::ptrdiff_t>(i);
}

Sequent replace_at(const Sequent& s, std::size_t i, std::initializer_list<Formula> with) {
  Sequent out(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i));
  out.insert(out.end(), with);
  out.insert(out.end(), s.begin() + static_cast<std::ptrdiff_t>(i) + 1, s.end());
  return out;
}

// Splits of the context of A*B at position i, one per sub-multiset of the
// context going to the left premise.
void times_steps(const Sequent& s, std::size_t i, std::vector<Step>& out) {
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (j == i) continue;
    auto g = std::find_if(groups.begin(), groups.end(), [&](const auto& grp) { return s[grp.front()] == s[j]; });
    if (g == groups.end()) {
      groups.push_back({j});
    } else {
      g->push_back(j);
    }
  }
  std::vector<std::size_t> take(groups.size(), 0);
  for (;;) {
    std::vector<std::size_t> left, right;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (std::size_t k = 0; k < groups[g].size(); ++k) (k < take[g] ? left : right).push_back(groups[g][k]);
    }
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());

    Sequent lseq, rseq{s[i].right()};
    for (std::size_t j : left) lseq.push_back(s[j]);
    lseq.push_back(s[i].left());
    for (std::size_t j : right) rseq.push_back(s[j]);

    std::vector<std::size_t> produced = left;
    produced.push_back(i);
    produced.insert(produced.end(), right.begin(), right.end());
    std::vector<std::size_t> order(s.size());
    bool identity = true;
    for (std::size_t k = 0; k < produced.size(); ++k) {
      order[produced[k]] = k;
      identity = identity && produced[k] == k;
    }
    if (identity) order.clear();
    out.push_back(Step{Rule::times(left.size()), {lseq, rseq}, order});

    std::size_t g = 0;
    while (g < groups.size() && take[g] == groups[g].size()) take[g++] = 0;
    if (g == groups.size()) break;
    ++take[g];
  }
}

std::vector<Step> backward_steps(const Sequent& s, const System& sys) {
  std::vector<Step> out;
  const bool idll = sys.logic == Logic::IdLL;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!first_occurrence(s, i)) continue;
    const Formula& f = s[i];
    switch (f.connective()) {
      case Connective::Par:
        out.push_back({Rule::at_position(RuleKind::Par, i), {replace_at(s, i, {f.left(), f.right()})}, {}});
        break;
      case Connective::With:
        out.push_back({Rule::at_position(RuleKind::With, i),
                       {replace_at(s, i, {f.left()}), replace_at(s, i, {f.right()})},
                       {}});
        break;
      case Connective::Plus:
        out.push_back({Rule::plus_left(i, f.right()), {replace_at(s, i, {f.left()})}, {}});
        out.push_back({Rule::plus_right(i, f.left()), {replace_at(s, i, {f.right()})}, {}});
        break;
      case Connective::Tensor: times_steps(s, i, out); break;
      case Connective::WhyNot: {
        if (idll) {
          const ModalPrefix mp = modal_prefix(f);
          out.push_back({Rule::at_position(RuleKind::NDereliction, i, mp.count), {replace_at(s, i, {mp.core})}, {}});
        } else {
          out.push_back({Rule::at_position(RuleKind::Dereliction, i), {replace_at(s, i, {f.body()})}, {}});
        }
        out.push_back({Rule::weakening(i, f), {replace_at(s, i, {})}, {}});
        break;
      }
      case Connective::Bang: {
        bool context_ok = true;
        for (std::size_t j = 0; j < s.size(); ++j) context_ok = context_ok && (j == i || s[j].is_whynot());
        if (!context_ok) break;
        if (idll) {
          const ModalPrefix mp = modal_prefix(f);
          out.push_back({Rule::at_position(RuleKind::NPromotion, i, mp.count), {replace_at(s, i, {mp.core})}, {}});
        } else {
          out.push_back({Rule::at_position(RuleKind::Promotion, i), {replace_at(s, i, {f.body()})}, {}});
        }
        break;
      }
      default: break;
    }
  }
  return out;
}

Proof assemble(const Step& step, std::vector<Proof> premises, const System& sys) {
  Proof p = build(step.rule, std::move(premises), sys);
  return step.order.empty() ? p : permute(p, step.order, sys);
}

bool identity_applies(const Sequent& s, bool atomic) {
  return s.size() == 2 && s[1] == dual(s[0]) && (!atomic || s[0].is_literal());
}

class Enumerator {
 public:
  explicit Enumerator(const System& sys) : sys_(sys) {}

  std::vector<Proof> search(const Sequent& s, std::size_t budget, unsigned contractions_left) {
    if (budget == 0) {
      pruned = true;
      return {};
    }
    std::vector<Proof> out;
    if (identity_applies(s, true)) out.push_back(build(Rule::identity(s[0]), {}, sys_));
    for (const Step& step : backward_steps(s, sys_)) {
      if (step.premises.size() == 1) {
        for (Proof& q : search(step.premises[0], budget - 1, contractions_left)) {
          out.push_back(assemble(step, {std::move(q)}, sys_));
        }
        continue;
      }
      if (budget < 3) {
        pruned = true;
        continue;
      }
      const auto lefts = search(step.premises[0], budget - 2, contractions_left);
      if (lefts.empty()) continue;
      const auto rights = search(step.premises[1], budget - 2, contractions_left);
      for (const Proof& l : lefts) {
        for (const Proof& r : rights) {
          if (l.logical_size() + r.logical_size() + 1 > budget) {
            pruned = true;
            continue;
          }
          out.push_back(assemble(step, {l, r}, sys_));
        }
      }
    }
    if (contractions_left > 0) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s[i].is_whynot() || !first_occurrence(s, i)) continue;
        const Step step{Rule::at_position(RuleKind::Contraction, i), {replace_at(s, i, {s[i], s[i]})}, {}};
        for (Proof& q : search(step.premises[0], budget - 1, contractions_left - 1)) {
          out.push_back(assemble(step, {std::move(q)}, sys_));
        }
      }
    }
    return out;
  }

  bool pruned = false;

 private:
  System sys_;
};

std::string canonical(const Sequent& s) {
  std::vector<std::string> parts;
  for (const Formula& f : s) parts.push_back(print_formula(f));
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += p + ";";
  return out;
}

class Prover {
 public:
  Prover(const System& sys, SearchBounds bounds) : sys_(sys), bounds_(bounds) {}

  std::optional<Proof> search(const Sequent& s, unsigned depth) {
    if (identity_applies(s, sys_.axioms == AxiomMode::Atomic)) return build(Rule::identity(s[0]), {}, sys_);
    if (depth == 0) {
      cutoff = true;
      return std::nullopt;
    }
    std::string key = canonical(s) + "#" + std::to_string(depth);
    for (const auto& [f, n] : used_) key += "#" + print_formula(f) + "=" + std::to_string(n);
    if (failed_.contains(key)) return std::nullopt;

    const auto steps = backward_steps(s, sys_);
    // Par and With are invertible: committing to the first one loses nothing.
    const auto invertible = std::find_if(steps.begin(), steps.end(), [](const Step& st) {
      return st.rule.kind == RuleKind::Par || st.rule.kind == RuleKind::With;
    });
    if (invertible != steps.end()) {
      if (auto p = attempt(*invertible, depth)) return p;
    } else {
      for (const Step& step : steps) {
        if (auto p = attempt(step, depth)) return p;
      }
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s[i].is_whynot() || !first_occurrence(s, i)) continue;
        unsigned& count = used_[s[i]];
        if (count >= bounds_.contractions_per_formula) continue;
        ++count;
        const Step step{Rule::at_position(RuleKind::Contraction, i), {replace_at(s, i, {s[i], s[i]})}, {}};
        auto p = attempt(step, depth);
        --used_[s[i]];
        if (p) return p;
      }
    }
    failed_.insert(std::move(key));
    return std::nullopt;
  }

  bool cutoff = false;

 private:
  std::optional<Proof> attempt(const Step& step, unsigned depth) {
    std::vector<Proof> premises;
    for (const Sequent& q : step.premises) {
      auto p = search(q, depth - 1);
      if (!p) return std::nullopt;
      premises.push_back(std::move(*p));
    }
    return assemble(step, std::move(premises), sys_);
  }

  System sys_;
  SearchBounds bounds_;
  std::map<Formula, unsigned> used_;
  std::set<std::string> failed_;
};

}  // namespace

Proof idll_to_ll(const Proof& p, AxiomMode axioms) {
  const System ll{Logic::LL, axioms};
  std::vector<Proof> premises;
  for (const Proof& q : p.premises()) premises.push_back(idll_to_ll(q, axioms));
  const Rule& r = p.rule();
  if (r.kind == RuleKind::NDereliction || r.kind == RuleKind::NPromotion) {
    const RuleKind single = r.kind == RuleKind::NDereliction ? RuleKind::Dereliction : RuleKind::Promotion;
    Proof cur = premises.at(0);
    for (unsigned k = 0; k < r.n; ++k) cur = build(Rule::at_position(single, r.at), {cur}, ll);
    return cur;
  }
  return build(r, std::move(premises), ll);
}

namespace {

Proof ll_to_idll_raw(const Proof& p, const System& sys) {
  std::vector<Proof> premises;
  for (const Proof& q : p.premises()) premises.push_back(ll_to_idll_raw(q, sys));
  const Rule& r = p.rule();
  if (r.kind != RuleKind::Dereliction && r.kind != RuleKind::Promotion) return build(r, std::move(premises), sys);

  const bool der = r.kind == RuleKind::Dereliction;
  const Proof& premise = premises.at(0);
  const Formula& a = premise.conclusion().at(r.at);
  if (der ? !a.is_whynot() : !a.is_bang()) {
    return build(Rule::at_position(der ? RuleKind::NDereliction : RuleKind::NPromotion, r.at), {premise}, sys);
  }
  const ModalPrefix mp = modal_prefix(a);
  // der:  |- !^n core^, ?^(n+1) core     prom: |- ?^n core^, !^(n+1) core
  const Proof lemma = der ? exchange(eta_block(mp.count + 1, mp.count, mp.core, sys.axioms), 0, sys)
                          : eta_block(mp.count, mp.count + 1, dual(mp.core), sys.axioms);
  const std::size_t last = premise.conclusion().size() - 1;
  const Proof left = move_formula(premise, r.at, last, sys);
  const Proof cut = build(Rule::cut(a), {left, lemma}, sys);
  return move_formula(cut, last, r.at, sys);
}

}  // namespace

Proof ll_to_idll(const Proof& p, AxiomMode axioms, bool normalize_after) {
  const System sys{Logic::IdLL, axioms};
  Proof out = ll_to_idll_raw(p, sys);
  if (!normalize_after) return out;
  ReductionTrace trace = normalize(out, sys, default_fuel(out));
  if (trace.fuel_exhausted) throw std::runtime_error("normalization of the translated proof ran out of fuel");
  return trace.final;
}

Enumeration enumerate_cutfree(const Sequent& goal, const System& sys, std::size_t max_nodes,
                              unsigned max_contractions) {
  Enumerator e(sys);
  std::vector<Proof> found = e.search(goal, max_nodes, max_contractions);
  std::vector<std::pair<std::string, Proof>> keyed;
  for (Proof& p : found) keyed.emplace_back(exchange_normal_form(p), std::move(p));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  Enumeration out;
  for (auto& [key, p] : keyed) out.proofs.push_back(std::move(p));
  out.exact = !e.pruned;
  return out;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

SearchResult provable(const Sequent& goal, const System& sys, SearchBounds bounds) {
  Prover prover(sys, bounds);
  if (auto p = prover.search(goal, bounds.depth)) return {Verdict::Yes, std::move(p)};
  bool exponential = false;
  for (const Formula& f : goal) exponential = exponential || f.has_exponential();
  if (!exponential && !prover.cutoff) return {Verdict::No, std::nullopt};
  return {Verdict::Unknown, std::nullopt};
}

}  // namespace idll
