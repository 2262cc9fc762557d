#include "idll/semantics.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

#include "idll/cutelim.hpp"

namespace idll::sem {

using tot::Mask;

namespace {

Mask bit(std::size_t i) { return Mask{1} << i; }

void normalize(std::vector<Tuple>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Each product of one cototal per coordinate meets `value` exactly once.
bool meets_every_rectangle_once(const std::vector<Tuple>& value, const std::vector<std::vector<Mask>>& cototals) {
  std::vector<const Tuple*> all;
  for (const auto& t : value) all.push_back(&t);
  std::function<bool(const std::vector<const Tuple*>&, std::size_t)> go =
      [&](const std::vector<const Tuple*>& rows, std::size_t i) {
        if (i == cototals.size()) return rows.size() == 1;
        for (Mask c : cototals[i]) {
          std::vector<const Tuple*> kept;
          for (const Tuple* t : rows) {
            if (c & bit((*t)[i])) kept.push_back(t);
          }
          if (kept.empty() || !go(kept, i + 1)) return false;
        }
        return true;
      };
  return go(all, 0);
}

}  // namespace

Interpreter::Interpreter(Environment env, tot::Caps caps) : env_(std::move(env)), caps_(caps) {}

const TotSpace& Interpreter::eval(const Formula& f) {
  if (auto it = spaces_.find(f); it != spaces_.end()) return it->second;
  TotSpace out;
  switch (f.connective()) {
    case Connective::PosLit:
    case Connective::NegLit: {
      auto it = env_.find(f.index());
      if (it == env_.end()) throw UnassignedLiteral("literal p" + std::to_string(f.index()) + " is not assigned");
      out = f.connective() == Connective::PosLit ? it->second : tot::dual(it->second, caps_);
      break;
    }
    case Connective::Tensor: out = tot::tensor(eval(f.left()), eval(f.right())); break;
    case Connective::Par: out = tot::par(eval(f.left()), eval(f.right()), caps_); break;
    case Connective::With: out = tot::with_(eval(f.left()), eval(f.right())); break;
    case Connective::Plus: out = tot::plus(eval(f.left()), eval(f.right())); break;
    case Connective::Bang: out = tot::bang(eval(f.body()), caps_); break;
    case Connective::WhyNot: out = tot::whynot(eval(f.body()), caps_); break;
  }
  return spaces_.emplace(f, std::move(out)).first->second;
}

const std::vector<Mask>& Interpreter::cototals(const Formula& f) {
  if (auto it = cototals_.find(f); it != cototals_.end()) return it->second;
  std::vector<Mask> c = tot::dual(eval(f), caps_).totals;
  return cototals_.emplace(f, std::move(c)).first->second;
}

Denotation Interpreter::interpret(const Proof& p) {
  Denotation d;
  for (const Formula& f : p.conclusion()) d.spaces.push_back(eval(f));
  d.value = node(p).value;
  return d;
}

bool Interpreter::is_total(const Denotation& d, const Sequent& conclusion) {
  std::vector<std::vector<Mask>> cot;
  for (const Formula& f : conclusion) cot.push_back(cototals(f));
  return meets_every_rectangle_once(d.value, cot);
}

std::vector<Tuple> Interpreter::dereliction(std::vector<Tuple> v, std::size_t at, Formula a, unsigned n) {
  for (unsigned level = 0; level < n; ++level) {
    // The atoms of ?A are the cototals of A, in order.
    const std::vector<Mask>& cot = cototals(a);
    std::vector<Tuple> out;
    for (const Tuple& t : v) {
      for (std::size_t k = 0; k < cot.size(); ++k) {
        if (!(cot[k] & bit(t[at]))) continue;
        Tuple u = t;
        u[at] = static_cast<std::uint32_t>(k);
        out.push_back(std::move(u));
      }
    }
    normalize(out);
    v = std::move(out);
    a = Formula::whynot(a);
  }
  return v;
}

std::vector<Tuple> Interpreter::promotion(std::vector<Tuple> v, const Sequent& premise, std::size_t at, unsigned n) {
  std::vector<std::size_t> context_sizes;
  for (std::size_t j = 0; j < premise.size(); ++j) {
    if (j != at) context_sizes.push_back(eval(premise[j]).size());
  }
  Formula a = premise[at];
  for (unsigned level = 0; level < n; ++level) {
    const TotSpace& space = eval(a);
    std::map<Tuple, Mask> slices;
    for (const Tuple& t : v) {
      Tuple ctx = t;
      ctx.erase(ctx.begin() + static_cast<std::ptrdiff_t>(at));
      slices[ctx] |= bit(t[at]);
    }
    std::vector<Tuple> out;
    Tuple ctx(context_sizes.size(), 0);
    for (;;) {
      const auto it = slices.find(ctx);
      const Mask slice = it == slices.end() ? 0 : it->second;
      const auto pos = std::lower_bound(space.totals.begin(), space.totals.end(), slice);
      if (pos == space.totals.end() || *pos != slice) {
        throw SemanticFault("promotion of " + print_formula(a) + ": slice " + tot::set_label(space, slice) +
                            " is not a total set");
      }
      Tuple u = ctx;
      u.insert(u.begin() + static_cast<std::ptrdiff_t>(at), static_cast<std::uint32_t>(pos - space.totals.begin()));
      out.push_back(std::move(u));

      std::size_t k = 0;
      while (k < ctx.size() && ++ctx[k] == context_sizes[k]) ctx[k++] = 0;
      if (k == ctx.size()) break;
    }
    normalize(out);
    v = std::move(out);
    a = Formula::bang(a);
  }
  return v;
}

Denotation Interpreter::node(const Proof& p) {
  std::vector<std::vector<Tuple>> prem;
  for (const Proof& q : p.premises()) prem.push_back(node(q).value);
  const Rule& r = p.rule();
  const Sequent& c = p.conclusion();
  const auto size_of = [&](const Formula& f) { return static_cast<std::uint32_t>(eval(f).size()); };
  std::vector<Tuple> v;
  switch (r.kind) {
    case RuleKind::Identity:
      for (std::uint32_t a = 0; a < size_of(c[0]); ++a) v.push_back({a, a});
      break;
    case RuleKind::Cut: {
      std::multimap<std::uint32_t, const Tuple*> by_head;
      for (const Tuple& t : prem[1]) by_head.emplace(t.front(), &t);
      for (const Tuple& t : prem[0]) {
        const auto [lo, hi] = by_head.equal_range(t.back());
        for (auto it = lo; it != hi; ++it) {
          Tuple u(t.begin(), t.end() - 1);
          u.insert(u.end(), it->second->begin() + 1, it->second->end());
          v.push_back(std::move(u));
        }
      }
      break;
    }
    case RuleKind::Exchange:
      v = prem[0];
      for (Tuple& t : v) std::swap(t[r.at], t[r.at + 1]);
      break;
    case RuleKind::Par: {
      const std::uint32_t width = size_of(c[r.at].right());
      for (Tuple t : prem[0]) {
        t[r.at] = t[r.at] * width + t[r.at + 1];
        t.erase(t.begin() + static_cast<std::ptrdiff_t>(r.at) + 1);
        v.push_back(std::move(t));
      }
      break;
    }
    case RuleKind::Times: {
      const std::uint32_t width = size_of(c[r.at].right());
      for (const Tuple& l : prem[0]) {
        for (const Tuple& rt : prem[1]) {
          Tuple u(l.begin(), l.end() - 1);
          u.push_back(l.back() * width + rt.front());
          u.insert(u.end(), rt.begin() + 1, rt.end());
          v.push_back(std::move(u));
        }
      }
      break;
    }
    case RuleKind::With: {
      const std::uint32_t shift = size_of(c[r.at].left());
      v = prem[0];
      for (Tuple t : prem[1]) {
        t[r.at] += shift;
        v.push_back(std::move(t));
      }
      break;
    }
    case RuleKind::PlusLeft: v = prem[0]; break;
    case RuleKind::PlusRight: {
      const std::uint32_t shift = size_of(c[r.at].left());
      v = prem[0];
      for (Tuple& t : v) t[r.at] += shift;
      break;
    }
    case RuleKind::Weakening: {
      const std::uint32_t m = size_of(c[r.at]);
      for (const Tuple& t : prem[0]) {
        for (std::uint32_t x = 0; x < m; ++x) {
          Tuple u = t;
          u.insert(u.begin() + static_cast<std::ptrdiff_t>(r.at), x);
          v.push_back(std::move(u));
        }
      }
      break;
    }
    case RuleKind::Contraction:
      for (Tuple t : prem[0]) {
        if (t[r.at] != t[r.at + 1]) continue;
        t.erase(t.begin() + static_cast<std::ptrdiff_t>(r.at) + 1);
        v.push_back(std::move(t));
      }
      break;
    case RuleKind::Dereliction:
    case RuleKind::NDereliction:
      v = dereliction(prem[0], r.at, p.premise(0).conclusion()[r.at], r.kind == RuleKind::Dereliction ? 1 : r.n);
      break;
    case RuleKind::Promotion:
    case RuleKind::NPromotion:
      v = promotion(prem[0], p.premise(0).conclusion(), r.at, r.kind == RuleKind::Promotion ? 1 : r.n);
      break;
  }
  normalize(v);
  Denotation d;
  d.value = std::move(v);
  return d;
}

TotSpace eval_formula(const Formula& f, const Environment& env, const tot::Caps& caps) {
  Interpreter i(env, caps);
  return i.eval(f);
}

Denotation interpret(const Proof& p, const Environment& env, const tot::Caps& caps) {
  Interpreter i(env, caps);
  return i.interpret(p);
}

bool is_total(const Denotation& d, const tot::Caps& caps) {
  std::vector<std::vector<Mask>> cot;
  for (const TotSpace& s : d.spaces) cot.push_back(tot::dual(s, caps).totals);
  return meets_every_rectangle_once(d.value, cot);
}

std::string print_denotation(const Denotation& d) {
  std::string out;
  for (const Tuple& t : d.value) {
    out += "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) out += ", ";
      out += d.spaces[i].base[t[i]];
    }
    out += ")\n";
  }
  return out;
}

TotSpace dis_n(std::size_t n) {
  tot::FinSet s;
  for (std::size_t i = 0; i < n; ++i) s.elements.push_back(std::string(1, static_cast<char>('a' + i)));
  return tot::dis(s);
}

Environment parse_environment(std::string_view text, const std::filesystem::path& base_dir) {
  Environment env;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  const auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("environment line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string lit, kind;
    if (!(words >> lit)) continue;
    if (lit.size() < 2 || lit[0] != 'p' || !std::all_of(lit.begin() + 1, lit.end(), [](unsigned char ch) { return std::isdigit(ch) != 0; })) {
      fail("expected a literal like p0, got '" + lit + "'");
    }
    const auto index = static_cast<std::uint32_t>(std::stoul(lit.substr(1)));
    if (!(words >> kind)) fail("missing space description");
    TotSpace space;
    if (kind == "dis" || kind == "codis") {
      std::size_t n = 0;
      if (!(words >> n) || n == 0 || n > 26) fail("expected a size between 1 and 26");
      space = dis_n(n);
      if (kind == "codis") space = tot::dual(space);
    } else if (kind == "one") {
      space = tot::one();
    } else if (kind == "file") {
      std::string path;
      if (!(words >> path)) fail("missing file path");
      std::ifstream file(base_dir / path);
      if (!file) fail("cannot open " + path);
      std::stringstream buf;
      buf << file.rdbuf();
      space = tot::parse_space(buf.str());
      if (!tot::is_totality_space(space)) fail(path + " is not a totality space");
    } else {
      fail("unknown space kind '" + kind + "'");
    }
    if (env.contains(index)) fail("literal " + lit + " assigned twice");
    env.emplace(index, std::move(space));
  }
  return env;
}

std::vector<Environment> discrete_environments(const std::vector<std::uint32_t>& literals,
                                               const std::vector<std::size_t>& sizes) {
  std::vector<Environment> out{Environment{}};
  for (std::uint32_t lit : literals) {
    std::vector<Environment> next;
    for (const Environment& e : out) {
      for (std::size_t n : sizes) {
        Environment f = e;
        f[lit] = dis_n(n);
        next.push_back(std::move(f));
      }
    }
    out = std::move(next);
  }
  return out;
}

System infer_system(const Proof& p) {
  if (contains_rule(p, RuleKind::NDereliction) || contains_rule(p, RuleKind::NPromotion)) return System::idll();
  if (contains_rule(p, RuleKind::Dereliction) || contains_rule(p, RuleKind::Promotion)) return System::ll();
  return System::idll();
}

namespace {

void collect_literals(const Proof& p, std::vector<std::uint32_t>& out) {
  for (const Formula& f : p.conclusion()) f.collect_literals(out);
  if (p.rule().formula) p.rule().formula->collect_literals(out);
  for (const Proof& q : p.premises()) collect_literals(q, out);
}

std::vector<std::uint32_t> proof_literals(const Proof& p) {
  std::vector<std::uint32_t> out;
  collect_literals(p, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

SoundnessReport soundness_suite(const std::vector<Proof>& corpus, const std::vector<Environment>& envs,
                                const tot::Caps& caps) {
  SoundnessReport report;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    ++report.proofs;
    const System sys = infer_system(corpus[i]);
    const std::vector<Environment> own = envs.empty() ? discrete_environments(proof_literals(corpus[i])) : envs;
    for (std::size_t e = 0; e < own.size(); ++e) {
      const std::string where = "proof " + std::to_string(i) + " env " + std::to_string(e);
      try {
        Interpreter in(own[e], caps);
        Proof cur = corpus[i];
        Denotation d = in.interpret(cur);
        ++report.denotations;
        if (!in.is_total(d, cur.conclusion())) report.failures.push_back(where + ": denotation is not total");
        const std::uint64_t fuel = default_fuel(cur);
        for (std::uint64_t k = 0; k < fuel; ++k) {
          auto r = reduce_step(cur, sys);
          if (!r) break;
          Denotation next = in.interpret(r->proof);
          ++report.steps;
          ++report.denotations;
          const std::string step = where + " step " + std::to_string(k) + " (" + r->step.kind + " at " +
                                   print_path(r->step.path) + ")";
          if (!in.is_total(next, r->proof.conclusion())) report.failures.push_back(step + ": result is not total");
          if (next.value != d.value) report.failures.push_back(step + ": denotation changed");
          cur = r->proof;
          d = std::move(next);
        }
      } catch (const tot::CapExceeded&) {
        ++report.skipped;
      } catch (const SemanticFault& fault) {
        report.failures.push_back(where + ": " + fault.what());
      }
    }
  }
  return report;
}

}  // namespace idll::sem
