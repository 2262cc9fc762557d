#include "idll/totspace.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <sstream>

namespace idll::tot {

namespace {

constexpr std::size_t kMaskBits = 64;

Mask bit(std::size_t i) { return Mask{1} << i; }

void normalize_totals(std::vector<Mask>& totals) {
  std::sort(totals.begin(), totals.end());
  totals.erase(std::unique(totals.begin(), totals.end()), totals.end());
}

void require_base(std::size_t n, std::size_t cap, std::string_view what) {
  if (n > cap) {
    throw CapExceeded(std::string(what) + ": base of " + std::to_string(n) + " atoms exceeds the cap of " +
                      std::to_string(cap));
  }
}

std::size_t total_index(const TotSpace& a, Mask set) {
  auto it = std::lower_bound(a.totals.begin(), a.totals.end(), set);
  if (it == a.totals.end() || *it != set) return a.totals.size();
  return static_cast<std::size_t>(it - a.totals.begin());
}

// All subsets of an n-atom base meeting every given set in exactly one atom.
std::vector<Mask> orthogonal(std::size_t n, const std::vector<Mask>& sets) {
  if (std::find(sets.begin(), sets.end(), Mask{0}) != sets.end()) return {};
  std::vector<std::vector<std::size_t>> containing(n), ending(n);
  for (std::size_t k = 0; k < sets.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (sets[k] & bit(i)) containing[i].push_back(k);
    }
    ending[static_cast<std::size_t>(std::bit_width(sets[k])) - 1].push_back(k);
  }
  std::vector<int> hits(sets.size(), 0);
  std::vector<Mask> out;
  std::function<void(std::size_t, Mask)> go = [&](std::size_t i, Mask x) {
    if (i == n) {
      out.push_back(x);
      return;
    }
    const auto settled = [&] {
      return std::all_of(ending[i].begin(), ending[i].end(), [&](std::size_t k) { return hits[k] == 1; });
    };
    if (settled()) go(i + 1, x);
    bool ok = true;
    for (std::size_t k : containing[i]) ok = ++hits[k] <= 1 && ok;
    if (ok && settled()) go(i + 1, x | bit(i));
    for (std::size_t k : containing[i]) --hits[k];
  };
  go(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

Graph sorted(Graph g) {
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

std::vector<std::string> letters(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

}  // namespace

Mask TotSpace::full() const noexcept { return base.size() >= kMaskBits ? ~Mask{0} : bit(base.size()) - 1; }

TotSpace make_raw(std::vector<std::string> base, std::vector<Mask> totals) {
  require_base(base.size(), kMaskBits, "space");
  TotSpace a{std::move(base), std::move(totals)};
  for (Mask m : a.totals) {
    if (m & ~a.full()) throw std::invalid_argument("total set mentions an atom outside the base");
  }
  normalize_totals(a.totals);
  return a;
}

TotSpace dual(const TotSpace& a, const Caps& caps) {
  require_base(a.size(), caps.max_base, "dual");
  return TotSpace{a.base, orthogonal(a.size(), a.totals)};
}

TotSpace closure(const TotSpace& a, const Caps& caps) { return dual(dual(a, caps), caps); }

bool is_totality_space(const TotSpace& a, const Caps& caps) { return closure(a, caps).totals == a.totals; }

SpaceCheck make_space(std::vector<std::string> base, std::vector<Mask> totals, const Caps& caps) {
  TotSpace raw = make_raw(std::move(base), std::move(totals));
  SpaceCheck out;
  out.bidual_totals = closure(raw, caps).totals;
  if (out.bidual_totals == raw.totals) out.space = std::move(raw);
  return out;
}

bool is_total(Mask set, const TotSpace& a) { return total_index(a, set) < a.totals.size(); }

bool is_cototal(Mask set, const TotSpace& a, const Caps& caps) {
  require_base(a.size(), caps.max_base, "cototality");
  return std::all_of(a.totals.begin(), a.totals.end(), [&](Mask s) { return std::popcount(set & s) == 1; });
}

TotSpace one() { return TotSpace{{"*"}, {1}}; }
TotSpace bot() { return one(); }
TotSpace top() { return TotSpace{{}, {0}}; }
TotSpace zero() { return TotSpace{{}, {}}; }

TotSpace tensor(const TotSpace& a, const TotSpace& b) {
  require_base(a.size() * b.size(), kMaskBits, "tensor");
  TotSpace out;
  for (const auto& x : a.base) {
    for (const auto& y : b.base) out.base.push_back("(" + x + "," + y + ")");
  }
  for (Mask r : a.totals) {
    for (Mask s : b.totals) {
      Mask m = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(r & bit(i))) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
          if (s & bit(j)) m |= bit(i * b.size() + j);
        }
      }
      out.totals.push_back(m);
    }
  }
  normalize_totals(out.totals);
  return out;
}

TotSpace par(const TotSpace& a, const TotSpace& b, const Caps& caps) {
  return dual(tensor(dual(a, caps), dual(b, caps)), caps);
}

namespace {

std::vector<std::string> tagged_base(const TotSpace& a, const TotSpace& b) {
  require_base(a.size() + b.size(), kMaskBits, "disjoint union");
  std::vector<std::string> out;
  for (const auto& x : a.base) out.push_back("inl(" + x + ")");
  for (const auto& y : b.base) out.push_back("inr(" + y + ")");
  return out;
}

}  // namespace

TotSpace with_(const TotSpace& a, const TotSpace& b) {
  TotSpace out{tagged_base(a, b), {}};
  for (Mask r : a.totals) {
    for (Mask s : b.totals) out.totals.push_back(r | (s << a.size()));
  }
  normalize_totals(out.totals);
  return out;
}

TotSpace plus(const TotSpace& a, const TotSpace& b) {
  TotSpace out{tagged_base(a, b), a.totals};
  for (Mask s : b.totals) out.totals.push_back(s << a.size());
  normalize_totals(out.totals);
  return out;
}

TotSpace bang(const TotSpace& a, const Caps& caps) {
  if (a.totals.size() > caps.max_bang_totals) {
    throw CapExceeded("bang: " + std::to_string(a.totals.size()) + " total sets exceed the cap of " +
                      std::to_string(caps.max_bang_totals));
  }
  TotSpace out;
  for (std::size_t i = 0; i < a.totals.size(); ++i) {
    out.base.push_back(set_label(a, a.totals[i]));
    out.totals.push_back(bit(i));
  }
  return out;
}

TotSpace whynot(const TotSpace& a, const Caps& caps) { return dual(bang(dual(a, caps), caps), caps); }

std::string set_label(const TotSpace& a, Mask set) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (set & bit(i)) parts.push_back(a.base[i]);
  }
  return "{" + join(parts, ",") + "}";
}

std::string describe(const TotSpace& a) {
  std::vector<std::string> totals;
  for (Mask m : a.totals) totals.push_back(set_label(a, m));
  return "({" + join(a.base, ",") + "}, {" + join(totals, ",") + "})";
}

TotSpace parse_space(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::vector<std::string>> base;
  std::vector<Mask> totals;
  const auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string head;
    if (!(words >> head)) continue;
    std::vector<std::string> atoms;
    for (std::string w; words >> w;) atoms.push_back(w);
    if (head == "base") {
      if (base) fail("duplicate base line");
      std::vector<std::string> seen = atoms;
      std::sort(seen.begin(), seen.end());
      if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) fail("repeated atom in base");
      if (atoms.size() > kMaskBits) fail("base too large");
      base = atoms;
    } else if (head == "total") {
      if (!base) fail("total line before base line");
      Mask m = 0;
      for (const auto& w : atoms) {
        auto it = std::find(base->begin(), base->end(), w);
        if (it == base->end()) fail("unknown atom '" + w + "'");
        m |= bit(static_cast<std::size_t>(it - base->begin()));
      }
      totals.push_back(m);
    } else {
      fail("expected 'base' or 'total', got '" + head + "'");
    }
  }
  if (!base) throw std::invalid_argument("missing base line");
  return make_raw(std::move(*base), std::move(totals));
}

std::string print_space(const TotSpace& a) {
  std::string out = "base";
  for (const auto& x : a.base) out += " " + x;
  out += "\n";
  for (Mask m : a.totals) {
    out += "total";
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (m & bit(i)) out += " " + a.base[i];
    }
    out += "\n";
  }
  return out;
}

// ---- morphisms ----

bool is_morphism(const TotSpace& source, const TotSpace& target, const Graph& graph, const Caps& caps) {
  const std::vector<Mask> cototals = dual(target, caps).totals;
  for (Mask r : source.totals) {
    for (Mask t : cototals) {
      int hits = 0;
      for (const auto& [x, y] : graph) hits += (r & bit(x)) && (t & bit(y));
      if (hits != 1) return false;
    }
  }
  return true;
}

Morphism make_morphism(TotSpace source, TotSpace target, Graph graph, const Caps& caps) {
  graph = sorted(std::move(graph));
  for (const auto& [x, y] : graph) {
    if (x >= source.size() || y >= target.size()) throw std::invalid_argument("graph leaves the bases");
  }
  if (!is_morphism(source, target, graph, caps)) throw std::domain_error("relation is not total in the internal hom");
  return Morphism{std::move(source), std::move(target), std::move(graph)};
}

Morphism identity(const TotSpace& a) {
  Graph g;
  for (std::size_t i = 0; i < a.size(); ++i) g.emplace_back(i, i);
  return Morphism{a, a, g};
}

Morphism compose(const Morphism& f, const Morphism& g) {
  if (!(f.target == g.source)) throw std::invalid_argument("compose: endpoints do not match");
  Graph out;
  for (const auto& [x, y] : f.graph) {
    for (auto it = std::lower_bound(g.graph.begin(), g.graph.end(), std::pair<std::size_t, std::size_t>{y, 0});
         it != g.graph.end() && it->first == y; ++it) {
      out.emplace_back(x, it->second);
    }
  }
  return Morphism{f.source, g.target, sorted(std::move(out))};
}

Mask image(const Morphism& f, Mask set) {
  Mask out = 0;
  for (const auto& [x, y] : f.graph) {
    if (set & bit(x)) out |= bit(y);
  }
  return out;
}

FinFunction compose(const FinFunction& f, const FinFunction& g) {
  if (!(f.codomain == g.domain)) throw std::invalid_argument("compose: endpoints do not match");
  FinFunction out{f.domain, g.codomain, {}};
  for (std::size_t x : f.map) out.map.push_back(g.map.at(x));
  return out;
}

TotSpace dis(const FinSet& s) {
  require_base(s.elements.size(), kMaskBits, "dis");
  TotSpace out{s.elements, {}};
  for (std::size_t i = 0; i < s.elements.size(); ++i) out.totals.push_back(bit(i));
  return out;
}

FinSet yon(const TotSpace& a) {
  FinSet out;
  for (Mask m : a.totals) out.elements.push_back(set_label(a, m));
  return out;
}

Morphism dis(const FinFunction& f) {
  Graph g;
  for (std::size_t x = 0; x < f.map.size(); ++x) g.emplace_back(x, f.map[x]);
  return Morphism{dis(f.domain), dis(f.codomain), g};
}

FinFunction yon(const Morphism& f) {
  FinFunction out{yon(f.source), yon(f.target), {}};
  for (Mask r : f.source.totals) {
    const std::size_t k = total_index(f.target, image(f, r));
    if (k == f.target.totals.size()) throw std::domain_error("image of a total set is not total");
    out.map.push_back(k);
  }
  return out;
}

Morphism bang(const Morphism& f, const Caps& caps) {
  bang(f.source, caps);
  bang(f.target, caps);
  return dis(yon(f));
}

Morphism adj_bwd(const FinSet& s, const TotSpace& a, const std::vector<std::size_t>& f) {
  if (f.size() != s.elements.size()) throw std::invalid_argument("adj_bwd: function has the wrong domain");
  Graph g;
  for (std::size_t x = 0; x < f.size(); ++x) {
    const Mask t = a.totals.at(f[x]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (t & bit(i)) g.emplace_back(x, i);
    }
  }
  return Morphism{dis(s), a, g};
}

std::vector<std::size_t> adj_fwd(const Morphism& phi) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < phi.source.size(); ++x) {
    const std::size_t k = total_index(phi.target, image(phi, bit(x)));
    if (k == phi.target.totals.size()) {
      throw std::domain_error("adj_fwd: slice of " + phi.source.base[x] + " is not total");
    }
    out.push_back(k);
  }
  return out;
}

Morphism delta(const TotSpace& a, const Caps& caps) {
  const TotSpace b = bang(a, caps);
  return Morphism{b, bang(b, caps), identity(b).graph};
}

Morphism delta_inv(const TotSpace& a, const Caps& caps) {
  const TotSpace b = bang(a, caps);
  return Morphism{bang(b, caps), b, identity(b).graph};
}

Morphism epsilon(const TotSpace& a, const Caps& caps) {
  Morphism e = adj_bwd(yon(a), a, [&] {
    std::vector<std::size_t> ids(a.totals.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    return ids;
  }());
  e.source = bang(a, caps);
  return e;
}

std::pair<Morphism, Morphism> mon(const TotSpace& a, const TotSpace& b, const Caps& caps) {
  const TotSpace w = with_(a, b);
  const TotSpace bw = bang(w, caps);
  const TotSpace t = tensor(bang(a, caps), bang(b, caps));
  Graph forward, backward;
  for (std::size_t i = 0; i < a.totals.size(); ++i) {
    for (std::size_t j = 0; j < b.totals.size(); ++j) {
      const std::size_t k = total_index(w, a.totals[i] | (b.totals[j] << a.size()));
      forward.emplace_back(k, i * b.totals.size() + j);
      backward.emplace_back(i * b.totals.size() + j, k);
    }
  }
  return {Morphism{bw, t, sorted(forward)}, Morphism{t, bw, sorted(backward)}};
}

std::pair<Morphism, Morphism> top_iso(const Caps& caps) {
  const TotSpace bt = bang(top(), caps);
  return {Morphism{bt, one(), {{0, 0}}}, Morphism{one(), bt, {{0, 0}}}};
}

// ---- generators ----

std::vector<TotSpace> exhaustive_family(std::size_t max_atoms, const Caps& caps) {
  if (max_atoms > 3) throw CapExceeded("exhaustive family: at most 3 atoms");
  std::vector<TotSpace> out;
  for (std::size_t n = 0; n <= max_atoms; ++n) {
    const std::size_t subsets = std::size_t{1} << n;
    for (Mask family = 0; family < (Mask{1} << subsets); ++family) {
      TotSpace a{letters(n), {}};
      for (std::size_t s = 0; s < subsets; ++s) {
        if (family & bit(s)) a.totals.push_back(s);
      }
      if (is_totality_space(a, caps)) out.push_back(std::move(a));
    }
  }
  return out;
}

TotSpace random_space(std::mt19937_64& rng, std::size_t max_atoms, const Caps& caps) {
  std::uniform_int_distribution<std::size_t> size(1, max_atoms);
  std::bernoulli_distribution pick(0.3);
  for (;;) {
    const std::size_t n = size(rng);
    TotSpace a{letters(n), {}};
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
      if (pick(rng)) a.totals.push_back(s);
    }
    a = closure(a, caps);
    if (a.totals.size() <= caps.max_bang_totals) return a;
  }
}

std::vector<Morphism> all_morphisms(const TotSpace& a, const TotSpace& b, const Caps& caps) {
  const std::size_t pairs = a.size() * b.size();
  if (pairs > 12) throw CapExceeded("all_morphisms: more than 12 candidate pairs");
  const std::vector<Mask> cototals = dual(b, caps).totals;
  std::vector<Morphism> out;
  for (Mask rel = 0; rel < (Mask{1} << pairs); ++rel) {
    Graph g;
    for (std::size_t p = 0; p < pairs; ++p) {
      if (rel & bit(p)) g.emplace_back(p / b.size(), p % b.size());
    }
    bool ok = true;
    for (Mask r : a.totals) {
      for (Mask t : cototals) {
        int hits = 0;
        for (const auto& [x, y] : g) hits += (r & bit(x)) && (t & bit(y));
        ok = ok && hits == 1;
      }
    }
    if (ok) out.push_back(Morphism{a, b, std::move(g)});
  }
  return out;
}

// ---- laws ----

namespace {

class LawBook {
 public:
  void record(const std::string& name, bool ok, const std::function<std::string()>& witness) {
    LawResult& r = entry(name);
    ++r.cases;
    if (!ok) {
      if (r.failures == 0) r.counterexample = witness();
      ++r.failures;
    }
  }
  // Runs `body`, treating CapExceeded as "instance out of scope".
  template <class F>
  void guarded(F&& body) {
    try {
      body();
    } catch (const CapExceeded&) {
    }
  }
  LawResult& entry(const std::string& name) {
    for (auto& r : results) {
      if (r.name == name) return r;
    }
    results.push_back(LawResult{name, 0, 0, {}});
    return results.back();
  }
  std::vector<LawResult> results;
};

std::string graph_text(const Morphism& f) {
  std::vector<std::string> parts;
  for (const auto& [x, y] : f.graph) parts.push_back(f.source.base[x] + "->" + f.target.base[y]);
  return "{" + join(parts, ",") + "}";
}

void unary_laws(LawBook& book, const TotSpace& a, const Caps& caps) {
  const auto w = [&] { return "A = " + describe(a); };
  book.guarded([&] { book.record("involution", dual(dual(a, caps), caps) == a, w); });
  book.guarded([&] { book.record("tensor-unit", tensor(one(), a).totals == a.totals, w); });
  book.guarded([&] { book.record("par-unit", par(bot(), a, caps).totals == a.totals, w); });
  book.guarded([&] { book.record("with-unit", with_(top(), a).totals == a.totals, w); });
  book.guarded([&] { book.record("identity-morphism", is_morphism(a, a, identity(a).graph, caps), w); });
  book.guarded([&] {
    const TotSpace b = bang(a, caps);
    book.record("bang-dis-yon", b == dis(yon(a)), w);
    book.record("bang-dual", dual(b, caps).totals == std::vector<Mask>{b.full()}, w);
    book.record("whynot-dual", dual(whynot(a, caps), caps) == bang(dual(a, caps), caps), w);

    const Morphism d = delta(a, caps), di = delta_inv(a, caps), e = epsilon(a, caps);
    const bool morphisms = is_morphism(d.source, d.target, d.graph, caps) &&
                           is_morphism(di.source, di.target, di.graph, caps) &&
                           is_morphism(e.source, e.target, e.graph, caps);
    book.record("comonad-maps-total", morphisms, w);
    book.record("comonad-counit-left", compose(d, epsilon(b, caps)) == identity(b), w);
    book.record("comonad-counit-right", compose(d, bang(e, caps)) == identity(b), w);
    book.record("comonad-coassoc", compose(d, bang(d, caps)) == compose(d, delta(b, caps)), w);
    book.record("delta-iso", compose(d, di) == identity(b) && compose(di, d) == identity(bang(b, caps)), w);
    book.record("bang-idempotent", bang(b, caps).size() == b.size() && bang(b, caps).totals == b.totals, w);
  });
  book.guarded([&] {
    for (std::size_t n = 0; n <= 2; ++n) {
      const FinSet s{letters(n)};
      // Every function S -> A_tot.
      std::size_t count = 1;
      for (std::size_t k = 0; k < n; ++k) count *= a.totals.size();
      for (std::size_t code = 0; code < count; ++code) {
        std::vector<std::size_t> f;
        for (std::size_t k = 0, c = code; k < n; ++k, c /= a.totals.size()) f.push_back(c % a.totals.size());
        const Morphism fh = adj_bwd(s, a, f);
        const bool ok = is_morphism(fh.source, fh.target, fh.graph, caps) && adj_fwd(fh) == f;
        book.record("adjunction-roundtrip", ok, [&] { return w() + ", f-hat = " + graph_text(fh); });
      }
      if (n * a.size() <= 12) {
        for (const Morphism& phi : all_morphisms(dis(s), a, caps)) {
          bool ok = false;
          try {
            ok = adj_bwd(s, a, adj_fwd(phi)) == phi;
          } catch (const std::domain_error&) {
          }
          book.record("adjunction-roundtrip", ok, [&] { return w() + ", phi = " + graph_text(phi); });
        }
      }
    }
  });
}

void binary_laws(LawBook& book, const TotSpace& a, const TotSpace& b, const Caps& caps) {
  const auto w = [&] { return "A = " + describe(a) + ", B = " + describe(b); };
  book.guarded([&] {
    const TotSpace t = tensor(a, b);
    book.record("de-morgan-tensor", dual(t, caps) == par(dual(a, caps), dual(b, caps), caps), w);
    const TotSpace closed = closure(t, caps);
    book.record("tensor-biclosure", closed == t, [&] {
      std::string extra;
      for (Mask m : closed.totals) {
        if (!is_total(m, t)) extra += " " + set_label(t, m);
      }
      return w() + "; bidual of tensor adds" + extra;
    });
    book.record("tensor-cardinality", t.totals.size() == a.totals.size() * b.totals.size(), [&] {
      return w() + "; |tensor| = " + std::to_string(t.totals.size());
    });
  });
  book.guarded([&] {
    const TotSpace wi = with_(a, b), pl = plus(a, b);
    const TotSpace dw = dual(wi, caps), pd = plus(dual(a, caps), dual(b, caps));
    book.record("de-morgan-with", dw == pd, [&] { return w() + "; dual(A&B) = " + describe(dw) + ", A*+B* = " + describe(pd); });
    book.record("with-cardinality", wi.totals.size() == a.totals.size() * b.totals.size(), w);
    book.record("plus-cardinality", pl.totals.size() == a.totals.size() + b.totals.size(), [&] {
      return w() + "; |A+B| = " + std::to_string(pl.totals.size());
    });
  });
  book.guarded([&] {
    const auto [f, g] = mon(a, b, caps);
    const bool ok = is_morphism(f.source, f.target, f.graph, caps) && is_morphism(g.source, g.target, g.graph, caps) &&
                    compose(f, g) == identity(f.source) && compose(g, f) == identity(g.source);
    book.record("bang-with", ok, w);
  });
}

void morphism_laws(LawBook& book, const TotSpace& a, const TotSpace& b, const TotSpace& c, std::mt19937_64& rng,
                   const Caps& caps) {
  book.guarded([&] {
    const auto fs = all_morphisms(a, b, caps);
    const auto gs = all_morphisms(b, c, caps);
    if (fs.empty()) return;
    const auto pick = [&](const std::vector<Morphism>& v) -> const Morphism& {
      return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
    };
    const Morphism& f = pick(fs);
    const auto w = [&] { return "A = " + describe(a) + ", B = " + describe(b) + ", f = " + graph_text(f); };
    book.record("compose-identity", compose(identity(a), f) == f && compose(f, identity(b)) == f, w);

    const Morphism bf = bang(f, caps);
    book.record("bang-functor", bang(identity(a), caps) == identity(bang(a, caps)), w);
    book.record("epsilon-natural", compose(bf, epsilon(b, caps)) == compose(epsilon(a, caps), f), w);
    book.record("delta-natural", compose(delta(a, caps), bang(bf, caps)) == compose(bf, delta(b, caps)), w);

    // adj_bwd is natural in A: post-composing f-hat with f.
    for (std::size_t k = 0; k < a.totals.size(); ++k) {
      const FinSet s{{"x"}};
      const std::vector<std::size_t> fn{k};
      const Morphism lhs = adj_bwd(s, b, compose(FinFunction{s, yon(a), fn}, yon(f)).map);
      book.record("adjunction-natural", lhs == compose(adj_bwd(s, a, fn), f), w);
    }

    if (gs.empty()) return;
    const Morphism& g = pick(gs);
    const auto w2 = [&] { return w() + ", C = " + describe(c) + ", g = " + graph_text(g); };
    const Morphism fg = compose(f, g);
    book.record("compose-total", is_morphism(a, c, fg.graph, caps), w2);
    book.record("bang-functor", bang(fg, caps) == compose(bf, bang(g, caps)), w2);
    const auto hs = all_morphisms(c, a, caps);
    if (!hs.empty()) {
      const Morphism& h = pick(hs);
      book.record("compose-associativity", compose(fg, h) == compose(f, compose(g, h)), w2);
    }
  });
}

}  // namespace

std::vector<LawResult> check_laws(const std::vector<TotSpace>& family, const LawOptions& options, const Caps& caps) {
  LawBook book;
  std::mt19937_64 rng(options.seed);
  for (const TotSpace& a : family) unary_laws(book, a, caps);

  book.guarded([&] {
    const auto [f, g] = top_iso(caps);
    const bool ok = is_morphism(f.source, f.target, f.graph, caps) && is_morphism(g.source, g.target, g.graph, caps) &&
                    compose(f, g) == identity(f.source) && compose(g, f) == identity(one());
    book.record("bang-top", ok, [] { return "!T = " + describe(bang(top())); });
  });
  book.record("top-dual", dual(top(), caps) == zero(), [] { return "dual(T) = " + describe(dual(top())); });

  if (family.empty()) return book.results;
  const std::size_t n = family.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (n * n <= options.pair_samples) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) pairs.emplace_back(i, j);
    }
  } else {
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    for (std::size_t k = 0; k < options.pair_samples; ++k) pairs.emplace_back(idx(rng), idx(rng));
  }
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  for (const auto& [i, j] : pairs) {
    binary_laws(book, family[i], family[j], caps);
    morphism_laws(book, family[i], family[j], family[idx(rng)], rng, caps);
  }
  return book.results;
}

}  // namespace idll::tot
