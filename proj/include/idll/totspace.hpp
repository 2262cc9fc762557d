// Finite totality spaces, computed exhaustively.
//
// A space is a finite base of labelled atoms together with a family of
// total subsets, each stored as a bit mask over the base. Duals are found by
// scanning subsets of the base, so every operation here is an exact oracle
// as long as the base stays under `Caps::max_base`.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace idll::tot {

using Mask = std::uint64_t;

struct Caps {
  std::size_t max_base = 16;
  std::size_t max_bang_totals = 12;
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TotSpace {
  std::vector<std::string> base;
  std::vector<Mask> totals;  // sorted, no duplicates

  std::size_t size() const noexcept { return base.size(); }
  Mask full() const noexcept;
  friend bool operator==(const TotSpace&, const TotSpace&) = default;
};

// Sorts and deduplicates the totals; throws if a mask leaves the base.
TotSpace make_raw(std::vector<std::string> base, std::vector<Mask> totals);

struct SpaceCheck {
  std::optional<TotSpace> space;   // set when the totals are biclosed
  std::vector<Mask> bidual_totals; // always filled
};
SpaceCheck make_space(std::vector<std::string> base, std::vector<Mask> totals, const Caps& caps = {});

TotSpace dual(const TotSpace& a, const Caps& caps = {});
TotSpace closure(const TotSpace& a, const Caps& caps = {});
bool is_totality_space(const TotSpace& a, const Caps& caps = {});

bool is_total(Mask set, const TotSpace& a);
bool is_cototal(Mask set, const TotSpace& a, const Caps& caps = {});

TotSpace one();
TotSpace bot();
TotSpace top();
TotSpace zero();

// Base index of (a, b) is a * |B| + b.
TotSpace tensor(const TotSpace& a, const TotSpace& b);
TotSpace par(const TotSpace& a, const TotSpace& b, const Caps& caps = {});
// Base: the atoms of A, then those of B.
TotSpace with_(const TotSpace& a, const TotSpace& b);
TotSpace plus(const TotSpace& a, const TotSpace& b);
// Base: the totals of A, in order.
TotSpace bang(const TotSpace& a, const Caps& caps = {});
TotSpace whynot(const TotSpace& a, const Caps& caps = {});

std::string set_label(const TotSpace& a, Mask set);
std::string describe(const TotSpace& a);

// Text format: a `base` line naming the atoms, then one `total` line per
// total set. Blank lines and `#` comments are ignored.
TotSpace parse_space(std::string_view text);
std::string print_space(const TotSpace& a);

// ---- morphisms ----

using Graph = std::vector<std::pair<std::size_t, std::size_t>>;

struct Morphism {
  TotSpace source;
  TotSpace target;
  Graph graph;  // sorted (source atom, target atom) pairs
  friend bool operator==(const Morphism&, const Morphism&) = default;
};

// The graph is total in source* @ target: it meets every r x t with r total
// in the source and t cototal in the target exactly once.
bool is_morphism(const TotSpace& source, const TotSpace& target, const Graph& graph, const Caps& caps = {});
Morphism make_morphism(TotSpace source, TotSpace target, Graph graph, const Caps& caps = {});

Morphism identity(const TotSpace& a);
// f followed by g.
Morphism compose(const Morphism& f, const Morphism& g);
// Image of a set of source atoms.
Mask image(const Morphism& f, Mask set);

struct FinSet {
  std::vector<std::string> elements;
  friend bool operator==(const FinSet&, const FinSet&) = default;
};

struct FinFunction {
  FinSet domain;
  FinSet codomain;
  std::vector<std::size_t> map;
  friend bool operator==(const FinFunction&, const FinFunction&) = default;
};

FinFunction compose(const FinFunction& f, const FinFunction& g);

TotSpace dis(const FinSet& s);
FinSet yon(const TotSpace& a);
Morphism dis(const FinFunction& f);
FinFunction yon(const Morphism& f);
Morphism bang(const Morphism& f, const Caps& caps = {});

// f maps each element of S to the index of a total of A.
Morphism adj_bwd(const FinSet& s, const TotSpace& a, const std::vector<std::size_t>& f);
// Inverse of adj_bwd; throws std::domain_error if a slice is not total.
std::vector<std::size_t> adj_fwd(const Morphism& phi);

Morphism delta(const TotSpace& a, const Caps& caps = {});
Morphism delta_inv(const TotSpace& a, const Caps& caps = {});
Morphism epsilon(const TotSpace& a, const Caps& caps = {});
// !(A & B) -> !A * !B and back.
std::pair<Morphism, Morphism> mon(const TotSpace& a, const TotSpace& b, const Caps& caps = {});
// !T -> 1 and back.
std::pair<Morphism, Morphism> top_iso(const Caps& caps = {});

// ---- generators and law checks ----

// Every totality space on 0..max_atoms atoms named a, b, c, ...
std::vector<TotSpace> exhaustive_family(std::size_t max_atoms, const Caps& caps = {});
// Biclosure of a random family on 1..max_atoms atoms, retried until bang fits the caps.
TotSpace random_space(std::mt19937_64& rng, std::size_t max_atoms, const Caps& caps = {});
// Every graph from A to B that is a morphism (|A| * |B| <= 12).
std::vector<Morphism> all_morphisms(const TotSpace& a, const TotSpace& b, const Caps& caps = {});

struct LawResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string counterexample;
  bool pass() const noexcept { return failures == 0; }
};

struct LawOptions {
  std::uint64_t seed = 1;
  // Pairs of spaces sampled for the binary and naturality laws.
  std::size_t pair_samples = 400;
};

std::vector<LawResult> check_laws(const std::vector<TotSpace>& family, const LawOptions& options = {},
                                  const Caps& caps = {});

}  // namespace idll::tot
