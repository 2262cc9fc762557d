#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "idll/totspace.hpp"

using namespace idll::tot;

namespace {

// Dual by brute force over every subset of the base.
std::vector<Mask> brute_dual(const TotSpace& a) {
  std::vector<Mask> out;
  for (Mask x = 0; x < (Mask{1} << a.size()); ++x) {
    bool ok = true;
    for (Mask t : a.totals) ok = ok && std::popcount(x & t) == 1;
    if (ok) out.push_back(x);
  }
  return out;
}

TotSpace dis_of(std::size_t n) {
  FinSet s;
  for (std::size_t i = 0; i < n; ++i) s.elements.push_back(std::string(1, static_cast<char>('a' + i)));
  return dis(s);
}

std::vector<TotSpace> family() {
  std::vector<TotSpace> out = exhaustive_family(3);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) out.push_back(random_space(rng, 4));
  return out;
}

}  // namespace

TEST(Dual, MatchesBruteForce) {
  for (const TotSpace& a : family()) EXPECT_EQ(dual(a).totals, brute_dual(a)) << describe(a);
  const TotSpace loose = make_raw({"a", "b", "c", "d"}, {0b0011, 0b0110, 0b1000});
  EXPECT_EQ(dual(loose).totals, brute_dual(loose));
}

TEST(Dual, DiscreteSpaces) {
  const TotSpace d3 = dis_of(3);
  EXPECT_EQ(dual(d3).totals, std::vector<Mask>{0b111});
  EXPECT_EQ(dual(dual(d3)), d3);
}

TEST(Dual, Units) {
  EXPECT_EQ(dual(one()), bot());
  EXPECT_EQ(dual(top()), zero());
  EXPECT_EQ(dual(zero()), top());
}

TEST(ExhaustiveFamily, ContainsOnlyTotalitySpaces) {
  const auto fam = exhaustive_family(3);
  EXPECT_EQ(fam.size(), 47u);
  for (const TotSpace& a : fam) EXPECT_TRUE(is_totality_space(a)) << describe(a);
}

TEST(Closure, AddsTheMissingTotals) {
  const TotSpace a = make_raw({"a", "b", "c"}, {0b001, 0b111});
  EXPECT_FALSE(is_totality_space(a));
  EXPECT_EQ(closure(a).totals, (std::vector<Mask>{0b001, 0b011, 0b101, 0b111}));
  const SpaceCheck c = make_space({"a", "b", "c"}, {0b001, 0b111});
  EXPECT_FALSE(c.space);
  EXPECT_EQ(c.bidual_totals, closure(a).totals);
}

TEST(Tensor, OfDiscreteSpacesIsDiscrete) {
  const TotSpace t = tensor(dis_of(2), dis_of(3));
  EXPECT_EQ(t.size(), 6u);
  EXPECT_EQ(t.totals.size(), 6u);
  for (Mask m : t.totals) EXPECT_EQ(std::popcount(m), 1);
  EXPECT_TRUE(is_totality_space(t));
}

TEST(Tensor, RectanglesNeedNotBeBiclosed) {
  const TotSpace a = make_raw({"a", "b", "c"}, {0b011, 0b100});
  const TotSpace b = make_raw({"a", "b", "c"}, {0b011, 0b111});
  ASSERT_TRUE(is_totality_space(a));
  ASSERT_TRUE(is_totality_space(b));
  EXPECT_FALSE(is_totality_space(tensor(a, b)));
}

TEST(Par, IsDualOfTensorOfDuals) {
  const TotSpace a = dis_of(2), b = dis_of(2);
  EXPECT_EQ(par(a, b), dual(tensor(dual(a), dual(b))));
}

TEST(Additives, WithPairsAndPlusUnions) {
  const TotSpace w = with_(dis_of(2), dis_of(1));
  EXPECT_EQ(w.size(), 3u);
  EXPECT_EQ(w.totals.size(), 2u);
  const TotSpace p = plus(dis_of(2), dis_of(1));
  EXPECT_EQ(p.totals.size(), 3u);
  EXPECT_EQ(dual(with_(dis_of(2), dis_of(1))), plus(dual(dis_of(2)), dual(dis_of(1))));
}

TEST(Bang, IsDiscreteOverTotals) {
  const TotSpace a = make_raw({"a", "b", "c"}, {0b011, 0b100});
  const TotSpace b = bang(a);
  EXPECT_EQ(b, dis(yon(a)));
  EXPECT_EQ(b.size(), 2u);
  EXPECT_EQ(whynot(a), dual(bang(dual(a))));
}

TEST(Bang, RespectsTheCap) {
  const TotSpace a = make_raw({"a", "b", "c", "d"}, {0b0011, 0b1100});
  const TotSpace big = tensor(tensor(a, a), a);  // eight totals
  EXPECT_THROW(bang(tensor(big, a), Caps{64, 12}), CapExceeded);
  EXPECT_THROW(dual(dis_of(17)), CapExceeded);
}

TEST(SpaceText, RoundTrips) {
  for (const TotSpace& a : exhaustive_family(3)) EXPECT_EQ(parse_space(print_space(a)), a);
  const TotSpace t = tensor(dis_of(2), dis_of(2));
  EXPECT_EQ(parse_space(print_space(t)), t);
}

TEST(SpaceText, ReportsBadLines) {
  EXPECT_THROW(parse_space("total a\n"), std::invalid_argument);
  EXPECT_THROW(parse_space("base a b\ntotal c\n"), std::invalid_argument);
  EXPECT_THROW(parse_space("base a a\n"), std::invalid_argument);
  const TotSpace a = parse_space("# comment\nbase a b\n\ntotal a b\n");
  EXPECT_EQ(a.totals, std::vector<Mask>{0b11});
}

TEST(Morphisms, BetweenDiscreteSpacesAreFunctions) {
  const auto ms = all_morphisms(dis_of(2), dis_of(2));
  EXPECT_EQ(ms.size(), 4u);
  for (const Morphism& m : ms) EXPECT_EQ(m.graph.size(), 2u);
}

TEST(Morphisms, IdentityAndComposition) {
  const TotSpace a = make_raw({"a", "b", "c"}, {0b011, 0b100});
  const Morphism id = identity(a);
  EXPECT_TRUE(is_morphism(a, a, id.graph));
  for (const Morphism& f : all_morphisms(a, dis_of(2))) {
    EXPECT_EQ(compose(id, f), f);
    EXPECT_EQ(compose(f, identity(dis_of(2))), f);
  }
  EXPECT_THROW(make_morphism(dis_of(2), dis_of(2), {{0, 0}}), std::domain_error);
}

TEST(Comonad, DeltaIsAnIsomorphism) {
  for (const TotSpace& a : exhaustive_family(2)) {
    const Morphism d = delta(a);
    EXPECT_EQ(compose(d, delta_inv(a)), identity(bang(a)));
    EXPECT_EQ(compose(delta_inv(a), d), identity(bang(bang(a))));
    EXPECT_EQ(compose(d, epsilon(bang(a))), identity(bang(a)));
  }
}

TEST(Comonad, BangOfWithIsTensorOfBangs) {
  const TotSpace a = dis_of(2), b = make_raw({"x", "y"}, {0b11});
  const auto [to, from] = mon(a, b);
  EXPECT_EQ(compose(to, from), identity(bang(with_(a, b))));
  EXPECT_EQ(compose(from, to), identity(tensor(bang(a), bang(b))));
  const auto [t1, t2] = top_iso();
  EXPECT_EQ(compose(t1, t2), identity(bang(top())));
}

TEST(Adjunction, RoundTrip) {
  const TotSpace a = make_raw({"a", "b", "c"}, {0b011, 0b100});
  const FinSet s{{"u", "v"}};
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      const std::vector<std::size_t> f{x, y};
      EXPECT_EQ(adj_fwd(adj_bwd(s, a, f)), f);
    }
  }
}

TEST(Laws, ComonadAndAdjunctionBundlePasses) {
  const auto results = check_laws(family(), LawOptions{2, 150});
  for (const auto& r : results) {
    if (r.name.rfind("comonad", 0) == 0 || r.name.rfind("adjunction", 0) == 0 || r.name == "delta-iso" ||
        r.name == "bang-idempotent" || r.name == "involution" || r.name == "bang-with" || r.name == "bang-top") {
      EXPECT_TRUE(r.pass()) << r.name << ": " << r.counterexample;
      EXPECT_GT(r.cases, 0u) << r.name;
    }
  }
}
