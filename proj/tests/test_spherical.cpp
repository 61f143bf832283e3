#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "precanon/qpoly.hpp"
#include "precanon/rootsys.hpp"
#include "precanon/spherical.hpp"
#include "precanon/weyl.hpp"

#include <map>
#include <random>
#include <vector>

using namespace precanon;

namespace {

Weight wt(std::vector<int> c) { return Weight(std::move(c)); }

QPoly mono(long long c, int d) { return QPoly::monomial(Int(c), d); }

std::map<std::vector<int>, QPoly> as_map(const SphElement& e) {
  std::map<std::vector<int>, QPoly> m;
  for (const auto& t : e.terms()) m[t.weight.c] = t.coeff;
  return m;
}

}  // namespace

TEST_CASE("basis identifiers normalize") {
  const RootSystem rs = RootSystem::build(Family::A, 3);  // m = 3
  CHECK_EQ(BasisId::precanon(rs, 1), BasisId::std_basis());
  CHECK_EQ(BasisId::precanon(rs, 4), BasisId::canon());
  CHECK_EQ(BasisId::precanon(rs, 7), BasisId::canon());
  CHECK_EQ(BasisId::precanon(rs, 2).tag(), "precanon:2");
  CHECK_EQ(BasisId::std_basis().tag(), "std");
  CHECK_EQ(BasisId::canon().tag(), "canon");
  CHECK(BasisId::precanon(rs, 2) != BasisId::precanon(rs, 3));
}

TEST_CASE("element construction validates and sorts") {
  const RootSystem rs = RootSystem::build(Family::A, 2);
  const SphElement e(rs, BasisId::canon(),
                     {{wt({0, 0}), QPoly(1)}, {wt({1, 1}), mono(-1, 1)}});
  REQUIRE_EQ(e.size(), 2u);
  // Higher weight first.
  CHECK_EQ(e.terms()[0].weight, wt({1, 1}));
  CHECK_EQ(e.terms()[1].weight, wt({0, 0}));
  REQUIRE(e.coeff(wt({0, 0})) != nullptr);
  CHECK_EQ(*e.coeff(wt({0, 0})), QPoly(1));
  CHECK_EQ(e.coeff(wt({2, 2})), nullptr);

  CHECK_THROWS_AS(SphElement(rs, BasisId::canon(),
                             {{wt({1, 1}), QPoly(1)}, {wt({1, 1}), QPoly(1)}}),
                  DomainError);
  CHECK_THROWS_AS(SphElement(rs, BasisId::canon(), {{wt({-1, 0}), QPoly(1)}}), DomainError);
  CHECK_THROWS_AS(SphElement(rs, BasisId::canon(),
                             {{wt({1, 1}), QPoly(1)}, {wt({1, 0}), QPoly(1)}}),
                  DomainError);
  CHECK_THROWS_AS(SphElement(rs, BasisId::canon(), {{wt({1}), QPoly(1)}}), DomainError);
}

TEST_CASE("tilde-H evaluation") {
  const RootSystem rs = RootSystem::build(Family::A, 3);
  SphAlgebra alg(rs);
  // Dominant weights are their own representatives.
  const TildeH t = alg.tilde_H(wt({1, 0, 2}));
  REQUIRE_FALSE(t.zero);
  CHECK_EQ(t.sign, 1);
  CHECK_EQ(t.bar, wt({1, 0, 2}));
  // A -1 coordinate is fixed by the corresponding dot reflection.
  CHECK(alg.tilde_H(wt({-1, 1, 0})).zero);
  CHECK(alg.tilde_H(wt({2, 0, -1})).zero);
  // Reflection antisymmetry: s_k . mu has the opposite sign.
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int it = 0; it < 200; ++it) {
    std::vector<int> c(3);
    for (auto& x : c) x = d(rng);
    const Weight mu(c);
    for (int k = 0; k < 3; ++k) {
      const TildeH a = alg.tilde_H(mu);
      const TildeH b = alg.tilde_H(rs.dot_reflect(mu, k));
      CHECK_EQ(a.zero, b.zero);
      if (!a.zero && mu != rs.dot_reflect(mu, k)) {
        CHECK_EQ(a.bar, b.bar);
        CHECK_EQ(a.sign, -b.sign);
      }
    }
  }
}

TEST_CASE("frozen rank-1 elements") {
  SphAlgebra alg(RootSystem::build(Family::A, 1));
  // Level 1 at 2w: standard basis element, canonical coordinates 1 and -q.
  const SphElement& n1 = alg.precanonical(wt({2}), 1);
  CHECK_EQ(n1.basis(), BasisId::canon());
  const auto m1 = as_map(n1);
  REQUIRE_EQ(m1.size(), 2u);
  CHECK_EQ(m1.at({2}), QPoly(1));
  CHECK_EQ(m1.at({0}), mono(-1, 1));
  // Level 2 = m + 1 is the canonical basis itself.
  const SphElement& n2 = alg.precanonical(wt({2}), 2);
  REQUIRE_EQ(n2.size(), 1u);
  CHECK_EQ(n2.terms()[0].weight, wt({2}));
  CHECK_EQ(n2.terms()[0].coeff, QPoly(1));
}

TEST_CASE("frozen rank-2 level-2 element") {
  SphAlgebra alg(RootSystem::build(Family::A, 2));
  const auto m = as_map(alg.precanonical(wt({1, 1}), 2));
  REQUIRE_EQ(m.size(), 2u);
  CHECK_EQ(m.at({1, 1}), QPoly(1));
  CHECK_EQ(m.at({0, 0}), mono(-1, 1));
  // In the standard basis the same element has coefficient q^2 at zero.
  const auto s = as_map(alg.canon_to_std(alg.precanonical(wt({1, 1}), 2)));
  REQUIRE_EQ(s.size(), 2u);
  CHECK_EQ(s.at({1, 1}), QPoly(1));
  CHECK_EQ(s.at({0, 0}), mono(1, 2));
}

TEST_CASE("level 1 is the standard basis") {
  for (const RootSystem& rs :
       {RootSystem::build(Family::A, 2), RootSystem::build(Family::A, 3),
        RootSystem::build(Family::D, 4)}) {
    SphAlgebra alg(rs);
    for (const Weight& lam : rs.dominant_box(rs.rank() >= 4 ? 1 : 2)) {
      const SphElement std_elem = alg.canon_to_std(alg.precanonical(lam, 1));
      REQUIRE_EQ(std_elem.size(), 1u);
      CHECK_EQ(std_elem.terms()[0].weight, lam);
      CHECK_EQ(std_elem.terms()[0].coeff, QPoly(1));
    }
  }
}

TEST_CASE("coordinate round trips") {
  const RootSystem rs = RootSystem::build(Family::A, 3);
  SphAlgebra alg(rs);
  std::mt19937 rng(43);
  for (int it = 0; it < 30; ++it) {
    // Random canonical-coordinate element supported below a random lambda.
    std::uniform_int_distribution<int> d(0, 2);
    const Weight lam(std::vector<int>{d(rng) + 1, d(rng), d(rng) + 1});
    std::vector<std::pair<Weight, QPoly>> terms;
    for (const Weight& mu : rs.dominant_below(lam)) {
      const int c = static_cast<int>(rng() % 5) - 2;
      if (c != 0) terms.emplace_back(mu, QPoly(c));
    }
    if (terms.empty()) continue;
    const SphElement e(rs, BasisId::canon(), std::move(terms));
    CHECK_EQ(alg.std_to_canon(alg.canon_to_std(e)), e);
  }
  CHECK_THROWS_AS(alg.std_to_canon(alg.precanonical(wt({1, 1, 1}), 2)), DomainError);
}

TEST_CASE("expanding an element over its own level is trivial") {
  const RootSystem rs = RootSystem::build(Family::A, 3);
  SphAlgebra alg(rs);
  for (const Weight& lam : rs.dominant_box(2)) {
    for (int i = 1; i <= rs.highest_root_height() + 1; ++i) {
      const SphElement expanded = alg.expand_in_precanonical(alg.precanonical(lam, i), i);
      REQUIRE_EQ(expanded.size(), 1u);
      CHECK_EQ(expanded.terms()[0].weight, lam);
      CHECK_EQ(expanded.terms()[0].coeff, QPoly(1));
      CHECK_EQ(expanded.basis(), BasisId::precanon(rs, i));
    }
  }
}

TEST_CASE("frozen transition columns") {
  {
    SphAlgebra alg(RootSystem::build(Family::A, 3));
    const auto t2 = as_map(alg.transition(wt({1, 1, 1}), 2));
    REQUIRE_EQ(t2.size(), 3u);
    CHECK_EQ(t2.at({1, 1, 1}), QPoly(1));
    CHECK_EQ(t2.at({2, 0, 0}), mono(1, 1));
    CHECK_EQ(t2.at({0, 0, 2}), mono(1, 1));
    const auto t3 = as_map(alg.transition(wt({1, 1, 1}), 3));
    REQUIRE_EQ(t3.size(), 2u);
    CHECK_EQ(t3.at({1, 1, 1}), QPoly(1));
    CHECK_EQ(t3.at({0, 1, 0}), mono(1, 1));
  }
  {
    SphAlgebra alg(RootSystem::build(Family::A, 4));
    const auto t4 = as_map(alg.transition(wt({1, 0, 0, 1}), 4));
    REQUIRE_EQ(t4.size(), 2u);
    CHECK_EQ(t4.at({1, 0, 0, 1}), QPoly(1));
    CHECK_EQ(t4.at({0, 0, 0, 0}), mono(1, 1));
  }
}

TEST_CASE("transition columns recombine exactly") {
  for (const RootSystem& rs :
       {RootSystem::build(Family::A, 3), RootSystem::build(Family::D, 4)}) {
    SphAlgebra alg(rs);
    const int m = rs.highest_root_height();
    for (const Weight& lam : rs.dominant_box(1)) {
      for (int i = 1; i <= m; ++i) {
        const SphElement col = alg.transition(lam, i);
        CHECK_EQ(col.basis(), BasisId::precanon(rs, i));
        // Sum coeff * N^i(mu) in canonical coordinates.
        std::map<std::vector<int>, QPoly> acc;
        for (const auto& t : col.terms()) {
          for (const auto& s : alg.precanonical(t.weight, i).terms()) {
            acc[s.weight.c] += t.coeff * s.coeff;
          }
        }
        std::map<std::vector<int>, QPoly> want = as_map(alg.precanonical(lam, i + 1));
        for (auto it = acc.begin(); it != acc.end();) {
          if (it->second.is_zero()) it = acc.erase(it);
          else ++it;
        }
        CHECK(acc == want);
      }
      CHECK_THROWS_AS(alg.transition(lam, m + 1), DomainError);
      CHECK_THROWS_AS(alg.transition(lam, 0), DomainError);
    }
  }
}

TEST_CASE("alternating subset sums match the tabled computation") {
  const RootSystem rs = RootSystem::build(Family::A, 3);
  SphAlgebra alg(rs);
  for (const Weight& lam : rs.dominant_box(2)) {
    for (int i = 2; i <= rs.highest_root_height(); ++i) {
      const auto span = rs.phi_geq(i);
      const std::vector<Root> a(span.begin(), span.end());
      CHECK_EQ(as_map(alg.m_op(a, lam)), as_map(alg.precanonical(lam, i)));
    }
  }
  // Empty set: the bare tilde-H.
  const SphElement e = alg.m_op({}, wt({2, 1, 0}));
  REQUIRE_EQ(e.size(), 1u);
  CHECK_EQ(e.terms()[0].weight, wt({2, 1, 0}));
  CHECK_EQ(e.terms()[0].coeff, QPoly(1));
  // Singular argument: zero element.
  CHECK(alg.m_op({}, wt({-1, 2, 0})).is_zero());
}

TEST_CASE("closed-form level-2 element in the standard basis") {
  for (const RootSystem& rs :
       {RootSystem::build(Family::A, 2), RootSystem::build(Family::A, 3),
        RootSystem::build(Family::D, 4)}) {
    SphAlgebra alg(rs);
    for (const Weight& lam : rs.dominant_box(rs.rank() >= 4 ? 1 : 2)) {
      const SphElement direct = alg.n_basis_std(lam);
      CHECK_EQ(direct.basis(), BasisId::std_basis());
      CHECK_EQ(as_map(direct), as_map(alg.canon_to_std(alg.precanonical(lam, 2))));
    }
  }
}

TEST_CASE("atomic decomposition agrees with the generic expansion") {
  const RootSystem rs = RootSystem::build(Family::A, 3);
  SphAlgebra alg(rs);
  for (const Weight& lam : rs.dominant_box(2)) {
    const SphElement canon_elem(rs, BasisId::canon(), {{lam, QPoly(1)}});
    CHECK_EQ(as_map(alg.atomic_decomposition(lam)),
             as_map(alg.expand_in_precanonical(canon_elem, 2)));
  }
}

TEST_CASE("cached stabilizer polynomials match the direct computation") {
  const RootSystem rs = RootSystem::build(Family::A, 3);
  SphAlgebra alg(rs);
  for (const Weight& lam : rs.dominant_box(2)) {
    CHECK_EQ(alg.stabilizer_poincare_cached(lam), stabilizer_poincare(rs, lam));
  }
  CHECK_EQ(alg.stabilizer_poincare_cached(wt({1, 0, 1})),
           QPoly(std::vector<Int>{Int(1), Int(1)}));
}

TEST_CASE("argument guards") {
  SphAlgebra alg(RootSystem::build(Family::A, 2));
  CHECK_THROWS_AS(alg.precanonical(wt({-1, 0}), 1), DomainError);
  CHECK_THROWS_AS(alg.precanonical(wt({1, 0}), 0), DomainError);
  const std::vector<Root> big(31, Root(std::vector<int>{1, 0}));
  CHECK_THROWS_AS(alg.m_op(big, wt({0, 0})), DomainError);
}
