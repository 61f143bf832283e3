#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "precanon/kostka.hpp"
#include "precanon/qpoly.hpp"
#include "precanon/rootsys.hpp"
#include "precanon/weyl.hpp"

#include <functional>
#include <random>
#include <vector>

using namespace precanon;

namespace {

// Order-free reference for the q-weighted Kostant partition count: depth
// first over root multiplicities, exponent = total number of parts.
QPoly kostant_brute(const RootSystem& rs, const std::vector<long long>& beta) {
  const auto& roots = rs.positive_roots();
  QPoly total;
  std::vector<long long> rem = beta;
  std::function<void(size_t, int)> rec = [&](size_t k, int parts) {
    bool zero = true;
    for (long long v : rem) {
      if (v < 0) return;
      if (v != 0) zero = false;
    }
    if (k == roots.size()) {
      if (zero) total += QPoly::monomial(Int(1), parts);
      return;
    }
    const auto& r = roots[k];
    int used = 0;
    for (;;) {
      rec(k + 1, parts + used);
      bool can = true;
      for (int t = 0; t < rs.rank(); ++t)
        if (rem[static_cast<size_t>(t)] < r.c[static_cast<size_t>(t)]) can = false;
      if (!can) break;
      for (int t = 0; t < rs.rank(); ++t) rem[static_cast<size_t>(t)] -= r.c[static_cast<size_t>(t)];
      ++used;
    }
    for (int u = 0; u < used; ++u)
      for (int t = 0; t < rs.rank(); ++t) rem[static_cast<size_t>(t)] += r.c[static_cast<size_t>(t)];
  };
  rec(0, 0);
  return total;
}

// Product of <lam + rho, a> / <rho, a> over positive roots.
Int weyl_dimension(const RootSystem& rs, const Weight& lam) {
  Int num = 1, den = 1;
  const Weight rho = rs.rho();
  for (const Root& a : rs.positive_roots()) {
    num *= Int(rs.pairing(rs.add(lam, rho), a));
    den *= Int(rs.pairing(rho, a));
  }
  REQUIRE_EQ(num % den, Int(0));
  return num / den;
}

}  // namespace

TEST_CASE("q-analogue of the Kostant partition count") {
  std::mt19937 rng(37);
  for (const RootSystem& rs :
       {RootSystem::build(Family::A, 2), RootSystem::build(Family::A, 3),
        RootSystem::build(Family::D, 4)}) {
    const WeylTable w = WeylTable::enumerate(rs);
    const KostkaTable kt(rs, w);
    // Base cases.
    CHECK_EQ(kt.kostant_q(std::vector<long long>(static_cast<size_t>(rs.rank()), 0)), QPoly(1));
    for (int i = 0; i < rs.rank(); ++i) {
      std::vector<long long> e(static_cast<size_t>(rs.rank()), 0);
      e[static_cast<size_t>(i)] = 1;
      CHECK_EQ(kt.kostant_q(e), QPoly::monomial(Int(1), 1));
    }
    // Random vectors against the brute-force count.
    std::uniform_int_distribution<int> d(0, rs.rank() <= 3 ? 4 : 2);
    for (int it = 0; it < 40; ++it) {
      std::vector<long long> beta(static_cast<size_t>(rs.rank()));
      for (auto& v : beta) v = d(rng);
      CHECK_EQ(kt.kostant_q(beta), kostant_brute(rs, beta));
    }
  }
}

TEST_CASE("frozen Kostka-Foulkes values") {
  {
    const RootSystem rs = RootSystem::build(Family::A, 1);
    const WeylTable w = WeylTable::enumerate(rs);
    const KostkaTable kt(rs, w);
    CHECK_EQ(kt.kl_entry(Weight(std::vector<int>{0}), Weight(std::vector<int>{2})),
             QPoly::monomial(Int(1), 1));
  }
  {
    const RootSystem rs = RootSystem::build(Family::A, 2);
    const WeylTable w = WeylTable::enumerate(rs);
    const KostkaTable kt(rs, w);
    CHECK_EQ(kt.kl_entry(Weight(std::vector<int>{0, 0}), Weight(std::vector<int>{1, 1})),
             QPoly(std::vector<Int>{Int(0), Int(1), Int(1)}));
  }
  {
    const RootSystem rs = RootSystem::build(Family::A, 3);
    const WeylTable w = WeylTable::enumerate(rs);
    const KostkaTable kt(rs, w);
    CHECK_EQ(kt.kl_entry(Weight(std::vector<int>{0, 0, 0}), Weight(std::vector<int>{1, 0, 1})),
             QPoly(std::vector<Int>{Int(0), Int(1), Int(1), Int(1)}));
  }
}

TEST_CASE("transition entries vanish off the lower set") {
  const RootSystem rs = RootSystem::build(Family::A, 2);
  const WeylTable w = WeylTable::enumerate(rs);
  const KostkaTable kt(rs, w);
  const Weight theta(std::vector<int>{1, 1});
  CHECK_EQ(kt.kl_entry(Weight(std::vector<int>{1, 0}), theta), QPoly());   // different coset
  CHECK_EQ(kt.kl_entry(Weight(std::vector<int>{3, 0}), theta), QPoly());  // same coset, not below
  CHECK_EQ(kt.kl_entry(theta, Weight(std::vector<int>{0, 0})), QPoly());  // above, not below
  CHECK_EQ(kt.kl_entry(theta, theta), QPoly(1));
}

TEST_CASE("polynomial shape and the Freudenthal oracle") {
  for (const RootSystem& rs :
       {RootSystem::build(Family::A, 2), RootSystem::build(Family::A, 3)}) {
    const WeylTable w = WeylTable::enumerate(rs);
    const KostkaTable kt(rs, w);
    const int box = rs.rank() == 2 ? 3 : 2;
    for (const Weight& lam : rs.dominant_box(box)) {
      for (const Weight& mu : rs.dominant_below(lam)) {
        const QPoly k = kt.kostka_foulkes(lam, mu);
        CHECK(k.is_nonneg());
        if (mu == lam) {
          CHECK_EQ(k, QPoly(1));
        } else {
          CHECK_EQ(k.coeff(0), Int(0));
          CHECK_FALSE(k.is_zero());
        }
        CHECK_EQ(k.eval_at_one(), kt.freudenthal_mult(lam, mu));
        CHECK_EQ(kt.kl_entry(mu, lam), k);
      }
    }
  }
}

TEST_CASE("Freudenthal multiplicities") {
  const RootSystem rs = RootSystem::build(Family::A, 2);
  const WeylTable w = WeylTable::enumerate(rs);
  const KostkaTable kt(rs, w);
  const Weight adj(std::vector<int>{1, 1});
  CHECK_EQ(kt.freudenthal_mult(adj, adj), Int(1));
  CHECK_EQ(kt.freudenthal_mult(adj, Weight(std::vector<int>{0, 0})), Int(2));
}

TEST_CASE("orbit-summed multiplicities give the Weyl dimension") {
  for (const RootSystem& rs :
       {RootSystem::build(Family::A, 2), RootSystem::build(Family::A, 3),
        RootSystem::build(Family::D, 4)}) {
    const WeylTable w = WeylTable::enumerate(rs);
    const KostkaTable kt(rs, w);
    const Int order(static_cast<long long>(w.size()));
    for (const Weight& lam : rs.dominant_box(1)) {
      Int dim = 0;
      for (const Weight& mu : rs.dominant_below(lam)) {
        const Int stab = stabilizer_poincare(rs, mu).eval_at_one();
        REQUIRE_EQ(order % stab, Int(0));
        dim += (order / stab) * kt.freudenthal_mult(lam, mu);
      }
      CHECK_EQ(dim, weyl_dimension(rs, lam));
    }
  }
}

TEST_CASE("argument guards") {
  const RootSystem rs = RootSystem::build(Family::A, 2);
  const WeylTable w = WeylTable::enumerate(rs);
  const KostkaTable kt(rs, w);
  CHECK_THROWS_AS(kt.kostka_foulkes(Weight(std::vector<int>{-1, 0}), Weight(std::vector<int>{0, 0})),
                  DomainError);
  CHECK_THROWS_AS(kt.freudenthal_mult(Weight(std::vector<int>{-1, 0}), Weight(std::vector<int>{0, 0})),
                  DomainError);
}
