#pragma once

#include "precanon/qpoly.hpp"
#include "precanon/rootsys.hpp"
#include "precanon/spherical.hpp"

#include <string>
#include <vector>

namespace precanon {

/// Outcome of checking one closed-form claim on one instance.
struct VerifyReport {
  std::string claim;     // stable claim id, e.g. "a3.eq12"
  std::string instance;  // human-readable instance, e.g. "A3 lambda=[1,2,0]"
  bool pass = false;
  std::string detail;    // mismatch description on failure
};

/// Closed-form decomposition table row: coordinate guards (max = -1 means
/// unbounded) plus the terms beyond the implicit leading +1 at lambda, each a
/// polynomial times the basis element at lambda minus a root-lattice offset.
struct TableRow {
  int id = 0;
  std::vector<int> min;
  std::vector<int> max;
  std::vector<std::pair<QPoly, std::vector<int>>> terms;  // (coeff, root coords)

  bool matches(const Weight& lam) const;
};

/// The eight non-generic rows for the level 2 -> 3 rewrite in rank 3.
const std::vector<TableRow>& a3_table();
/// The generic rank-3 pattern (a>=1, b>=2, c>=1).
const TableRow& a3_generic();
/// The thirty-one non-generic rows for the level 2 -> 3 rewrite in rank 4.
const std::vector<TableRow>& a4_table();
/// The generic rank-4 pattern (a>=1, b>=2, c>=2, d>=1).
const TableRow& a4_generic();

/// Ids of the rows covering lam (generic row reported as id 0).  Used by
/// coverage counters; verification itself checks that all covering rows
/// predict the same decomposition.
std::vector<int> matching_table_rows(const std::vector<TableRow>& rows, const TableRow& generic,
                                     const Weight& lam);
/// Number of weights in the dominant box [0, box]^rank matching a row.
long long row_box_count(const TableRow& row, int box);

/// Level-1/level-2 statements: the level-1 element is the standard basis
/// element, and the level-2 element is the height-graded sum of level-1
/// elements over the dominant lower set.
std::vector<VerifyReport> verify_low_levels(SphAlgebra& alg, const Weight& lam);

/// Monomial transition theorem for type A with n/2+1 <= i <= n: the
/// (i+1 -> i) transition is q^(ht/i) over the height-i lower set.
VerifyReport verify_nhalf(SphAlgebra& alg, const Weight& lam, int i);

/// Rank-3 closed forms: the three displayed level transitions and the table
/// row for the level 2 -> 3 rewrite.  Four reports.
std::vector<VerifyReport> verify_a3(SphAlgebra& alg, const Weight& lam);

/// The rank-3 index set with degrees: pairs (mu, d) over which the level
/// 3 -> 2 transition is the sum of q^d at mu.
std::vector<std::pair<Weight, int>> a3_index_set(const RootSystem& rs, const Weight& lam);

/// Rank-4 closed forms: admissible-combination polynomials against the
/// computed 3 -> 2 transition, the unfiltered combination count against a
/// generating-function oracle, and the table row check.  Three reports.
std::vector<VerifyReport> verify_a4(SphAlgebra& alg, const Weight& lam);

/// M-operator recursion checks at (lam, i >= 2), type A: the endpoint
/// identities and the per-j reduction lemmas.  Three reports.
std::vector<VerifyReport> verify_m_lemmas(SphAlgebra& alg, const Weight& lam, int i);

/// Reflection antisymmetry of the alternating subset sum on random
/// (set, weight, generator) instances, plus the stable-set vanishing case.
VerifyReport verify_m_reflection(SphAlgebra& alg, int count, unsigned seed);

/// Per-mu subset-sum identities feeding the closed forms: the height-power
/// identity over Phi^(>=2) and the diagonal identity over all of Phi+.
VerifyReport verify_mucoeff(SphAlgebra& alg, const Weight& lam);
VerifyReport verify_mumu(SphAlgebra& alg, const Weight& lam);

/// Positivity scan: every transition column (all levels i = 1..m) at every
/// given weight must have nonnegative coefficients.  One report per weight.
std::vector<VerifyReport> positivity_scan(SphAlgebra& alg, const std::vector<Weight>& lams,
                                          int workers);

/// Negative coefficient found when expanding a canonical basis element over
/// the level-2 family.
struct NegativityWitness {
  Weight lam;
  Weight mu;
  QPoly coeff;
};
std::vector<NegativityWitness> atomic_negativity_scan(SphAlgebra& alg, int box);

/// Exploratory degree-i data for a conjectural combinatorial formula:
/// decompose lam - mu over roots of height 1 + k(i-1), k >= 1, grading each
/// root by (ht-1)/(i-1), and compare the generating polynomial against the
/// computed transition coefficient.  Report only; nothing is asserted.
struct DegIReport {
  bool decomposable = false;
  size_t count = 0;        // number of decompositions
  QPoly generating;        // sum of q^(total degree) over decompositions
  QPoly transition_coeff;  // P_i(lam, mu) from the computed transition
  bool dominated = false;  // transition_coeff <= generating coefficientwise
};
DegIReport explore_deg_i(SphAlgebra& alg, const Weight& lam, const Weight& mu, int i,
                         size_t node_cap = 1000000);

/// Suite drivers shared by the command line tool and the acceptance tests.
/// Boxes enumerate dominant weights with coordinates in [0, box].
std::vector<VerifyReport> suite_low_levels(SphAlgebra& alg, int box, int workers);
std::vector<VerifyReport> suite_nhalf(SphAlgebra& alg, int box, int workers);
std::vector<VerifyReport> suite_a3(SphAlgebra& alg, int box, int workers);
std::vector<VerifyReport> suite_a4(SphAlgebra& alg, int box, int workers);
std::vector<VerifyReport> suite_mlemmas(SphAlgebra& alg, int box, int reflection_count,
                                        unsigned seed, int workers);
std::vector<VerifyReport> suite_positivity(SphAlgebra& alg, const std::vector<Weight>& lams,
                                           int workers);
std::vector<VerifyReport> suite_d4witness(SphAlgebra& alg, int box, int workers);

/// Deterministic sample from the dominant box: Fisher-Yates with a fixed
/// seed, first `count` entries (the whole box when count >= box size).
std::vector<Weight> sampled_box(const RootSystem& rs, int box, size_t count, unsigned seed);

}  // namespace precanon
