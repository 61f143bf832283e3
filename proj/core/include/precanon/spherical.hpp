#pragma once

#include "precanon/kostka.hpp"
#include "precanon/qpoly.hpp"
#include "precanon/rootsys.hpp"
#include "precanon/weyl.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace precanon {

/// Identifies which basis an element's coefficients refer to.  Level 1 is the
/// standard basis and level m+1 (or anything above) is the canonical basis;
/// those aliases are normalized away at construction.
struct BasisId {
  enum class Kind { Std, Canon, PreCanon };
  Kind kind = Kind::Canon;
  int level = 0;  // set for PreCanon only (2 <= level <= m)

  static BasisId std_basis() { return {Kind::Std, 0}; }
  static BasisId canon() { return {Kind::Canon, 0}; }
  /// Normalizes: i == 1 -> Std, i >= m+1 -> Canon, else PreCanon(i).
  static BasisId precanon(const RootSystem& rs, int i);

  std::string tag() const;
  bool operator==(const BasisId& o) const { return kind == o.kind && level == o.level; }
  bool operator!=(const BasisId& o) const { return !(*this == o); }
};

/// Finite linear combination of basis elements indexed by dominant weights,
/// with polynomial coefficients.  All weights lie in one root-lattice coset;
/// terms are sorted by (descending height, then lex), so the maximal weight
/// comes first and triangular solves can peel terms front to back.
class SphElement {
 public:
  struct Term {
    Weight weight;
    long long lvl = 0;  // det-scaled height functional, for ordering
    QPoly coeff;
  };

  SphElement() = default;
  SphElement(const RootSystem& rs, BasisId basis,
             std::vector<std::pair<Weight, QPoly>> terms);

  const BasisId& basis() const { return basis_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  /// Coefficient at mu, or nullptr when absent.
  const QPoly* coeff(const Weight& mu) const;

  bool operator==(const SphElement& o) const;
  std::string to_string() const;

 private:
  friend class SphAlgebra;
  BasisId basis_;
  std::vector<Term> terms_;
};

/// tilde-H evaluation: zero (singular argument) or a signed canonical basis
/// element at the dominant representative.
struct TildeH {
  bool zero = true;
  int sign = 1;
  Weight bar;
};

/// Computation context for one root system: owns the Weyl table and Kostka
/// table (built lazily; pre-canonical computations never need them), the
/// per-level signed subset-sum tables, and a cross-call element cache.
/// All public methods are safe to call from several threads.
class SphAlgebra {
 public:
  explicit SphAlgebra(RootSystem rs);

  const RootSystem& rs() const { return rs_; }
  const WeylTable& weyl();
  const KostkaTable& kostka();

  /// tilde-H at an arbitrary weight.
  TildeH tilde_H(const Weight& mu) const;

  /// Alternating subset sum over an arbitrary set of roots (positive or
  /// negative coordinates allowed); |A| <= 30 enforced.  Gray-code walk.
  SphElement m_op(const std::vector<Root>& a, const Weight& mu) const;

  /// Pre-canonical basis element at dominant lam, level 1 <= i <= m+1, in
  /// canonical coordinates.  Cached; level >= 2 uses the subset-sum table of
  /// Phi^(>=i), level 1 divides the full-Phi+ sum by the stabilizer Poincare
  /// polynomial.
  const SphElement& precanonical(const Weight& lam, int i);

  /// Rewrite canonical coordinates in the standard basis (Kostka rows).
  SphElement canon_to_std(const SphElement& e);
  /// Inverse rewrite, by triangular peeling.
  SphElement std_to_canon(const SphElement& e);

  /// Expand an element given in canonical coordinates over the level-i
  /// pre-canonical family, by triangular peeling.  Result basis: level i.
  SphElement expand_in_precanonical(const SphElement& e, int i);

  /// N^(i+1) at lam expanded over level i: the (i+1 -> i) transition column.
  SphElement transition(const Weight& lam, int i);

  /// Canonical basis element at lam expanded over level 2 (the N-basis).
  SphElement atomic_decomposition(const Weight& lam);

  /// The level-2 element written directly in the standard basis by its
  /// closed form: coefficient q^(ht(lam-mu)) at every dominant mu <= lam.
  SphElement n_basis_std(const Weight& lam);

  /// Poincare polynomial of the stabilizer parabolic of dominant lam (cached
  /// by zero-coordinate pattern).
  const QPoly& stabilizer_poincare_cached(const Weight& lam);

 private:
  struct TableEntry {
    std::array<int, 8> offset;  // fundamental coordinates of the subset sum
    QPoly poly;                 // sum over subsets with that sum of (-q)^|I|
  };

  const std::vector<TableEntry>& subset_table(int i);  // i >= 2
  void accumulate_table(std::unordered_map<uint64_t, QPoly>& acc,
                        const std::vector<TableEntry>& table, const Weight& mu,
                        int sign, int shift) const;
  SphElement from_accum(BasisId basis, std::unordered_map<uint64_t, QPoly>&& acc) const;
  SphElement compute_precanonical(const Weight& lam, int i);
  uint64_t pack_weight(const int* coords) const;
  Weight unpack_weight(uint64_t key) const;

  RootSystem rs_;
  std::mutex init_mu_;
  std::unique_ptr<WeylTable> weyl_;
  std::unique_ptr<KostkaTable> kostka_;

  std::mutex table_mu_;
  std::map<int, std::vector<TableEntry>> tables_;

  std::mutex cache_mu_;
  std::map<int, std::unordered_map<uint64_t, std::shared_ptr<const SphElement>>> precanon_cache_;

  std::mutex poincare_mu_;
  std::map<uint32_t, QPoly> poincare_cache_;  // keyed by zero-coordinate bitmask
};

}  // namespace precanon
