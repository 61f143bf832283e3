#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace precanon {

/// Weight in fundamental-weight coordinates.
struct Weight {
  std::vector<int> c;

  Weight() = default;
  explicit Weight(std::vector<int> coords) : c(std::move(coords)) {}

  int rank() const { return static_cast<int>(c.size()); }
  bool operator==(const Weight& o) const { return c == o.c; }
  bool operator!=(const Weight& o) const { return c != o.c; }
  /// Lexicographic; used as the deterministic tie-break everywhere.
  bool operator<(const Weight& o) const { return c < o.c; }
  std::string to_string() const;
};

/// Root in simple-root coordinates; height is the coordinate sum.
struct Root {
  std::vector<int> c;
  int height = 0;

  Root() = default;
  explicit Root(std::vector<int> coords);

  bool operator==(const Root& o) const { return c == o.c; }
  bool operator<(const Root& o) const {
    if (height != o.height) return height < o.height;
    return c < o.c;
  }
  std::string to_string() const;
};

enum class Family { A, D, Custom };

std::string family_name(Family f);

/// Thrown on invalid construction input or when an enumeration cap is hit.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Simply-laced crystallographic root system with its Cartan matrix,
/// positive roots in (height, lex) order, and exact integer linear algebra
/// for dominance tests.  Rank is capped at 8.
class RootSystem {
 public:
  static RootSystem build(Family f, int rank);
  static RootSystem custom(std::vector<std::vector<int>> cartan);

  Family family() const { return family_; }
  int rank() const { return rank_; }
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }

  const std::vector<Root>& positive_roots() const { return pos_; }
  /// Height of the highest root; pre-canonical levels run 1 .. m+1.
  int highest_root_height() const { return m_; }
  /// Positive roots of height >= i (suffix of the sorted list).
  std::span<const Root> phi_geq(int i) const;
  /// Positive roots of height exactly i.
  std::vector<Root> phi_exact(int i) const;

  /// Fundamental-weight coordinates of a root: Cartan matrix applied.
  Weight root_to_weight(const Root& r) const;
  /// <lambda, alpha^v>; simply-laced, so the plain dot product applies.
  long long pairing(const Weight& lam, const Root& alpha) const;

  bool is_dominant(const Weight& w) const;
  Weight rho() const;

  /// Simple reflection s_i (0-based i) acting linearly.
  Weight reflect(const Weight& w, int i) const;
  /// Dot action s_i . w = s_i(w + rho) - rho.
  Weight dot_reflect(const Weight& w, int i) const;

  /// x with C x = lam - mu when x is a nonnegative integer vector, else nullopt.
  std::optional<std::vector<long long>> dominance_diff(const Weight& lam,
                                                       const Weight& mu) const;
  /// mu <= lam in dominance order (difference a nonnegative root-lattice sum).
  bool dominance_leq(const Weight& mu, const Weight& lam) const;
  /// True when lam - mu lies in the root lattice.
  bool same_coset(const Weight& lam, const Weight& mu) const;

  /// Multiplicities writing lam - mu over the height-i roots (aligned with
  /// phi_exact(i)), or nullopt.  Type A solves the (linearly independent)
  /// system exactly; other families run a bounded depth-first search
  /// (cap ~1e7 nodes).
  std::optional<std::vector<long long>> leq_i(const Weight& mu, const Weight& lam,
                                              int i) const;

  /// det(C) times the height functional; ht(lam-mu) = (level(lam)-level(mu))/det.
  long long level(const Weight& w) const;
  long long det() const { return det_; }
  /// Entry of the adjugate of the Cartan matrix (adj(C) C = det(C) I).
  long long adjugate_entry(int i, int j) const {
    return adj_[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  /// Exact ht(lam - mu) for weights in one coset; throws otherwise.
  int height_diff(const Weight& lam, const Weight& mu) const;

  /// All dominant mu <= lam, ordered by (height of lam-mu, lex).
  std::vector<Weight> dominant_below(const Weight& lam) const;
  /// All dominant weights with every coordinate in [0, bound], lex order.
  std::vector<Weight> dominant_box(int bound) const;

  Weight add(const Weight& a, const Weight& b) const;
  Weight sub(const Weight& a, const Weight& b) const;
  /// lam minus the weight image of a root-coordinate vector.
  Weight sub_root(const Weight& lam, const std::vector<int>& root_coords) const;

 private:
  RootSystem() = default;
  void finish_build();

  Family family_ = Family::Custom;
  int rank_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<Root> pos_;
  std::vector<Weight> pos_w_;          // fund coords per positive root
  std::vector<size_t> height_offset_;  // first index with height >= h
  std::vector<std::vector<long long>> adj_;  // adjugate of the Cartan matrix
  long long det_ = 0;
  int m_ = 0;
};

}  // namespace precanon
