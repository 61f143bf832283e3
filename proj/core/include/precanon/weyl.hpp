#pragma once

#include "precanon/qpoly.hpp"
#include "precanon/rootsys.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace precanon {

/// Finite Weyl group enumerated breadth-first over the simple generators.
/// Elements are stored as integer action matrices on fundamental-weight
/// coordinates; BFS depth equals Coxeter length.
class WeylTable {
 public:
  static constexpr size_t kDefaultElementCap = 1000000;

  static WeylTable enumerate(const RootSystem& rs, size_t element_cap = kDefaultElementCap);

  size_t size() const { return lengths_.size(); }
  int rank() const { return rank_; }
  int length(size_t id) const { return lengths_[id]; }
  /// Length of the longest element (= number of positive roots).
  int max_length() const { return max_length_; }

  /// Linear action w(lam).
  Weight apply(size_t id, const Weight& lam) const;
  /// Dot action w . lam = w(lam + rho) - rho.
  Weight dot_act(size_t id, const Weight& lam) const;
  /// id of s_i * w (left multiplication by a simple generator).
  size_t left_mul_gen(size_t id, int i) const { return left_gen_[id * rank_ + i]; }

  /// Sum of q^length over all elements.
  QPoly poincare() const;

  /// Positive roots sent negative by w; its size equals length(id).
  std::vector<Root> phi_minus(size_t id, const RootSystem& rs) const;

 private:
  WeylTable() = default;
  int rank_ = 0;
  int max_length_ = 0;
  std::vector<int> lengths_;
  std::vector<int16_t> mats_;      // size() * rank * rank, row-major
  std::vector<uint32_t> left_gen_;  // size() * rank
};

/// Result of pushing lam to the dominant chamber under the dot action.
struct DominantRep {
  bool regular = false;
  Weight bar;   // dominant representative (valid only when regular)
  int sign = 1;       // (-1)^length(w_lam)
  int length = 0;     // length(w_lam)
};

/// Minimal w with w . lam dominant, via the chamber walk that always reflects
/// at the lowest-index negative coordinate of lam + rho.  Type A dispatches to
/// an equivalent sorting fast path.
DominantRep dominant_rep(const RootSystem& rs, const Weight& lam);

/// The walk itself, exposed for equivalence tests.  next_index picks which
/// negative coordinate to reflect at (given the list of negative positions).
DominantRep dominant_rep_walk(const RootSystem& rs, const Weight& lam);
DominantRep dominant_rep_walk_choose(
    const RootSystem& rs, const Weight& lam,
    const std::function<size_t(const std::vector<int>&)>& next_index);

/// Poincare polynomial of the stabilizer of a dominant weight (the parabolic
/// subgroup generated by the simple reflections fixing it), by subgroup BFS.
QPoly stabilizer_poincare(const RootSystem& rs, const Weight& lam,
                          size_t element_cap = WeylTable::kDefaultElementCap);

}  // namespace precanon
