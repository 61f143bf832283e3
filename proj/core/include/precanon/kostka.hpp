#pragma once

#include "precanon/qpoly.hpp"
#include "precanon/rootsys.hpp"
#include "precanon/weyl.hpp"

#include <cstdint>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace precanon {

/// Kostka-Foulkes polynomials via the q-analogue of Kostant's partition
/// function, plus an independent Freudenthal multiplicity oracle used to
/// cross-check values at q = 1.  Thread-safe (coarse lock around the memo).
class KostkaTable {
 public:
  KostkaTable(const RootSystem& rs, const WeylTable& weyl);

  /// q-weighted count of ways to write beta (root coordinates, nonnegative)
  /// as a multiset of positive roots; exponent = number of parts.
  QPoly kostant_q(const std::vector<long long>& beta) const;

  /// K_(lam,mu)(q) for dominant lam, mu: alternating Weyl sum of kostant_q.
  QPoly kostka_foulkes(const Weight& lam, const Weight& mu) const;

  /// Canonical-basis transition entry: coefficient of the standard basis
  /// element at mu inside the canonical basis element at lam, in q.
  /// Equals K_(lam,mu)(q); zero when mu is not below lam; one when equal.
  QPoly kl_entry(const Weight& mu, const Weight& lam) const;

  /// Weight multiplicity dim V_lam(mu) by the Freudenthal recursion;
  /// independent of kostant_q, used as an oracle for K(1).
  Int freudenthal_mult(const Weight& lam, const Weight& mu) const;

  const RootSystem& root_system() const { return rs_; }

 private:
  QPoly kostant_rec(size_t k, std::vector<int>& beta) const;
  uint64_t pack(const std::vector<int>& beta) const;

  const RootSystem& rs_;
  const WeylTable& weyl_;
  mutable std::mutex mu_;
  // memo_[k]: partitions using positive roots from index k on.
  mutable std::vector<std::unordered_map<uint64_t, QPoly>> memo_;
  mutable std::unordered_map<std::string, Int> freud_memo_;
};

}  // namespace precanon
