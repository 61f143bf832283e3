#include "precanon/spherical.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace precanon {

namespace {

constexpr size_t kMOpSizeCap = 30;
constexpr size_t kTableEntryCap = 5000000;
constexpr size_t kPeelStepCap = 2000000;

}  // namespace

BasisId BasisId::precanon(const RootSystem& rs, int i) {
  if (i < 1) throw DomainError("pre-canonical level must be >= 1");
  if (i == 1) return std_basis();
  if (i >= rs.highest_root_height() + 1) return canon();
  return {Kind::PreCanon, i};
}

std::string BasisId::tag() const {
  switch (kind) {
    case Kind::Std: return "std";
    case Kind::Canon: return "canon";
    case Kind::PreCanon: return "precanon:" + std::to_string(level);
  }
  return "?";
}

SphElement::SphElement(const RootSystem& rs, BasisId basis,
                       std::vector<std::pair<Weight, QPoly>> terms)
    : basis_(basis) {
  terms_.reserve(terms.size());
  for (auto& [w, p] : terms) {
    if (p.is_zero()) continue;
    if (static_cast<int>(w.c.size()) != rs.rank())
      throw DomainError("term weight rank mismatch");
    if (!rs.is_dominant(w))
      throw DomainError("element term at non-dominant weight " + w.to_string());
    terms_.push_back(Term{w, rs.level(w), std::move(p)});
  }
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    if (a.lvl != b.lvl) return a.lvl > b.lvl;
    return a.weight < b.weight;
  });
  for (size_t k = 0; k + 1 < terms_.size(); ++k) {
    if (terms_[k].weight == terms_[k + 1].weight)
      throw DomainError("duplicate term weight " + terms_[k].weight.to_string());
  }
  for (size_t k = 1; k < terms_.size(); ++k) {
    if (!rs.same_coset(terms_[0].weight, terms_[k].weight))
      throw DomainError("element mixes root-lattice cosets");
  }
}

const QPoly* SphElement::coeff(const Weight& mu) const {
  for (const auto& t : terms_)
    if (t.weight == mu) return &t.coeff;
  return nullptr;
}

bool SphElement::operator==(const SphElement& o) const {
  if (basis_ != o.basis_ || terms_.size() != o.terms_.size()) return false;
  for (size_t k = 0; k < terms_.size(); ++k) {
    if (terms_[k].weight != o.terms_[k].weight || terms_[k].coeff != o.terms_[k].coeff)
      return false;
  }
  return true;
}

std::string SphElement::to_string() const {
  std::ostringstream out;
  out << basis_.tag() << "{";
  for (size_t k = 0; k < terms_.size(); ++k) {
    if (k) out << ", ";
    out << terms_[k].weight.to_string() << ": " << terms_[k].coeff.to_string();
  }
  out << "}";
  return out.str();
}

SphAlgebra::SphAlgebra(RootSystem rs) : rs_(std::move(rs)) {}

const WeylTable& SphAlgebra::weyl() {
  std::lock_guard<std::mutex> lock(init_mu_);
  if (!weyl_) weyl_ = std::make_unique<WeylTable>(WeylTable::enumerate(rs_));
  return *weyl_;
}

const KostkaTable& SphAlgebra::kostka() {
  std::lock_guard<std::mutex> lock(init_mu_);
  if (!weyl_) weyl_ = std::make_unique<WeylTable>(WeylTable::enumerate(rs_));
  if (!kostka_) kostka_ = std::make_unique<KostkaTable>(rs_, *weyl_);
  return *kostka_;
}

uint64_t SphAlgebra::pack_weight(const int* coords) const {
  uint64_t key = 0;
  for (int k = 0; k < rs_.rank(); ++k) {
    const int v = coords[k] + 128;
    if (v < 0 || v > 255)
      throw DomainError("weight coordinate out of packing range [-128,127]");
    key = (key << 8) | static_cast<uint64_t>(v);
  }
  return key;
}

Weight SphAlgebra::unpack_weight(uint64_t key) const {
  const int n = rs_.rank();
  std::vector<int> c(static_cast<size_t>(n));
  for (int k = n - 1; k >= 0; --k) {
    c[static_cast<size_t>(k)] = static_cast<int>(key & 0xff) - 128;
    key >>= 8;
  }
  return Weight(std::move(c));
}

namespace {

// Type A tilde-H: lam+rho in epsilon coordinates is the suffix-sum sequence;
// duplicates mean singular, inversions give the length, differences of the
// sorted sequence give the dominant representative.
bool tilde_fast_a(const int* arg, int n, int& sign, int* bar) {
  long long p[10];
  p[n] = 0;
  for (int k = n - 1; k >= 0; --k) p[k] = p[k + 1] + arg[k] + 1;
  int inv = 0;
  for (int i = 1; i <= n; ++i) {
    const long long v = p[i];
    int j = i - 1;
    while (j >= 0 && p[j] < v) {
      p[j + 1] = p[j];
      --j;
      ++inv;
    }
    if (j >= 0 && p[j] == v) return false;
    p[j + 1] = v;
  }
  for (int k = 0; k < n; ++k) bar[k] = static_cast<int>(p[k] - p[k + 1]) - 1;
  sign = (inv % 2 == 0) ? 1 : -1;
  return true;
}

// Generic chamber walk on lam + rho, reflecting the lowest negative coordinate.
bool tilde_walk(const RootSystem& rs, const int* arg, int n, int& sign, int* bar) {
  long long nu[8];
  for (int k = 0; k < n; ++k) nu[k] = arg[k] + 1;
  int steps = 0;
  for (;;) {
    int i = 0;
    while (i < n && nu[i] >= 0) ++i;
    if (i == n) break;
    const long long vi = nu[i];
    for (int k = 0; k < n; ++k)
      nu[k] -= vi * rs.cartan()[static_cast<size_t>(k)][static_cast<size_t>(i)];
    ++steps;
    if (steps > 100000) throw DomainError("tilde_H chamber walk did not terminate");
  }
  for (int k = 0; k < n; ++k) {
    if (nu[k] == 0) return false;
    bar[k] = static_cast<int>(nu[k]) - 1;
  }
  sign = (steps % 2 == 0) ? 1 : -1;
  return true;
}

}  // namespace

TildeH SphAlgebra::tilde_H(const Weight& mu) const {
  const int n = rs_.rank();
  int bar[8];
  int sign = 1;
  const bool regular = (rs_.family() == Family::A)
                           ? tilde_fast_a(mu.c.data(), n, sign, bar)
                           : tilde_walk(rs_, mu.c.data(), n, sign, bar);
  TildeH t;
  if (!regular) return t;
  t.zero = false;
  t.sign = sign;
  t.bar = Weight(std::vector<int>(bar, bar + n));
  return t;
}

SphElement SphAlgebra::m_op(const std::vector<Root>& a, const Weight& mu) const {
  if (a.size() > kMOpSizeCap)
    throw DomainError("m_op subset base larger than " + std::to_string(kMOpSizeCap) +
                      " roots refused (2^|A| subsets)");
  const int n = rs_.rank();
  // Fundamental coordinates of each root once; Gray-code walk of all subsets.
  std::vector<std::array<int, 8>> fw(a.size());
  for (size_t t = 0; t < a.size(); ++t) {
    const Weight w = rs_.root_to_weight(a[t]);
    for (int k = 0; k < n; ++k) fw[t][static_cast<size_t>(k)] = w.c[static_cast<size_t>(k)];
  }

  std::unordered_map<uint64_t, QPoly> acc;
  int arg[8];
  int bar[8];
  long long run[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  uint64_t members = 0;
  const uint64_t total = uint64_t(1) << a.size();
  for (uint64_t j = 0;; ++j) {
    // current subset: running sum in run[], popcount of members
    const int size = std::popcount(members);
    for (int k = 0; k < n; ++k) arg[k] = mu.c[static_cast<size_t>(k)] - static_cast<int>(run[k]);
    int sign = 1;
    const bool regular = (rs_.family() == Family::A)
                             ? tilde_fast_a(arg, n, sign, bar)
                             : tilde_walk(rs_, arg, n, sign, bar);
    if (regular) {
      const int total_sign = ((size % 2 == 0) ? 1 : -1) * sign;
      acc[pack_weight(bar)].add_scaled(QPoly(1), Int(total_sign), size);
    }
    if (j + 1 == total) break;
    const int flip = std::countr_zero(j + 1);
    const uint64_t bit = uint64_t(1) << flip;
    const int dir = (members & bit) ? -1 : 1;
    members ^= bit;
    for (int k = 0; k < n; ++k) run[k] += dir * fw[static_cast<size_t>(flip)][static_cast<size_t>(k)];
  }
  return from_accum(BasisId::canon(), std::move(acc));
}

SphElement SphAlgebra::from_accum(BasisId basis,
                                  std::unordered_map<uint64_t, QPoly>&& acc) const {
  std::vector<std::pair<Weight, QPoly>> terms;
  terms.reserve(acc.size());
  for (auto& [key, poly] : acc) {
    if (poly.is_zero()) continue;
    terms.emplace_back(unpack_weight(key), std::move(poly));
  }
  return SphElement(rs_, basis, std::move(terms));
}

const std::vector<SphAlgebra::TableEntry>& SphAlgebra::subset_table(int i) {
  std::lock_guard<std::mutex> lock(table_mu_);
  if (auto it = tables_.find(i); it != tables_.end()) return it->second;

  const int n = rs_.rank();
  const auto roots = rs_.phi_geq(i);
  // 0/1 knapsack over the roots: table(sigma) = sum over subsets I of
  // Phi^(>=i) with Sigma_I = sigma of (-q)^|I|.  Offsets kept in fundamental
  // coordinates (the Cartan matrix is injective, so sums stay distinct).
  std::unordered_map<uint64_t, QPoly> table;
  int zero[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  table.emplace(pack_weight(zero), QPoly(1));
  std::vector<std::pair<uint64_t, QPoly>> snapshot;
  for (const auto& root : roots) {
    const Weight f = rs_.root_to_weight(root);
    snapshot.assign(table.begin(), table.end());
    for (const auto& [key, poly] : snapshot) {
      Weight off = unpack_weight(key);
      for (int k = 0; k < n; ++k) off.c[static_cast<size_t>(k)] += f.c[static_cast<size_t>(k)];
      table[pack_weight(off.c.data())].add_scaled(poly, Int(-1), 1);
    }
    if (table.size() > kTableEntryCap)
      throw DomainError("subset-sum table for level " + std::to_string(i) +
                        " exceeds entry cap");
  }

  std::vector<TableEntry> entries;
  entries.reserve(table.size());
  for (auto& [key, poly] : table) {
    if (poly.is_zero()) continue;
    TableEntry e;
    const Weight w = unpack_weight(key);
    e.offset.fill(0);
    for (int k = 0; k < n; ++k) e.offset[static_cast<size_t>(k)] = w.c[static_cast<size_t>(k)];
    e.poly = std::move(poly);
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(),
            [](const TableEntry& a, const TableEntry& b) { return a.offset < b.offset; });
  return tables_.emplace(i, std::move(entries)).first->second;
}

void SphAlgebra::accumulate_table(std::unordered_map<uint64_t, QPoly>& acc,
                                  const std::vector<TableEntry>& table, const Weight& mu,
                                  int sign, int shift) const {
  const int n = rs_.rank();
  const bool type_a = rs_.family() == Family::A;
  int arg[8];
  int bar[8];
  for (const auto& e : table) {
    for (int k = 0; k < n; ++k) arg[k] = mu.c[static_cast<size_t>(k)] - e.offset[static_cast<size_t>(k)];
    int tsign = 1;
    const bool regular =
        type_a ? tilde_fast_a(arg, n, tsign, bar) : tilde_walk(rs_, arg, n, tsign, bar);
    if (!regular) continue;
    acc[pack_weight(bar)].add_scaled(e.poly, Int(sign * tsign), shift);
  }
}

const QPoly& SphAlgebra::stabilizer_poincare_cached(const Weight& lam) {
  uint32_t mask = 0;
  for (int k = 0; k < rs_.rank(); ++k)
    if (lam.c[static_cast<size_t>(k)] == 0) mask |= (uint32_t(1) << k);
  {
    std::lock_guard<std::mutex> lock(poincare_mu_);
    if (auto it = poincare_cache_.find(mask); it != poincare_cache_.end()) return it->second;
  }
  QPoly p = stabilizer_poincare(rs_, lam);
  std::lock_guard<std::mutex> lock(poincare_mu_);
  return poincare_cache_.emplace(mask, std::move(p)).first->second;
}

SphElement SphAlgebra::compute_precanonical(const Weight& lam, int i) {
  const int n = rs_.rank();
  const int m = rs_.highest_root_height();
  if (i >= m + 1) {
    std::vector<std::pair<Weight, QPoly>> one{{lam, QPoly(1)}};
    return SphElement(rs_, BasisId::canon(), std::move(one));
  }
  std::unordered_map<uint64_t, QPoly> acc;
  if (i >= 2) {
    accumulate_table(acc, subset_table(i), lam, 1, 0);
    return from_accum(BasisId::canon(), std::move(acc));
  }
  // Level 1: Phi+ = simple roots ⊔ Phi^(>=2), so the signed subset sum over
  // Phi+ factorizes through the level-2 table; then divide by the stabilizer
  // Poincare polynomial.
  const auto& t2 = subset_table(2);
  const uint64_t total = uint64_t(1) << n;
  for (uint64_t j = 0; j < total; ++j) {
    Weight shifted = lam;
    int size = 0;
    for (int k = 0; k < n; ++k) {
      if (j & (uint64_t(1) << k)) {
        ++size;
        for (int t = 0; t < n; ++t)
          shifted.c[static_cast<size_t>(t)] -= rs_.cartan()[static_cast<size_t>(t)][static_cast<size_t>(k)];
      }
    }
    accumulate_table(acc, t2, shifted, (size % 2 == 0) ? 1 : -1, size);
  }
  const QPoly& pi = stabilizer_poincare_cached(lam);
  std::vector<std::pair<Weight, QPoly>> terms;
  terms.reserve(acc.size());
  for (auto& [key, poly] : acc) {
    if (poly.is_zero()) continue;
    terms.emplace_back(unpack_weight(key), QPoly::exact_div(poly, pi));
  }
  return SphElement(rs_, BasisId::canon(), std::move(terms));
}

const SphElement& SphAlgebra::precanonical(const Weight& lam, int i) {
  if (!rs_.is_dominant(lam))
    throw DomainError("precanonical expects a dominant weight, got " + lam.to_string());
  if (i < 1) throw DomainError("pre-canonical level must be >= 1");
  const int m = rs_.highest_root_height();
  const int level = std::min(i, m + 1);
  const uint64_t key = pack_weight(lam.c.data());
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto& per_level = precanon_cache_[level];
    if (auto it = per_level.find(key); it != per_level.end()) return *it->second;
  }
  auto computed = std::make_shared<const SphElement>(compute_precanonical(lam, level));
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto& per_level = precanon_cache_[level];
  return *per_level.emplace(key, std::move(computed)).first->second;
}

SphElement SphAlgebra::canon_to_std(const SphElement& e) {
  if (e.basis() != BasisId::canon())
    throw DomainError("canon_to_std expects canonical coordinates");
  const KostkaTable& kt = kostka();
  std::map<Weight, QPoly> acc;
  for (const auto& term : e.terms()) {
    for (const auto& mu : rs_.dominant_below(term.weight)) {
      const QPoly entry = kt.kl_entry(mu, term.weight);
      if (entry.is_zero()) continue;
      acc[mu] += term.coeff * entry;
    }
  }
  std::vector<std::pair<Weight, QPoly>> terms(acc.begin(), acc.end());
  return SphElement(rs_, BasisId::std_basis(), std::move(terms));
}

SphElement SphAlgebra::std_to_canon(const SphElement& e) {
  if (e.basis() != BasisId::std_basis())
    throw DomainError("std_to_canon expects standard coordinates");
  const KostkaTable& kt = kostka();
  // Remainder keyed by (descending height, lex); peel the top term against
  // the canonical basis element's Kostka row.
  auto cmp = [this](const Weight& a, const Weight& b) {
    const long long la = rs_.level(a), lb = rs_.level(b);
    if (la != lb) return la > lb;
    return a < b;
  };
  std::map<Weight, QPoly, decltype(cmp)> rem(cmp);
  for (const auto& t : e.terms()) rem[t.weight] = t.coeff;

  std::vector<std::pair<Weight, QPoly>> out;
  size_t steps = 0;
  while (!rem.empty()) {
    if (++steps > kPeelStepCap) throw DomainError("std_to_canon peel exceeded step cap");
    auto top = rem.begin();
    const Weight mu = top->first;
    const QPoly c = top->second;
    rem.erase(top);
    if (c.is_zero()) continue;
    out.emplace_back(mu, c);
    for (const auto& nu : rs_.dominant_below(mu)) {
      if (nu == mu) continue;
      const QPoly entry = kt.kl_entry(nu, mu);
      if (entry.is_zero()) continue;
      auto& slot = rem[nu];
      slot -= c * entry;
      if (slot.is_zero()) rem.erase(nu);
    }
  }
  return SphElement(rs_, BasisId::canon(), std::move(out));
}

SphElement SphAlgebra::expand_in_precanonical(const SphElement& e, int i) {
  if (e.basis() != BasisId::canon())
    throw DomainError("expand_in_precanonical expects canonical coordinates");
  auto cmp = [this](const Weight& a, const Weight& b) {
    const long long la = rs_.level(a), lb = rs_.level(b);
    if (la != lb) return la > lb;
    return a < b;
  };
  std::map<Weight, QPoly, decltype(cmp)> rem(cmp);
  for (const auto& t : e.terms()) rem[t.weight] = t.coeff;

  std::vector<std::pair<Weight, QPoly>> out;
  size_t steps = 0;
  while (!rem.empty()) {
    if (++steps > kPeelStepCap)
      throw DomainError("expand_in_precanonical peel exceeded step cap");
    auto top = rem.begin();
    const Weight mu = top->first;
    const QPoly c = top->second;
    rem.erase(top);
    if (c.is_zero()) continue;
    out.emplace_back(mu, c);
    const SphElement& basis_elt = precanonical(mu, i);
    // Leading coefficient of the family element at mu is 1.
    for (const auto& t : basis_elt.terms()) {
      if (t.weight == mu) continue;
      auto& slot = rem[t.weight];
      slot -= c * t.coeff;
      if (slot.is_zero()) rem.erase(t.weight);
    }
  }
  return SphElement(rs_, BasisId::precanon(rs_, i), std::move(out));
}

SphElement SphAlgebra::transition(const Weight& lam, int i) {
  const int m = rs_.highest_root_height();
  if (i < 1 || i > m)
    throw DomainError("transition level must satisfy 1 <= i <= " + std::to_string(m) +
                      " (level " + std::to_string(m + 1) + " is the top basis)");
  return expand_in_precanonical(precanonical(lam, i + 1), i);
}

SphElement SphAlgebra::atomic_decomposition(const Weight& lam) {
  std::vector<std::pair<Weight, QPoly>> one{{lam, QPoly(1)}};
  return expand_in_precanonical(SphElement(rs_, BasisId::canon(), std::move(one)), 2);
}

SphElement SphAlgebra::n_basis_std(const Weight& lam) {
  if (!rs_.is_dominant(lam))
    throw DomainError("n_basis_std expects a dominant weight");
  std::vector<std::pair<Weight, QPoly>> terms;
  for (const auto& mu : rs_.dominant_below(lam)) {
    terms.emplace_back(mu, QPoly::monomial(1, rs_.height_diff(lam, mu)));
  }
  return SphElement(rs_, BasisId::std_basis(), std::move(terms));
}

}  // namespace precanon
