#include "precanon/kostka.hpp"

#include <algorithm>

namespace precanon {

namespace {

// Dominant representative under the plain (non-dot) action.
Weight plain_dominant(const RootSystem& rs, Weight w) {
  const int n = rs.rank();
  for (long long guard = 0;; ++guard) {
    if (guard > 1000000) throw DomainError("plain_dominant walk did not terminate");
    int i = 0;
    while (i < n && w.c[static_cast<size_t>(i)] >= 0) ++i;
    if (i == n) return w;
    const int wi = w.c[static_cast<size_t>(i)];
    for (int k = 0; k < n; ++k) w.c[static_cast<size_t>(k)] -= wi * rs.cartan()[static_cast<size_t>(k)][static_cast<size_t>(i)];
  }
}

std::string weight_key(const Weight& w) {
  std::string s;
  s.reserve(w.c.size() * 4);
  for (int v : w.c) {
    s += std::to_string(v);
    s += ',';
  }
  return s;
}

}  // namespace

KostkaTable::KostkaTable(const RootSystem& rs, const WeylTable& weyl)
    : rs_(rs), weyl_(weyl) {
  memo_.resize(rs.positive_roots().size() + 1);
}

uint64_t KostkaTable::pack(const std::vector<int>& beta) const {
  uint64_t key = 0;
  for (int v : beta) {
    if (v < 0 || v > 255) throw DomainError("kostant_q argument coordinate out of packing range");
    key = (key << 8) | static_cast<uint64_t>(v);
  }
  return key;
}

QPoly KostkaTable::kostant_rec(size_t k, std::vector<int>& beta) const {
  bool zero = true;
  for (int v : beta) zero = zero && v == 0;
  if (zero) return QPoly(1);
  const auto& roots = rs_.positive_roots();
  if (k == roots.size()) return QPoly();

  const uint64_t key = pack(beta);
  auto& memo = memo_[k];
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  // Take t copies of root k, recurse on the rest of the (height, lex) list.
  const auto& alpha = roots[k].c;
  const int n = rs_.rank();
  long long cap = -1;
  for (int a = 0; a < n; ++a) {
    if (alpha[static_cast<size_t>(a)] == 0) continue;
    const long long q = beta[static_cast<size_t>(a)] / alpha[static_cast<size_t>(a)];
    cap = (cap < 0) ? q : std::min(cap, q);
  }
  if (cap < 0) cap = 0;
  QPoly acc;
  for (long long t = 0; t <= cap; ++t) {
    if (t > 0)
      for (int a = 0; a < n; ++a) beta[static_cast<size_t>(a)] -= alpha[static_cast<size_t>(a)];
    acc.add_scaled(kostant_rec(k + 1, beta), Int(1), static_cast<int>(t));
  }
  for (int a = 0; a < n; ++a) beta[static_cast<size_t>(a)] += static_cast<int>(cap) * alpha[static_cast<size_t>(a)];

  auto [it, ok] = memo.emplace(key, std::move(acc));
  (void)ok;
  return it->second;
}

QPoly KostkaTable::kostant_q(const std::vector<long long>& beta) const {
  std::vector<int> b(rs_.rank());
  for (int a = 0; a < rs_.rank(); ++a) {
    if (beta[static_cast<size_t>(a)] < 0) return QPoly();
    b[static_cast<size_t>(a)] = static_cast<int>(beta[static_cast<size_t>(a)]);
  }
  std::lock_guard<std::mutex> lock(mu_);
  return kostant_rec(0, b);
}

QPoly KostkaTable::kostka_foulkes(const Weight& lam, const Weight& mu) const {
  if (!rs_.is_dominant(lam) || !rs_.is_dominant(mu))
    throw DomainError("kostka_foulkes expects dominant weights");
  if (!rs_.same_coset(lam, mu)) return QPoly();

  const int n = rs_.rank();
  Weight lam_rho = lam;
  for (auto& v : lam_rho.c) v += 1;

  QPoly acc;
  for (size_t w = 0; w < weyl_.size(); ++w) {
    const Weight img = weyl_.apply(w, lam_rho);
    // argument of the partition function: w(lam+rho) - (mu+rho), root coords
    std::vector<long long> arg(static_cast<size_t>(n));
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      long long y = 0;
      for (int j = 0; j < n; ++j)
        y += rs_.adjugate_entry(i, j) *
             static_cast<long long>(img.c[static_cast<size_t>(j)] - mu.c[static_cast<size_t>(j)] - 1);
      if (y < 0 || y % rs_.det() != 0) ok = false;
      else arg[static_cast<size_t>(i)] = y / rs_.det();
    }
    if (!ok) continue;
    const Int sign = (weyl_.length(w) % 2 == 0) ? 1 : -1;
    acc.add_scaled(kostant_q(arg), sign, 0);
  }
  return acc;
}

QPoly KostkaTable::kl_entry(const Weight& mu, const Weight& lam) const {
  if (mu == lam) return QPoly(1);
  if (!rs_.dominance_leq(mu, lam)) return QPoly();
  return kostka_foulkes(lam, mu);
}

Int KostkaTable::freudenthal_mult(const Weight& lam, const Weight& mu) const {
  if (!rs_.is_dominant(lam)) throw DomainError("freudenthal_mult expects dominant lam");
  if (!rs_.same_coset(lam, mu)) return 0;
  const Weight dom = plain_dominant(rs_, mu);
  if (!rs_.dominance_leq(dom, lam)) return 0;
  if (dom == lam) return 1;

  const std::string key = weight_key(lam) + "|" + weight_key(dom);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = freud_memo_.find(key); it != freud_memo_.end()) return it->second;
  }

  const int n = rs_.rank();
  // det-scaled inner product on fundamental coordinates: x^T adj(C) y.
  auto sform = [&](const std::vector<long long>& x, const std::vector<long long>& y) {
    long long s = 0;
    for (int i = 0; i < n; ++i) {
      long long row = 0;
      for (int j = 0; j < n; ++j) row += rs_.adjugate_entry(i, j) * y[static_cast<size_t>(j)];
      s += x[static_cast<size_t>(i)] * row;
    }
    return s;
  };
  auto to_ll = [&](const Weight& w, int shift) {
    std::vector<long long> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = w.c[static_cast<size_t>(i)] + shift;
    return v;
  };

  const auto lr = to_ll(lam, 1);
  const auto mr = to_ll(dom, 1);
  const long long denom = sform(lr, lr) - sform(mr, mr);
  if (denom <= 0) throw DomainError("freudenthal denominator not positive");

  Int num = 0;
  for (const auto& alpha : rs_.positive_roots()) {
    const Weight aw = rs_.root_to_weight(alpha);
    const auto av = to_ll(aw, 0);
    for (long long k = 1;; ++k) {
      Weight shifted = dom;
      for (int i = 0; i < n; ++i)
        shifted.c[static_cast<size_t>(i)] += static_cast<int>(k) * aw.c[static_cast<size_t>(i)];
      if (rs_.level(shifted) > rs_.level(lam)) break;
      const Int mult = freudenthal_mult(lam, shifted);
      if (mult != 0) {
        const long long pairing = sform(to_ll(shifted, 0), av);
        num += mult * Int(pairing);
      }
    }
  }
  num *= 2;
  if (num % Int(denom) != 0) throw DomainError("freudenthal division not exact");
  const Int result = num / Int(denom);
  {
    std::lock_guard<std::mutex> lock(mu_);
    freud_memo_.emplace(key, result);
  }
  return result;
}

}  // namespace precanon
