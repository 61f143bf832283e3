#include "precanon/rootsys.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace precanon {

namespace {

std::string vec_to_string(const std::vector<int>& v) {
  std::ostringstream out;
  out << "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out << ",";
    out << v[i];
  }
  out << "]";
  return out.str();
}

// Fraction-free Gaussian elimination determinant; inputs are tiny (rank <= 8).
long long det_ll(std::vector<std::vector<long long>> a) {
  const size_t n = a.size();
  long long sign = 1;
  long long prev = 1;
  for (size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

constexpr int kRankCap = 8;
constexpr size_t kClosureCountCap = 10000;
constexpr int kClosureHeightCap = 100;
constexpr long long kLeqiNodeCap = 10000000;

}  // namespace

Root::Root(std::vector<int> coords) : c(std::move(coords)) {
  height = std::accumulate(c.begin(), c.end(), 0);
}

std::string Weight::to_string() const { return vec_to_string(c); }
std::string Root::to_string() const { return vec_to_string(c); }

std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::D: return "D";
    case Family::Custom: return "custom";
  }
  return "?";
}

RootSystem RootSystem::build(Family f, int rank) {
  if (f == Family::Custom) throw DomainError("use RootSystem::custom for custom Cartan matrices");
  if (rank < 1 || rank > kRankCap)
    throw DomainError("rank " + std::to_string(rank) + " outside supported range 1.." +
                      std::to_string(kRankCap));
  if (f == Family::D && rank < 4) throw DomainError("family D requires rank >= 4");

  std::vector<std::vector<int>> c(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i) c[i][i] = 2;
  auto connect = [&](int i, int j) { c[i][j] = c[j][i] = -1; };
  if (f == Family::A) {
    for (int i = 0; i + 1 < rank; ++i) connect(i, i + 1);
  } else {  // D, rank >= 4: path 0..rank-3 with both tail nodes on rank-3.
    for (int i = 0; i + 1 < rank - 2; ++i) connect(i, i + 1);
    connect(rank - 3, rank - 2);
    connect(rank - 3, rank - 1);
  }
  RootSystem rs;
  rs.family_ = f;
  rs.rank_ = rank;
  rs.cartan_ = std::move(c);
  rs.finish_build();
  return rs;
}

RootSystem RootSystem::custom(std::vector<std::vector<int>> cartan) {
  const int n = static_cast<int>(cartan.size());
  if (n < 1 || n > kRankCap)
    throw DomainError("custom Cartan matrix rank outside supported range 1.." +
                      std::to_string(kRankCap));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(cartan[i].size()) != n)
      throw DomainError("custom Cartan matrix is not square");
    if (cartan[i][i] != 2) throw DomainError("custom Cartan matrix needs 2 on the diagonal");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (cartan[i][j] != 0 && cartan[i][j] != -1)
        throw DomainError("custom Cartan matrix must be simply-laced (off-diagonal 0 or -1)");
      if (cartan[i][j] != cartan[j][i])
        throw DomainError("custom Cartan matrix must be symmetric");
    }
  }
  RootSystem rs;
  rs.family_ = Family::Custom;
  rs.rank_ = n;
  rs.cartan_ = std::move(cartan);
  rs.finish_build();
  return rs;
}

void RootSystem::finish_build() {
  const int n = rank_;

  // Positive-root closure: in the simply-laced case beta + alpha_i is a root
  // exactly when <beta, alpha_i^v> < 0, and that rule reaches every positive
  // root.  Unbounded growth means the matrix is not of finite type.
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(std::move(e));
  }
  for (size_t head = 0; head < queue.size(); ++head) {
    const std::vector<int> beta = queue[head];
    const int ht = std::accumulate(beta.begin(), beta.end(), 0);
    if (ht > kClosureHeightCap || seen.size() > kClosureCountCap)
      throw DomainError("Cartan matrix is not of finite type (root closure diverges)");
    for (int i = 0; i < n; ++i) {
      long long pair = 0;
      for (int j = 0; j < n; ++j) pair += static_cast<long long>(cartan_[i][j]) * beta[j];
      if (pair < 0) {
        std::vector<int> next = beta;
        next[i] += 1;
        if (seen.insert(next).second) queue.push_back(std::move(next));
      }
    }
  }
  pos_.clear();
  pos_.reserve(seen.size());
  for (const auto& v : seen) pos_.emplace_back(v);
  std::sort(pos_.begin(), pos_.end());
  m_ = pos_.back().height;

  pos_w_.clear();
  pos_w_.reserve(pos_.size());
  for (const auto& r : pos_) pos_w_.push_back(root_to_weight(r));

  height_offset_.assign(static_cast<size_t>(m_) + 2, pos_.size());
  for (size_t k = pos_.size(); k-- > 0;) {
    height_offset_[static_cast<size_t>(pos_[k].height)] = k;
  }
  for (size_t h = m_; h-- > 1;) {
    height_offset_[h] = std::min(height_offset_[h], height_offset_[h + 1]);
  }

  // Adjugate by cofactors; det(C) > 0 for finite type.
  std::vector<std::vector<long long>> cll(n, std::vector<long long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cll[i][j] = cartan_[i][j];
  det_ = det_ll(cll);
  if (det_ <= 0) throw DomainError("Cartan matrix is not of finite type (determinant <= 0)");
  adj_.assign(n, std::vector<long long>(n, 0));
  if (n == 1) {
    adj_[0][0] = 1;
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        std::vector<std::vector<long long>> minor;
        minor.reserve(static_cast<size_t>(n) - 1);
        for (int r = 0; r < n; ++r) {
          if (r == j) continue;  // adjugate = transposed cofactors
          std::vector<long long> row;
          row.reserve(static_cast<size_t>(n) - 1);
          for (int cix = 0; cix < n; ++cix) {
            if (cix == i) continue;
            row.push_back(cll[r][cix]);
          }
          minor.push_back(std::move(row));
        }
        const long long sign = ((i + j) % 2 == 0) ? 1 : -1;
        adj_[i][j] = sign * det_ll(std::move(minor));
      }
    }
  }
}

std::span<const Root> RootSystem::phi_geq(int i) const {
  if (i <= 1) return {pos_.data(), pos_.size()};
  if (i > m_) return {};
  const size_t from = height_offset_[static_cast<size_t>(i)];
  return {pos_.data() + from, pos_.size() - from};
}

std::vector<Root> RootSystem::phi_exact(int i) const {
  std::vector<Root> out;
  for (const auto& r : pos_)
    if (r.height == i) out.push_back(r);
  return out;
}

Weight RootSystem::root_to_weight(const Root& r) const {
  std::vector<int> w(rank_, 0);
  for (int i = 0; i < rank_; ++i) {
    long long s = 0;
    for (int j = 0; j < rank_; ++j) s += static_cast<long long>(cartan_[i][j]) * r.c[j];
    w[i] = static_cast<int>(s);
  }
  return Weight(std::move(w));
}

long long RootSystem::pairing(const Weight& lam, const Root& alpha) const {
  long long s = 0;
  for (int j = 0; j < rank_; ++j) s += static_cast<long long>(lam.c[j]) * alpha.c[j];
  return s;
}

bool RootSystem::is_dominant(const Weight& w) const {
  for (int x : w.c)
    if (x < 0) return false;
  return true;
}

Weight RootSystem::rho() const { return Weight(std::vector<int>(rank_, 1)); }

Weight RootSystem::reflect(const Weight& w, int i) const {
  Weight r = w;
  const int wi = w.c[static_cast<size_t>(i)];
  for (int k = 0; k < rank_; ++k) r.c[k] -= wi * cartan_[k][i];
  return r;
}

Weight RootSystem::dot_reflect(const Weight& w, int i) const {
  // s_i . w = s_i(w + rho) - rho; in coordinates the shift only changes w_i to w_i + 1.
  Weight r = w;
  const int wi = w.c[static_cast<size_t>(i)] + 1;
  for (int k = 0; k < rank_; ++k) r.c[k] -= wi * cartan_[k][i];
  return r;
}

std::optional<std::vector<long long>> RootSystem::dominance_diff(const Weight& lam,
                                                                 const Weight& mu) const {
  std::vector<long long> x(rank_, 0);
  for (int i = 0; i < rank_; ++i) {
    long long y = 0;
    for (int j = 0; j < rank_; ++j)
      y += adj_[i][j] * static_cast<long long>(lam.c[j] - mu.c[j]);
    if (y < 0 || y % det_ != 0) return std::nullopt;
    x[i] = y / det_;
  }
  return x;
}

bool RootSystem::dominance_leq(const Weight& mu, const Weight& lam) const {
  return dominance_diff(lam, mu).has_value();
}

bool RootSystem::same_coset(const Weight& lam, const Weight& mu) const {
  for (int i = 0; i < rank_; ++i) {
    long long y = 0;
    for (int j = 0; j < rank_; ++j)
      y += adj_[i][j] * static_cast<long long>(lam.c[j] - mu.c[j]);
    if (y % det_ != 0) return false;
  }
  return true;
}

std::optional<std::vector<long long>> RootSystem::leq_i(const Weight& mu, const Weight& lam,
                                                        int i) const {
  if (i < 1 || i > m_) throw DomainError("leq_i level outside 1..m");
  // Root coordinates of lam - mu must be integral.
  std::vector<long long> r(rank_, 0);
  for (int a = 0; a < rank_; ++a) {
    long long y = 0;
    for (int j = 0; j < rank_; ++j)
      y += adj_[a][j] * static_cast<long long>(lam.c[j] - mu.c[j]);
    if (y % det_ != 0) return std::nullopt;
    r[a] = y / det_;
  }
  const std::vector<Root> phi = phi_exact(i);
  if (family_ == Family::A) {
    // gamma_j = alpha_j + .. + alpha_(j+i-1) are linearly independent; solve by
    // sweeping a window sum left to right.
    const int big_j = rank_ - i + 1;  // number of height-i roots
    std::vector<long long> mlt(std::max(big_j, 0), 0);
    long long window = 0;  // sum of m_j over the window covering coordinate k
    for (int k = 0; k < rank_; ++k) {
      if (k - i >= 0 && k - i < big_j) window -= mlt[static_cast<size_t>(k - i)];
      if (k < big_j) {
        mlt[static_cast<size_t>(k)] = r[static_cast<size_t>(k)] - window;
        if (mlt[static_cast<size_t>(k)] < 0) return std::nullopt;
        window += mlt[static_cast<size_t>(k)];
      } else if (r[static_cast<size_t>(k)] != window) {
        return std::nullopt;
      }
    }
    if (big_j <= 0) {
      for (long long v : r)
        if (v != 0) return std::nullopt;
      return std::vector<long long>{};
    }
    // Window order starts at alpha_1..; phi_exact sorts lex, which reverses it.
    std::reverse(mlt.begin(), mlt.end());
    return mlt;
  }
  // Generic: bounded depth-first search over multiplicities.
  std::vector<long long> mlt(phi.size(), 0);
  long long nodes = 0;
  std::vector<long long> rem = r;
  auto all_zero = [&]() {
    for (long long v : rem)
      if (v != 0) return false;
    return true;
  };
  std::function<bool(size_t)> dfs = [&](size_t t) -> bool {
    if (++nodes > kLeqiNodeCap) throw DomainError("leq_i search cap exceeded");
    if (t == phi.size()) return all_zero();
    long long cap = -1;
    for (int a = 0; a < rank_; ++a) {
      if (phi[t].c[a] == 0) continue;
      const long long q = rem[a] / phi[t].c[a];
      cap = (cap < 0) ? q : std::min(cap, q);
    }
    if (cap < 0) cap = 0;
    for (long long take = cap; take >= 0; --take) {
      for (int a = 0; a < rank_; ++a) rem[a] -= take * phi[t].c[a];
      bool neg = false;
      for (int a = 0; a < rank_; ++a) neg = neg || rem[a] < 0;
      if (!neg) {
        mlt[t] = take;
        if (dfs(t + 1)) return true;
      }
      for (int a = 0; a < rank_; ++a) rem[a] += take * phi[t].c[a];
    }
    return false;
  };
  if (dfs(0)) return mlt;
  return std::nullopt;
}

long long RootSystem::level(const Weight& w) const {
  long long s = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) s += adj_[i][j] * static_cast<long long>(w.c[j]);
  return s;
}

int RootSystem::height_diff(const Weight& lam, const Weight& mu) const {
  // Solve for the root coordinates of lam - mu; every one must be integral
  // (total-level divisibility alone would miss some cross-coset pairs).
  long long total = 0;
  for (int a = 0; a < rank_; ++a) {
    long long y = 0;
    for (int j = 0; j < rank_; ++j)
      y += adj_[a][j] * static_cast<long long>(lam.c[j] - mu.c[j]);
    if (y % det_ != 0)
      throw DomainError("height_diff: weights " + lam.to_string() + " and " + mu.to_string() +
                        " lie in different root-lattice cosets");
    total += y / det_;
  }
  return static_cast<int>(total);
}

std::vector<Weight> RootSystem::dominant_below(const Weight& lam) const {
  // mu = lam - C x with x in the box 0 <= x <= C^(-1) lam.
  std::vector<long long> bound(rank_, 0);
  for (int i = 0; i < rank_; ++i) {
    long long y = 0;
    for (int j = 0; j < rank_; ++j) y += adj_[i][j] * static_cast<long long>(lam.c[j]);
    if (y < 0) return {};  // lam not dominant-comparable to anything below
    bound[i] = y / det_;
  }
  std::vector<std::pair<std::pair<int, Weight>, Weight>> found;  // ((ht, mu), mu)
  std::vector<long long> x(rank_, 0);
  std::function<void(int)> scan = [&](int pos) {
    if (pos == rank_) {
      Weight mu = lam;
      long long ht = 0;
      for (int i = 0; i < rank_; ++i) {
        ht += x[i];
        long long v = mu.c[i];
        for (int j = 0; j < rank_; ++j) v -= static_cast<long long>(cartan_[i][j]) * x[j];
        if (v < 0) return;
        mu.c[i] = static_cast<int>(v);
      }
      found.push_back({{static_cast<int>(ht), mu}, mu});
      return;
    }
    for (long long v = 0; v <= bound[pos]; ++v) {
      x[pos] = v;
      scan(pos + 1);
    }
    x[pos] = 0;
  };
  scan(0);
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Weight> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

std::vector<Weight> RootSystem::dominant_box(int bound) const {
  std::vector<Weight> out;
  std::vector<int> cur(rank_, 0);
  std::function<void(int)> scan = [&](int pos) {
    if (pos == rank_) {
      out.push_back(Weight(cur));
      return;
    }
    for (int v = 0; v <= bound; ++v) {
      cur[pos] = v;
      scan(pos + 1);
    }
    cur[pos] = 0;
  };
  scan(0);
  return out;
}

Weight RootSystem::add(const Weight& a, const Weight& b) const {
  Weight r = a;
  for (int i = 0; i < rank_; ++i) r.c[i] += b.c[i];
  return r;
}

Weight RootSystem::sub(const Weight& a, const Weight& b) const {
  Weight r = a;
  for (int i = 0; i < rank_; ++i) r.c[i] -= b.c[i];
  return r;
}

Weight RootSystem::sub_root(const Weight& lam, const std::vector<int>& root_coords) const {
  Weight r = lam;
  for (int i = 0; i < rank_; ++i) {
    long long s = 0;
    for (int j = 0; j < rank_; ++j)
      s += static_cast<long long>(cartan_[i][j]) * root_coords[j];
    r.c[i] -= static_cast<int>(s);
  }
  return r;
}

}  // namespace precanon
