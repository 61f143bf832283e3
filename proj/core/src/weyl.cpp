#include "precanon/weyl.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace precanon {

namespace {

using Mat = std::vector<int16_t>;  // rank x rank row-major

Mat identity_mat(int n) {
  Mat m(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] = 1;
  return m;
}

// Matrix of s_i on fundamental-weight coordinates: (s_i x)_k = x_k - x_i C[k][i].
Mat gen_mat(const RootSystem& rs, int i) {
  const int n = rs.rank();
  Mat m = identity_mat(n);
  for (int k = 0; k < n; ++k)
    m[static_cast<size_t>(k) * n + i] -= static_cast<int16_t>(rs.cartan()[k][i]);
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b, int n) {
  Mat r(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const int16_t aik = a[static_cast<size_t>(i) * n + k];
      if (aik == 0) continue;
      for (int j = 0; j < n; ++j)
        r[static_cast<size_t>(i) * n + j] =
            static_cast<int16_t>(r[static_cast<size_t>(i) * n + j] +
                                 aik * b[static_cast<size_t>(k) * n + j]);
    }
  return r;
}

std::string order_estimate(const RootSystem& rs, size_t cap) {
  if (rs.family() == Family::A) {
    unsigned long long f = 1;
    for (int k = 2; k <= rs.rank() + 1; ++k) f *= static_cast<unsigned long long>(k);
    return std::to_string(f);
  }
  if (rs.family() == Family::D) {
    unsigned long long f = 1;
    for (int k = 2; k <= rs.rank(); ++k) f *= static_cast<unsigned long long>(k);
    f <<= (rs.rank() - 1);
    return std::to_string(f);
  }
  return "more than " + std::to_string(cap);
}

}  // namespace

WeylTable WeylTable::enumerate(const RootSystem& rs, size_t element_cap) {
  const int n = rs.rank();
  WeylTable t;
  t.rank_ = n;

  std::vector<Mat> gens;
  gens.reserve(n);
  for (int i = 0; i < n; ++i) gens.push_back(gen_mat(rs, i));

  std::map<Mat, size_t> ids;
  std::vector<Mat> mats;
  mats.push_back(identity_mat(n));
  ids.emplace(mats[0], 0);
  t.lengths_.push_back(0);

  for (size_t head = 0; head < mats.size(); ++head) {
    for (int i = 0; i < n; ++i) {
      Mat prod = mat_mul(gens[static_cast<size_t>(i)], mats[head], n);
      auto [it, inserted] = ids.emplace(std::move(prod), mats.size());
      if (inserted) {
        if (mats.size() >= element_cap) {
          throw DomainError("Weyl group too large to enumerate (order " +
                            order_estimate(rs, element_cap) + ", cap " +
                            std::to_string(element_cap) + ")");
        }
        mats.push_back(it->first);
        t.lengths_.push_back(t.lengths_[head] + 1);
      }
      t.left_gen_.push_back(static_cast<uint32_t>(it->second));
    }
  }

  // left_gen_ was appended in discovery order per (head, i); it is already
  // laid out as head * n + i because the inner loop runs i = 0..n-1.
  t.mats_.reserve(mats.size() * static_cast<size_t>(n) * n);
  for (const auto& m : mats) t.mats_.insert(t.mats_.end(), m.begin(), m.end());
  t.max_length_ = *std::max_element(t.lengths_.begin(), t.lengths_.end());
  return t;
}

Weight WeylTable::apply(size_t id, const Weight& lam) const {
  const int n = rank_;
  const int16_t* m = mats_.data() + id * static_cast<size_t>(n) * n;
  Weight out(std::vector<int>(static_cast<size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    long long s = 0;
    for (int j = 0; j < n; ++j) s += static_cast<long long>(m[i * n + j]) * lam.c[j];
    out.c[static_cast<size_t>(i)] = static_cast<int>(s);
  }
  return out;
}

Weight WeylTable::dot_act(size_t id, const Weight& lam) const {
  Weight shifted = lam;
  for (auto& v : shifted.c) v += 1;
  Weight out = apply(id, shifted);
  for (auto& v : out.c) v -= 1;
  return out;
}

QPoly WeylTable::poincare() const {
  std::vector<Int> coeffs(static_cast<size_t>(max_length_) + 1, Int(0));
  for (int l : lengths_) coeffs[static_cast<size_t>(l)] += 1;
  return QPoly(std::move(coeffs));
}

std::vector<Root> WeylTable::phi_minus(size_t id, const RootSystem& rs) const {
  std::vector<Root> out;
  for (const auto& alpha : rs.positive_roots()) {
    const Weight img = apply(id, rs.root_to_weight(alpha));
    if (rs.level(img) < 0) out.push_back(alpha);
  }
  return out;
}

namespace {

DominantRep walk_impl(const RootSystem& rs, const Weight& lam,
                      const std::function<size_t(const std::vector<int>&)>* picker) {
  const int n = rs.rank();
  std::vector<long long> nu(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) nu[static_cast<size_t>(i)] = lam.c[static_cast<size_t>(i)] + 1;

  int steps = 0;
  for (;;) {
    std::vector<int> neg;
    for (int i = 0; i < n; ++i)
      if (nu[static_cast<size_t>(i)] < 0) neg.push_back(i);
    if (neg.empty()) break;
    const int i = picker ? neg[(*picker)(neg)] : neg[0];
    const long long vi = nu[static_cast<size_t>(i)];
    for (int k = 0; k < n; ++k)
      nu[static_cast<size_t>(k)] -= vi * rs.cartan()[static_cast<size_t>(k)][static_cast<size_t>(i)];
    ++steps;
  }

  DominantRep rep;
  rep.length = steps;
  rep.sign = (steps % 2 == 0) ? 1 : -1;
  rep.regular = true;
  for (int i = 0; i < n; ++i) rep.regular = rep.regular && nu[static_cast<size_t>(i)] != 0;
  if (rep.regular) {
    std::vector<int> bar(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) bar[static_cast<size_t>(i)] = static_cast<int>(nu[static_cast<size_t>(i)]) - 1;
    rep.bar = Weight(std::move(bar));
  }
  return rep;
}

// Type A: lam + rho in epsilon coordinates is the suffix-sum sequence; sorting
// it descending is the chamber walk, inversions count the length.
DominantRep dominant_rep_type_a(const RootSystem& rs, const Weight& lam) {
  const int n = rs.rank();
  long long p[10];
  p[n] = 0;
  for (int k = n - 1; k >= 0; --k)
    p[k] = p[k + 1] + lam.c[static_cast<size_t>(k)] + 1;

  int inversions = 0;
  bool singular = false;
  for (int i = 1; i <= n && !singular; ++i) {
    const long long v = p[i];
    int j = i - 1;
    while (j >= 0 && p[j] < v) {
      p[j + 1] = p[j];
      --j;
      ++inversions;
    }
    if (j >= 0 && p[j] == v) singular = true;
    p[j + 1] = v;
  }

  DominantRep rep;
  rep.length = inversions;
  rep.sign = (inversions % 2 == 0) ? 1 : -1;
  rep.regular = !singular;
  if (!singular) {
    std::vector<int> bar(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
      bar[static_cast<size_t>(k)] = static_cast<int>(p[k] - p[k + 1]) - 1;
    rep.bar = Weight(std::move(bar));
  }
  return rep;
}

}  // namespace

DominantRep dominant_rep(const RootSystem& rs, const Weight& lam) {
  if (rs.family() == Family::A) return dominant_rep_type_a(rs, lam);
  return walk_impl(rs, lam, nullptr);
}

DominantRep dominant_rep_walk(const RootSystem& rs, const Weight& lam) {
  return walk_impl(rs, lam, nullptr);
}

DominantRep dominant_rep_walk_choose(
    const RootSystem& rs, const Weight& lam,
    const std::function<size_t(const std::vector<int>&)>& next_index) {
  return walk_impl(rs, lam, &next_index);
}

QPoly stabilizer_poincare(const RootSystem& rs, const Weight& lam, size_t element_cap) {
  if (!rs.is_dominant(lam))
    throw DomainError("stabilizer_poincare expects a dominant weight, got " + lam.to_string());
  const int n = rs.rank();
  std::vector<int> gens;
  for (int i = 0; i < n; ++i)
    if (lam.c[static_cast<size_t>(i)] == 0) gens.push_back(i);

  std::vector<Mat> gen_mats;
  gen_mats.reserve(gens.size());
  for (int i : gens) gen_mats.push_back(gen_mat(rs, i));

  // BFS over the parabolic subgroup; its word length in these generators
  // agrees with ambient Coxeter length.
  std::map<Mat, int> seen;
  std::vector<Mat> queue{identity_mat(n)};
  std::vector<int> lengths{0};
  seen.emplace(queue[0], 0);
  for (size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : gen_mats) {
      Mat prod = mat_mul(g, queue[head], n);
      if (seen.emplace(prod, 0).second) {
        if (queue.size() >= element_cap)
          throw DomainError("stabilizer subgroup too large to enumerate (cap " +
                            std::to_string(element_cap) + ")");
        queue.push_back(std::move(prod));
        lengths.push_back(lengths[head] + 1);
      }
    }
  }
  const int maxlen = *std::max_element(lengths.begin(), lengths.end());
  std::vector<Int> coeffs(static_cast<size_t>(maxlen) + 1, Int(0));
  for (int l : lengths) coeffs[static_cast<size_t>(l)] += 1;
  return QPoly(std::move(coeffs));
}

}  // namespace precanon
