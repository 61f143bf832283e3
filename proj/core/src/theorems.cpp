#include "precanon/theorems.hpp"

#include "precanon/kostka.hpp"
#include "precanon/weyl.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <climits>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <span>
#include <thread>

namespace precanon {

namespace {

using TermMap = std::map<Weight, QPoly>;

std::string instance_str(const RootSystem& rs, const Weight& lam) {
  return family_name(rs.family()) + std::to_string(rs.rank()) + " lambda=" + lam.to_string();
}

TermMap term_map(const SphElement& e) {
  TermMap m;
  for (const auto& t : e.terms()) m.emplace(t.weight, t.coeff);
  return m;
}

void add_term(TermMap& m, const Weight& w, const QPoly& p) {
  if (p.is_zero()) return;
  auto [it, fresh] = m.try_emplace(w, p);
  if (!fresh) {
    it->second += p;
    if (it->second.is_zero()) m.erase(it);
  }
}

std::string describe_mismatch(const TermMap& got, const TermMap& want) {
  auto gi = got.begin();
  auto wi = want.begin();
  while (gi != got.end() || wi != want.end()) {
    if (wi == want.end() || (gi != got.end() && gi->first < wi->first)) {
      return "unexpected term (" + gi->second.to_string() + ") at " + gi->first.to_string();
    }
    if (gi == got.end() || wi->first < gi->first) {
      return "missing term (" + wi->second.to_string() + ") at " + wi->first.to_string();
    }
    if (gi->second != wi->second) {
      return "at " + gi->first.to_string() + ": computed (" + gi->second.to_string() +
             "), closed form (" + wi->second.to_string() + ")";
    }
    ++gi;
    ++wi;
  }
  return "";
}

VerifyReport make_report(std::string claim, std::string instance, const TermMap& got,
                         const TermMap& want) {
  VerifyReport r;
  r.claim = std::move(claim);
  r.instance = std::move(instance);
  r.detail = describe_mismatch(got, want);
  r.pass = r.detail.empty();
  return r;
}

/// Runs fn(k) for k in [0, n) on up to `workers` threads; results keep index
/// order.  Exceptions become failing reports instead of crossing threads.
template <typename Fn>
std::vector<VerifyReport> parallel_reports(size_t n, int workers, Fn&& fn) {
  std::vector<std::vector<VerifyReport>> chunks(n);
  auto run_one = [&](size_t k) {
    try {
      chunks[k] = fn(k);
    } catch (const std::exception& e) {
      chunks[k] = {VerifyReport{"error", "item " + std::to_string(k), false, e.what()}};
    }
  };
  size_t nthreads = std::min<size_t>(std::max(workers, 1), n ? n : 1);
  if (nthreads <= 1) {
    for (size_t k = 0; k < n; ++k) run_one(k);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (size_t t = 0; t < nthreads; ++t) {
      pool.emplace_back([&] {
        for (size_t k = next.fetch_add(1); k < n; k = next.fetch_add(1)) run_one(k);
      });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<VerifyReport> out;
  for (auto& c : chunks)
    for (auto& r : c) out.push_back(std::move(r));
  return out;
}

void require_type_a(const RootSystem& rs, int rank, const char* what) {
  if (rs.family() != Family::A || (rank > 0 && rs.rank() != rank)) {
    std::string need = rank > 0 ? "A" + std::to_string(rank) : "family A";
    throw DomainError(std::string(what) + " applies to " + need + " only");
  }
}

QPoly mono(long long c, int d) { return QPoly::monomial(Int(c), d); }

TableRow make_row(int id, std::vector<int> lo, std::vector<int> hi,
                  std::vector<std::pair<QPoly, std::vector<int>>> terms) {
  TableRow r;
  r.id = id;
  r.min = std::move(lo);
  r.max = std::move(hi);
  r.terms = std::move(terms);
  return r;
}

/// Predicted rewrite of the level-2 element over level 3: implicit leading
/// term at lam plus the row's offset terms.
TermMap row_prediction(const RootSystem& rs, const TableRow& row, const Weight& lam) {
  TermMap want;
  add_term(want, lam, QPoly(1));
  for (const auto& [poly, off] : row.terms) add_term(want, rs.sub_root(lam, off), poly);
  return want;
}

VerifyReport check_table(SphAlgebra& alg, const Weight& lam, const std::vector<TableRow>& rows,
                         const TableRow& generic, const char* claim) {
  const RootSystem& rs = alg.rs();
  std::string inst = instance_str(rs, lam);
  std::vector<const TableRow*> hits;
  for (const auto& r : rows)
    if (r.matches(lam)) hits.push_back(&r);
  if (generic.matches(lam)) hits.push_back(&generic);
  if (hits.empty()) return {claim, inst, false, "no table row covers this weight"};

  TermMap want = row_prediction(rs, *hits[0], lam);
  for (size_t k = 1; k < hits.size(); ++k) {
    if (row_prediction(rs, *hits[k], lam) != want) {
      return {claim, inst, false,
              "rows " + std::to_string(hits[0]->id) + " and " + std::to_string(hits[k]->id) +
                  " predict different decompositions"};
    }
  }
  SphElement lhs = alg.expand_in_precanonical(alg.precanonical(lam, 2), 3);
  VerifyReport rep = make_report(claim, inst, term_map(lhs), want);
  if (rep.pass) {
    std::string ids;
    for (const TableRow* h : hits) ids += (ids.empty() ? "row " : ",") + std::to_string(h->id);
    rep.detail = ids;
  }
  return rep;
}

Root reflect_root(const RootSystem& rs, const Root& r, int k) {
  long long pair = 0;
  for (int j = 0; j < rs.rank(); ++j) pair += rs.cartan()[k][j] * r.c[j];
  std::vector<int> c = r.c;
  c[k] -= static_cast<int>(pair);
  return Root(c);
}

}  // namespace

bool TableRow::matches(const Weight& lam) const {
  for (size_t k = 0; k < min.size(); ++k) {
    if (lam.c[k] < min[k]) return false;
    if (max[k] >= 0 && lam.c[k] > max[k]) return false;
  }
  return true;
}

std::vector<int> matching_table_rows(const std::vector<TableRow>& rows, const TableRow& generic,
                                     const Weight& lam) {
  std::vector<int> out;
  for (const auto& r : rows)
    if (r.matches(lam)) out.push_back(r.id);
  if (generic.matches(lam)) out.push_back(0);
  return out;
}

long long row_box_count(const TableRow& row, int box) {
  long long count = 1;
  for (size_t k = 0; k < row.min.size(); ++k) {
    int lo = row.min[k];
    int hi = row.max[k] < 0 ? box : std::min(row.max[k], box);
    if (lo > hi) return 0;
    count *= hi - lo + 1;
  }
  return count;
}

const std::vector<TableRow>& a3_table() {
  // Guards and decompositions for lam = (a, b, c); offsets in root coords.
  static const std::vector<TableRow> rows = {
      make_row(1, {0, 1, 1}, {0, -1, -1}, {{mono(-1, 1), {0, 1, 1}}}),
      make_row(2, {0, 0, 0}, {0, 0, -1}, {}),
      make_row(3, {0, 1, 0}, {0, 1, 0}, {}),
      make_row(4, {0, 2, 0}, {0, -1, 0}, {{mono(-1, 2), {1, 2, 1}}}),
      make_row(5, {1, 1, 0}, {-1, -1, 0}, {{mono(-1, 1), {1, 1, 0}}}),
      make_row(6, {0, 0, 0}, {-1, 0, 0}, {}),
      make_row(7, {1, 1, 1}, {-1, 1, -1}, {{mono(-1, 1), {1, 1, 0}}, {mono(-1, 1), {0, 1, 1}}}),
      make_row(8, {1, 0, 1}, {-1, 0, -1}, {{mono(-1, 2), {1, 1, 1}}}),
  };
  return rows;
}

const TableRow& a3_generic() {
  static const TableRow row =
      make_row(0, {1, 2, 1}, {-1, -1, -1},
               {{mono(-1, 1), {1, 1, 0}}, {mono(-1, 1), {0, 1, 1}}, {mono(1, 2), {1, 2, 1}}});
  return row;
}

const std::vector<TableRow>& a4_table() {
  // Guards and decompositions for lam = (a, b, c, d); offsets in root coords.
  // Rows 18..31 mirror rows 2..15 under (a,b,c,d) -> (d,c,b,a).
  static const std::vector<TableRow> rows = {
      make_row(1, {0, 1, 1, 0}, {0, -1, -1, 0}, {{mono(-1, 1), {0, 1, 1, 0}}}),
      make_row(2, {0, 2, 0, 0}, {0, -1, 0, 0}, {{mono(-1, 2), {1, 2, 1, 0}}}),
      make_row(3, {0, 1, 2, 1}, {0, -1, -1, -1},
               {{mono(-1, 1), {0, 1, 1, 0}}, {mono(-1, 1), {0, 0, 1, 1}},
                {mono(1, 2), {0, 1, 2, 1}}}),
      make_row(4, {0, 1, 1, 1}, {0, -1, 1, -1},
               {{mono(-1, 1), {0, 1, 1, 0}}, {mono(-1, 1), {0, 0, 1, 1}},
                {mono(1, 3), {1, 2, 2, 1}}}),
      make_row(5, {0, 2, 0, 1}, {0, -1, 0, -1},
               {{mono(-1, 2), {0, 1, 1, 1}}, {mono(-1, 2), {1, 2, 1, 0}},
                {mono(1, 3), {1, 2, 1, 1}}}),
      make_row(6, {0, 1, 0, 2}, {0, 1, 0, -1},
               {{mono(-1, 2), {0, 1, 1, 1}}, {mono(1, 4), {1, 2, 2, 2}}}),
      make_row(7, {0, 1, 0, 1}, {0, 1, 0, 1}, {{mono(-1, 2), {0, 1, 1, 1}}}),
      make_row(8, {0, 1, 0, 0}, {0, 1, 0, 0}, {}),
      make_row(9, {0, 0, 1, 1}, {0, 0, -1, -1}, {{mono(-1, 1), {0, 0, 1, 1}}}),
      make_row(10, {0, 0, 0, 0}, {0, 0, 0, -1}, {}),
      make_row(11, {1, 1, 2, 1}, {-1, 1, -1, -1},
               {{mono(-1, 1), {1, 1, 0, 0}}, {mono(-1, 1), {0, 1, 1, 0}},
                {mono(-1, 1), {0, 0, 1, 1}}, {mono(1, 2), {1, 1, 1, 1}},
                {mono(1, 2), {0, 1, 2, 1}}}),
      make_row(12, {1, 2, 0, 1}, {-1, -1, 0, -1},
               {{mono(-1, 1), {1, 1, 0, 0}}, {mono(-1, 2), {0, 1, 1, 1}},
                {mono(1, 3), {1, 2, 1, 1}}}),
      make_row(13, {1, 1, 0, 1}, {-1, 1, 0, 1},
               {{mono(-1, 1), {1, 1, 0, 0}}, {mono(-1, 2), {0, 1, 1, 1}}}),
      make_row(14, {1, 1, 0, 2}, {-1, 1, 0, -1},
               {{mono(-1, 1), {1, 1, 0, 0}}, {mono(-1, 2), {0, 1, 1, 1}},
                {mono(1, 4), {1, 2, 2, 2}}}),
      make_row(15, {1, 0, 0, 1}, {-1, 0, 0, 1},
               {{QPoly(std::vector<Int>{0, 0, -1, -1}), {1, 1, 1, 1}}}),
      make_row(16, {2, 0, 0, 2}, {-1, 0, 0, -1},
               {{QPoly(std::vector<Int>{0, 0, -1, -1}), {1, 1, 1, 1}},
                {mono(1, 5), {2, 2, 2, 2}}}),
      make_row(17, {1, 1, 1, 1}, {-1, 1, 1, -1},
               {{mono(-1, 1), {1, 1, 0, 0}}, {mono(-1, 1), {0, 1, 1, 0}},
                {mono(-1, 1), {0, 0, 1, 1}}, {mono(1, 2), {1, 1, 1, 1}},
                {mono(1, 3), {1, 2, 2, 1}}}),
      make_row(18, {0, 0, 2, 0}, {0, 0, -1, 0}, {{mono(-1, 2), {0, 1, 2, 1}}}),
      make_row(19, {1, 2, 1, 0}, {-1, -1, -1, 0},
               {{mono(-1, 1), {0, 1, 1, 0}}, {mono(-1, 1), {1, 1, 0, 0}},
                {mono(1, 2), {1, 2, 1, 0}}}),
      make_row(20, {1, 1, 1, 0}, {-1, 1, -1, 0},
               {{mono(-1, 1), {0, 1, 1, 0}}, {mono(-1, 1), {1, 1, 0, 0}},
                {mono(1, 3), {1, 2, 2, 1}}}),
      make_row(21, {1, 0, 2, 0}, {-1, 0, -1, 0},
               {{mono(-1, 2), {1, 1, 1, 0}}, {mono(-1, 2), {0, 1, 2, 1}},
                {mono(1, 3), {1, 1, 2, 1}}}),
      make_row(22, {2, 0, 1, 0}, {-1, 0, 1, 0},
               {{mono(-1, 2), {1, 1, 1, 0}}, {mono(1, 4), {2, 2, 2, 1}}}),
      make_row(23, {1, 0, 1, 0}, {1, 0, 1, 0}, {{mono(-1, 2), {1, 1, 1, 0}}}),
      make_row(24, {0, 0, 1, 0}, {0, 0, 1, 0}, {}),
      make_row(25, {1, 1, 0, 0}, {-1, -1, 0, 0}, {{mono(-1, 1), {1, 1, 0, 0}}}),
      make_row(26, {1, 0, 0, 0}, {-1, 0, 0, 0}, {}),
      make_row(27, {1, 2, 1, 1}, {-1, -1, 1, -1},
               {{mono(-1, 1), {1, 1, 0, 0}}, {mono(-1, 1), {0, 1, 1, 0}},
                {mono(-1, 1), {0, 0, 1, 1}}, {mono(1, 2), {1, 1, 1, 1}},
                {mono(1, 2), {1, 2, 1, 0}}}),
      make_row(28, {1, 0, 2, 1}, {-1, 0, -1, -1},
               {{mono(-1, 1), {0, 0, 1, 1}}, {mono(-1, 2), {1, 1, 1, 0}},
                {mono(1, 3), {1, 1, 2, 1}}}),
      make_row(29, {1, 0, 1, 1}, {1, 0, 1, -1},
               {{mono(-1, 1), {0, 0, 1, 1}}, {mono(-1, 2), {1, 1, 1, 0}}}),
      make_row(30, {2, 0, 1, 1}, {-1, 0, 1, -1},
               {{mono(-1, 1), {0, 0, 1, 1}}, {mono(-1, 2), {1, 1, 1, 0}},
                {mono(1, 4), {2, 2, 2, 1}}}),
      make_row(31, {1, 0, 0, 1}, {1, 0, 0, -1},
               {{QPoly(std::vector<Int>{0, 0, -1, -1}), {1, 1, 1, 1}}}),
  };
  return rows;
}

const TableRow& a4_generic() {
  static const TableRow row = make_row(
      0, {1, 2, 2, 1}, {-1, -1, -1, -1},
      {{mono(-1, 1), {1, 1, 0, 0}},
       {mono(-1, 1), {0, 1, 1, 0}},
       {mono(-1, 1), {0, 0, 1, 1}},
       {mono(1, 2), {1, 2, 1, 0}},
       {mono(1, 2), {1, 1, 1, 1}},
       {mono(1, 2), {0, 1, 2, 1}},
       {mono(-1, 3), {1, 2, 2, 1}}});
  return row;
}

std::vector<VerifyReport> verify_low_levels(SphAlgebra& alg, const Weight& lam) {
  const RootSystem& rs = alg.rs();
  std::string inst = instance_str(rs, lam);
  std::vector<VerifyReport> out;

  // Level 1 equals the standard basis element.
  SphElement level1 = alg.canon_to_std(alg.precanonical(lam, 1));
  TermMap want1;
  want1.emplace(lam, QPoly(1));
  out.push_back(make_report("lowlevels.level1_std", inst, term_map(level1), want1));

  // Level 2 is the height-graded sum of level-1 elements over the lower set.
  TermMap rhs;
  for (const Weight& mu : rs.dominant_below(lam)) {
    int ht = rs.height_diff(lam, mu);
    for (const auto& t : alg.precanonical(mu, 1).terms()) {
      add_term(rhs, t.weight, t.coeff.shifted(ht));
    }
  }
  out.push_back(make_report("lowlevels.level2_sum", inst, term_map(alg.precanonical(lam, 2)), rhs));
  return out;
}

VerifyReport verify_nhalf(SphAlgebra& alg, const Weight& lam, int i) {
  const RootSystem& rs = alg.rs();
  require_type_a(rs, 0, "the monomial transition closed form");
  const int n = rs.rank();
  if (n < 2 || i > n || 2 * i < n + 2)
    throw DomainError("monomial transition needs rank >= 2 and n/2+1 <= i <= n");
  std::string inst = instance_str(rs, lam) + " i=" + std::to_string(i);

  TermMap want;
  for (const Weight& mu : rs.dominant_below(lam)) {
    if (!rs.leq_i(mu, lam, i)) continue;
    int ht = rs.height_diff(lam, mu);
    if (ht % i != 0) {
      return {"nhalf.monomial", inst, false,
              "height " + std::to_string(ht) + " at " + mu.to_string() + " is not a multiple of " +
                  std::to_string(i)};
    }
    want.emplace(mu, mono(1, ht / i));
  }
  return make_report("nhalf.monomial", inst, term_map(alg.transition(lam, i)), want);
}

std::vector<std::pair<Weight, int>> a3_index_set(const RootSystem& rs, const Weight& lam) {
  require_type_a(rs, 3, "the rank-3 index set");
  const int a = lam.c[0], b = lam.c[1], c = lam.c[2];
  std::vector<std::pair<Weight, int>> out;
  // Walk lam - n*(alpha1+alpha2) - m*(alpha2+alpha3); the middle coordinate
  // b - n - m must stay nonnegative for either branch, bounding the loops.
  for (int n = 0; n <= b; ++n) {
    for (int m = 0; n + m <= b; ++m) {
      const int p1 = a - n + m, p2 = b - n - m, p3 = c + n - m;
      if (p1 >= 0 && p3 >= 0) {
        out.emplace_back(Weight({p1, p2, p3}), n + m);
        if (p2 == 0) {
          for (int l = 1; l <= std::min(p1, p3); ++l)
            out.emplace_back(Weight({p1 - l, 0, p3 - l}), n + m + 2 * l);
        }
      }
    }
  }
  return out;
}

std::vector<VerifyReport> verify_a3(SphAlgebra& alg, const Weight& lam) {
  const RootSystem& rs = alg.rs();
  require_type_a(rs, 3, "the rank-3 closed forms");
  std::string inst = instance_str(rs, lam);
  const int a = lam.c[0], b = lam.c[1], c = lam.c[2];
  std::vector<VerifyReport> out;

  {  // top transition: q^k at lam - k*(alpha1+alpha2+alpha3)
    TermMap want;
    for (int k = 0; k <= std::min(a, c); ++k) want.emplace(Weight({a - k, b, c - k}), mono(1, k));
    out.push_back(make_report("a3.level43", inst, term_map(alg.transition(lam, 3)), want));
  }
  {  // middle transition: the index set with its degree statistic
    TermMap want;
    bool dup = false;
    for (const auto& [mu, d] : a3_index_set(rs, lam)) {
      auto [it, fresh] = want.try_emplace(mu, mono(1, d));
      if (!fresh) dup = true;
      (void)it;
    }
    if (dup) {
      out.push_back({"a3.level32", inst, false, "index set reached one weight twice"});
    } else {
      out.push_back(make_report("a3.level32", inst, term_map(alg.transition(lam, 2)), want));
    }
  }
  {  // bottom transition: q^(ht) over the dominant lower set
    TermMap want;
    for (const Weight& mu : rs.dominant_below(lam))
      want.emplace(mu, mono(1, rs.height_diff(lam, mu)));
    out.push_back(make_report("a3.level21", inst, term_map(alg.transition(lam, 1)), want));
  }
  out.push_back(check_table(alg, lam, a3_table(), a3_generic(), "a3.table"));
  return out;
}

std::vector<VerifyReport> verify_a4(SphAlgebra& alg, const Weight& lam) {
  const RootSystem& rs = alg.rs();
  require_type_a(rs, 4, "the rank-4 closed forms");
  std::string inst = instance_str(rs, lam);
  std::vector<VerifyReport> out;

  // The six roots of height >= 2, grouped by step k = (height - 1).
  static const std::array<std::array<int, 4>, 6> kSpan = {{
      {1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1},  // step 1
      {1, 1, 1, 0}, {0, 1, 1, 1},                // step 2
      {1, 1, 1, 1},                              // step 3
  }};
  static const std::array<int, 6> kStep = {1, 1, 1, 2, 2, 3};

  // Root coordinates of lam - mu stay below adj(C) lam / det for dominant mu.
  std::array<long long, 4> rmax{};
  for (int i = 0; i < 4; ++i) {
    long long s = 0;
    for (int j = 0; j < 4; ++j) s += rs.adjugate_entry(i, j) * lam.c[j];
    rmax[static_cast<size_t>(i)] = s / rs.det();
  }

  TermMap rpoly;                     // admissible generating polynomials per mu
  std::map<Weight, long long> all;   // unfiltered combination counts per mu
  std::array<long long, 6> l{};
  std::array<long long, 4> r{};
  std::function<void(size_t)> enumerate = [&](size_t idx) {
    if (idx == kSpan.size()) {
      // mu in fundamental coordinates
      std::vector<int> rc(4);
      for (int j = 0; j < 4; ++j) rc[j] = static_cast<int>(r[static_cast<size_t>(j)]);
      Weight mu = rs.sub_root(lam, rc);
      if (!rs.is_dominant(mu)) return;
      all[mu] += 1;

      // partial sums nu_k after removing the step-k layers
      Weight nu1 = lam;
      for (size_t t = 0; t < 3; ++t) {
        for (long long u = 0; u < l[t]; ++u)
          nu1 = rs.sub_root(nu1, {kSpan[t][0], kSpan[t][1], kSpan[t][2], kSpan[t][3]});
      }
      if (!rs.is_dominant(nu1)) return;
      Weight nu2 = nu1;
      for (size_t t = 3; t < 5; ++t) {
        for (long long u = 0; u < l[t]; ++u)
          nu2 = rs.sub_root(nu2, {kSpan[t][0], kSpan[t][1], kSpan[t][2], kSpan[t][3]});
      }
      if (!rs.is_dominant(nu2)) return;
      if (l[3] > 0 && nu1.c[1] != 0) return;
      if (l[4] > 0 && nu1.c[2] != 0) return;
      if (l[5] > 0 && (nu2.c[1] != 0 || nu2.c[2] != 0)) return;
      int deg = 0;
      for (size_t t = 0; t < 6; ++t) deg += static_cast<int>(l[t]) * kStep[t];
      add_term(rpoly, mu, mono(1, deg));
      return;
    }
    long long cap = LLONG_MAX;
    for (size_t j = 0; j < 4; ++j)
      if (kSpan[idx][j]) cap = std::min(cap, rmax[j] - r[j]);
    for (long long t = 0; t <= cap; ++t) {
      l[idx] = t;
      enumerate(idx + 1);
      for (size_t j = 0; j < 4; ++j) r[j] += kSpan[idx][j];
    }
    for (size_t j = 0; j < 4; ++j) r[j] -= (cap + 1) * kSpan[idx][j];
    l[idx] = 0;
  };
  enumerate(0);

  out.push_back(make_report("a4.admissible", inst, term_map(alg.transition(lam, 2)), rpoly));

  {  // unfiltered counts against a geometric-series (knapsack) oracle
    std::array<size_t, 4> dim{};
    size_t total = 1;
    for (size_t j = 0; j < 4; ++j) {
      dim[j] = static_cast<size_t>(rmax[j]) + 1;
      total *= dim[j];
    }
    auto at = [&](long long x0, long long x1, long long x2, long long x3) {
      return ((static_cast<size_t>(x0) * dim[1] + static_cast<size_t>(x1)) * dim[2] +
              static_cast<size_t>(x2)) *
                 dim[3] +
             static_cast<size_t>(x3);
    };
    std::vector<long long> dp(total, 0);
    dp[0] = 1;
    for (const auto& rt : kSpan) {
      for (long long x0 = rt[0]; x0 <= rmax[0]; ++x0)
        for (long long x1 = rt[1]; x1 <= rmax[1]; ++x1)
          for (long long x2 = rt[2]; x2 <= rmax[2]; ++x2)
            for (long long x3 = rt[3]; x3 <= rmax[3]; ++x3)
              dp[at(x0, x1, x2, x3)] += dp[at(x0 - rt[0], x1 - rt[1], x2 - rt[2], x3 - rt[3])];
    }
    bool ok = true;
    std::string detail;
    for (const Weight& mu : rs.dominant_below(lam)) {
      auto diff = rs.dominance_diff(lam, mu);
      long long expect = 0;
      if (diff) {
        const auto& d = *diff;
        expect = dp[at(d[0], d[1], d[2], d[3])];
      }
      auto it = all.find(mu);
      long long got = it == all.end() ? 0 : it->second;
      if (got != expect) {
        ok = false;
        detail = "at " + mu.to_string() + ": enumerated " + std::to_string(got) +
                 " combinations, series oracle " + std::to_string(expect);
        break;
      }
    }
    out.push_back({"a4.count", inst, ok, detail});
  }

  out.push_back(check_table(alg, lam, a4_table(), a4_generic(), "a4.table"));
  return out;
}

std::vector<VerifyReport> verify_m_lemmas(SphAlgebra& alg, const Weight& lam, int i) {
  const RootSystem& rs = alg.rs();
  require_type_a(rs, 0, "the subset-sum reduction lemmas");
  const int n = rs.rank();
  if (i < 2 || i > n) throw DomainError("reduction lemmas need 2 <= i <= rank");
  const int nbar = n - i + 1;
  std::string inst = instance_str(rs, lam) + " i=" + std::to_string(i);

  // gamma_j = alpha_j + ... + alpha_(j+i-1), appended one at a time.
  std::vector<Root> gammas;
  for (int j = 1; j <= nbar; ++j) {
    std::vector<int> rc(static_cast<size_t>(n), 0);
    for (int t = j; t <= j + i - 1; ++t) rc[static_cast<size_t>(t - 1)] = 1;
    gammas.push_back(Root(rc));
  }
  std::vector<std::vector<Root>> gsets;
  auto tail = rs.phi_geq(i + 1);
  gsets.emplace_back(tail.begin(), tail.end());
  for (int j = 1; j <= nbar; ++j) {
    gsets.push_back(gsets.back());
    gsets.back().push_back(gammas[static_cast<size_t>(j - 1)]);
  }
  std::vector<SphElement> M;
  M.reserve(gsets.size());
  for (const auto& g : gsets) M.push_back(alg.m_op(g, lam));

  std::vector<VerifyReport> out;
  {
    bool ok0 = M.front() == alg.precanonical(lam, i + 1);
    bool okN = M.back() == alg.precanonical(lam, i);
    std::string detail;
    if (!ok0) detail = "sum over heights > i differs from the level-(i+1) element";
    if (!okN) detail += std::string(detail.empty() ? "" : "; ") +
                        "full chain differs from the level-i element";
    out.push_back({"mlemma.endpoints", inst, ok0 && okN, detail});
  }

  bool zero_ok = true, pos_ok = true;
  int zero_cases = 0, pos_cases = 0;
  std::string zero_detail, pos_detail;
  for (int j = 1; j <= nbar; ++j) {
    const size_t ju = static_cast<size_t>(j);
    if (lam.c[static_cast<size_t>(j + i - 2)] == 0) {
      ++zero_cases;
      if (zero_ok && !(M[ju] == M[ju - 1])) {
        zero_ok = false;
        zero_detail = "chain step j=" + std::to_string(j) + " changed the element";
      }
    } else {
      ++pos_cases;
      if (!pos_ok) continue;
      int r = 0;
      for (int t = j; t <= nbar; ++t) {
        if (lam.c[static_cast<size_t>(t - 1)] > 0) {
          r = t;
          break;
        }
      }
      TermMap rhs = term_map(M[ju - 1]);
      if (r > 0) {
        Weight shifted = lam;
        for (int t = j; t <= r; ++t)
          shifted = rs.sub(shifted, rs.root_to_weight(gammas[static_cast<size_t>(t - 1)]));
        SphElement corr = alg.m_op(gsets[ju - 1], shifted);
        for (const auto& term : corr.terms()) {
          QPoly scaled;
          scaled.add_scaled(term.coeff, Int(-1), r - j + 1);
          add_term(rhs, term.weight, scaled);
        }
      }
      std::string diff = describe_mismatch(term_map(M[ju]), rhs);
      if (!diff.empty()) {
        pos_ok = false;
        pos_detail = "chain step j=" + std::to_string(j) + ": " + diff;
      }
    }
  }
  out.push_back({"mlemma.zero_coordinate", inst, zero_ok,
                 zero_ok ? std::to_string(zero_cases) + " cases" : zero_detail});
  out.push_back({"mlemma.positive_coordinate", inst, pos_ok,
                 pos_ok ? std::to_string(pos_cases) + " cases" : pos_detail});
  return out;
}

VerifyReport verify_m_reflection(SphAlgebra& alg, int count, unsigned seed) {
  const RootSystem& rs = alg.rs();
  const int n = rs.rank();
  std::string inst = family_name(rs.family()) + std::to_string(n) +
                     " count=" + std::to_string(count) + " seed=" + std::to_string(seed);
  std::vector<Root> all;
  for (const Root& r : rs.positive_roots()) {
    all.push_back(r);
    std::vector<int> neg(r.c.size());
    for (size_t j = 0; j < r.c.size(); ++j) neg[j] = -r.c[j];
    all.push_back(Root(neg));
  }
  std::mt19937 rng(seed);
  auto rand_int = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
  };

  for (int it = 0; it < count; ++it) {
    // random subset of the full root set, capped so 2^|A| stays small
    const size_t maxk = std::min<size_t>(all.size(), 10);
    size_t k = static_cast<size_t>(rand_int(0, static_cast<int>(maxk)));
    std::vector<size_t> idx(all.size());
    for (size_t j = 0; j < idx.size(); ++j) idx[j] = j;
    for (size_t j = idx.size() - 1; j > 0; --j)
      std::swap(idx[j], idx[rng() % (j + 1)]);
    std::vector<Root> a;
    a.reserve(k);
    for (size_t j = 0; j < k; ++j) a.push_back(all[idx[j]]);

    std::vector<int> coords(static_cast<size_t>(n));
    for (auto& c : coords) c = rand_int(-4, 4);
    Weight mu(coords);
    int gen = rand_int(0, n - 1);

    std::vector<Root> ra;
    ra.reserve(a.size());
    for (const Root& root : a) ra.push_back(reflect_root(rs, root, gen));
    SphElement lhs = alg.m_op(a, mu);
    SphElement rhs = alg.m_op(ra, rs.dot_reflect(mu, gen));
    TermMap sum = term_map(lhs);
    for (const auto& t : rhs.terms()) add_term(sum, t.weight, t.coeff);
    if (!sum.empty()) {
      return {"mlemma.reflection", inst, false,
              "antisymmetry failed at iteration " + std::to_string(it) + ", mu=" + mu.to_string() +
                  ", generator " + std::to_string(gen + 1)};
    }

    // vanishing: a reflection-stable set with the fixed-point coordinate -1
    size_t k0 = static_cast<size_t>(rand_int(0, 5));
    std::set<std::vector<int>> stable;
    for (size_t j = 0; j < k0 && j < idx.size(); ++j) {
      const Root& root = all[idx[j]];
      stable.insert(root.c);
      stable.insert(reflect_root(rs, root, gen).c);
    }
    std::vector<Root> sa;
    for (const auto& rc : stable) {
      bool zero = true;
      for (int v : rc) zero = zero && v == 0;
      if (!zero) sa.push_back(Root(rc));
    }
    coords[static_cast<size_t>(gen)] = -1;
    Weight nu(coords);
    if (!alg.m_op(sa, nu).is_zero()) {
      return {"mlemma.reflection", inst, false,
              "stable-set sum did not vanish at iteration " + std::to_string(it) + ", mu=" +
                  nu.to_string() + ", generator " + std::to_string(gen + 1)};
    }
  }
  return {"mlemma.reflection", inst, true, std::to_string(count) + " instances"};
}

namespace {

/// Shared engine for the two subset-sum identities: sums
/// (-q)^|I| (-1)^(length) K_(bar, mu) over subsets I of `roots` with
/// lam - sum(I) regular, for every dominant mu <= lam, and compares with
/// `expected(mu)`.
VerifyReport subset_identity(SphAlgebra& alg, const Weight& lam, std::span<const Root> roots,
                             const char* claim,
                             const std::function<QPoly(const Weight&)>& expected) {
  const RootSystem& rs = alg.rs();
  const KostkaTable& kt = alg.kostka();
  std::string inst = instance_str(rs, lam);
  if (roots.size() > 20) throw DomainError("subset identity limited to 20 roots");

  struct Entry {
    int size;
    int sign;
    Weight bar;
  };
  std::vector<Entry> entries;
  const uint32_t full = 1u << roots.size();
  for (uint32_t mask = 0; mask < full; ++mask) {
    Weight nu = lam;
    int cnt = 0;
    for (size_t j = 0; j < roots.size(); ++j) {
      if (mask & (1u << j)) {
        nu = rs.sub(nu, rs.root_to_weight(roots[j]));
        ++cnt;
      }
    }
    TildeH th = alg.tilde_H(nu);
    if (!th.zero) entries.push_back({cnt, th.sign, th.bar});
  }

  for (const Weight& mu : rs.dominant_below(lam)) {
    QPoly sum;
    for (const auto& e : entries) {
      QPoly kl = kt.kl_entry(mu, e.bar);
      if (kl.is_zero()) continue;
      int sgn = (e.size % 2 ? -1 : 1) * e.sign;
      sum.add_scaled(kl, Int(sgn), e.size);
    }
    QPoly want = expected(mu);
    if (sum != want) {
      return {claim, inst, false,
              "at mu=" + mu.to_string() + ": subset sum (" + sum.to_string() +
                  ") differs from (" + want.to_string() + ")"};
    }
  }
  return {claim, inst, true, ""};
}

}  // namespace

VerifyReport verify_mucoeff(SphAlgebra& alg, const Weight& lam) {
  const RootSystem& rs = alg.rs();
  return subset_identity(alg, lam, rs.phi_geq(2), "identity.height_power",
                         [&](const Weight& mu) {
                           return QPoly::monomial(1, rs.height_diff(lam, mu));
                         });
}

VerifyReport verify_mumu(SphAlgebra& alg, const Weight& lam) {
  const RootSystem& rs = alg.rs();
  return subset_identity(alg, lam, rs.phi_geq(1), "identity.diagonal", [&](const Weight& mu) {
    return mu == lam ? alg.stabilizer_poincare_cached(lam) : QPoly();
  });
}

std::vector<VerifyReport> positivity_scan(SphAlgebra& alg, const std::vector<Weight>& lams,
                                          int workers) {
  const int m = alg.rs().highest_root_height();
  return parallel_reports(lams.size(), workers, [&](size_t k) {
    const Weight& lam = lams[k];
    std::string inst = instance_str(alg.rs(), lam);
    for (int i = 1; i <= m; ++i) {
      SphElement t = alg.transition(lam, i);
      for (const auto& term : t.terms()) {
        if (!term.coeff.is_nonneg()) {
          return std::vector<VerifyReport>{
              {"positivity", inst, false,
               "negative coefficient at i=" + std::to_string(i) + ", mu=" +
                   term.weight.to_string() + ": " + term.coeff.to_string()}};
        }
      }
    }
    return std::vector<VerifyReport>{
        {"positivity", inst, true, "levels 1.." + std::to_string(m)}};
  });
}

std::vector<NegativityWitness> atomic_negativity_scan(SphAlgebra& alg, int box) {
  std::vector<NegativityWitness> out;
  for (const Weight& lam : alg.rs().dominant_box(box)) {
    SphElement e = alg.atomic_decomposition(lam);
    for (const auto& t : e.terms()) {
      if (!t.coeff.is_nonneg()) out.push_back({lam, t.weight, t.coeff});
    }
  }
  return out;
}

DegIReport explore_deg_i(SphAlgebra& alg, const Weight& lam, const Weight& mu, int i,
                         size_t node_cap) {
  const RootSystem& rs = alg.rs();
  if (i < 2) throw DomainError("degree exploration needs i >= 2");
  DegIReport rep;
  if (i <= rs.highest_root_height()) {
    const SphElement col = alg.transition(lam, i);
    if (const QPoly* p = col.coeff(mu)) rep.transition_coeff = *p;
  }
  auto diff = rs.dominance_diff(lam, mu);
  if (!diff) {
    rep.dominated = rep.transition_coeff.is_zero();
    return rep;
  }

  // pool: non-simple roots with height 1 mod (i-1), graded by (ht-1)/(i-1)
  std::vector<const Root*> pool;
  std::vector<int> grade;
  for (const Root& r : rs.positive_roots()) {
    if (r.height > 1 && (r.height - 1) % (i - 1) == 0) {
      pool.push_back(&r);
      grade.push_back((r.height - 1) / (i - 1));
    }
  }
  std::vector<long long> rem(diff->begin(), diff->end());
  size_t nodes = 0;
  std::function<void(size_t, int)> rec = [&](size_t idx, int deg) {
    if (++nodes > node_cap) throw DomainError("degree exploration node cap exceeded");
    bool done = true;
    for (long long v : rem) done = done && v == 0;
    if (done) {
      ++rep.count;
      rep.generating += QPoly::monomial(1, deg);
      return;
    }
    if (idx == pool.size()) return;
    const Root& rt = *pool[idx];
    long long cap = LLONG_MAX;
    for (size_t j = 0; j < rem.size(); ++j)
      if (rt.c[j] > 0) cap = std::min(cap, rem[j] / rt.c[j]);
    for (long long t = 0; t <= cap; ++t) {
      rec(idx + 1, deg + static_cast<int>(t) * grade[idx]);
      for (size_t j = 0; j < rem.size(); ++j) rem[j] -= rt.c[j];
    }
    for (size_t j = 0; j < rem.size(); ++j) rem[j] += (cap + 1) * rt.c[j];
  };
  rec(0, 0);
  rep.decomposable = rep.count > 0;
  rep.dominated = true;
  for (int k = 0; k <= rep.transition_coeff.degree(); ++k) {
    if (rep.transition_coeff.coeff(k) > rep.generating.coeff(k)) {
      rep.dominated = false;
      break;
    }
  }
  return rep;
}

std::vector<VerifyReport> suite_low_levels(SphAlgebra& alg, int box, int workers) {
  std::vector<Weight> lams = alg.rs().dominant_box(box);
  return parallel_reports(lams.size(), workers,
                          [&](size_t k) { return verify_low_levels(alg, lams[k]); });
}

std::vector<VerifyReport> suite_nhalf(SphAlgebra& alg, int box, int workers) {
  require_type_a(alg.rs(), 0, "the monomial transition suite");
  const int n = alg.rs().rank();
  if (n < 2) throw DomainError("monomial transition suite needs rank >= 2");
  std::vector<Weight> lams = alg.rs().dominant_box(box);
  const int imin = (n + 3) / 2;  // smallest integer i with i >= n/2 + 1
  return parallel_reports(lams.size(), workers, [&](size_t k) {
    std::vector<VerifyReport> out;
    for (int i = imin; i <= n; ++i) out.push_back(verify_nhalf(alg, lams[k], i));
    return out;
  });
}

std::vector<VerifyReport> suite_a3(SphAlgebra& alg, int box, int workers) {
  require_type_a(alg.rs(), 3, "the rank-3 suite");
  std::vector<Weight> lams = alg.rs().dominant_box(box);
  return parallel_reports(lams.size(), workers,
                          [&](size_t k) { return verify_a3(alg, lams[k]); });
}

std::vector<VerifyReport> suite_a4(SphAlgebra& alg, int box, int workers) {
  require_type_a(alg.rs(), 4, "the rank-4 suite");
  std::vector<Weight> lams = alg.rs().dominant_box(box);
  return parallel_reports(lams.size(), workers,
                          [&](size_t k) { return verify_a4(alg, lams[k]); });
}

std::vector<VerifyReport> suite_mlemmas(SphAlgebra& alg, int box, int reflection_count,
                                        unsigned seed, int workers) {
  require_type_a(alg.rs(), 0, "the reduction-lemma suite");
  const int n = alg.rs().rank();
  if (n < 2) throw DomainError("reduction-lemma suite needs rank >= 2");
  std::vector<Weight> lams = alg.rs().dominant_box(box);
  const int imin = (n + 3) / 2;
  std::vector<VerifyReport> out = parallel_reports(lams.size(), workers, [&](size_t k) {
    std::vector<VerifyReport> reports;
    for (int i = imin; i <= n; ++i) {
      auto r = verify_m_lemmas(alg, lams[k], i);
      reports.insert(reports.end(), r.begin(), r.end());
    }
    return reports;
  });
  if (reflection_count > 0) out.push_back(verify_m_reflection(alg, reflection_count, seed));
  return out;
}

std::vector<VerifyReport> suite_positivity(SphAlgebra& alg, const std::vector<Weight>& lams,
                                           int workers) {
  return positivity_scan(alg, lams, workers);
}

std::vector<VerifyReport> suite_d4witness(SphAlgebra& alg, int box, int workers) {
  (void)workers;
  if (alg.rs().family() != Family::D || alg.rs().rank() != 4)
    throw DomainError("the negativity witness suite applies to D4 only");
  std::vector<NegativityWitness> witnesses = atomic_negativity_scan(alg, box);
  std::string inst = "D4 box=" + std::to_string(box);
  if (witnesses.empty()) {
    return {{"d4.negative_entry", inst, false,
             "no negative coefficient found expanding canonical elements over level 2"}};
  }
  const auto& w = witnesses.front();
  return {{"d4.negative_entry", inst, true,
           std::to_string(witnesses.size()) + " negative entries; first at lambda=" +
               w.lam.to_string() + ", mu=" + w.mu.to_string() + ", coeff=(" +
               w.coeff.to_string() + ")"}};
}

std::vector<Weight> sampled_box(const RootSystem& rs, int box, size_t count, unsigned seed) {
  std::vector<Weight> all = rs.dominant_box(box);
  std::mt19937 rng(seed);
  for (size_t j = all.size() - 1; j > 0; --j) {
    std::swap(all[j], all[rng() % (j + 1)]);
  }
  if (all.size() > count) all.resize(count);
  return all;
}

}  // namespace precanon
