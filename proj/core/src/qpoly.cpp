#include "precanon/qpoly.hpp"

#include <sstream>

namespace precanon {

InexactDivision::InexactDivision(std::string msg, std::vector<Int> remainder_coeffs)
    : std::runtime_error(std::move(msg)), rem_(std::move(remainder_coeffs)) {}

QPoly::QPoly(long long constant) {
  if (constant != 0) coeffs_.push_back(Int(constant));
}

QPoly::QPoly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

QPoly QPoly::monomial(Int coeff, int degree) {
  QPoly p;
  if (coeff != 0) {
    p.coeffs_.assign(static_cast<size_t>(degree) + 1, Int(0));
    p.coeffs_.back() = std::move(coeff);
  }
  return p;
}

const Int& QPoly::coeff(int k) const {
  static const Int kZero = 0;
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return kZero;
  return coeffs_[static_cast<size_t>(k)];
}

void QPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  QPoly r;
  r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Int(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j] == 0) continue;
      r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  r.trim();
  return r;
}

QPoly QPoly::scaled(const Int& c) const {
  if (c == 0) return QPoly();
  QPoly r = *this;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

void QPoly::add_scaled(const QPoly& p, const Int& c, int shift) {
  if (p.is_zero() || c == 0) return;
  const size_t need = p.coeffs_.size() + static_cast<size_t>(shift);
  if (coeffs_.size() < need) coeffs_.resize(need);
  for (size_t i = 0; i < p.coeffs_.size(); ++i) {
    coeffs_[i + static_cast<size_t>(shift)] += c * p.coeffs_[i];
  }
  trim();
}

QPoly QPoly::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  QPoly r;
  r.coeffs_.assign(coeffs_.size() + static_cast<size_t>(k), Int(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i + static_cast<size_t>(k)] = coeffs_[i];
  return r;
}

bool QPoly::try_exact_div(const QPoly& num, const QPoly& den, QPoly& quot) {
  if (den.is_zero()) return false;
  QPoly rem = num;
  QPoly q;
  const int dd = den.degree();
  const Int& lead = den.coeffs_.back();
  if (!rem.is_zero() && rem.degree() >= dd) {
    q.coeffs_.assign(static_cast<size_t>(rem.degree() - dd) + 1, Int(0));
  }
  while (!rem.is_zero() && rem.degree() >= dd) {
    const Int& top = rem.coeffs_.back();
    if (top % lead != 0) return false;
    const Int factor = top / lead;
    const int shift = rem.degree() - dd;
    q.coeffs_[static_cast<size_t>(shift)] = factor;
    rem.add_scaled(den, -factor, shift);
  }
  if (!rem.is_zero()) return false;
  q.trim();
  quot = std::move(q);
  return true;
}

QPoly QPoly::exact_div(const QPoly& num, const QPoly& den) {
  QPoly q;
  if (try_exact_div(num, den, q)) return q;
  // Recompute the remainder (over the rationals this would be the residual
  // after the partial quotient; we stop at the first non-divisible step).
  QPoly rem = num;
  if (!den.is_zero()) {
    const int dd = den.degree();
    const Int& lead = den.coeffs_.back();
    while (!rem.is_zero() && rem.degree() >= dd && rem.coeffs_.back() % lead == 0) {
      const Int factor = rem.coeffs_.back() / lead;
      rem.add_scaled(den, -factor, rem.degree() - dd);
    }
  }
  throw InexactDivision(
      "inexact division: (" + num.to_string() + ") / (" + den.to_string() +
          ") leaves remainder " + rem.to_string(),
      rem.coeffs_);
}

bool QPoly::is_nonneg() const {
  for (const auto& c : coeffs_)
    if (c < 0) return false;
  return true;
}

Int QPoly::eval_at_one() const {
  Int s = 0;
  for (const auto& c : coeffs_) s += c;
  return s;
}

std::string QPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    const Int& c = coeffs_[k];
    if (c == 0) continue;
    const bool neg = c < 0;
    Int mag = neg ? Int(-c) : c;
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    const bool unit = (mag == 1);
    if (k == 0) {
      out << mag.str();
    } else {
      if (!unit) out << mag.str() << "*";
      out << "q";
      if (k > 1) out << "^" << k;
    }
  }
  return out.str();
}

QPoly q_factorial_product(const std::vector<int>& factor_sizes) {
  QPoly r = QPoly::one();
  for (int d : factor_sizes) {
    std::vector<Int> ones(static_cast<size_t>(d), Int(1));
    r = r * QPoly(std::move(ones));
  }
  return r;
}

}  // namespace precanon
