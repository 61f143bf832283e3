#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace precanon {

using Int = boost::multiprecision::cpp_int;

/// Thrown by QPoly::exact_div when the division leaves a remainder.
/// Carries the offending remainder so callers can report it.
class InexactDivision : public std::runtime_error {
 public:
  InexactDivision(std::string msg, std::vector<Int> remainder_coeffs);
  const std::vector<Int>& remainder_coeffs() const { return rem_; }

 private:
  std::vector<Int> rem_;
};

/// Polynomial in q with arbitrary-precision integer coefficients.
/// Invariant: coeffs_ has no trailing zeros; the zero polynomial is {}.
class QPoly {
 public:
  QPoly() = default;
  QPoly(long long constant);  // NOLINT: implicit for natural arithmetic
  explicit QPoly(std::vector<Int> coeffs);

  static QPoly monomial(Int coeff, int degree);
  static QPoly one() { return QPoly(1); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Coefficient of q^k; zero beyond the degree.
  const Int& coeff(int k) const;
  const std::vector<Int>& coeffs() const { return coeffs_; }

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  QPoly operator-() const;
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);

  QPoly scaled(const Int& c) const;
  /// this += c * q^shift * p.  In-place accumulation for hot loops.
  void add_scaled(const QPoly& p, const Int& c, int shift = 0);
  /// Multiply by q^k.
  QPoly shifted(int k) const;

  /// Exact division; throws InexactDivision if a remainder survives.
  static QPoly exact_div(const QPoly& num, const QPoly& den);
  /// Nothrow variant: returns false (leaving quot untouched) on remainder.
  static bool try_exact_div(const QPoly& num, const QPoly& den, QPoly& quot);

  /// True when every coefficient is >= 0.
  bool is_nonneg() const;
  Int eval_at_one() const;

  bool operator==(const QPoly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const QPoly& o) const { return coeffs_ != o.coeffs_; }

  /// Ascending-exponent rendering, e.g. "1 - q + 2*q^3"; zero renders "0".
  std::string to_string() const;

 private:
  void trim();
  std::vector<Int> coeffs_;
};

/// Product of (1 + q + ... + q^(d-1)) over the given factor sizes d.
QPoly q_factorial_product(const std::vector<int>& factor_sizes);

}  // namespace precanon
