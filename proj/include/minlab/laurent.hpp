#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace minlab {

using Complex = std::complex<double>;

/// Finite complex Laurent polynomial sum_k c_k z^k. Zero coefficients are
/// never stored, so terms().empty() is the zero polynomial.
class LaurentPoly {
 public:
  using Terms = std::map<int, Complex>;

  LaurentPoly() = default;
  LaurentPoly(Complex constant);  // NOLINT: implicit on purpose, reads like a scalar
  explicit LaurentPoly(Terms terms);

  static LaurentPoly monomial(int exponent, Complex coeff = 1.0);

  /// Builds from (exponent, coefficient) pairs; throws std::invalid_argument on
  /// duplicate exponents.
  static LaurentPoly from_pairs(const std::vector<std::pair<int, Complex>>& pairs);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Complex coeff(int exponent) const;

  /// Lowest / highest exponent; empty for the zero polynomial.
  std::optional<int> min_exponent() const;
  std::optional<int> max_exponent() const;

  /// Coefficient of z^-1.
  Complex residue() const { return coeff(-1); }

  /// Order of the pole at 0, at least 0.
  int pole_order_at_zero() const;

  /// Order of the pole at infinity of the 1-form p(z) dz, at least 0.
  /// z^k dz has a pole of order k + 2 at infinity.
  int form_pole_order_at_infinity() const;

  Complex operator()(Complex z) const;

  LaurentPoly derivative() const;

  /// Termwise antiderivative. The z^-1 term has no Laurent antiderivative and
  /// is dropped; callers account for it through residue().
  LaurentPoly antiderivative_without_log() const;

  /// Max |coefficient|; 0 for the zero polynomial.
  double max_abs_coeff() const;

  /// True when every coefficient is at most tol * scale in magnitude.
  bool is_negligible(double tol, double scale) const;

  /// Coefficients c_min..c_max of z^{-min} * p(z), lowest degree first.
  std::vector<Complex> shifted_coefficients() const;

  LaurentPoly& operator+=(const LaurentPoly& rhs);
  LaurentPoly& operator-=(const LaurentPoly& rhs);
  LaurentPoly& operator*=(Complex s);

  friend LaurentPoly operator+(LaurentPoly lhs, const LaurentPoly& rhs) { return lhs += rhs; }
  friend LaurentPoly operator-(LaurentPoly lhs, const LaurentPoly& rhs) { return lhs -= rhs; }
  friend LaurentPoly operator*(LaurentPoly lhs, Complex s) { return lhs *= s; }
  friend LaurentPoly operator*(Complex s, LaurentPoly rhs) { return rhs *= s; }
  friend LaurentPoly operator*(const LaurentPoly& lhs, const LaurentPoly& rhs);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  std::string to_string() const;

 private:
  void add_term(int exponent, Complex c);

  Terms terms_;
};

/// z^n for integer n, computed in polar form so large exponents stay accurate.
Complex integer_power(Complex z, int n);

}  // namespace minlab
