#include "minlab/laurent.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace minlab {

LaurentPoly::LaurentPoly(Complex constant) {
  add_term(0, constant);
}

LaurentPoly::LaurentPoly(Terms terms) {
  for (const auto& [k, c] : terms) add_term(k, c);
}

LaurentPoly LaurentPoly::monomial(int exponent, Complex coeff) {
  LaurentPoly p;
  p.add_term(exponent, coeff);
  return p;
}

LaurentPoly LaurentPoly::from_pairs(const std::vector<std::pair<int, Complex>>& pairs) {
  Terms seen;
  for (const auto& [k, c] : pairs) {
    if (!seen.emplace(k, c).second) {
      throw std::invalid_argument("LaurentPoly: duplicate exponent " + std::to_string(k));
    }
  }
  return LaurentPoly(std::move(seen));
}

void LaurentPoly::add_term(int exponent, Complex c) {
  if (c == Complex(0.0)) return;
  auto [it, inserted] = terms_.emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0)) terms_.erase(it);
  }
}

Complex LaurentPoly::coeff(int exponent) const {
  const auto it = terms_.find(exponent);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

std::optional<int> LaurentPoly::min_exponent() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

std::optional<int> LaurentPoly::max_exponent() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first;
}

int LaurentPoly::pole_order_at_zero() const {
  const auto lo = min_exponent();
  return (lo && *lo < 0) ? -*lo : 0;
}

int LaurentPoly::form_pole_order_at_infinity() const {
  const auto hi = max_exponent();
  return (hi && *hi + 2 > 0) ? *hi + 2 : 0;
}

Complex integer_power(Complex z, int n) {
  if (n == 0) return 1.0;
  const double r = std::abs(z);
  if (r == 0.0) {
    if (n < 0) throw std::domain_error("integer_power: negative power of zero");
    return 0.0;
  }
  return std::polar(std::pow(r, n), n * std::arg(z));
}

Complex LaurentPoly::operator()(Complex z) const {
  Complex sum = 0.0;
  for (const auto& [k, c] : terms_) sum += c * integer_power(z, k);
  return sum;
}

LaurentPoly LaurentPoly::derivative() const {
  LaurentPoly d;
  for (const auto& [k, c] : terms_) d.add_term(k - 1, c * static_cast<double>(k));
  return d;
}

LaurentPoly LaurentPoly::antiderivative_without_log() const {
  LaurentPoly p;
  for (const auto& [k, c] : terms_) {
    if (k == -1) continue;
    p.add_term(k + 1, c / static_cast<double>(k + 1));
  }
  return p;
}

double LaurentPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

bool LaurentPoly::is_negligible(double tol, double scale) const {
  for (const auto& [k, c] : terms_) {
    if (std::abs(c) > tol * scale) return false;
  }
  return true;
}

std::vector<Complex> LaurentPoly::shifted_coefficients() const {
  if (terms_.empty()) return {};
  const int lo = terms_.begin()->first;
  const int hi = terms_.rbegin()->first;
  std::vector<Complex> out(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (const auto& [k, c] : terms_) out[static_cast<std::size_t>(k - lo)] = c;
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
  for (const auto& [k, c] : rhs.terms_) add_term(k, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) {
  for (const auto& [k, c] : rhs.terms_) add_term(k, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(Complex s) {
  if (s == Complex(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& lhs, const LaurentPoly& rhs) {
  LaurentPoly out;
  for (const auto& [i, a] : lhs.terms_) {
    for (const auto& [j, b] : rhs.terms_) out.add_term(i + j, a * b);
  }
  return out;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    if (k != 0) os << " z^" << k;
  }
  return os.str();
}

}  // namespace minlab
