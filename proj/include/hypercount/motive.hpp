#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypercount/bigint.hpp"

namespace hypercount {

/// Integer-coefficient polynomial in the Lefschetz class L, exact ring
/// arithmetic.  Counting F_q points sends L to q.
class LPolynomial {
 public:
  LPolynomial() = default;
  explicit LPolynomial(BigInt constant);
  static LPolynomial lefschetz();
  static LPolynomial monomial(int power, BigInt coeff = BigInt(1));

  int degree() const { return static_cast<int>(coeff_.size()) - 1; }
  BigInt coefficient(int power) const;
  /// Ascending powers, trailing zeros trimmed.
  const std::vector<BigInt>& coefficients() const { return coeff_; }

  LPolynomial& operator+=(const LPolynomial& o);
  LPolynomial& operator-=(const LPolynomial& o);
  LPolynomial& operator*=(const LPolynomial& o);
  friend LPolynomial operator+(LPolynomial a, const LPolynomial& b) { return a += b; }
  friend LPolynomial operator-(LPolynomial a, const LPolynomial& b) { return a -= b; }
  friend LPolynomial operator*(LPolynomial a, const LPolynomial& b) { return a *= b; }
  bool operator==(const LPolynomial&) const = default;

  BigInt evaluate(const BigInt& q) const;

  /// Descending powers, e.g. "L^4 + L^3 + 2*L^2 + L + 1"; "0" for zero.
  std::string to_string() const;

 private:
  void trim();
  std::vector<BigInt> coeff_;  // coeff_[i] is the coefficient of L^i
};

/// [P^m] = 1 + L + ... + L^m.
LPolynomial proj_space(int m);

/// Classes y_i = [Y_i] and y'_i = [Y'_i] of the tridiagonal-minor loci in
/// the wheel recursion; y_1 = y'_1 = 0.
struct WsPair {
  LPolynomial y, y_prime;
};
WsPair ws_y(int i);

/// [T^n], the union locus in the wheel recursion; T^2 = 2.
LPolynomial ws_T(int n);

/// Projective class of the graph hypersurface of the wheel with m spokes.
LPolynomial ws_class(int m);

/// The degree-13 polynomial matching the XStrip counts at odd prime powers.
LPolynomial f1_polynomial();

/// F_1(q) for odd prime powers, F_1(q) - (q-1)q^2 for q = 2^k.
/// Throws NotAPrimePower.
BigInt predicted_count(std::uint64_t q);

}  // namespace hypercount
