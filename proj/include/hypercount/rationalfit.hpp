#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypercount/bigint.hpp"
#include "hypercount/records.hpp"

namespace hypercount {

/// Polynomial with exact rational coefficients (ascending powers, trimmed).
class ExactPolynomial {
 public:
  ExactPolynomial() = default;
  explicit ExactPolynomial(std::vector<BigRational> coeffs);

  int degree() const { return static_cast<int>(coeff_.size()) - 1; }
  const std::vector<BigRational>& coefficients() const { return coeff_; }
  BigRational coefficient(int power) const;
  BigRational evaluate(const BigRational& x) const;

  ExactPolynomial& operator+=(const ExactPolynomial& o);
  ExactPolynomial& scale(const BigRational& c);
  /// Multiply by (x - root).
  ExactPolynomial& shift_root(const BigInt& root);
  bool operator==(const ExactPolynomial&) const = default;

  /// Coefficients as "num" or "num/den" strings, ascending.
  std::vector<std::string> coefficient_strings() const;

 private:
  void trim();
  std::vector<BigRational> coeff_;
};

/// Unique polynomial of degree < #points through the given points, exact.
/// Throws DuplicateAbscissa on repeated x values.
ExactPolynomial lagrange_fit(std::span<const std::pair<BigInt, BigInt>> points);

struct HeldOutCheck {
  std::uint32_t q = 0;
  BigRational predicted;
  BigInt observed;
  bool match = false;
};

/// Result of the reduced-form fit F(q) = q^13 + q^2 * F~(q).
struct FitReport {
  std::vector<std::pair<std::uint32_t, BigInt>> samples;  // the 11 fit points
  ExactPolynomial f_tilde;
  std::vector<HeldOutCheck> held_out;
  bool non_polynomial_witness = false;
  std::string verdict() const {
    return non_polynomial_witness ? "non-polynomial-witness" : "consistent";
  }
};

/// Fits F~ of degree <= 10 through the first 11 records (taken in the given
/// order) and evaluates the rest as held-out points.  Requires >= 12 records
/// at distinct prime powers, each count divisible by q^2 (a violation is a
/// counting bug upstream, so it is a hard error).
FitReport reduced_fit(std::span<const CountRecord> records);

struct AuditEntry {
  std::uint32_t q = 0;
  BigInt count;
  bool pass = false;
};

/// Per-record q^2 | count check.
std::vector<AuditEntry> divisibility_audit(std::span<const CountRecord> records);

std::string fit_report_to_json(const FitReport& report, int indent = -1);

}  // namespace hypercount
