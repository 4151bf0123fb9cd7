#include "hypercount/motive.hpp"

#include <sstream>

#include "hypercount/errors.hpp"

namespace hypercount {

LPolynomial::LPolynomial(BigInt constant) {
  if (constant != 0) coeff_.push_back(std::move(constant));
}

LPolynomial LPolynomial::lefschetz() { return monomial(1); }

LPolynomial LPolynomial::monomial(int power, BigInt coeff) {
  LPolynomial p;
  if (coeff != 0) {
    p.coeff_.assign(power + 1, BigInt(0));
    p.coeff_[power] = std::move(coeff);
  }
  return p;
}

BigInt LPolynomial::coefficient(int power) const {
  if (power < 0 || power >= static_cast<int>(coeff_.size())) return 0;
  return coeff_[power];
}

void LPolynomial::trim() {
  while (!coeff_.empty() && coeff_.back() == 0) coeff_.pop_back();
}

LPolynomial& LPolynomial::operator+=(const LPolynomial& o) {
  if (o.coeff_.size() > coeff_.size()) coeff_.resize(o.coeff_.size(), BigInt(0));
  for (std::size_t i = 0; i < o.coeff_.size(); ++i) coeff_[i] += o.coeff_[i];
  trim();
  return *this;
}

LPolynomial& LPolynomial::operator-=(const LPolynomial& o) {
  if (o.coeff_.size() > coeff_.size()) coeff_.resize(o.coeff_.size(), BigInt(0));
  for (std::size_t i = 0; i < o.coeff_.size(); ++i) coeff_[i] -= o.coeff_[i];
  trim();
  return *this;
}

LPolynomial& LPolynomial::operator*=(const LPolynomial& o) {
  if (coeff_.empty() || o.coeff_.empty()) {
    coeff_.clear();
    return *this;
  }
  std::vector<BigInt> prod(coeff_.size() + o.coeff_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < coeff_.size(); ++i) {
    if (coeff_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeff_.size(); ++j)
      prod[i + j] += coeff_[i] * o.coeff_[j];
  }
  coeff_ = std::move(prod);
  trim();
  return *this;
}

BigInt LPolynomial::evaluate(const BigInt& q) const {
  BigInt acc = 0;
  for (std::size_t i = coeff_.size(); i-- > 0;) acc = acc * q + coeff_[i];
  return acc;
}

std::string LPolynomial::to_string() const {
  if (coeff_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = coeff_[i];
    if (c == 0) continue;
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (i == 0) {
      out << mag;
    } else {
      if (mag != 1) out << mag << "*";
      out << "L";
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

LPolynomial proj_space(int m) {
  if (m < 0) throw Error("projective dimension must be nonnegative");
  LPolynomial p;
  for (int i = 0; i <= m; ++i) p += LPolynomial::monomial(i);
  return p;
}

namespace {

const LPolynomial kOne(BigInt(1));
const LPolynomial kL = LPolynomial::lefschetz();
const LPolynomial kLm1 = kL - kOne;

// y and y' sequences up to index i (1-based).
std::vector<WsPair> ws_y_seq(int i) {
  std::vector<WsPair> seq(i + 1);
  seq[1] = {LPolynomial(), LPolynomial()};  // y_1 = y'_1 = 0
  for (int k = 1; k < i; ++k) {
    LPolynomial y = kOne + kL * seq[k].y_prime + kL * proj_space(2 * k - 2) -
                    kL * seq[k].y;
    LPolynomial yp = kL + y + kL * kLm1 * seq[k].y_prime;
    seq[k + 1] = {std::move(y), std::move(yp)};
  }
  return seq;
}

LPolynomial pow_poly(const LPolynomial& base, int e) {
  LPolynomial acc(BigInt(1));
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

}  // namespace

WsPair ws_y(int i) {
  if (i < 1) throw Error("ws_y needs i >= 1");
  return ws_y_seq(i)[i];
}

LPolynomial ws_T(int n) {
  if (n < 2) throw Error("ws_T needs n >= 2");
  auto y = ws_y_seq(std::max(1, n - 1));
  std::vector<LPolynomial> T(n + 1);
  T[2] = LPolynomial(BigInt(2));
  for (int m = 3; m <= n; ++m) {
    LPolynomial acc = proj_space(2 * m - 4);
    for (int i = 1; i <= m - 2; ++i) {
      LPolynomial head =
          LPolynomial::monomial(2 * i - 1) - y[i].y * kLm1 - kOne;
      acc += head * (y[m - i].y - T[m - i]);
    }
    for (int i = 1; i <= m - 2; ++i)
      acc += LPolynomial::monomial(m - i) * pow_poly(kLm1, m - 2 - i) *
             (kOne + kLm1 * y[i].y);
    acc += kOne + kLm1 * y[m - 1].y;
    T[m] = std::move(acc);
  }
  return T[n];
}

LPolynomial ws_class(int m) {
  if (m < 3) throw Error("ws_class needs a wheel with at least 3 spokes");
  const int n = m - 1;
  const LPolynomial l2 = LPolynomial::monomial(2);
  LPolynomial yp = ws_y(std::max(1, n - 1)).y_prime;
  return kOne + kL + l2 * proj_space(2 * n - 2) + l2 +
         LPolynomial(BigInt(2)) * l2 * kLm1 * (kOne + kL * yp) -
         l2 * kLm1 * ws_T(n);
}

LPolynomial f1_polynomial() {
  // q^13 + q^11 + 23q^10 - 78q^9 + 90q^8 - 35q^7 + (q-2)q^6 - 34q^5
  //   + 66q^4 - 32q^3 + (q-1)q^2, with the composite terms expanded.
  LPolynomial f;
  f += LPolynomial::monomial(13);
  f += LPolynomial::monomial(11);
  f += LPolynomial::monomial(10, BigInt(23));
  f += LPolynomial::monomial(9, BigInt(-78));
  f += LPolynomial::monomial(8, BigInt(90));
  f += LPolynomial::monomial(7, BigInt(-34));
  f += LPolynomial::monomial(6, BigInt(-2));
  f += LPolynomial::monomial(5, BigInt(-34));
  f += LPolynomial::monomial(4, BigInt(66));
  f += LPolynomial::monomial(3, BigInt(-31));
  f += LPolynomial::monomial(2, BigInt(-1));
  return f;
}

BigInt predicted_count(std::uint64_t q) {
  if (q < 2) throw NotAPrimePower("q must be a prime power >= 2");
  std::uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (p * p > q) p = q;
  std::uint64_t rest = q;
  while (rest % p == 0) rest /= p;
  if (rest != 1) throw NotAPrimePower(std::to_string(q) + " is not a prime power");
  BigInt val = f1_polynomial().evaluate(BigInt(q));
  if (p == 2) val -= BigInt(q - 1) * q * q;
  return val;
}

}  // namespace hypercount
