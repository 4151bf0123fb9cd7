#include "hypercount/ffield.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>

#include "hypercount/errors.hpp"

namespace hypercount {

namespace {

constexpr std::uint32_t kTableLimit = 1024;

struct PrimePower {
  std::uint32_t p;
  std::uint32_t k;
};

PrimePower decompose(std::uint64_t q) {
  if (q < 2) throw NotAPrimePower("q must be at least 2, got " + std::to_string(q));
  if (q > kMaxFieldSize) throw TooLarge("q exceeds 2^20: " + std::to_string(q));
  std::uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (p * p > q) p = q;  // q itself is prime
  std::uint32_t k = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1)
    throw NotAPrimePower(std::to_string(q) + " has more than one prime factor");
  return {static_cast<std::uint32_t>(p), k};
}

// Dense coefficient vectors over F_p, constant term first, no trailing-zero
// guarantees; used only for modulus search and slow-path reduction.
using Poly = std::vector<std::uint32_t>;

int poly_degree(const Poly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

// Remainder of f mod g (g monic of degree dg > 0), both over F_p.
Poly poly_rem(Poly f, const Poly& g, int dg, std::uint32_t p) {
  for (int i = static_cast<int>(f.size()) - 1; i >= dg; --i) {
    std::uint32_t c = f[i];
    if (c == 0) continue;
    f[i] = 0;
    for (int j = 0; j < dg; ++j) {
      std::uint64_t t = f[i - dg + j] + static_cast<std::uint64_t>(p - g[j] % p) * c % p;
      f[i - dg + j] = static_cast<std::uint32_t>(t % p);
    }
  }
  f.resize(dg);
  return f;
}

// Irreducibility by trial division against every monic divisor of degree
// 1..k/2.  Divisor counts stay below sqrt(q) <= 2^10, so this is cheap at
// the field sizes we allow.
bool is_irreducible(const Poly& f, std::uint32_t k, std::uint32_t p) {
  if (f[k] != 1) return false;
  if (f[0] == 0) return false;  // divisible by x
  for (std::uint32_t d = 1; 2 * d <= k; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly g(d + 1, 0);
      g[d] = 1;
      std::uint64_t rest = c;
      for (std::uint32_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      Poly r = poly_rem(f, g, static_cast<int>(d), p);
      if (poly_degree(r) < 0) return false;
    }
  }
  return true;
}

// Smallest monic irreducible of degree k, coefficients compared
// low-degree first.
Poly find_modulus(std::uint32_t p, std::uint32_t k) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t key = 0; key < count; ++key) {
    // Decode with c_0 as the most significant digit so that ascending key
    // order is ascending low-degree-first lexicographic order.
    Poly f(k + 1, 0);
    f[k] = 1;
    std::uint64_t rest = key;
    for (int i = static_cast<int>(k) - 1; i >= 0; --i) {
      f[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    if (is_irreducible(f, k, p)) return f;
  }
  throw Error("no irreducible modulus found (unreachable)");
}

}  // namespace

Fq::Fq(std::uint64_t q) { init(q, {}, true); }

Fq::Fq(std::uint64_t q, std::vector<std::uint32_t> modulus) {
  init(q, std::move(modulus), false);
}

void Fq::init(std::uint64_t q, std::vector<std::uint32_t> modulus, bool pick_modulus) {
  PrimePower pp = decompose(q);
  p_ = pp.p;
  k_ = pp.k;
  q_ = static_cast<std::uint32_t>(q);
  if (k_ == 1) {
    if (!pick_modulus && !modulus.empty())
      throw Error("prime field takes no modulus");
    modulus_.clear();
  } else if (pick_modulus) {
    modulus_ = find_modulus(p_, k_);
  } else {
    if (modulus.size() != k_ + 1)
      throw Error("modulus must have degree k = " + std::to_string(k_));
    for (auto& c : modulus) c %= p_;
    if (!is_irreducible(modulus, k_, p_))
      throw Error("modulus is not monic irreducible over F_p");
    modulus_ = std::move(modulus);
  }
  if (q_ <= kTableLimit) build_tables();
}

std::vector<std::uint32_t> Fq::digits(Fe a) const {
  std::vector<std::uint32_t> d(k_);
  for (std::uint32_t i = 0; i < k_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

Fe Fq::from_digits(std::span<const std::uint32_t> d) const {
  Fe a = 0;
  for (std::uint32_t i = std::min<std::uint32_t>(k_, static_cast<std::uint32_t>(d.size()));
       i-- > 0;)
    a = a * p_ + d[i] % p_;
  return a;
}

Fe Fq::add_slow(Fe a, Fe b) const {
  if (k_ == 1) return (a + b) % p_;
  Fe r = 0, mult = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    r += (a % p_ + b % p_) % p_ * mult;
    a /= p_;
    b /= p_;
    mult *= p_;
  }
  return r;
}

Fe Fq::neg_slow(Fe a) const {
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  Fe r = 0, mult = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    std::uint32_t d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * mult;
    a /= p_;
    mult *= p_;
  }
  return r;
}

Fe Fq::mul_slow(Fe a, Fe b) const {
  if (k_ == 1) return static_cast<Fe>(static_cast<std::uint64_t>(a) * b % p_);
  // Schoolbook product, then reduction by the monic modulus.
  std::array<std::uint64_t, 48> prod{};
  std::array<std::uint32_t, 24> da{}, db{};
  for (std::uint32_t i = 0; i < k_; ++i) {
    da[i] = a % p_;
    a /= p_;
    db[i] = b % p_;
    b /= p_;
  }
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (da[i] == 0) continue;
    for (std::uint32_t j = 0; j < k_; ++j)
      prod[i + j] += static_cast<std::uint64_t>(da[i]) * db[j];
  }
  for (int i = 2 * static_cast<int>(k_) - 2; i >= static_cast<int>(k_); --i) {
    std::uint64_t c = prod[i] % p_;
    if (c == 0) continue;
    // x^i = x^(i-k) * (-(m_0 + ... + m_{k-1} x^{k-1}))
    for (std::uint32_t j = 0; j < k_; ++j)
      prod[i - k_ + j] += c * (p_ - modulus_[j] % p_);
  }
  Fe r = 0, mult = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    r += static_cast<Fe>(prod[i] % p_) * mult;
    mult *= p_;
  }
  return r;
}

Fe Fq::pow(Fe a, std::uint64_t e) const {
  Fe r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Fe Fq::inv_nontable(Fe a) const {
  if (a == 0) throw DivisionByZero("inverse of zero");
  if (k_ == 1) {
    // Extended Euclid on machine words.
    std::int64_t t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
      std::int64_t qq = r / nr;
      std::int64_t tmp = t - qq * nt;
      t = nt;
      nt = tmp;
      tmp = r - qq * nr;
      r = nr;
      nr = tmp;
    }
    return static_cast<Fe>(t < 0 ? t + p_ : t);
  }
  return pow(a, static_cast<std::uint64_t>(q_) - 2);
}

Fe Fq::inv(Fe a) const {
  if (a == 0) throw DivisionByZero("inverse of zero");
  return inv_table_.empty() ? inv_nontable(a) : inv_table_[a];
}

void Fq::build_tables() {
  std::size_t n = q_;
  add_table_.resize(n * n);
  mul_table_.resize(n * n);
  neg_table_.resize(n);
  for (Fe a = 0; a < q_; ++a) {
    neg_table_[a] = neg_slow(a);
    for (Fe b = 0; b < q_; ++b) {
      add_table_[a * n + b] = add_slow(a, b);
      mul_table_[a * n + b] = mul_slow(a, b);
    }
  }
  inv_table_.assign(n, 0);
  for (Fe a = 1; a < q_; ++a) inv_table_[a] = inv_nontable(a);
  if (p_ != 2) {
    sqrt_table_.assign(n, q_);
    for (Fe x = 0; x < q_; ++x) {
      Fe s = mul_table_[x * n + x];
      if (sqrt_table_[s] == q_) sqrt_table_[s] = x;
    }
  } else {
    artin_table_.assign(n, q_);
    for (Fe y = 0; y < q_; ++y) {
      Fe v = add(mul(y, y), y);
      if (artin_table_[v] == q_) artin_table_[v] = y;
    }
  }
}

Fe Fq::sqrt_or_q(Fe a) const {
  if (!sqrt_table_.empty()) return sqrt_table_[a];
  for (Fe x = 0; x < q_; ++x)
    if (mul(x, x) == a) return x;
  return q_;
}

Fe Fq::artin_or_q(Fe v) const {
  if (!artin_table_.empty()) return artin_table_[v];
  for (Fe y = 0; y < q_; ++y)
    if (add(mul(y, y), y) == v) return y;
  return q_;
}

int Fq::quadratic_roots(Fe c2, Fe c1, Fe c0, std::array<Fe, 2>& roots) const {
  if (c2 == 0) {
    if (c1 == 0) return c0 == 0 ? -1 : 0;
    roots[0] = mul(neg(c0), inv(c1));
    return 1;
  }
  // Monic: x^2 + Bx + C.
  Fe c2i = inv(c2);
  Fe B = mul(c1, c2i), C = mul(c0, c2i);
  if (p_ == 2) {
    if (B == 0) {
      // x^2 = C has the unique root C^(q/2) (Frobenius is bijective).
      roots[0] = pow(C, q_ / 2);
      return 1;
    }
    // x = B y turns the equation into y^2 + y = C / B^2.
    Fe v = mul(C, inv(mul(B, B)));
    Fe y = artin_or_q(v);
    if (y == q_) return 0;
    roots[0] = mul(B, y);
    roots[1] = mul(B, add(y, 1));
    return 2;
  }
  Fe disc = sub(mul(B, B), mul(from_int(4), C));
  Fe half = inv(from_int(2));
  if (disc == 0) {
    roots[0] = mul(neg(B), half);
    return 1;
  }
  Fe s = sqrt_or_q(disc);
  if (s == q_) return 0;
  roots[0] = mul(add(neg(B), s), half);
  roots[1] = mul(sub(neg(B), s), half);
  return 2;
}

Fq make_field(std::uint64_t q) { return Fq(q); }

std::vector<Fe> enumerate_elements(const Fq& f) {
  std::vector<Fe> e(f.q());
  std::iota(e.begin(), e.end(), 0u);
  return e;
}

}  // namespace hypercount
