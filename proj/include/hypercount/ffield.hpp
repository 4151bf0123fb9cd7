#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace hypercount {

/// Canonical element id in [0, q): the residue vector (c_0, ..., c_{k-1})
/// packed base p as c_0 + c_1*p + ... .  0 and 1 are the field's 0 and 1.
using Fe = std::uint32_t;

inline constexpr std::uint64_t kMaxFieldSize = 1u << 20;

/// Exact arithmetic in F_q for a prime power q = p^k.  The default
/// constructor picks the lexicographically smallest monic irreducible
/// modulus (coefficients compared low-degree first), so element encodings
/// are identical across runs.  Immutable after construction; all
/// operations are pure and safe to share across threads.
class Fq {
 public:
  explicit Fq(std::uint64_t q);
  Fq(std::uint64_t q, std::vector<std::uint32_t> modulus);

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t q() const { return q_; }

  /// Modulus coefficients c[0..k] (constant term first, c[k] = 1).
  /// Empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Fe add(Fe a, Fe b) const {
    return add_table_.empty() ? add_slow(a, b) : add_table_[a * q_ + b];
  }
  Fe mul(Fe a, Fe b) const {
    return mul_table_.empty() ? mul_slow(a, b) : mul_table_[a * q_ + b];
  }
  Fe neg(Fe a) const { return neg_table_.empty() ? neg_slow(a) : neg_table_[a]; }
  Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }
  Fe inv(Fe a) const;
  Fe pow(Fe a, std::uint64_t e) const;

  /// n mod p embedded as a constant.
  Fe from_int(std::uint64_t n) const { return static_cast<Fe>(n % p_); }

  std::vector<std::uint32_t> digits(Fe a) const;
  Fe from_digits(std::span<const std::uint32_t> d) const;

  /// Solutions of c2 x^2 + c1 x + c0 = 0.  Returns the number of distinct
  /// roots written to `roots`, or -1 when the polynomial is identically
  /// zero (every element is a root).
  int quadratic_roots(Fe c2, Fe c1, Fe c0, std::array<Fe, 2>& roots) const;

  bool has_tables() const { return !mul_table_.empty(); }

 private:
  void init(std::uint64_t q, std::vector<std::uint32_t> modulus, bool pick_modulus);
  void build_tables();
  Fe add_slow(Fe a, Fe b) const;
  Fe mul_slow(Fe a, Fe b) const;
  Fe neg_slow(Fe a) const;
  Fe inv_nontable(Fe a) const;
  Fe sqrt_or_q(Fe a) const;   // odd p: a square root of a, or q() if none
  Fe artin_or_q(Fe v) const;  // p == 2: y with y^2 + y = v, or q() if none

  std::uint32_t p_ = 0, k_ = 0, q_ = 0;
  std::vector<std::uint32_t> modulus_;
  // Lookup tables, built for small fields (q <= 1024); larger fields fall
  // back to digit arithmetic.
  std::vector<Fe> add_table_, mul_table_, neg_table_, inv_table_;
  std::vector<Fe> sqrt_table_;   // odd p: sqrt_table_[x^2] = x (or q_)
  std::vector<Fe> artin_table_;  // p == 2: artin_table_[y^2 + y] = y (or q_)
};

/// make_field: prime-power decomposition + canonical modulus.
/// Throws NotAPrimePower / TooLarge.
Fq make_field(std::uint64_t q);

/// All q elements, 0 first, then 1; deterministic order.
std::vector<Fe> enumerate_elements(const Fq& f);

}  // namespace hypercount
