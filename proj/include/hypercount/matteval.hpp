#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "hypercount/ffield.hpp"

namespace hypercount {

/// Square matrix over a field, entries as canonical element ids.
class EvaluatedMatrix {
 public:
  EvaluatedMatrix(const Fq& field, int dim);

  int dim() const { return dim_; }
  const Fq& field() const { return *field_; }
  Fe at(int i, int j) const { return m_[static_cast<std::size_t>(i) * dim_ + j]; }
  void set(int i, int j, Fe v) { m_[static_cast<std::size_t>(i) * dim_ + j] = v; }
  bool is_symmetric() const;

  /// Exact determinant by elimination with row pivoting.
  Fe determinant() const;

 private:
  const Fq* field_;
  int dim_;
  std::vector<Fe> m_;
};

/// Determinant kernel on a row-major n x n scratch buffer (destroyed).
Fe det_in_place(const Fq& f, Fe* m, int n);

/// The explicit 7x7 symmetric matrix of the XStrip hypersurface in the
/// variables A_0..A_6, B_0..B_6.
EvaluatedMatrix xstrip_matrix(const Fq& f, std::span<const Fe, 7> a,
                              std::span<const Fe, 7> b);

/// Cyclic tridiagonal m x m matrix of the wheel-with-spokes family:
/// diagonal B_0..B_{m-1}, off-diagonals A_0..A_{m-2}, corners A_{m-1}.
EvaluatedMatrix ws_matrix(const Fq& f, std::span<const Fe> a,
                          std::span<const Fe> b);

/// Minor selectors on the XStrip matrix.  I_k is the trailing k x k
/// principal minor; the G's are the linear-expansion remainders
/// I_{k+1} = B_{6-k} I_k - G_k; the tilde variants restrict A_0 = 0 and
/// split off the B_1 coefficient.
enum class Minor {
  kI1, kI2, kI3, kI4, kI5, kI6, kI7,
  kG6, kG5, kG4,
  kG6Tilde,       // G_6 restricted to A_0 = 0
  kG6TildeLin,    // coefficient of B_1 in G~_6
  kG6TildeConst,  // G~_6 restricted to B_1 = 0
  kFull,          // det of the whole matrix
};

/// A point with only some variables supplied; evaluation throws
/// MissingVariable when a selector reads an absent one.
struct XStripPoint {
  std::array<std::optional<Fe>, 7> a, b;
};

Fe xstrip_minor(const Fq& f, Minor sel, const XStripPoint& pt);

// Fast kernels used by the counting loops: full 7-element coordinate
// arrays; slots a selector does not read may hold anything.
Fe xstrip_det(const Fq& f, const Fe* a, const Fe* b);
Fe xstrip_trailing_minor(const Fq& f, int k, const Fe* a, const Fe* b);
Fe xstrip_g6(const Fq& f, const Fe* a, const Fe* b);
Fe xstrip_g5(const Fq& f, const Fe* a, const Fe* b);
Fe xstrip_g4(const Fq& f, const Fe* a, const Fe* b);
Fe xstrip_g6tilde(const Fq& f, const Fe* a, const Fe* b);  // reads b[1]
Fe xstrip_g6tilde_lin(const Fq& f, const Fe* a, const Fe* b);
Fe xstrip_g6tilde_const(const Fq& f, const Fe* a, const Fe* b);

/// Desnanot-Jacobi identity for the tridiagonal matrix with diagonal
/// `diag` and off-diagonal `off` (no corner entries):
///   det(1..n-1) * det(2..n) - (prod off)^2 = det(1..n) * det(2..n-1).
/// Returns true iff the identity holds at the given point.
bool desnanot_jacobi_check(const Fq& f, std::span<const Fe> diag,
                           std::span<const Fe> off);

}  // namespace hypercount
