#include "hypercount/matteval.hpp"

#include <algorithm>
#include <string>

#include "hypercount/errors.hpp"

namespace hypercount {

EvaluatedMatrix::EvaluatedMatrix(const Fq& field, int dim)
    : field_(&field), dim_(dim), m_(static_cast<std::size_t>(dim) * dim, 0) {
  if (dim < 1) throw Error("matrix dimension must be positive");
}

bool EvaluatedMatrix::is_symmetric() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

Fe det_in_place(const Fq& f, Fe* m, int n) {
  Fe det = 1;
  bool negate = false;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m[r * n + c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int cc = c; cc < n; ++cc) std::swap(m[c * n + cc], m[piv * n + cc]);
      negate = !negate;
    }
    Fe d = m[c * n + c];
    det = f.mul(det, d);
    Fe dinv = f.inv(d);
    for (int r = c + 1; r < n; ++r) {
      Fe lead = m[r * n + c];
      if (lead == 0) continue;
      Fe fac = f.mul(lead, dinv);
      m[r * n + c] = 0;
      for (int cc = c + 1; cc < n; ++cc)
        m[r * n + cc] = f.sub(m[r * n + cc], f.mul(fac, m[c * n + cc]));
    }
  }
  return negate ? f.neg(det) : det;
}

Fe EvaluatedMatrix::determinant() const {
  std::vector<Fe> scratch(m_);
  return det_in_place(*field_, scratch.data(), dim_);
}

namespace {

// Entry table of the XStrip matrix.  Each entry is a short signed
// combination of the A variables; the diagonal holds B_i.
void fill_xstrip(const Fq& f, const Fe* a, const Fe* b, Fe* m) {
  const Fe a0 = a[0], a1 = a[1], a2 = a[2], a3 = a[3], a4 = a[4], a5 = a[5],
           a6 = a[6];
  const Fe a2p3 = f.add(a2, a3);
  const Fe a3m4 = f.sub(a3, a4);
  const Fe a3m1 = f.sub(a3, a1);
  const Fe a3p6 = f.add(a3, a6);
  const Fe z = 0;
  const Fe rows[7][7] = {
      {b[0], a0, a2, a1, z, z, a1},
      {a0, b[1], a2p3, a3, z, a3, a3},
      {a2, a2p3, b[2], a3m4, a4, a3, a3},
      {a1, a3, a3m4, b[3], a4, a3, a3m1},
      {z, z, a4, a4, b[4], a5, a6},
      {z, a3, a3, a3, a5, b[5], a3p6},
      {a1, a3, a3, a3m1, a6, a3p6, b[6]},
  };
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) m[i * 7 + j] = rows[i][j];
}

}  // namespace

EvaluatedMatrix xstrip_matrix(const Fq& f, std::span<const Fe, 7> a,
                              std::span<const Fe, 7> b) {
  EvaluatedMatrix m(f, 7);
  Fe buf[49];
  fill_xstrip(f, a.data(), b.data(), buf);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) m.set(i, j, buf[i * 7 + j]);
  if (!m.is_symmetric()) throw InvariantViolation("xstrip matrix not symmetric");
  return m;
}

EvaluatedMatrix ws_matrix(const Fq& f, std::span<const Fe> a,
                          std::span<const Fe> b) {
  const int m = static_cast<int>(a.size());
  if (m < 3 || b.size() != a.size())
    throw Error("ws matrix needs m >= 3 with m diagonal and m off-diagonal values");
  EvaluatedMatrix mat(f, m);
  for (int i = 0; i < m; ++i) mat.set(i, i, b[i]);
  for (int i = 0; i + 1 < m; ++i) {
    mat.set(i, i + 1, a[i]);
    mat.set(i + 1, i, a[i]);
  }
  mat.set(0, m - 1, a[m - 1]);
  mat.set(m - 1, 0, a[m - 1]);
  if (!mat.is_symmetric()) throw InvariantViolation("ws matrix not symmetric");
  return mat;
}

Fe xstrip_det(const Fq& f, const Fe* a, const Fe* b) {
  Fe m[49];
  fill_xstrip(f, a, b, m);
  return det_in_place(f, m, 7);
}

Fe xstrip_trailing_minor(const Fq& f, int k, const Fe* a, const Fe* b) {
  Fe m[49];
  fill_xstrip(f, a, b, m);
  Fe sub[49];
  const int off = 7 - k;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) sub[i * k + j] = m[(i + off) * 7 + (j + off)];
  return det_in_place(f, sub, k);
}

Fe xstrip_g6(const Fq& f, const Fe* a, const Fe* b) {
  Fe b0[7] = {0, b[1], b[2], b[3], b[4], b[5], b[6]};
  return f.neg(xstrip_det(f, a, b0));
}

Fe xstrip_g5(const Fq& f, const Fe* a, const Fe* b) {
  Fe bb[7] = {b[0], 0, b[2], b[3], b[4], b[5], b[6]};
  return f.neg(xstrip_trailing_minor(f, 6, a, bb));
}

Fe xstrip_g4(const Fq& f, const Fe* a, const Fe* b) {
  Fe bb[7] = {b[0], b[1], 0, b[3], b[4], b[5], b[6]};
  return f.neg(xstrip_trailing_minor(f, 5, a, bb));
}

Fe xstrip_g6tilde(const Fq& f, const Fe* a, const Fe* b) {
  Fe aa[7] = {0, a[1], a[2], a[3], a[4], a[5], a[6]};
  return xstrip_g6(f, aa, b);
}

Fe xstrip_g6tilde_lin(const Fq& f, const Fe* a, const Fe* b) {
  // G~_6 is linear in B_1, so two evaluations recover the coefficient.
  Fe b1[7] = {b[0], 1, b[2], b[3], b[4], b[5], b[6]};
  Fe b0[7] = {b[0], 0, b[2], b[3], b[4], b[5], b[6]};
  return f.sub(xstrip_g6tilde(f, a, b1), xstrip_g6tilde(f, a, b0));
}

Fe xstrip_g6tilde_const(const Fq& f, const Fe* a, const Fe* b) {
  Fe b0[7] = {b[0], 0, b[2], b[3], b[4], b[5], b[6]};
  return xstrip_g6tilde(f, a, b0);
}

namespace {

struct VarNeed {
  std::uint16_t a;  // bit i set: needs A_i
  std::uint16_t b;
};

VarNeed minor_needs(Minor sel) {
  // Variable sets read by each selector, per the matrix entry table.
  constexpr std::uint16_t kA_I3 = 0b1101000;       // A_3, A_5, A_6
  constexpr std::uint16_t kA_I4 = 0b1111010;       // + A_1, A_4
  constexpr std::uint16_t kA_I6 = 0b1111110;       // + A_2
  constexpr std::uint16_t kA_all = 0b1111111;
  switch (sel) {
    case Minor::kI1: return {0, 0b1000000};
    case Minor::kI2: return {0b1001000, 0b1100000};
    case Minor::kI3: return {kA_I3, 0b1110000};
    case Minor::kI4: return {kA_I4, 0b1111000};
    case Minor::kI5: return {kA_I4, 0b1111100};
    case Minor::kI6: return {kA_I6, 0b1111110};
    case Minor::kI7: return {kA_all, 0b1111111};
    case Minor::kG6: return {kA_all, 0b1111110};
    case Minor::kG5: return {kA_I6, 0b1111100};
    case Minor::kG4: return {kA_I4, 0b1111000};
    case Minor::kG6Tilde: return {kA_I6, 0b1111110};
    case Minor::kG6TildeLin: return {kA_I6, 0b1111100};
    case Minor::kG6TildeConst: return {kA_I6, 0b1111100};
    case Minor::kFull: return {kA_all, 0b1111111};
  }
  throw Error("bad minor selector");
}

}  // namespace

Fe xstrip_minor(const Fq& f, Minor sel, const XStripPoint& pt) {
  VarNeed need = minor_needs(sel);
  Fe a[7] = {0, 0, 0, 0, 0, 0, 0}, b[7] = {0, 0, 0, 0, 0, 0, 0};
  for (int i = 0; i < 7; ++i) {
    if (need.a >> i & 1) {
      if (!pt.a[i]) throw MissingVariable("selector reads A_" + std::to_string(i));
      a[i] = *pt.a[i];
    } else if (pt.a[i]) {
      a[i] = *pt.a[i];
    }
    if (need.b >> i & 1) {
      if (!pt.b[i]) throw MissingVariable("selector reads B_" + std::to_string(i));
      b[i] = *pt.b[i];
    } else if (pt.b[i]) {
      b[i] = *pt.b[i];
    }
  }
  switch (sel) {
    case Minor::kI1: return xstrip_trailing_minor(f, 1, a, b);
    case Minor::kI2: return xstrip_trailing_minor(f, 2, a, b);
    case Minor::kI3: return xstrip_trailing_minor(f, 3, a, b);
    case Minor::kI4: return xstrip_trailing_minor(f, 4, a, b);
    case Minor::kI5: return xstrip_trailing_minor(f, 5, a, b);
    case Minor::kI6: return xstrip_trailing_minor(f, 6, a, b);
    case Minor::kI7: return xstrip_trailing_minor(f, 7, a, b);
    case Minor::kG6: return xstrip_g6(f, a, b);
    case Minor::kG5: return xstrip_g5(f, a, b);
    case Minor::kG4: return xstrip_g4(f, a, b);
    case Minor::kG6Tilde: return xstrip_g6tilde(f, a, b);
    case Minor::kG6TildeLin: return xstrip_g6tilde_lin(f, a, b);
    case Minor::kG6TildeConst: return xstrip_g6tilde_const(f, a, b);
    case Minor::kFull: return xstrip_det(f, a, b);
  }
  throw Error("bad minor selector");
}

bool desnanot_jacobi_check(const Fq& f, std::span<const Fe> diag,
                           std::span<const Fe> off) {
  const int n = static_cast<int>(diag.size());
  if (n < 3 || off.size() + 1 != diag.size())
    throw Error("tridiagonal data needs n >= 3 diagonal and n-1 off-diagonal values");
  auto tridet = [&](int lo, int hi) {  // det over indices [lo, hi)
    if (lo >= hi) return Fe{1};
    const int m = hi - lo;
    std::vector<Fe> buf(static_cast<std::size_t>(m) * m, 0);
    for (int i = 0; i < m; ++i) {
      buf[i * m + i] = diag[lo + i];
      if (i + 1 < m) {
        buf[i * m + i + 1] = off[lo + i];
        buf[(i + 1) * m + i] = off[lo + i];
      }
    }
    return det_in_place(f, buf.data(), m);
  };
  Fe i_full = tridet(0, n);        // det(1..n)
  Fe i_tail = tridet(1, n);        // det(2..n)
  Fe i_head = tridet(0, n - 1);    // det(1..n-1)
  Fe i_inner = tridet(1, n - 1);   // det(2..n-1)
  Fe s = 1;
  for (Fe e : off) s = f.mul(s, e);
  Fe lhs = f.sub(f.mul(i_head, i_tail), f.mul(s, s));
  Fe rhs = f.mul(i_full, i_inner);
  return lhs == rhs;
}

}  // namespace hypercount
