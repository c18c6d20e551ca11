#include "torusnielsen/intlat.hpp"

#include <utility>

#include "torusnielsen/errors.hpp"

namespace tn::intlat {
namespace {

// Replaces columns (c, k) of M by (s*col_c + t*col_k, u*col_c + w*col_k).
void mix_columns(IntMatrix& M, std::size_t c, std::size_t k, const Int& s,
                 const Int& t, const Int& u, const Int& w) {
  for (std::size_t r = 0; r < M.rows(); ++r) {
    Int x = M(r, c);
    Int y = M(r, k);
    M(r, c) = s * x + t * y;
    M(r, k) = u * x + w * y;
  }
}

std::size_t pivot_row(const IntMatrix& basis, std::size_t col) {
  for (std::size_t r = 0; r < basis.rows(); ++r)
    if (basis(r, col) != 0) return r;
  throw Error(ErrorCode::InternalInconsistency, "zero column in lattice basis");
}

// Smith form bookkeeping: every row/column operation on S is mirrored on the
// transforms and, inverted, on their inverses.
struct SmithState {
  IntMatrix S, U, V, U_inv, V_inv;

  void row_swap(std::size_t a, std::size_t b) {
    S.swap_rows(a, b);
    U.swap_rows(a, b);
    U_inv.swap_columns(a, b);
  }
  void col_swap(std::size_t a, std::size_t b) {
    S.swap_columns(a, b);
    V.swap_columns(a, b);
    V_inv.swap_rows(a, b);
  }
  // row[dst] += f * row[src]
  void row_add(std::size_t dst, std::size_t src, const Int& f) {
    S.add_row_multiple(dst, src, f);
    U.add_row_multiple(dst, src, f);
    U_inv.add_column_multiple(src, dst, -f);
  }
  // col[dst] += f * col[src]
  void col_add(std::size_t dst, std::size_t src, const Int& f) {
    S.add_column_multiple(dst, src, f);
    V.add_column_multiple(dst, src, f);
    V_inv.add_row_multiple(src, dst, -f);
  }
  void row_negate(std::size_t r) {
    S.negate_row(r);
    U.negate_row(r);
    U_inv.negate_column(r);
  }
};

}  // namespace

HermiteDecomposition hnf(const IntMatrix& A) {
  IntMatrix H = A;
  IntMatrix U = IntMatrix::identity(A.cols());
  std::size_t c = 0;
  for (std::size_t i = 0; i < H.rows() && c < H.cols(); ++i) {
    for (std::size_t k = c + 1; k < H.cols(); ++k) {
      if (H(i, k) == 0) continue;
      if (H(i, c) == 0) {
        H.swap_columns(c, k);
        U.swap_columns(c, k);
        continue;
      }
      const Int a = H(i, c);
      const Int b = H(i, k);
      if (divides(a, b)) {
        const Int q = b / a;
        H.add_column_multiple(k, c, -q);
        U.add_column_multiple(k, c, -q);
        continue;
      }
      const auto eg = extended_gcd(a, b);
      const Int a_g = a / eg.g;
      const Int b_g = b / eg.g;
      mix_columns(H, c, k, eg.s, eg.t, -b_g, a_g);
      mix_columns(U, c, k, eg.s, eg.t, -b_g, a_g);
    }
    if (H(i, c) == 0) continue;
    if (H(i, c) < 0) {
      H.negate_column(c);
      U.negate_column(c);
    }
    const Int pivot = H(i, c);
    for (std::size_t j = 0; j < c; ++j) {
      const Int q = floor_div(H(i, j), pivot);
      H.add_column_multiple(j, c, -q);
      U.add_column_multiple(j, c, -q);
    }
    ++c;
  }
  return {std::move(H), std::move(U), c};
}

SmithDecomposition snf(const IntMatrix& A) {
  const std::size_t rows = A.rows();
  const std::size_t cols = A.cols();
  SmithState st{A, IntMatrix::identity(rows), IntMatrix::identity(cols),
                IntMatrix::identity(rows), IntMatrix::identity(cols)};
  IntMatrix& S = st.S;
  const std::size_t steps = std::min(rows, cols);
  std::size_t rank = 0;

  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool found = false;
      std::size_t pr = t, pc = t;
      Int best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (S(i, j) == 0) continue;
          Int m = abs(S(i, j));
          if (!found || m < best) {
            found = true;
            best = m;
            pr = i;
            pc = j;
          }
        }
      if (!found) break;
      st.row_swap(t, pr);
      st.col_swap(t, pc);

      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (S(i, t) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
        st.row_add(i, t, -q);
        if (S(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (S(t, j) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
        st.col_add(j, t, -q);
        if (S(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // Divisibility chain: fold an offending row into row t and retry.
      bool chain_ok = true;
      for (std::size_t i = t + 1; i < rows && chain_ok; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!divides(S(t, t), S(i, j))) {
            st.row_add(t, i, Int(1));
            chain_ok = false;
            break;
          }
      if (chain_ok) break;
    }
    if (S(t, t) == 0) break;
    if (S(t, t) < 0) st.row_negate(t);
    ++rank;
  }

  SmithDecomposition out;
  out.diag.resize(steps);
  for (std::size_t t = 0; t < steps; ++t) out.diag[t] = st.S(t, t);
  out.S = std::move(st.S);
  out.U = std::move(st.U);
  out.V = std::move(st.V);
  out.U_inv = std::move(st.U_inv);
  out.V_inv = std::move(st.V_inv);
  out.rank = rank;
  return out;
}

std::size_t rank(const IntMatrix& A) { return hnf(A).rank; }

LatticeBasis image_lattice(const IntMatrix& A) {
  auto h = hnf(A);
  return {A.rows(), h.form.columns(0, h.rank)};
}

LatticeBasis saturation(const LatticeBasis& L) {
  if (L.empty()) return {L.ambient_dim, IntMatrix(L.ambient_dim, 0)};
  auto s = snf(L.basis);
  return image_lattice(s.U_inv.columns(0, s.rank));
}

LatticeBasis kernel(const IntMatrix& A) {
  auto h = hnf(A);
  return image_lattice(h.transform.columns(h.rank, A.cols() - h.rank));
}

LatticeBasis lattice_sum(const LatticeBasis& a, const LatticeBasis& b) {
  if (a.ambient_dim != b.ambient_dim)
    throw Error(ErrorCode::DimMismatch, "lattice_sum");
  return image_lattice(a.basis.append_columns(b.basis));
}

std::optional<IntVector> solve(const IntMatrix& A, const IntVector& b) {
  if (b.size() != A.rows()) throw Error(ErrorCode::DimMismatch, "solve");
  auto s = snf(A);
  const IntVector c = s.U * b;
  IntVector y(A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    if (i < s.rank) {
      if (!divides(s.diag[i], c[i])) return std::nullopt;
      y[i] = c[i] / s.diag[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V * y;
}

Int det(const IntMatrix& A) {
  if (!A.is_square())
    throw Error(ErrorCode::NonSquare, "det of " + std::to_string(A.rows()) + "x" +
                                          std::to_string(A.cols()) + " matrix");
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  IntMatrix M = A;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && M(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      M.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        M(i, j) = v;
      }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

IntVector reduce_modulo(const LatticeBasis& L, const IntVector& x) {
  if (x.size() != L.ambient_dim)
    throw Error(ErrorCode::DimMismatch, "reduce_modulo");
  IntVector r = x;
  for (std::size_t j = 0; j < L.rank(); ++j) {
    const std::size_t p = pivot_row(L.basis, j);
    const Int q = floor_div(r[p], L.basis(p, j));
    if (q == 0) continue;
    for (std::size_t i = p; i < r.size(); ++i) r[i] -= q * L.basis(i, j);
  }
  return r;
}

std::optional<IntVector> coordinates(const LatticeBasis& L,
                                     const IntVector& x) {
  if (x.size() != L.ambient_dim)
    throw Error(ErrorCode::DimMismatch, "coordinates");
  IntVector r = x;
  IntVector coeff(L.rank());
  for (std::size_t j = 0; j < L.rank(); ++j) {
    const std::size_t p = pivot_row(L.basis, j);
    for (std::size_t i = 0; i < p; ++i)
      if (r[i] != 0) return std::nullopt;
    if (!divides(L.basis(p, j), r[p])) return std::nullopt;
    coeff[j] = r[p] / L.basis(p, j);
    for (std::size_t i = p; i < r.size(); ++i) r[i] -= coeff[j] * L.basis(i, j);
  }
  if (!is_zero(r)) return std::nullopt;
  return coeff;
}

bool contains(const LatticeBasis& L, const IntVector& x) {
  return is_zero(reduce_modulo(L, x));
}

bool contains(const LatticeBasis& outer, const LatticeBasis& inner) {
  if (outer.ambient_dim != inner.ambient_dim) return false;
  for (std::size_t j = 0; j < inner.rank(); ++j)
    if (!contains(outer, inner.basis.column(j))) return false;
  return true;
}

std::optional<Int> sublattice_index(const LatticeBasis& inner,
                                    const LatticeBasis& outer) {
  if (inner.ambient_dim != outer.ambient_dim || inner.rank() != outer.rank())
    return std::nullopt;
  IntMatrix C(outer.rank(), inner.rank());
  for (std::size_t j = 0; j < inner.rank(); ++j) {
    auto c = coordinates(outer, inner.basis.column(j));
    if (!c) return std::nullopt;
    C.set_column(j, *c);
  }
  return abs(det(C));
}

IntMatrix unimodular_inverse(const IntMatrix& A) {
  if (!A.is_square()) throw Error(ErrorCode::NonSquare, "unimodular_inverse");
  auto h = hnf(A);
  if (!h.form.is_identity())
    throw Error(ErrorCode::InternalInconsistency, "matrix is not unimodular");
  return h.transform;
}

}  // namespace tn::intlat
