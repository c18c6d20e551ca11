#pragma once

#include <cstddef>
#include <optional>

#include "torusnielsen/int_matrix.hpp"
#include "torusnielsen/integer.hpp"

// Exact integer linear algebra: Hermite and Smith normal forms, lattices
// in Z^n given by canonical bases, integral solving and determinants.
namespace tn::intlat {

/// Column-style Hermite normal form. `A * transform == form`.
///
/// Canonical convention: the nonzero columns come first and are in echelon
/// shape (column j has its pivot in row p_j, zeros above it, p_0 < p_1 < ...),
/// every pivot is positive, and the entries of earlier columns in a pivot row
/// lie in [0, pivot). Trailing columns are zero.
struct HermiteDecomposition {
  IntMatrix form;
  IntMatrix transform;  // unimodular, cols x cols
  std::size_t rank = 0;
};

/// `left * A * right == S`, S diagonal with d_1 | d_2 | ..., zeros last.
/// The inverses of both transforms are carried along so that callers can
/// move between original and Smith coordinates without inverting.
struct SmithDecomposition {
  IntMatrix S;
  IntMatrix U;      // left transform, rows x rows
  IntMatrix V;      // right transform, cols x cols
  IntMatrix U_inv;
  IntMatrix V_inv;
  IntVector diag;   // min(rows, cols) entries, nonnegative
  std::size_t rank = 0;
};

/// A sublattice of Z^ambient_dim stored by its canonical HNF basis (columns).
/// Two LatticeBasis values describe the same lattice iff they compare equal.
struct LatticeBasis {
  std::size_t ambient_dim = 0;
  IntMatrix basis;  // ambient_dim x rank

  std::size_t rank() const { return basis.cols(); }
  bool empty() const { return basis.cols() == 0; }
  friend bool operator==(const LatticeBasis&, const LatticeBasis&) = default;
};

HermiteDecomposition hnf(const IntMatrix& A);
SmithDecomposition snf(const IntMatrix& A);

std::size_t rank(const IntMatrix& A);

/// Canonical basis of A * Z^cols inside Z^rows.
LatticeBasis image_lattice(const IntMatrix& A);

/// Canonical basis of Z^n intersected with the real span of L.
LatticeBasis saturation(const LatticeBasis& L);

/// Lattice of integer vectors x with A x = 0.
LatticeBasis kernel(const IntMatrix& A);

/// Lattice generated by the columns of both bases.
LatticeBasis lattice_sum(const LatticeBasis& a, const LatticeBasis& b);

/// Some integral x with A x = b, or nullopt. Deterministic: the particular
/// solution read off the Smith form with all free coordinates set to zero.
std::optional<IntVector> solve(const IntMatrix& A, const IntVector& b);

/// Exact determinant (fraction-free elimination). 0x0 has determinant 1.
/// Throws Error{NonSquare}.
Int det(const IntMatrix& A);

bool contains(const LatticeBasis& L, const IntVector& x);
bool contains(const LatticeBasis& outer, const LatticeBasis& inner);

/// Canonical representative of x modulo L: pivot coordinates are reduced
/// into [0, pivot) in pivot order. Equal cosets give equal results.
IntVector reduce_modulo(const LatticeBasis& L, const IntVector& x);

/// Coordinates of x in the basis of L (unique when they exist).
std::optional<IntVector> coordinates(const LatticeBasis& L, const IntVector& x);

/// [outer : inner] when inner is a sublattice of equal rank, nullopt otherwise.
std::optional<Int> sublattice_index(const LatticeBasis& inner,
                                    const LatticeBasis& outer);

/// Inverse of a unimodular matrix. Throws Error{InternalInconsistency} when
/// |det| != 1.
IntMatrix unimodular_inverse(const IntMatrix& A);

}  // namespace tn::intlat
