#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "torusnielsen/int_matrix.hpp"
#include "torusnielsen/intlat.hpp"

namespace tn {

enum class BaseKind { Point, Circle, Sphere };

/// Base of the bundles: a point, the circle, or a sphere S^b with b >= 2.
class BaseSpace {
 public:
  static BaseSpace point() { return BaseSpace(BaseKind::Point, 0); }
  static BaseSpace circle() { return BaseSpace(BaseKind::Circle, 1); }
  /// Throws Error{DimMismatch} unless b >= 2.
  static BaseSpace sphere(std::size_t b);

  BaseKind kind() const { return kind_; }
  std::size_t dimension() const { return dim_; }
  /// Rank of the fundamental group: 1 for the circle, 0 otherwise.
  std::size_t fundamental_group_rank() const {
    return kind_ == BaseKind::Circle ? 1 : 0;
  }
  std::string name() const;

  friend bool operator==(const BaseSpace&, const BaseSpace&) = default;

 private:
  BaseSpace(BaseKind kind, std::size_t dim) : kind_(kind), dim_(dim) {}
  BaseKind kind_;
  std::size_t dim_;
};

/// Linear torus bundle: fiber T^fiber_dim glued by `gluing` in GL(n, Z).
struct TorusBundle {
  std::size_t fiber_dim = 0;
  IntMatrix gluing;
};

/// Homotopy class data of f = f1 - f2: the induced map on fiber lattices and
/// the shift vector classifying the section f o s_0.
struct FiberwiseMapClass {
  IntMatrix L;  // n x m
  IntVector v;  // length n
};

/// A validated pair of fiberwise maps, already reduced to (f1 - f2, f0).
struct ProblemInstance {
  BaseSpace base = BaseSpace::point();
  TorusBundle source;  // M, fiber dimension m
  TorusBundle target;  // N, fiber dimension n
  FiberwiseMapClass map;

  std::size_t m() const { return source.fiber_dim; }
  std::size_t n() const { return target.fiber_dim; }
  const IntMatrix& A_M() const { return source.gluing; }
  const IntMatrix& A_N() const { return target.gluing; }
  const IntMatrix& L() const { return map.L; }
  const IntVector& v() const { return map.v; }
};

/// Validates dimensions, gluings (|det| = 1, identity over point/sphere
/// bases) and the intertwining relation A_N L = L A_M.
ProblemInstance make_instance(const BaseSpace& base, const IntMatrix& A_M,
                              const IntMatrix& A_N, const IntMatrix& L,
                              const IntVector& v);

/// Same as make_instance for a pair (f1, f2) given by their classifying
/// data; the pair is replaced by its difference (L1 - L2, v1 - v2).
ProblemInstance make_instance_from_pair(const BaseSpace& base,
                                        const IntMatrix& A_M,
                                        const IntMatrix& A_N,
                                        const IntMatrix& L1,
                                        const IntVector& v1,
                                        const IntMatrix& L2,
                                        const IntVector& v2);

/// Canonical representative of [v] in Z^n / (A_N - id) Z^n. Circle base only.
IntVector normalize_shift(const ProblemInstance& inst);

/// Canonical representative of v modulo L(Z^m) + (A_N - id) Z^n.
IntVector reduce_shift_modulo_image(const ProblemInstance& inst);

/// Structure of Z^n relative to the image of L when the base is the circle.
struct CircleCaseData {
  std::size_t r = 0;                 // rank of L
  intlat::LatticeBasis image;        // L(Z^m), canonical basis
  intlat::LatticeBasis sat;          // Z^n intersected with L(R^m)
  // Only set when r == n - 1.
  std::optional<IntVector> normal;   // primitive functional with kernel sat
  std::optional<IntVector> y2;       // complement generator, normal . y2 = 1
  std::optional<int> a;              // action of A_N on Z^n / sat, +1 or -1
  std::optional<IntVector> v1;       // component of v in sat
  std::optional<Int> v2;             // v = v1 + v2 * y2

  bool codim_one() const { return y2.has_value(); }
};

/// Throws Error{InternalInconsistency} if A_N fails to act by +-1 on Z^n/sat.
CircleCaseData circle_case_data(const ProblemInstance& inst);

/// A representative v' of [v] (mod (A_N - id) Z^n) lying in the real span of
/// L. Requires r = n - 1, a = -1 and v2 even; throws Error{NotFound} otherwise.
IntVector representative_in_image_span(const ProblemInstance& inst);

}  // namespace tn
