#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torusnielsen/bundlemap.hpp"
#include "torusnielsen/extnat.hpp"
#include "torusnielsen/orbits.hpp"

namespace tn {

enum class CaseLabel {
  PointBase,
  SphereBase,
  Circle0,
  Circle1Plus,
  Circle1Minus,
  Circle2,
};

const char* case_label_name(CaseLabel c);

/// Which formula produced the numbers, with its inputs.
struct Witness {
  std::string branch;
  std::vector<std::pair<std::string, std::string>> values;

  void add(std::string key, std::string value) {
    values.emplace_back(std::move(key), std::move(value));
  }
  const std::string* find(const std::string& key) const;
};

struct NielsenReport {
  CaseLabel case_label = CaseLabel::PointBase;
  Int N = 0;
  Int MCC = 0;
  ExtNat MC;
  std::optional<ExtNat> R_count;  // nullopt: not determined
  bool loose = true;
  std::size_t free_rank = 0;
  orbits::OrbitStats stats;
  Witness witness;
};

NielsenReport nielsen_point(const ProblemInstance& inst,
                            std::uint64_t cap = orbits::kDefaultCap);
NielsenReport nielsen_sphere(const ProblemInstance& inst,
                             std::uint64_t cap = orbits::kDefaultCap);
NielsenReport nielsen_circle(const ProblemInstance& inst,
                             std::uint64_t cap = orbits::kDefaultCap);
/// Dispatches on the base.
NielsenReport nielsen(const ProblemInstance& inst,
                      std::uint64_t cap = orbits::kDefaultCap);

/// nu'_odd + nu'_even + nu_inf when free_rank <= rank pi_1(base), else 0.
/// Throws IncompleteStats when the sum is needed but not known.
Int nu_B(const orbits::OrbitStats& stats, std::size_t free_rank,
         const BaseSpace& base);

/// A fiberwise selfmap of the bundle over the circle glued by A.
struct FixedPointProblem {
  TorusBundle bundle;
  IntMatrix f_star;
  IntVector v;
};

/// Throws DimMismatch, BadGluing or IntertwineViolated.
FixedPointProblem make_fixed_point_problem(const IntMatrix& A,
                                           const IntMatrix& f_star,
                                           const IntVector& v);

/// The pair (f - id, f0) as a coincidence instance.
ProblemInstance coincidence_instance(const FixedPointProblem& p);

/// Plane case computed in the eigenline coordinates (y1, y2): y1 spans the
/// integer points of the image line of f_* - id and det(y1, y2) = 1.
struct PlaneFixedPointNarrative {
  int eigenspace_dim = 0;   // dim of the +1 eigenspace of f_*
  std::optional<int> a;     // action of A on the eigenline
  std::optional<int> det_A;
  std::optional<Int> q;     // order of the torsion of the cokernel
  std::optional<Int> v1, v2;
  std::optional<Int> r;     // gcd(q, v1), shifted-representative branch
  std::string branch;
  Int MCC = 0;
  ExtNat MC;
};

/// Requires a 2 x 2 problem.
PlaneFixedPointNarrative plane_fixed_point_narrative(
    const FixedPointProblem& p, std::uint64_t cap = orbits::kDefaultCap);

struct FixedPointReport {
  NielsenReport report;
  std::optional<PlaneFixedPointNarrative> narrative;  // only for n = 2
};

/// General dispatch; for n = 2 also the eigenline narrative, which must
/// agree (InternalInconsistency otherwise).
FixedPointReport fixed_points(const FixedPointProblem& p,
                              std::uint64_t cap = orbits::kDefaultCap);

struct FixedPointFreeVerdict {
  bool fixed_point_free = false;
  std::string reason;
};

FixedPointFreeVerdict fixed_point_free(const FixedPointProblem& p,
                                       std::uint64_t cap = orbits::kDefaultCap);

}  // namespace tn
