#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "torusnielsen/bundlemap.hpp"
#include "torusnielsen/extnat.hpp"
#include "torusnielsen/int_matrix.hpp"

// The Reidemeister group G = Z^n / L(Z^m), its subquotient
// K' = (Z^n cap L(R^m)) / L(Z^m), and the affine action u -> A_N (u - v).
namespace tn::orbits {

inline constexpr std::uint64_t kDefaultCap = 10'000'000;

/// G = Z/d_1 + ... + Z/d_k + Z^f read off a Smith form. Coordinates of an
/// element: k residues followed by f free integers.
struct CokernelPresentation {
  std::size_t ambient_dim = 0;
  IntVector divisors;       // all >= 2, d_i | d_{i+1}
  std::size_t free_rank = 0;
  IntMatrix to_coords;      // (k + f) x ambient_dim
  IntMatrix from_coords;    // ambient_dim x (k + f)

  std::size_t coord_count() const { return divisors.size() + free_rank; }
  bool finite() const { return free_rank == 0; }
  /// Product of the divisors (the order of the torsion part).
  Int torsion_order() const;
};

struct GroupElement {
  IntVector coords;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement& a, const GroupElement& b) {
    return a.coords <=> b.coords;
  }
};

/// x -> linear * x + shift in presentation coordinates.
struct AffineAction {
  CokernelPresentation presentation;
  IntMatrix linear;
  IntVector shift;
};

struct Orbit {
  GroupElement representative;  // lexicographically least element
  Int size;
};

struct OrbitStats {
  std::map<Int, Int> by_size;  // orbit size -> number of orbits (finite G)
  ExtNat nu_odd;
  ExtNat nu_even;
  ExtNat nu_inf;
  bool complete = true;
  std::string note;            // why stats are incomplete, or how obtained
  std::vector<Orbit> orbits;   // first orbits in canonical order, may be cut
  bool orbits_truncated = false;

  ExtNat total() const { return nu_odd + nu_even + nu_inf; }
};

CokernelPresentation cokernel(const IntMatrix& L);

/// Canonical coordinates of the class of u.
GroupElement element_of(const CokernelPresentation& pres, const IntVector& u);
/// Some vector in the class.
IntVector vector_of(const CokernelPresentation& pres, const GroupElement& g);
GroupElement reduce(const CokernelPresentation& pres, IntVector coords);

/// The action [u] -> [A_N (u - v)] on Z^n / L(Z^m). Throws NotInvariant if
/// A_N does not preserve L(Z^m).
AffineAction action(const ProblemInstance& inst, const IntVector& v,
                    const CokernelPresentation& pres);

GroupElement apply(const AffineAction& act, const GroupElement& g);

/// Orbit partition of a finite G. Throws InfiniteGroup when free_rank > 0,
/// TooLarge when |G| > cap, InternalInconsistency if the map is not a
/// bijection. At most `keep_orbits` orbits are stored in the result.
OrbitStats enumerate_torsion_orbits(const AffineAction& act,
                                    std::uint64_t cap = kDefaultCap,
                                    std::size_t keep_orbits = 256);

/// The action on K' for an r = n - 1, a = -1, v2 even instance, using a
/// representative of v inside the real span of L.
struct RestrictedAction {
  AffineAction action;            // on K', coordinates relative to sat
  CokernelPresentation presentation;
  IntVector shift_in_span;        // the representative v'
};

RestrictedAction restricted_action_on_Kprime(const ProblemInstance& inst);

/// Orbit signature of the action over the circle, by case. Case-2 actions
/// whose linear part does not square to the identity give complete = false.
OrbitStats circle_orbit_stats(const ProblemInstance& inst,
                              std::uint64_t cap = kDefaultCap);

/// True when A_N^k acts as the identity on G for some 1 <= k <= max_order.
bool linear_part_has_finite_order(const ProblemInstance& inst,
                                  std::size_t max_order = 120);

}  // namespace tn::orbits
