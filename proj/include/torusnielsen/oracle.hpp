#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "torusnielsen/bundlemap.hpp"
#include "torusnielsen/int_matrix.hpp"
#include "torusnielsen/orbits.hpp"

// Brute-force cross-checks that avoid the Hermite/Smith code paths: orbit
// iteration on parallelepiped representatives, gcd-of-minors elementary
// divisors, and the Gaussian-integer table.
namespace tn::oracle {

/// Orbit sizes of u -> A_N (u - v) on Z^n / L(Z^m). Throws InfiniteGroup when
/// L has rank < n and TooLarge when the group has more than cap elements.
orbits::OrbitStats brute_orbits(const IntMatrix& A_N, const IntMatrix& L,
                                const IntVector& v,
                                std::uint64_t cap = orbits::kDefaultCap);

/// Integer points of the half-open parallelepiped spanned by the columns of a
/// nonsingular square basis, found by scanning its bounding box.
std::vector<IntVector> parallelepiped_points(const IntMatrix& basis,
                                             std::uint64_t cap = 1'000'000);

/// Nonzero elementary divisors from gcds of k x k minors. Dimensions above 6
/// give TooLarge.
IntVector minors_snf_check(const IntMatrix& A);

/// Determinant by cofactor expansion (small matrices only).
Int cofactor_det(const IntMatrix& A);

struct GaussRow {
  Int k, l;
  bool same_parity = false;  // v1 = v2 mod 2
  Int q;
  int residue = 0;           // k^2 + l^2 mod 4
  Int nu1, nu2, nu4, nu;     // enumerated
  Int e_nu1, e_nu2, e_nu4, e_nu;  // closed form
  Int mcc, e_mcc;
  bool ok = true;
  std::string problem;
};

struct GaussTable {
  std::vector<GaussRow> rows;
  std::size_t mismatches = 0;
};

/// All (k, l) with 0 < k^2 + l^2 <= 4 q_max and both parities of v1 + v2,
/// plus the k = l = 0 instance.
GaussTable gauss_table(int q_max);

/// Closed-form MCC for the Gaussian example.
Int gauss_mcc(const Int& k, const Int& l, bool same_parity);

/// Circle instance with A_M = A_N = multiplication by i, L = k + il.
ProblemInstance gauss_instance(const Int& k, const Int& l, const IntVector& v);

struct RandomInstanceOptions {
  std::size_t max_n = 3;
  std::size_t max_m = 4;
  int entry_bound = 5;
  std::uint64_t min_order = 2;
  std::uint64_t max_order = 2000;
  bool full_rank = true;
};

/// Valid circle instance: A_N a short word in elementary matrices, A_M =
/// A_N (+) extra block, L drawn from the solutions of A_N L = L A_M.
ProblemInstance random_instance(std::mt19937_64& rng,
                                const RandomInstanceOptions& opt = {});

/// Basis of the integer n x m matrices X with A_N X = X A_M.
std::vector<IntMatrix> commutant_basis(const IntMatrix& A_N, const IntMatrix& A_M);

/// Random element of GL(n, Z) as a word of at most max_len generators.
IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n,
                            std::size_t max_len = 6);

enum class Fault { None, DropOrbit };

struct CheckResult {
  bool ok = true;
  bool skipped = false;
  std::string detail;
};

/// Both orbit pipelines on one finite instance, compared on orbit-size
/// multisets. Fault::DropOrbit corrupts the oracle side (negative control).
CheckResult check_instance(const ProblemInstance& inst,
                           std::uint64_t cap = orbits::kDefaultCap,
                           Fault fault = Fault::None);

}  // namespace tn::oracle
