#include "torusnielsen/orbits.hpp"

#include <vector>

#include "torusnielsen/errors.hpp"
#include "torusnielsen/intlat.hpp"

namespace tn::orbits {
namespace {

using i64 = std::int64_t;
using i128 = __int128;

IntMatrix minus_identity(const IntMatrix& A) {
  return A - IntMatrix::identity(A.rows());
}

void require_invariant(const IntMatrix& A, const intlat::LatticeBasis& image) {
  for (std::size_t j = 0; j < image.rank(); ++j)
    if (!intlat::contains(image, A * image.basis.column(j)))
      throw Error(ErrorCode::NotInvariant,
                  "linear part does not preserve the relation lattice at column " +
                      to_string(image.basis.column(j)));
}

// Action x -> A x + s on Z^k / relations(Z^p).
AffineAction quotient_action(const IntMatrix& A, const IntMatrix& relations,
                             const IntVector& s) {
  require_invariant(A, intlat::image_lattice(relations));
  AffineAction act;
  act.presentation = cokernel(relations);
  const auto& p = act.presentation;
  act.linear = p.to_coords * A * p.from_coords;
  for (std::size_t i = 0; i < p.divisors.size(); ++i)
    for (std::size_t j = 0; j < act.linear.cols(); ++j)
      act.linear(i, j) = mod_floor(act.linear(i, j), p.divisors[i]);
  act.shift = reduce(p, p.to_coords * s).coords;
  return act;
}

Int product(const IntVector& d) {
  Int p = 1;
  for (const auto& x : d) p *= x;
  return p;
}

// Coordinates of sublattice vectors relative to the basis of `sat`.
IntVector sat_coords(const intlat::LatticeBasis& sat, const IntVector& x) {
  auto c = intlat::coordinates(sat, x);
  if (!c)
    throw Error(ErrorCode::InternalInconsistency,
                "vector " + to_string(x) + " is not in the saturation");
  return *c;
}

IntMatrix sat_coords(const intlat::LatticeBasis& sat, const IntMatrix& X) {
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < X.cols(); ++j)
    cols.push_back(sat_coords(sat, X.column(j)));
  return IntMatrix::from_columns(sat.rank(), cols);
}

// Word-sized copy of a finite affine action for the enumeration loop.
class FastAction {
 public:
  FastAction(const AffineAction& act, std::uint64_t cap) {
    const auto& p = act.presentation;
    if (!p.finite())
      throw Error(ErrorCode::InfiniteGroup,
                  "group has free rank " + std::to_string(p.free_rank));
    const Int order = p.torsion_order();
    if (order > Int(std::to_string(cap)))
      throw Error(ErrorCode::TooLarge, "group order " + order.get_str() +
                                           " exceeds the enumeration cap " +
                                           std::to_string(cap));
    k_ = p.divisors.size();
    d_.resize(k_);
    stride_.assign(k_, 1);
    lin_.assign(k_ * k_, 0);
    shift_.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) d_[i] = p.divisors[i].get_si();
    for (std::size_t i = k_; i-- > 1;) stride_[i - 1] = stride_[i] * d_[i];
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = 0; j < k_; ++j)
        lin_[i * k_ + j] = mod_floor(act.linear(i, j), p.divisors[i]).get_si();
      shift_[i] = mod_floor(act.shift[i], p.divisors[i]).get_si();
    }
    order_ = order.get_ui();
  }

  std::uint64_t order() const { return order_; }
  std::size_t dim() const { return k_; }

  void decode(std::uint64_t idx, std::vector<i64>& c) const {
    c.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      c[i] = static_cast<i64>(idx / static_cast<std::uint64_t>(stride_[i]));
      idx %= static_cast<std::uint64_t>(stride_[i]);
    }
  }

  std::uint64_t encode(const std::vector<i64>& c) const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < k_; ++i)
      idx += static_cast<std::uint64_t>(c[i]) * static_cast<std::uint64_t>(stride_[i]);
    return idx;
  }

  void apply(const std::vector<i64>& in, std::vector<i64>& out) const {
    out.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      i128 acc = shift_[i];
      for (std::size_t j = 0; j < k_; ++j)
        acc += static_cast<i128>(lin_[i * k_ + j]) * in[j];
      i64 r = static_cast<i64>(acc % d_[i]);
      out[i] = r < 0 ? r + d_[i] : r;
    }
  }

 private:
  std::size_t k_ = 0;
  std::vector<i64> d_, stride_, lin_, shift_;
  std::uint64_t order_ = 1;
};

void finish_counts(OrbitStats& st) {
  Int odd = 0, even = 0;
  for (const auto& [size, count] : st.by_size)
    (size % 2 == 1 ? odd : even) += count;
  st.nu_odd = odd;
  st.nu_even = even;
  st.nu_inf = 0;
}

OrbitStats stats_from_counts(ExtNat odd, ExtNat even, ExtNat inf,
                             std::string note) {
  OrbitStats st;
  st.nu_odd = std::move(odd);
  st.nu_even = std::move(even);
  st.nu_inf = std::move(inf);
  st.note = std::move(note);
  return st;
}

Int abs_det_with_shift(const ProblemInstance& inst,
                       const intlat::LatticeBasis& image) {
  const IntMatrix M =
      IntMatrix::from_columns(inst.n(), {inst.v()}).append_columns(image.basis);
  return abs(intlat::det(M));
}

// a = +1, v in sat: the action preserves every level x + i*y2, and levels
// i and i + |K'| carry the same action on K'.
OrbitStats level_stats(const ProblemInstance& inst, const CircleCaseData& cd,
                       std::uint64_t cap) {
  const IntMatrix& A = inst.A_N();
  const IntMatrix C = sat_coords(cd.sat, cd.image.basis);
  const IntMatrix Ap = sat_coords(cd.sat, A * cd.sat.basis);
  const IntVector vp = sat_coords(cd.sat, inst.v());
  const IntVector kappa = sat_coords(cd.sat, A * *cd.y2 - *cd.y2);

  AffineAction base = quotient_action(Ap, C, Int(-1) * (Ap * vp));
  const auto& pres = base.presentation;
  const IntVector step = pres.to_coords * kappa;
  const Int order = pres.torsion_order();

  bool odd = false, even = false;
  std::uint64_t budget = cap;
  Int levels = 0;
  for (Int i = 0; i < order && !(odd && even); ++i) {
    AffineAction act = base;
    act.shift = reduce(pres, base.shift + i * step).coords;
    const auto st = enumerate_torsion_orbits(act, budget, 0);
    for (const auto& [size, count] : st.by_size)
      (size % 2 == 1 ? odd : even) = true;
    const std::uint64_t used = order.get_ui();
    if (used > budget)
      throw Error(ErrorCode::TooLarge, "level enumeration exceeds the cap");
    budget -= used;
    ++levels;
  }
  return stats_from_counts(
      odd ? ExtNat::infinity() : ExtNat(0), even ? ExtNat::infinity() : ExtNat(0),
      0,
      "levels enumerated: " + levels.get_str() + " of " + order.get_str());
}

// Case 2 with beta^2 = id: orbits have one or two elements. The fixed
// classes solve (A - id) x = A v modulo L(Z^m).
OrbitStats involutive_stats(const ProblemInstance& inst,
                            const intlat::LatticeBasis& image,
                            const CokernelPresentation& pres) {
  const IntMatrix& A = inst.A_N();
  const std::size_t n = inst.n();
  const IntMatrix R = minus_identity(A);

  const IntMatrix M = R.append_columns(Int(-1) * inst.L());
  const auto ker = intlat::kernel(M);
  IntMatrix top(n, ker.rank());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < ker.rank(); ++j) top(i, j) = ker.basis(i, j);
  const auto P = intlat::image_lattice(top);

  const bool has_fixed = intlat::solve(M, A * inst.v()).has_value();
  const auto index = intlat::sublattice_index(image, P);
  const ExtNat fixed_count = index ? ExtNat(*index) : ExtNat::infinity();
  const bool all_fixed =
      has_fixed && P.rank() == n && abs(intlat::det(P.basis)) == 1;

  ExtNat group_order = pres.finite() ? ExtNat(pres.torsion_order()) : ExtNat::infinity();
  ExtNat odd = has_fixed ? fixed_count : ExtNat(0);
  ExtNat even;
  if (all_fixed) {
    even = 0;
  } else if (group_order.is_infinite()) {
    even = ExtNat::infinity();
  } else {
    even = ExtNat((group_order.value() - odd.value()) / 2);
  }
  return stats_from_counts(odd, even, 0, "involution: orbits of size 1 or 2");
}

}  // namespace

Int CokernelPresentation::torsion_order() const { return product(divisors); }

CokernelPresentation cokernel(const IntMatrix& L) {
  const auto s = intlat::snf(L);
  const std::size_t n = L.rows();
  CokernelPresentation p;
  p.ambient_dim = n;
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.diag[i] != 1) {
      slots.push_back(i);
      p.divisors.push_back(s.diag[i]);
    }
  for (std::size_t i = s.rank; i < n; ++i) slots.push_back(i);
  p.free_rank = n - s.rank;
  p.to_coords = IntMatrix(slots.size(), n);
  p.from_coords = IntMatrix(n, slots.size());
  for (std::size_t k = 0; k < slots.size(); ++k)
    for (std::size_t j = 0; j < n; ++j) {
      p.to_coords(k, j) = s.U(slots[k], j);
      p.from_coords(j, k) = s.U_inv(j, slots[k]);
    }
  return p;
}

GroupElement reduce(const CokernelPresentation& pres, IntVector coords) {
  for (std::size_t i = 0; i < pres.divisors.size(); ++i)
    coords[i] = mod_floor(coords[i], pres.divisors[i]);
  return GroupElement{std::move(coords)};
}

GroupElement element_of(const CokernelPresentation& pres, const IntVector& u) {
  if (u.size() != pres.ambient_dim)
    throw Error(ErrorCode::DimMismatch, "vector length " + std::to_string(u.size()));
  return reduce(pres, pres.to_coords * u);
}

IntVector vector_of(const CokernelPresentation& pres, const GroupElement& g) {
  return pres.from_coords * g.coords;
}

AffineAction action(const ProblemInstance& inst, const IntVector& v,
                    const CokernelPresentation& pres) {
  const IntMatrix& A = inst.A_N();
  require_invariant(A, intlat::image_lattice(inst.L()));
  AffineAction act;
  act.presentation = pres;
  act.linear = pres.to_coords * A * pres.from_coords;
  for (std::size_t i = 0; i < pres.divisors.size(); ++i)
    for (std::size_t j = 0; j < act.linear.cols(); ++j)
      act.linear(i, j) = mod_floor(act.linear(i, j), pres.divisors[i]);
  act.shift = reduce(pres, pres.to_coords * (Int(-1) * (A * v))).coords;
  return act;
}

GroupElement apply(const AffineAction& act, const GroupElement& g) {
  return reduce(act.presentation, act.linear * g.coords + act.shift);
}

OrbitStats enumerate_torsion_orbits(const AffineAction& act, std::uint64_t cap,
                                    std::size_t keep_orbits) {
  const FastAction f(act, cap);
  const std::uint64_t order = f.order();
  std::vector<std::uint8_t> seen(order, 0);
  std::map<std::uint64_t, std::uint64_t> sizes;
  OrbitStats st;
  std::vector<i64> cur, next;

  for (std::uint64_t s = 0; s < order; ++s) {
    if (seen[s]) continue;
    std::uint64_t idx = s, len = 0;
    f.decode(s, cur);
    do {
      seen[idx] = 1;
      ++len;
      f.apply(cur, next);
      std::swap(cur, next);
      idx = f.encode(cur);
      if (idx != s && seen[idx])
        throw Error(ErrorCode::InternalInconsistency,
                    "affine map is not a bijection on the group");
    } while (idx != s);
    ++sizes[len];
    if (st.orbits.size() < keep_orbits) {
      f.decode(s, cur);
      IntVector rep(cur.begin(), cur.end());
      st.orbits.push_back(Orbit{GroupElement{std::move(rep)}, Int(std::to_string(len))});
    } else {
      st.orbits_truncated = true;
    }
  }
  for (const auto& [size, count] : sizes)
    st.by_size[Int(std::to_string(size))] = Int(std::to_string(count));
  finish_counts(st);
  st.note = "enumerated";
  return st;
}

RestrictedAction restricted_action_on_Kprime(const ProblemInstance& inst) {
  const auto cd = circle_case_data(inst);
  const IntVector vp = representative_in_image_span(inst);
  const IntMatrix& A = inst.A_N();
  const IntMatrix C = sat_coords(cd.sat, cd.image.basis);
  const IntMatrix Ap = sat_coords(cd.sat, A * cd.sat.basis);
  const IntVector w = sat_coords(cd.sat, vp);
  RestrictedAction r;
  r.action = quotient_action(Ap, C, Int(-1) * (Ap * w));
  r.presentation = r.action.presentation;
  r.shift_in_span = vp;
  return r;
}

bool linear_part_has_finite_order(const ProblemInstance& inst,
                                  std::size_t max_order) {
  const auto image = intlat::image_lattice(inst.L());
  const IntMatrix& A = inst.A_N();
  IntMatrix P = A;
  for (std::size_t k = 1; k <= max_order; ++k) {
    const IntMatrix D = minus_identity(P);
    bool ok = true;
    for (std::size_t j = 0; j < D.cols() && ok; ++j)
      ok = intlat::contains(image, D.column(j));
    if (ok) return true;
    P = P * A;
  }
  return false;
}

OrbitStats circle_orbit_stats(const ProblemInstance& inst, std::uint64_t cap) {
  if (inst.base.kind() != BaseKind::Circle)
    throw Error(ErrorCode::Unsupported, "orbit statistics need the circle base");
  const auto cd = circle_case_data(inst);
  const std::size_t n = inst.n();

  if (cd.r == n) {
    const auto pres = cokernel(inst.L());
    return enumerate_torsion_orbits(action(inst, inst.v(), pres), cap);
  }

  if (cd.codim_one()) {
    if (*cd.a == 1) {
      if (*cd.v2 != 0)
        return stats_from_counts(0, 0, abs_det_with_shift(inst, cd.image),
                                 "every orbit is infinite");
      return level_stats(inst, cd, cap);
    }
    if (!divides(Int(2), *cd.v2))
      return stats_from_counts(0, ExtNat::infinity(), 0,
                               "odd normal component: no odd orbits");
    const auto ra = restricted_action_on_Kprime(inst);
    const auto kst = enumerate_torsion_orbits(ra.action, cap);
    OrbitStats st = stats_from_counts(kst.nu_odd, ExtNat::infinity(), 0,
                                      "odd orbits counted on K'");
    st.orbits = kst.orbits;
    st.orbits_truncated = kst.orbits_truncated;
    return st;
  }

  // rank <= n - 2
  const auto image = intlat::image_lattice(inst.L());
  const IntMatrix& A = inst.A_N();
  const IntMatrix sq = minus_identity(A * A);
  bool involutive = intlat::contains(image, (A + IntMatrix::identity(n)) * inst.v());
  for (std::size_t j = 0; j < n && involutive; ++j)
    involutive = intlat::contains(image, sq.column(j));
  if (involutive) return involutive_stats(inst, image, cokernel(inst.L()));

  OrbitStats st = stats_from_counts(0, 0, 0, "");
  st.complete = false;
  st.note = "orbit counts undetermined: the action is not an involution";
  return st;
}

}  // namespace tn::orbits
