#include "torusnielsen/nielsen.hpp"

#include "torusnielsen/errors.hpp"
#include "torusnielsen/intlat.hpp"

namespace tn {
namespace {

ExtNat mc_rule(const Int& N, bool dims_match) {
  if (N == 0 || dims_match) return ExtNat(N);
  return ExtNat::infinity();
}

// Point and sphere bases: the horizontal action is trivial, so every class
// of G is its own orbit.
NielsenReport trivial_base_report(const ProblemInstance& inst, CaseLabel label,
                                  std::size_t base_dim) {
  NielsenReport rep;
  rep.case_label = label;
  const auto image = intlat::image_lattice(inst.L());
  const std::size_t n = inst.n();
  const std::size_t r = image.rank();
  rep.free_rank = n - r;

  if (r == n) {
    rep.N = abs(intlat::det(image.basis));
    rep.witness.branch = "|det| of the image basis";
    rep.witness.add("det", rep.N.get_str());
  } else {
    rep.N = 0;
    rep.witness.branch = "L is not onto over R";
  }
  rep.witness.add("rank", std::to_string(r));
  rep.MCC = rep.N;
  rep.MC = mc_rule(rep.N, inst.m() + base_dim == n);

  const auto pres = orbits::cokernel(inst.L());
  auto& st = rep.stats;
  st.nu_even = 0;
  st.nu_inf = 0;
  st.note = "trivial action";
  if (pres.finite()) {
    const Int order = pres.torsion_order();
    st.nu_odd = order;
    st.by_size[Int(1)] = order;
    rep.R_count = ExtNat(order);
  } else {
    st.nu_odd = ExtNat::infinity();
    rep.R_count = ExtNat::infinity();
  }
  rep.loose = rep.MCC == 0;
  return rep;
}

orbits::OrbitStats stats_or_incomplete(const ProblemInstance& inst,
                                       std::uint64_t cap) {
  try {
    return orbits::circle_orbit_stats(inst, cap);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TooLarge) throw;
    orbits::OrbitStats st;
    st.complete = false;
    st.note = e.what();
    return st;
  }
}

}  // namespace

const char* case_label_name(CaseLabel c) {
  switch (c) {
    case CaseLabel::PointBase: return "PointBase";
    case CaseLabel::SphereBase: return "SphereBase";
    case CaseLabel::Circle0: return "Circle0";
    case CaseLabel::Circle1Plus: return "Circle1Plus";
    case CaseLabel::Circle1Minus: return "Circle1Minus";
    case CaseLabel::Circle2: return "Circle2";
  }
  return "?";
}

const std::string* Witness::find(const std::string& key) const {
  for (const auto& [k, v] : values)
    if (k == key) return &v;
  return nullptr;
}

NielsenReport nielsen_point(const ProblemInstance& inst, std::uint64_t) {
  if (inst.base.kind() != BaseKind::Point)
    throw Error(ErrorCode::Unsupported, "nielsen_point needs the point base");
  return trivial_base_report(inst, CaseLabel::PointBase, 0);
}

NielsenReport nielsen_sphere(const ProblemInstance& inst, std::uint64_t) {
  if (inst.base.kind() != BaseKind::Sphere)
    throw Error(ErrorCode::Unsupported, "nielsen_sphere needs a sphere base");
  return trivial_base_report(inst, CaseLabel::SphereBase,
                             inst.base.dimension());
}

NielsenReport nielsen_circle(const ProblemInstance& inst, std::uint64_t cap) {
  if (inst.base.kind() != BaseKind::Circle)
    throw Error(ErrorCode::Unsupported, "nielsen_circle needs the circle base");
  NielsenReport rep;
  const auto cd = circle_case_data(inst);
  const std::size_t n = inst.n();
  const bool m_less = inst.m() < n;
  rep.free_rank = n - cd.r;
  auto& w = rep.witness;
  w.add("rank", std::to_string(cd.r));

  if (cd.r == n) {
    rep.case_label = CaseLabel::Circle0;
    rep.stats = orbits::circle_orbit_stats(inst, cap);
    rep.N = rep.stats.total().value();
    rep.MC = ExtNat::infinity();
    rep.R_count = ExtNat(rep.N);
    w.branch = "number of all orbits on the finite group";
    w.add("group_order", orbits::cokernel(inst.L()).torsion_order().get_str());
  } else if (cd.codim_one()) {
    w.add("a", std::to_string(*cd.a));
    w.add("v2", cd.v2->get_str());
    w.add("y2", to_string(*cd.y2));
    if (*cd.a == 1) {
      rep.case_label = CaseLabel::Circle1Plus;
      const IntMatrix M = IntMatrix::from_columns(n, {inst.v()})
                              .append_columns(cd.image.basis);
      rep.N = abs(intlat::det(M));
      rep.R_count = *cd.v2 != 0 ? ExtNat(rep.N) : ExtNat::infinity();
      rep.MC = mc_rule(rep.N, m_less);
      rep.stats = stats_or_incomplete(inst, cap);
      w.branch = "|det(v, w_1, ..., w_{n-1})|";
      w.add("det", rep.N.get_str());
    } else {
      rep.case_label = CaseLabel::Circle1Minus;
      rep.R_count = ExtNat::infinity();
      if (!divides(Int(2), *cd.v2)) {
        rep.N = 0;
        rep.stats = orbits::circle_orbit_stats(inst, cap);
        w.branch = "odd normal component of v: loose";
      } else {
        rep.stats = orbits::circle_orbit_stats(inst, cap);
        rep.N = rep.stats.nu_odd.value();
        w.branch = "odd orbits of the restricted action on K'";
        const auto ra = orbits::restricted_action_on_Kprime(inst);
        w.add("K'_order", ra.presentation.torsion_order().get_str());
        w.add("v_in_span", to_string(ra.shift_in_span));
      }
      rep.MC = mc_rule(rep.N, m_less);
    }
  } else {
    rep.case_label = CaseLabel::Circle2;
    rep.N = 0;
    rep.MC = ExtNat(0);
    rep.stats = stats_or_incomplete(inst, cap);
    w.branch = "rank at most n - 2: loose";
    if (rep.stats.complete) {
      rep.R_count = rep.stats.total();
      w.add("R_source", "orbit statistics");
    } else if (rep.free_rank >= 2 && orbits::linear_part_has_finite_order(inst)) {
      rep.R_count = ExtNat::infinity();
      w.add("R_source", "finite-order linear part on a group of free rank >= 2");
    } else {
      w.add("R_source", "undetermined");
    }
  }
  rep.MCC = rep.N;
  rep.loose = rep.MCC == 0;
  return rep;
}

NielsenReport nielsen(const ProblemInstance& inst, std::uint64_t cap) {
  switch (inst.base.kind()) {
    case BaseKind::Point: return nielsen_point(inst, cap);
    case BaseKind::Sphere: return nielsen_sphere(inst, cap);
    case BaseKind::Circle: return nielsen_circle(inst, cap);
  }
  throw Error(ErrorCode::InternalInconsistency, "unknown base");
}

Int nu_B(const orbits::OrbitStats& stats, std::size_t free_rank,
         const BaseSpace& base) {
  if (free_rank > base.fundamental_group_rank()) return 0;
  if (!stats.complete)
    throw Error(ErrorCode::IncompleteStats, stats.note);
  if (stats.nu_inf.is_infinite())
    throw Error(ErrorCode::InternalInconsistency,
                "infinitely many infinite orbits with small free rank");
  return stats.nu_odd.finite_or_zero() + stats.nu_even.finite_or_zero() +
         stats.nu_inf.value();
}

FixedPointProblem make_fixed_point_problem(const IntMatrix& A,
                                           const IntMatrix& f_star,
                                           const IntVector& v) {
  FixedPointProblem p{{A.rows(), A}, f_star, v};
  // Validates shapes, the gluing and the commutation relation.
  coincidence_instance(p);
  return p;
}

ProblemInstance coincidence_instance(const FixedPointProblem& p) {
  const IntMatrix& A = p.bundle.gluing;
  if (!A.is_square())
    throw Error(ErrorCode::NonSquare, "gluing matrix is " +
                                          std::to_string(A.rows()) + "x" +
                                          std::to_string(A.cols()));
  if (p.f_star.rows() != A.rows() || p.f_star.cols() != A.rows())
    throw Error(ErrorCode::DimMismatch, "f_star must be " +
                                            std::to_string(A.rows()) + "x" +
                                            std::to_string(A.rows()));
  return make_instance(BaseSpace::circle(), A, A,
                       p.f_star - IntMatrix::identity(A.rows()), p.v);
}

PlaneFixedPointNarrative plane_fixed_point_narrative(const FixedPointProblem& p,
                                                     std::uint64_t cap) {
  const ProblemInstance inst = coincidence_instance(p);
  if (inst.n() != 2)
    throw Error(ErrorCode::DimMismatch, "plane narrative needs a 2x2 problem");
  const IntMatrix& A = inst.A_N();
  const IntMatrix& L = inst.L();
  PlaneFixedPointNarrative out;
  const std::size_t rank = intlat::rank(L);
  out.eigenspace_dim = static_cast<int>(2 - rank);

  if (rank == 2) {
    const auto pres = orbits::cokernel(L);
    const auto st =
        orbits::enumerate_torsion_orbits(orbits::action(inst, inst.v(), pres), cap, 0);
    out.MCC = st.total().value();
    out.MC = ExtNat::infinity();
    out.branch = "no +1 eigenvalue: all orbits";
    return out;
  }
  if (rank == 0) {
    out.MCC = 0;
    out.MC = ExtNat(0);
    out.branch = "f_* = id";
    return out;
  }

  IntVector c = L.column(0);
  if (is_zero(c)) c = L.column(1);
  const Int g = gcd(c[0], c[1]);
  const Int y10 = c[0] / g, y11 = c[1] / g;
  const auto eg = extended_gcd(y10, y11);
  const IntMatrix B = IntMatrix::from_rows({IntVector{y10, -eg.t}, IntVector{y11, eg.s}});
  const IntMatrix B_inv =
      IntMatrix::from_rows({IntVector{eg.s, eg.t}, IntVector{-y11, y10}});

  const IntMatrix M = B_inv * A * B;
  const IntMatrix LB = B_inv * L;
  if (M(1, 0) != 0 || LB(1, 0) != 0 || LB(1, 1) != 0)
    throw Error(ErrorCode::InternalInconsistency,
                "eigenline coordinates do not triangularize the problem");
  const int a = M(1, 1) == 1 ? 1 : -1;
  const int det_A = intlat::det(A) == 1 ? 1 : -1;
  const Int q = gcd(LB(0, 0), LB(0, 1));
  const IntVector vB = B_inv * inst.v();
  out.a = a;
  out.det_A = det_A;
  out.q = q;
  out.v1 = vB[0];
  out.v2 = vB[1];

  if (a == 1) {
    out.MCC = q * abs(vB[1]);
    out.branch = "A = id on the eigenline: q * |v2|";
  } else if (!divides(Int(2), vB[1])) {
    out.MCC = 0;
    out.branch = "A = -id on the eigenline, v2 odd";
  } else {
    // (M - id) has -2 in its lower corner, so this cancels v2.
    const IntVector shift{Int(0), vB[1] / 2};
    const IntVector vp = vB + (M - IntMatrix::identity(2)) * shift;
    if (vp[1] != 0)
      throw Error(ErrorCode::InternalInconsistency,
                  "shifted representative has nonzero normal component");
    const Int v1 = vp[0];
    const Int r = gcd(q, v1);
    out.v1 = v1;
    out.v2 = 0;
    out.r = r;
    if (det_A == -1) {
      out.MCC = divides(Int(2), q / r) ? Int(0) : r;
      out.branch = "A = -id on the eigenline, det A = -1: translation on Z_q";
    } else {
      if (!divides(Int(2), q))
        out.MCC = 1;
      else
        out.MCC = divides(Int(2), v1) ? 2 : 0;
      out.branch = "A = -id on the eigenline, det A = 1: involution on Z_q";
    }
  }
  out.MC = out.MCC == 0 ? ExtNat(0) : ExtNat::infinity();
  return out;
}

FixedPointReport fixed_points(const FixedPointProblem& p, std::uint64_t cap) {
  FixedPointReport out;
  out.report = nielsen_circle(coincidence_instance(p), cap);
  if (p.bundle.fiber_dim == 2) {
    out.narrative = plane_fixed_point_narrative(p, cap);
    if (out.narrative->MCC != out.report.MCC || !(out.narrative->MC == out.report.MC))
      throw Error(ErrorCode::InternalInconsistency,
                  "eigenline narrative gives MCC " + out.narrative->MCC.get_str() +
                      ", general dispatch gives " + out.report.MCC.get_str());
  }
  return out;
}

FixedPointFreeVerdict fixed_point_free(const FixedPointProblem& p,
                                       std::uint64_t cap) {
  const auto fp = fixed_points(p, cap);
  FixedPointFreeVerdict out;
  out.fixed_point_free = fp.report.MCC == 0;
  if (!out.fixed_point_free) {
    out.reason = "N = MCC = " + fp.report.MCC.get_str() + " > 0";
    return out;
  }
  if (fp.narrative) {
    const auto& nr = *fp.narrative;
    if (nr.eigenspace_dim == 2)
      out.reason = "f_* is the identity";
    else if (*nr.a == 1)
      out.reason = "A fixes the eigenline and v2 = 0";
    else if (!nr.r)
      out.reason = "A reverses the eigenline and v2 is odd";
    else if (*nr.det_A == 1)
      out.reason = "A reverses the eigenline, det A = 1, q even and v1 odd";
    else
      out.reason = "A reverses the eigenline, det A = -1, q an even multiple of gcd(q, v1)";
    return out;
  }
  switch (fp.report.case_label) {
    case CaseLabel::Circle2:
      out.reason = "rank of f_* - id is at most n - 2";
      break;
    case CaseLabel::Circle1Minus:
      out.reason = fp.report.witness.branch;
      break;
    default:
      out.reason = "Nielsen number vanishes (" +
                   std::string(case_label_name(fp.report.case_label)) + ")";
  }
  return out;
}

}  // namespace tn
