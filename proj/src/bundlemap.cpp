#include "torusnielsen/bundlemap.hpp"

#include "torusnielsen/errors.hpp"

namespace tn {
namespace {

std::string dims(const IntMatrix& A) {
  return std::to_string(A.rows()) + "x" + std::to_string(A.cols());
}

void check_gluing(const char* which, const IntMatrix& A, std::size_t dim,
                  const BaseSpace& base) {
  if (A.rows() != dim || A.cols() != dim)
    throw Error(ErrorCode::DimMismatch, std::string(which) + " is " + dims(A) +
                                            ", expected " + std::to_string(dim) +
                                            "x" + std::to_string(dim));
  const Int d = intlat::det(A);
  if (d != 1 && d != -1)
    throw Error(ErrorCode::BadGluing,
                std::string(which) + " has determinant " + d.get_str());
  if (base.kind() != BaseKind::Circle && !A.is_identity())
    throw Error(ErrorCode::BadGluing, std::string(which) +
                                          " must be the identity over base " +
                                          base.name());
}

Int dot(const IntVector& a, const IntVector& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntMatrix minus_identity(const IntMatrix& A) {
  return A - IntMatrix::identity(A.rows());
}

}  // namespace

BaseSpace BaseSpace::sphere(std::size_t b) {
  if (b < 2)
    throw Error(ErrorCode::DimMismatch,
                "sphere base needs dimension >= 2 (use point or circle)");
  return BaseSpace(BaseKind::Sphere, b);
}

std::string BaseSpace::name() const {
  switch (kind_) {
    case BaseKind::Point: return "point";
    case BaseKind::Circle: return "circle";
    case BaseKind::Sphere: return "sphere:" + std::to_string(dim_);
  }
  return "?";
}

ProblemInstance make_instance(const BaseSpace& base, const IntMatrix& A_M,
                              const IntMatrix& A_N, const IntMatrix& L,
                              const IntVector& v) {
  const std::size_t m = A_M.rows();
  const std::size_t n = A_N.rows();
  check_gluing("A_M", A_M, m, base);
  check_gluing("A_N", A_N, n, base);
  if (L.rows() != n || L.cols() != m)
    throw Error(ErrorCode::DimMismatch, "L is " + dims(L) + ", expected " +
                                            std::to_string(n) + "x" +
                                            std::to_string(m));
  if (v.size() != n)
    throw Error(ErrorCode::DimMismatch, "v has length " +
                                            std::to_string(v.size()) +
                                            ", expected " + std::to_string(n));
  if (!(A_N * L == L * A_M))
    throw Error(ErrorCode::IntertwineViolated,
                "A_N * L != L * A_M (difference " + (A_N * L - L * A_M).to_string() +
                    ")");
  ProblemInstance inst;
  inst.base = base;
  inst.source = {m, A_M};
  inst.target = {n, A_N};
  inst.map = {L, v};
  return inst;
}

ProblemInstance make_instance_from_pair(const BaseSpace& base,
                                        const IntMatrix& A_M,
                                        const IntMatrix& A_N,
                                        const IntMatrix& L1,
                                        const IntVector& v1,
                                        const IntMatrix& L2,
                                        const IntVector& v2) {
  if (L1.rows() != L2.rows() || L1.cols() != L2.cols())
    throw Error(ErrorCode::DimMismatch, "L1 and L2 differ in shape");
  if (v1.size() != v2.size())
    throw Error(ErrorCode::DimMismatch, "v1 and v2 differ in length");
  return make_instance(base, A_M, A_N, L1 - L2, v1 - v2);
}

IntVector normalize_shift(const ProblemInstance& inst) {
  // Sections over a point or a higher sphere are nullhomotopic.
  if (inst.base.kind() != BaseKind::Circle) return IntVector(inst.n());
  const auto relations = intlat::image_lattice(minus_identity(inst.A_N()));
  return intlat::reduce_modulo(relations, inst.v());
}

IntVector reduce_shift_modulo_image(const ProblemInstance& inst) {
  const auto image = intlat::image_lattice(inst.L());
  if (inst.base.kind() != BaseKind::Circle)
    return intlat::reduce_modulo(image, inst.v());
  const auto relations = intlat::lattice_sum(
      image, intlat::image_lattice(minus_identity(inst.A_N())));
  return intlat::reduce_modulo(relations, inst.v());
}

CircleCaseData circle_case_data(const ProblemInstance& inst) {
  CircleCaseData cd;
  const std::size_t n = inst.n();
  cd.image = intlat::image_lattice(inst.L());
  cd.r = cd.image.rank();
  cd.sat = intlat::saturation(cd.image);

  for (std::size_t j = 0; j < cd.sat.rank(); ++j)
    if (!intlat::contains(cd.sat, inst.A_N() * cd.sat.basis.column(j)))
      throw Error(ErrorCode::InternalInconsistency,
                  "A_N does not preserve the saturation of the image");

  if (n == 0 || cd.r + 1 != n) return cd;

  auto normal_lattice = intlat::kernel(cd.sat.basis.transpose());
  if (normal_lattice.rank() != 1)
    throw Error(ErrorCode::InternalInconsistency, "hyperplane normal not unique");
  IntVector normal = normal_lattice.basis.column(0);
  for (std::size_t i = n; i-- > 0;) {
    if (normal[i] == 0) continue;
    if (normal[i] < 0) normal = Int(-1) * normal;
    break;
  }

  IntMatrix row(1, n);
  for (std::size_t i = 0; i < n; ++i) row(0, i) = normal[i];
  auto y = intlat::solve(row, IntVector{Int(1)});
  if (!y)
    throw Error(ErrorCode::InternalInconsistency, "normal vector not primitive");
  IntVector y2 = intlat::reduce_modulo(cd.sat, *y);

  const Int a = dot(normal, inst.A_N() * y2);
  if (a != 1 && a != -1)
    throw Error(ErrorCode::InternalInconsistency,
                "A_N acts on Z^n/sat by " + a.get_str());

  const Int v2 = dot(normal, inst.v());
  cd.normal = normal;
  cd.y2 = y2;
  cd.a = a == 1 ? 1 : -1;
  cd.v2 = v2;
  cd.v1 = inst.v() - v2 * y2;
  return cd;
}

IntVector representative_in_image_span(const ProblemInstance& inst) {
  if (inst.base.kind() != BaseKind::Circle)
    throw Error(ErrorCode::NotFound, "base is not the circle");
  const auto cd = circle_case_data(inst);
  if (!cd.codim_one())
    throw Error(ErrorCode::NotFound, "image of L does not have codimension one");
  if (*cd.a != -1) throw Error(ErrorCode::NotFound, "a = +1");
  if (!divides(Int(2), *cd.v2))
    throw Error(ErrorCode::NotFound, "v2 = " + cd.v2->get_str() + " is odd");
  if (*cd.v2 == 0) return inst.v();

  // Find w with normal . (A_N - id) w = v2; then v - (A_N - id) w has zero
  // normal component.
  const IntMatrix R = minus_identity(inst.A_N());
  const std::size_t n = inst.n();
  IntMatrix row(1, n);
  for (std::size_t j = 0; j < n; ++j) {
    Int s = 0;
    for (std::size_t i = 0; i < n; ++i) s += (*cd.normal)[i] * R(i, j);
    row(0, j) = s;
  }
  auto w = intlat::solve(row, IntVector{*cd.v2});
  if (!w) throw Error(ErrorCode::NotFound, "no integral correction vector");
  IntVector shifted = inst.v() - R * *w;
  if (dot(*cd.normal, shifted) != 0)
    throw Error(ErrorCode::InternalInconsistency, "corrected shift left the span");
  return shifted;
}

}  // namespace tn
