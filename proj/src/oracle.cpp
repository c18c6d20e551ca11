#include "torusnielsen/oracle.hpp"

#include <algorithm>
#include <map>

#include "torusnielsen/errors.hpp"
#include "torusnielsen/intlat.hpp"
#include "torusnielsen/nielsen.hpp"

namespace tn::oracle {
namespace {

using Rational = mpq_class;

Int floor_of(const Rational& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

// Lower triangular basis of L(Z^m) with positive diagonal, by plain
// Euclidean column steps. nullopt when L has rank < n.
std::optional<IntMatrix> triangular_basis(const IntMatrix& L) {
  const std::size_t n = L.rows(), m = L.cols();
  IntMatrix T = L;
  std::size_t col = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (true) {
      std::size_t best = m;
      for (std::size_t j = col; j < m; ++j)
        if (T(i, j) != 0 && (best == m || abs(T(i, j)) < abs(T(i, best))))
          best = j;
      if (best == m) return std::nullopt;
      T.swap_columns(col, best);
      bool done = true;
      for (std::size_t j = col + 1; j < m; ++j) {
        if (T(i, j) == 0) continue;
        T.add_column_multiple(j, col, -floor_div(T(i, j), T(i, col)));
        if (T(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (T(i, col) < 0) T.negate_column(col);
    ++col;
  }
  return T.columns(0, n);
}

// u minus the lattice point of the parallelepiped cell containing it.
IntVector to_parallelepiped(const IntMatrix& T, const IntVector& u) {
  const std::size_t n = T.rows();
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational s = u[i];
    for (std::size_t j = 0; j < i; ++j) s -= Rational(T(i, j)) * x[j];
    x[i] = s / Rational(T(i, i));
  }
  IntVector k(n);
  for (std::size_t i = 0; i < n; ++i) k[i] = floor_of(x[i]);
  return u - T * k;
}

std::vector<std::vector<Rational>> rational_inverse(const IntMatrix& B) {
  const std::size_t n = B.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = B(i, j);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw Error(ErrorCode::InfiniteGroup, "singular basis");
    std::swap(a[p], a[c]);
    const Rational inv = 1 / a[c][c];
    for (auto& e : a[c]) e *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

void count_sizes(orbits::OrbitStats& st) {
  Int odd = 0, even = 0;
  for (const auto& [size, count] : st.by_size)
    (size % 2 == 1 ? odd : even) += count;
  st.nu_odd = odd;
  st.nu_even = even;
  st.nu_inf = 0;
}

std::string sizes_text(const std::map<Int, Int>& by_size) {
  std::string s = "{";
  for (const auto& [size, count] : by_size) {
    if (s.size() > 1) s += ", ";
    s += size.get_str() + ":" + count.get_str();
  }
  return s + "}";
}

std::string instance_text(const ProblemInstance& inst) {
  return "base: " + inst.base.name() + "; A_M: " + inst.A_M().to_string() +
         "; A_N: " + inst.A_N().to_string() + "; L: " + inst.L().to_string() +
         "; v: " + to_string(inst.v());
}

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

orbits::OrbitStats brute_orbits(const IntMatrix& A_N, const IntMatrix& L,
                                const IntVector& v, std::uint64_t cap) {
  const std::size_t n = L.rows();
  const auto T = triangular_basis(L);
  if (!T) throw Error(ErrorCode::InfiniteGroup, "L has rank below n");

  Int order = 1;
  for (std::size_t i = 0; i < n; ++i) order *= (*T)(i, i);
  if (order > Int(std::to_string(cap)))
    throw Error(ErrorCode::TooLarge, "group order " + order.get_str() +
                                         " exceeds " + std::to_string(cap));

  std::vector<IntVector> reps;
  std::map<IntVector, std::size_t> index;
  IntVector box(n, Int(0));
  const std::size_t total = order.get_ui();
  for (std::size_t c = 0; c < total; ++c) {
    IntVector p = to_parallelepiped(*T, box);
    if (!index.emplace(p, reps.size()).second)
      throw Error(ErrorCode::InternalInconsistency, "duplicate representative");
    reps.push_back(std::move(p));
    for (std::size_t i = n; i-- > 0;) {
      if (++box[i] < (*T)(i, i)) break;
      box[i] = 0;
    }
  }

  std::vector<bool> seen(total, false);
  orbits::OrbitStats st;
  for (std::size_t s = 0; s < total; ++s) {
    if (seen[s]) continue;
    std::size_t cur = s;
    Int len = 0;
    do {
      seen[cur] = true;
      ++len;
      const IntVector image = to_parallelepiped(*T, A_N * (reps[cur] - v));
      const auto it = index.find(image);
      if (it == index.end())
        throw Error(ErrorCode::InternalInconsistency, "image left the representatives");
      cur = it->second;
      if (cur != s && seen[cur])
        throw Error(ErrorCode::InternalInconsistency, "map is not a bijection");
    } while (cur != s);
    st.by_size[len] += 1;
  }
  count_sizes(st);
  st.note = "parallelepiped representatives";
  return st;
}

std::vector<IntVector> parallelepiped_points(const IntMatrix& basis,
                                             std::uint64_t cap) {
  const std::size_t n = basis.rows();
  if (!basis.is_square())
    throw Error(ErrorCode::NonSquare, "basis must be square");
  const auto inv = rational_inverse(basis);
  IntVector lo(n, Int(0)), hi(n, Int(0));
  Int volume = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      (basis(i, j) < 0 ? lo[i] : hi[i]) += basis(i, j);
    volume *= hi[i] - lo[i] + 1;
  }
  if (volume > Int(std::to_string(cap)))
    throw Error(ErrorCode::TooLarge, "bounding box has " + volume.get_str() + " points");

  std::vector<IntVector> out;
  IntVector u = lo;
  for (Int c = 0; c < volume; ++c) {
    bool inside = true;
    for (std::size_t i = 0; i < n && inside; ++i) {
      Rational x = 0;
      for (std::size_t j = 0; j < n; ++j) x += inv[i][j] * Rational(u[j]);
      inside = x >= 0 && x < 1;
    }
    if (inside) out.push_back(u);
    for (std::size_t i = n; i-- > 0;) {
      if (++u[i] <= hi[i]) break;
      u[i] = lo[i];
    }
  }
  return out;
}

Int cofactor_det(const IntMatrix& A) {
  if (!A.is_square()) throw Error(ErrorCode::NonSquare, "cofactor_det");
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  if (n == 1) return A(0, 0);
  Int d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (A(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = A(r, c);
    const Int term = A(0, j) * cofactor_det(minor);
    d += (j % 2 == 0) ? term : Int(-term);
  }
  return d;
}

IntVector minors_snf_check(const IntMatrix& A) {
  if (A.rows() > 6 || A.cols() > 6)
    throw Error(ErrorCode::TooLarge, "minors check is limited to 6x6");
  const std::size_t kmax = std::min(A.rows(), A.cols());
  IntVector out;
  Int prev = 1;
  for (std::size_t k = 1; k <= kmax; ++k) {
    Int g = 0;
    std::vector<bool> rsel(A.rows(), false), csel(A.cols(), false);
    std::fill(rsel.end() - static_cast<long>(k), rsel.end(), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.end() - static_cast<long>(k), csel.end(), true);
      do {
        IntMatrix sub(k, k);
        for (std::size_t r = 0, rr = 0; r < A.rows(); ++r) {
          if (!rsel[r]) continue;
          for (std::size_t c = 0, cc = 0; c < A.cols(); ++c)
            if (csel[c]) sub(rr, cc++) = A(r, c);
          ++rr;
        }
        g = gcd(g, cofactor_det(sub));
      } while (std::next_permutation(csel.begin(), csel.end()));
    } while (std::next_permutation(rsel.begin(), rsel.end()));
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

ProblemInstance gauss_instance(const Int& k, const Int& l, const IntVector& v) {
  const IntMatrix i_mult = IntMatrix::from_rows({{0, -1}, {1, 0}});
  const IntMatrix L = IntMatrix::from_rows({IntVector{k, -l}, IntVector{l, k}});
  return make_instance(BaseSpace::circle(), i_mult, i_mult, L, v);
}

Int gauss_mcc(const Int& k, const Int& l, bool same_parity) {
  const Int s = k * k + l * l;
  const Int q = s / 4;
  if (s == 0) return 0;
  if (s % 4 == 0 && !same_parity) return q;
  if (s % 2 == 0 && same_parity) return q + 2;
  return q + 1;
}

GaussTable gauss_table(int q_max) {
  GaussTable table;
  const Int bound = Int(4) * q_max;
  int radius = 0;
  while (Int(radius) * radius <= bound) ++radius;
  for (int k = -radius; k <= radius; ++k)
    for (int l = -radius; l <= radius; ++l) {
      const Int s = Int(k) * k + Int(l) * l;
      if (s > bound) continue;
      for (bool same : {true, false}) {
        GaussRow row;
        row.k = k;
        row.l = l;
        row.same_parity = same;
        row.q = s / 4;
        row.residue = static_cast<int>(mpz_class(s % 4).get_si());
        const IntVector v = same ? IntVector{0, 0} : IntVector{1, 0};
        const auto inst = gauss_instance(k, l, v);
        const auto rep = nielsen_circle(inst);
        row.mcc = rep.MCC;
        row.e_mcc = gauss_mcc(k, l, same);
        if (s == 0) {
          row.ok = row.mcc == row.e_mcc;
          if (!row.ok) row.problem = "MCC";
        } else {
          const auto st = orbits::enumerate_torsion_orbits(
              orbits::action(inst, v, orbits::cokernel(inst.L())));
          auto get = [&](long size) {
            auto it = st.by_size.find(Int(size));
            return it == st.by_size.end() ? Int(0) : it->second;
          };
          row.nu1 = get(1);
          row.nu2 = get(2);
          row.nu4 = get(4);
          row.nu = st.total().value();
          const Int& q = row.q;
          switch (row.residue) {
            case 0:
              if (same) {
                row.e_nu1 = 2, row.e_nu2 = 1, row.e_nu4 = q - 1, row.e_nu = q + 2;
              } else {
                row.e_nu1 = 0, row.e_nu2 = 0, row.e_nu4 = q, row.e_nu = q;
              }
              break;
            case 1:
              row.e_nu1 = 1, row.e_nu2 = 0, row.e_nu4 = q, row.e_nu = q + 1;
              break;
            default:
              if (same) {
                row.e_nu1 = 2, row.e_nu2 = 0, row.e_nu4 = q, row.e_nu = q + 2;
              } else {
                row.e_nu1 = 0, row.e_nu2 = 1, row.e_nu4 = q, row.e_nu = q + 1;
              }
          }
          std::size_t other = 0;
          for (const auto& [size, count] : st.by_size)
            if (size != 1 && size != 2 && size != 4) ++other;
          if (other) row.problem += "orbit sizes outside {1,2,4}; ";
          if (row.nu1 != row.e_nu1 || row.nu2 != row.e_nu2 ||
              row.nu4 != row.e_nu4 || row.nu != row.e_nu)
            row.problem += "orbit counts; ";
          if (row.mcc != row.e_mcc) row.problem += "MCC; ";
          if (row.mcc != row.nu) row.problem += "MCC differs from orbit count; ";
          row.ok = row.problem.empty();
        }
        if (!row.ok) ++table.mismatches;
        table.rows.push_back(std::move(row));
      }
    }
  return table;
}

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n,
                            std::size_t max_len) {
  IntMatrix A = IntMatrix::identity(n);
  if (n == 0) return A;
  const int len = uniform(rng, 0, static_cast<int>(max_len));
  for (int s = 0; s < len; ++s) {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1));
    if (n == 1 || uniform(rng, 0, 3) == 0) {
      A.negate_row(i);
      continue;
    }
    auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 2));
    if (j >= i) ++j;
    A.add_row_multiple(i, j, Int(uniform(rng, 0, 1) ? 1 : -1));
  }
  return A;
}

std::vector<IntMatrix> commutant_basis(const IntMatrix& A_N, const IntMatrix& A_M) {
  const std::size_t n = A_N.rows(), m = A_M.rows();
  // Rows of K: entries of A_N X - X A_M, with vec(X) indexed by i * m + j.
  IntMatrix K(n * m, n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t row = i * m + j;
      for (std::size_t k = 0; k < n; ++k) K(row, k * m + j) += A_N(i, k);
      for (std::size_t k = 0; k < m; ++k) K(row, i * m + k) -= A_M(k, j);
    }
  const auto sol = intlat::kernel(K);
  std::vector<IntMatrix> out;
  for (std::size_t t = 0; t < sol.rank(); ++t) {
    IntMatrix X(n, m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) X(i, j) = sol.basis(i * m + j, t);
    out.push_back(std::move(X));
  }
  return out;
}

ProblemInstance random_instance(std::mt19937_64& rng,
                                const RandomInstanceOptions& opt) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(opt.max_n)));
    const auto m = static_cast<std::size_t>(uniform(
        rng, opt.full_rank ? static_cast<int>(n) : 0, static_cast<int>(opt.max_m)));
    if (opt.full_rank && m < n) continue;
    const IntMatrix A_N = random_unimodular(rng, n);
    IntMatrix A_M = m >= n ? direct_sum(A_N, random_unimodular(rng, m - n))
                           : random_unimodular(rng, m);
    const IntMatrix P = random_unimodular(rng, m, 3);
    A_M = intlat::unimodular_inverse(P) * A_M * P;

    const auto sol = commutant_basis(A_N, A_M);
    if (sol.empty() && n * m > 0) continue;
    IntMatrix L(n, m);
    for (const auto& X : sol) {
      const Int c = uniform(rng, -2, 2);
      if (c != 0) L = L + c * X;
    }
    bool small = true;
    for (std::size_t i = 0; i < n && small; ++i)
      for (std::size_t j = 0; j < m && small; ++j)
        small = abs(L(i, j)) <= opt.entry_bound;
    if (!small) continue;
    if (opt.full_rank) {
      const auto image = intlat::image_lattice(L);
      if (image.rank() != n) continue;
      const Int order = abs(intlat::det(image.basis));
      if (order > Int(std::to_string(opt.max_order)) ||
          order < Int(std::to_string(opt.min_order)))
        continue;
    }
    IntVector v(n);
    for (auto& x : v) x = uniform(rng, -opt.entry_bound, opt.entry_bound);
    return make_instance(BaseSpace::circle(), A_M, A_N, L, v);
  }
  throw Error(ErrorCode::NotFound, "no random instance within 1000 attempts");
}

CheckResult check_instance(const ProblemInstance& inst, std::uint64_t cap,
                           Fault fault) {
  CheckResult res;
  const std::size_t n = inst.n();
  const bool full = intlat::rank(inst.L()) == n;
  const bool circle = inst.base.kind() == BaseKind::Circle;

  const auto rep = nielsen(inst, cap);
  std::string problems;
  if (rep.stats.complete || rep.free_rank > inst.base.fundamental_group_rank()) {
    const Int nu = nu_B(rep.stats, rep.free_rank, inst.base);
    if (nu != rep.N)
      problems += "N = " + rep.N.get_str() + " but nu_B = " + nu.get_str() + "; ";
  }

  if (full) {
    const IntMatrix A = circle ? inst.A_N() : IntMatrix::identity(n);
    const IntVector v = circle ? inst.v() : IntVector(n);
    auto brute = brute_orbits(A, inst.L(), v, cap);
    if (fault == Fault::DropOrbit && !brute.by_size.empty()) {
      auto it = brute.by_size.begin();
      if (--it->second == 0) brute.by_size.erase(it);
    }
    const auto pres = orbits::cokernel(inst.L());
    orbits::OrbitStats fast;
    if (circle) {
      fast = orbits::enumerate_torsion_orbits(orbits::action(inst, v, pres), cap, 0);
    } else {
      fast.by_size = rep.stats.by_size;
    }
    if (brute.by_size != fast.by_size)
      problems += "orbit sizes: oracle " + sizes_text(brute.by_size) +
                  ", presentation " + sizes_text(fast.by_size) + "; ";
  }

  res.ok = problems.empty();
  res.skipped = !full;
  res.detail = res.ok ? instance_text(inst) : problems + "instance " + instance_text(inst);
  return res;
}

}  // namespace tn::oracle
