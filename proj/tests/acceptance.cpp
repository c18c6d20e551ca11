// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "torusnielsen/errors.hpp"
#include "torusnielsen/intlat.hpp"
#include "torusnielsen/nielsen.hpp"
#include "torusnielsen/oracle.hpp"
#include "torusnielsen/orbits.hpp"

using namespace tn;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Instances whose stats are complete, collected for the unification check.
struct Unified {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first_failure;
};

Unified g_unified;

IntVector vec(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

IntMatrix minus_id(std::size_t n) { return Int(-1) * IntMatrix::identity(n); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void record_unified(const ProblemInstance& inst, const NielsenReport& r,
                    const orbits::OrbitStats& st, std::size_t free_rank) {
  if (!st.complete && free_rank <= inst.base.fundamental_group_rank()) return;
  ++g_unified.checked;
  const Int nu = nu_B(st, free_rank, inst.base);
  if (nu != r.N) {
    ++g_unified.failed;
    if (g_unified.first_failure.empty())
      g_unified.first_failure = "L=" + inst.L().to_string() + " v=" + to_string(inst.v()) +
                                " N=" + r.N.get_str() + " nu_B=" + nu.get_str();
  }
}

void record_unified(const ProblemInstance& inst, const NielsenReport& r) {
  record_unified(inst, r, r.stats, r.free_rank);
}

// 1. Enumerated Gaussian orbit counts against the closed-form table.
Outcome gauss_table_sweep() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto table = oracle::gauss_table(25);
  const double secs = seconds_since(t0);
  std::size_t lattice_points = 0;
  for (long k = -10; k <= 10; ++k)
    for (long l = -10; l <= 10; ++l)
      if (k * k + l * l > 0 && k * k + l * l <= 100) ++lattice_points;
  Outcome out;
  std::size_t swept = 0;
  for (const auto& row : table.rows) {
    const Int s = row.k * row.k + row.l * row.l;
    if (s == 0) continue;
    ++swept;
    if (row.nu1 + 2 * row.nu2 + 4 * row.nu4 != s) out.pass = false;
  }
  if (table.mismatches != 0 || swept != 2 * lattice_points || secs >= 10.0) out.pass = false;
  std::ostringstream d;
  d << swept << " rows (" << lattice_points << " (k,l) x 2 parities), " << table.mismatches
    << " mismatches, " << secs << " s";
  out.detail = d.str();
  return out;
}

// 2. MCC of nielsen_circle against the four-branch closed form.
Outcome gauss_mcc() {
  Outcome out;
  std::size_t n = 0, bad = 0;
  std::set<std::string> branches;
  for (long k = -10; k <= 10; ++k)
    for (long l = -10; l <= 10; ++l) {
      const long s = k * k + l * l;
      if (s > 100) continue;
      for (bool same : {true, false}) {
        if (s == 0 && !same) continue;
        const auto inst = oracle::gauss_instance(k, l, same ? vec({0, 0}) : vec({1, 0}));
        const auto r = nielsen_circle(inst);
        ++n;
        if (r.MCC != oracle::gauss_mcc(k, l, same)) ++bad;
        branches.insert(s == 0 ? "zero" : s % 4 == 0 && !same ? "4q, parities differ"
                                          : s % 2 == 0 && same ? "even, same parity"
                                                               : "other");
        record_unified(inst, r);
      }
    }
  out.pass = bad == 0 && branches.size() == 4;
  out.detail = std::to_string(n) + " instances, " + std::to_string(bad) + " mismatches, " +
               std::to_string(branches.size()) + " branches";
  return out;
}

// 3. Classical fixed points on the torus: N(f, id) = |det(f_* - id)|.
Outcome classical_fixed_points() {
  std::mt19937_64 rng(2009);
  std::uniform_int_distribution<int> e(-9, 9);
  Outcome out;
  std::size_t enumerated = 0, bad = 0;
  for (int t = 0; t < 200; ++t) {
    const IntMatrix f = IntMatrix::from_rows({{e(rng), e(rng)}, {e(rng), e(rng)}});
    const IntMatrix L = f - IntMatrix::identity(2);
    const auto inst = make_instance(BaseSpace::point(), IntMatrix::identity(2),
                                    IntMatrix::identity(2), L, vec({0, 0}));
    const auto r = nielsen_point(inst);
    const Int d = abs(oracle::cofactor_det(L));
    if (r.N != d) ++bad;
    const auto pres = orbits::cokernel(L);
    orbits::OrbitStats st;
    if (d != 0) {
      ++enumerated;
      const auto brute = oracle::brute_orbits(IntMatrix::identity(2), L, vec({0, 0}));
      st = orbits::enumerate_torsion_orbits(orbits::action(inst, vec({0, 0}), pres));
      if (!(brute.total() == ExtNat(d)) || !(st.total() == ExtNat(d))) ++bad;
    }
    record_unified(inst, r, st, pres.free_rank);
  }
  out.pass = bad == 0;
  out.detail = "200 maps, " + std::to_string(enumerated) + " enumerated, " +
               std::to_string(bad) + " mismatches";
  return out;
}

// 4. Klein products: (1, (prod |a_ii| - 1) / 2, 0).
Outcome klein_products() {
  std::mt19937_64 rng(412);
  std::uniform_int_distribution<int> odd(-5, 4);
  std::uniform_int_distribution<int> shift(-20, 20);
  Outcome out;
  std::size_t n_cases = 0, bad = 0, brute_checked = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int t = 0; t < 150; ++t) {
      IntMatrix L(n, n);
      IntVector v(n);
      Int prod = 1;
      for (std::size_t i = 0; i < n; ++i) {
        L(i, i) = 2 * odd(rng) + 1;
        prod *= abs(L(i, i));
        v[i] = shift(rng);
      }
      const auto inst = make_instance(BaseSpace::circle(), minus_id(n), minus_id(n), L, v);
      const auto st = orbits::circle_orbit_stats(inst);
      ++n_cases;
      if (!(st.nu_odd == ExtNat(1)) || !(st.nu_even == ExtNat((prod - 1) / 2)) ||
          !(st.nu_inf == ExtNat(0)) || !st.complete)
        ++bad;
      if (prod <= 2000) {
        ++brute_checked;
        if (oracle::brute_orbits(minus_id(n), L, v).by_size != st.by_size) ++bad;
      }
      record_unified(inst, nielsen_circle(inst));
    }
  }
  out.pass = bad == 0;
  out.detail = std::to_string(n_cases) + " products (n <= 4, |a_ii| <= 9), " +
               std::to_string(brute_checked) + " also brute-forced, " +
               std::to_string(bad) + " mismatches";
  return out;
}

// 5. -id on a free group: stats (1, inf, 0) but N = 0.
Outcome rank_gate() {
  Outcome out;
  std::ostringstream d;
  for (std::size_t n = 2; n <= 3; ++n) {
    const auto inst = make_instance(BaseSpace::circle(), minus_id(n), minus_id(n),
                                    IntMatrix::zero(n, n), IntVector(n, 0));
    const auto r = nielsen_circle(inst);
    const auto& st = r.stats;
    const bool stats_ok = st.complete && st.nu_odd == ExtNat(1) &&
                          st.nu_even.is_infinite() && st.nu_inf == ExtNat(0);
    const Int ungated = st.nu_odd.finite_or_zero() + st.nu_even.finite_or_zero() +
                        st.nu_inf.finite_or_zero();
    const Int gated = nu_B(st, r.free_rank, inst.base);
    const bool ok = stats_ok && r.N == 0 && r.MCC == 0 && gated == 0 && ungated == 1;
    out.pass = out.pass && ok;
    d << "n=" << n << ": (" << st.nu_odd.to_string() << "," << st.nu_even.to_string() << ","
      << st.nu_inf.to_string() << ") N=" << r.N << " ungated sum=" << ungated << "; ";
    record_unified(inst, r);
  }
  out.detail = d.str();
  return out;
}

// 6. Brute-force orbits against the Smith-form pipeline.
Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(42);
  std::size_t ok = 0, skipped = 0;
  std::string first;
  for (int t = 0; t < 500; ++t) {
    const auto inst = oracle::random_instance(rng);
    const auto res = oracle::check_instance(inst);
    if (res.skipped) ++skipped;
    if (res.ok && !res.skipped) ++ok;
    else if (first.empty()) first = res.detail;
    record_unified(inst, nielsen_circle(inst));
  }
  // Negative control: a corrupted oracle must be caught.
  std::mt19937_64 rng2(43);
  std::size_t caught = 0;
  for (int t = 0; t < 20; ++t)
    if (!oracle::check_instance(oracle::random_instance(rng2), orbits::kDefaultCap,
                                oracle::Fault::DropOrbit)
             .ok)
      ++caught;
  const double secs = seconds_since(t0);
  Outcome out;
  out.pass = ok == 500 && caught == 20 && secs < 60.0;
  std::ostringstream d;
  d << ok << "/500 ok, " << skipped << " skipped, fault caught " << caught << "/20, " << secs
    << " s";
  if (!first.empty()) d << "; first: " << first;
  out.detail = d.str();
  return out;
}

// 7. Orbit sizes unchanged when v moves by L(Z^m) + (A_N - id)(Z^n).
Outcome shift_invariance() {
  std::mt19937_64 rng(48);
  std::uniform_int_distribution<int> c(-6, 6);
  std::size_t bad = 0;
  for (int t = 0; t < 200; ++t) {
    const auto inst = oracle::random_instance(rng);
    IntVector x(inst.m()), w(inst.n());
    for (auto& a : x) a = c(rng);
    for (auto& a : w) a = c(rng);
    const IntVector moved_v =
        inst.v() + inst.L() * x + (inst.A_N() - IntMatrix::identity(inst.n())) * w;
    const auto moved = make_instance(inst.base, inst.A_M(), inst.A_N(), inst.L(), moved_v);
    const auto pres = orbits::cokernel(inst.L());
    const auto a = orbits::enumerate_torsion_orbits(orbits::action(inst, inst.v(), pres));
    const auto b = orbits::enumerate_torsion_orbits(orbits::action(moved, moved_v, pres));
    const auto brute = oracle::brute_orbits(inst.A_N(), inst.L(), moved_v);
    if (a.by_size != b.by_size || brute.by_size != a.by_size) ++bad;
  }
  Outcome out;
  out.pass = bad == 0;
  out.detail = "200 shifted pairs, " + std::to_string(bad) + " mismatches";
  return out;
}

// Extra circle instances of every case for the unification sweep.
void circle_case_sweep() {
  std::mt19937_64 rng(77);
  oracle::RandomInstanceOptions opt;
  opt.full_rank = false;
  opt.min_order = 0;
  for (int t = 0; t < 500; ++t) {
    const auto inst = oracle::random_instance(rng, opt);
    record_unified(inst, nielsen_circle(inst));
  }
}

// 8. N equals the gated orbit sum wherever the stats are complete.
Outcome unification() {
  circle_case_sweep();
  Outcome out;
  out.pass = g_unified.failed == 0 && g_unified.checked > 0;
  out.detail = std::to_string(g_unified.checked) + " instances, " +
               std::to_string(g_unified.failed) + " mismatches";
  if (!g_unified.first_failure.empty()) out.detail += "; first: " + g_unified.first_failure;
  return out;
}

// 9. Eigenline case table against the general dispatch, all small A.
Outcome two_path_equality() {
  std::vector<IntMatrix> all;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c)
        for (int d = -2; d <= 2; ++d)
          if (a * d - b * c == 1 || a * d - b * c == -1)
            all.push_back(IntMatrix::from_rows({{a, b}, {c, d}}));
  std::mt19937_64 rng(1272);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> shift(-6, 6);
  std::size_t runs = 0, bad = 0, too_large = 0;
  std::set<std::string> branches;
  std::string first;
  for (const auto& A : all) {
    const auto basis = oracle::commutant_basis(A, A);
    for (int t = 0; t < 100; ++t) {
      IntMatrix f = IntMatrix::zero(2, 2);
      for (const auto& B : basis) f = f + Int(coef(rng)) * B;
      const auto p = make_fixed_point_problem(A, f, vec({shift(rng), shift(rng)}));
      ++runs;
      try {
        const auto general = nielsen_circle(coincidence_instance(p));
        const auto narrative = plane_fixed_point_narrative(p);
        branches.insert(narrative.branch);
        if (narrative.MCC != general.MCC || !(narrative.MC == general.MC)) {
          ++bad;
          if (first.empty())
            first = "A=" + A.to_string() + " f=" + f.to_string() + " v=" + to_string(p.v);
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::TooLarge) throw;
        ++too_large;
      }
    }
  }
  Outcome out;
  out.pass = bad == 0 && too_large == 0;
  out.detail = std::to_string(all.size()) + " gluings x 100 maps, " + std::to_string(bad) +
               " mismatches, " + std::to_string(too_large) + " over cap, " +
               std::to_string(branches.size()) + " branches hit";
  if (!first.empty()) out.detail += "; first: " + first;
  return out;
}

bool canonical_hnf(const IntMatrix& H, std::size_t rank) {
  std::size_t prev = 0;
  for (std::size_t j = 0; j < H.cols(); ++j) {
    std::size_t p = 0;
    while (p < H.rows() && H(p, j) == 0) ++p;
    if (j >= rank) {
      if (p != H.rows()) return false;
      continue;
    }
    if (p == H.rows() || H(p, j) <= 0 || (j > 0 && p <= prev)) return false;
    for (std::size_t k = 0; k < j; ++k)
      if (H(p, k) < 0 || H(p, k) >= H(p, j)) return false;
    prev = p;
  }
  return true;
}

// 10. Normal forms on random matrices up to 5 x 5.
Outcome normal_forms() {
  std::mt19937_64 rng(1000);
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_int_distribution<int> e(-9, 9);
  std::size_t bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t r = dim(rng), c = dim(rng);
    IntMatrix A(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) A(i, j) = e(rng);
    bool ok = true;
    const auto s = intlat::snf(A);
    ok = ok && s.U * A * s.V == s.S;
    ok = ok && abs(oracle::cofactor_det(s.U)) == 1 && abs(oracle::cofactor_det(s.V)) == 1;
    ok = ok && s.U * s.U_inv == IntMatrix::identity(r) && s.V * s.V_inv == IntMatrix::identity(c);
    IntVector nonzero;
    for (std::size_t i = 0; i < s.diag.size(); ++i) {
      const Int& d = s.diag[i];
      if (d < 0) ok = false;
      if (i + 1 < s.diag.size() && d != 0 && !divides(d, s.diag[i + 1])) ok = false;
      if (i + 1 < s.diag.size() && d == 0 && s.diag[i + 1] != 0) ok = false;
      if (d != 0) nonzero.push_back(d);
    }
    ok = ok && oracle::minors_snf_check(A) == nonzero;
    const auto h = intlat::hnf(A);
    ok = ok && A * h.transform == h.form && abs(oracle::cofactor_det(h.transform)) == 1;
    ok = ok && canonical_hnf(h.form, h.rank) && h.rank == nonzero.size();
    if (!ok) ++bad;
  }
  Outcome out;
  out.pass = bad == 0;
  out.detail = "1000 matrices, " + std::to_string(bad) + " failures";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Gaussian orbit table, 0 < k^2+l^2 <= 100", gauss_table_sweep},
      {"Gaussian MCC closed form", gauss_mcc},
      {"classical torus fixed points |det(f_* - id)|", classical_fixed_points},
      {"Klein-product orbit law", klein_products},
      {"rank gate for -id on a free group", rank_gate},
      {"brute-force and Smith-form orbit pipelines agree", oracle_equivalence},
      {"orbit sizes invariant under shifts of v", shift_invariance},
      {"N equals the gated orbit sum", unification},
      {"plane fixed points: eigenline table equals general dispatch", two_path_equality},
      {"normal-form property suite", normal_forms},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all = all && o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
  }
  return all ? 0 : 1;
}
