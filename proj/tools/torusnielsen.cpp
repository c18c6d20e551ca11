// torusnielsen: Nielsen numbers and minimum coincidence numbers for fiberwise
// maps between linear torus bundles.

#include <cstdint>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "torusnielsen/errors.hpp"
#include "torusnielsen/instance_io.hpp"
#include "torusnielsen/nielsen.hpp"
#include "torusnielsen/oracle.hpp"
#include "torusnielsen/orbits.hpp"
#include "torusnielsen/report.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitTooLarge = 4;
constexpr int kExitMismatch = 5;

int exit_code_for(tn::ErrorCode code) {
  switch (code) {
    case tn::ErrorCode::Parse: return kExitParse;
    case tn::ErrorCode::TooLarge: return kExitTooLarge;
    default: return kExitInvariant;
  }
}

struct Options {
  bool json = false;
  std::uint64_t cap = tn::orbits::kDefaultCap;
};

void emit(const Options& opt, const nlohmann::json& j, const std::string& text) {
  if (opt.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_nielsen(const Options& opt, const std::string& path) {
  const auto inst = tn::io::to_problem(tn::io::read_instance_file(path));
  const auto rep = tn::nielsen(inst, opt.cap);
  emit(opt, tn::report::to_json(rep), tn::report::render_text(rep));
  return 0;
}

int cmd_fixed_points(const Options& opt, const std::string& path) {
  const auto problem = tn::io::to_fixed_point_problem(tn::io::read_instance_file(path));
  const auto rep = tn::fixed_points(problem, opt.cap);
  const auto verdict = tn::fixed_point_free(problem, opt.cap);
  auto j = tn::report::to_json(rep);
  j["fixed_point_free"] = verdict.fixed_point_free;
  j["reason"] = verdict.reason;
  emit(opt, j,
       tn::report::render_text(rep) + "fixed-point free: " +
           (verdict.fixed_point_free ? "yes" : "no") + " (" + verdict.reason + ")\n");
  return 0;
}

int cmd_orbits(const Options& opt, const std::string& path) {
  const auto inst = tn::io::to_problem(tn::io::read_instance_file(path));
  tn::orbits::OrbitStats st;
  if (inst.base.kind() == tn::BaseKind::Circle) {
    const auto cd = tn::circle_case_data(inst);
    if (cd.r == inst.n())
      st = tn::orbits::enumerate_torsion_orbits(
          tn::orbits::action(inst, inst.v(), tn::orbits::cokernel(inst.L())), opt.cap, 1000);
    else
      st = tn::orbits::circle_orbit_stats(inst, opt.cap);
  } else {
    st = tn::nielsen(inst, opt.cap).stats;
  }
  emit(opt, tn::report::to_json(st), tn::report::render_text(st));
  return 0;
}

int cmd_check(const Options& opt, const std::string& path, std::size_t count,
              std::uint64_t seed, bool random, bool fault) {
  const auto f = fault ? tn::oracle::Fault::DropOrbit : tn::oracle::Fault::None;
  if (!random) {
    if (path.empty()) {
      std::cerr << "check: give an instance file or --random N\n";
      return kExitParse;
    }
    const auto inst = tn::io::to_problem(tn::io::read_instance_file(path));
    const auto res = tn::oracle::check_instance(inst, opt.cap, f);
    if (!res.ok) {
      std::cout << "MISMATCH " << res.detail << "\n" << tn::io::serialize(inst);
      std::cout << "0/1 ok\n";
      return kExitMismatch;
    }
    std::cout << (res.skipped ? "1/1 ok (group infinite: oracle comparison skipped, "
                                "nu_B law checked)\n"
                              : "1/1 ok\n");
    return 0;
  }

  std::cout << "seed " << seed << "\n";
  std::mt19937_64 rng(seed);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto inst = tn::oracle::random_instance(rng);
    const auto res = tn::oracle::check_instance(inst, opt.cap, f);
    if (res.ok) {
      ++ok;
    } else {
      std::cout << "MISMATCH #" << i << ": " << res.detail << "\n"
                << tn::io::serialize(inst);
    }
  }
  std::cout << ok << "/" << count << " ok\n";
  return ok == count ? 0 : kExitMismatch;
}

int cmd_gauss_table(const Options& opt, int qmax) {
  const auto table = tn::oracle::gauss_table(qmax);
  emit(opt, tn::report::to_json(table), tn::report::render_text(table));
  return table.mismatches == 0 ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nielsen numbers and minimum coincidence numbers for fiberwise maps "
               "between linear torus bundles"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "Structured output");
  app.add_option("--cap", opt.cap, "Largest group enumerated element by element")
      ->check(CLI::PositiveNumber);

  std::string path;
  auto* nielsen = app.add_subcommand("nielsen", "N, MCC, MC and #R for an instance file");
  nielsen->add_option("file", path, "Instance file")->required();

  auto* fixed = app.add_subcommand("fixed-points", "Fixed points of a fiberwise selfmap");
  fixed->add_option("file", path, "Fixed-point file (A, f_star, v)")->required();

  auto* orbit = app.add_subcommand("orbits", "Raw orbit statistics");
  orbit->add_option("file", path, "Instance file")->required();

  std::size_t count = 0;
  std::uint64_t seed = 42;
  bool fault = false;
  auto* check = app.add_subcommand("check", "Compare against the brute-force oracle");
  check->add_option("file", path, "Instance file");
  auto* random_opt = check->add_option("--random", count, "Number of random instances");
  check->add_option("--seed", seed, "Random seed");
  check->add_flag("--inject-fault", fault)->group("");

  int qmax = 0;
  auto* gauss = app.add_subcommand("gauss-table", "Orbit table for the Gaussian-integer example");
  gauss->add_option("--qmax", qmax, "Largest q (k^2 + l^2 <= 4 q)")
      ->required()
      ->check(CLI::Range(1, 10000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    if (*nielsen) return cmd_nielsen(opt, path);
    if (*fixed) return cmd_fixed_points(opt, path);
    if (*orbit) return cmd_orbits(opt, path);
    if (*check) return cmd_check(opt, path, count, seed, random_opt->count() > 0, fault);
    if (*gauss) return cmd_gauss_table(opt, qmax);
  } catch (const tn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return 0;
}
