#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "torusnielsen/errors.hpp"
#include "torusnielsen/instance_io.hpp"
#include "torusnielsen/oracle.hpp"
#include "torusnielsen/report.hpp"

using namespace tn;
using tn::testing::vec;

namespace {

std::string parse_error(std::string_view text) {
  try {
    io::parse_instance_text(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    return e.what();
  }
  FAIL("parse succeeded");
  return {};
}

ErrorCode build_error(std::string_view text) {
  try {
    io::to_problem(io::parse_instance_text(text));
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("instance accepted");
  return ErrorCode::InternalInconsistency;
}

}  // namespace

TEST_CASE("parse the Gaussian instance") {
  const auto file = io::parse_instance_text(
      "# comment\n"
      "base: circle\n"
      "m: 2\n"
      "n: 2\n"
      "A_M: [[0,-1],[1,0]]\n"
      "A_N: [[0,-1],\n"
      "      [1,0]]   # continued\n"
      "L: [[1,-1],[1,1]]\n"
      "v: [1,0]\n");
  const auto inst = io::to_problem(file);
  CHECK(inst.base == BaseSpace::circle());
  CHECK(inst.L() == IntMatrix::from_rows({{1, -1}, {1, 1}}));
  CHECK(inst.A_N() == IntMatrix::from_rows({{0, -1}, {1, 0}}));
  CHECK(inst.v() == vec({1, 0}));
}

TEST_CASE("defaults and the pair form") {
  const auto inst = io::to_problem(io::parse_instance_text(
      "base: point\nL1: [[3,1],[0,2]]\nv1: [0,0]\nL2: [[1,1],[0,1]]\nv2: [0,0]\n"));
  CHECK(inst.L() == IntMatrix::from_rows({{2, 0}, {0, 1}}));
  CHECK(inst.A_M() == IntMatrix::identity(2));
  const auto nov = io::to_problem(io::parse_instance_text("base: circle\nL: [[2]]\n"));
  CHECK(nov.v() == vec({0}));
}

TEST_CASE("parse errors carry line and column") {
  CHECK(parse_error("base: circle\nL: [[1,2],[3]]\n").find("line 2") != std::string::npos);
  CHECK(parse_error("base: circle\nL: [[1,2],[3,x]]\n").find("column") != std::string::npos);
  CHECK(parse_error("base: circle\nfoo: 3\n").find("line 2") != std::string::npos);
  CHECK(parse_error("base: circle\nbase: point\n").find("line 2") != std::string::npos);
  CHECK(parse_error("base circle\n").find("line 1") != std::string::npos);
  CHECK(parse_error("L: [[1,2]\n").find("line") != std::string::npos);
}

TEST_CASE("invalid instances map to library errors") {
  CHECK(build_error("base: circle\nA_M: [[0,-1],[1,0]]\nL: [[1,0],[0,1]]\n") ==
        ErrorCode::IntertwineViolated);
  CHECK(build_error("base: circle\nA_M: [[2]]\nA_N: [[2]]\nL: [[1]]\n") ==
        ErrorCode::BadGluing);
  CHECK(build_error("base: circle\nm: 3\nL: [[1,0],[0,1]]\n") == ErrorCode::DimMismatch);
  CHECK(build_error("base: sphere:1\nL: [[1]]\n") == ErrorCode::Parse);
  CHECK(build_error("base: torus\nL: [[1]]\n") == ErrorCode::Parse);
  CHECK(build_error("base: circle\n") == ErrorCode::Parse);
}

TEST_CASE("fixed-point files") {
  const auto p = io::to_fixed_point_problem(io::parse_instance_text(
      "base: circle\nn: 2\nA: [[1,0],[0,-1]]\nf_star: [[4,0],[0,1]]\nv: [1,0]\n"));
  CHECK(p.f_star == IntMatrix::from_rows({{4, 0}, {0, 1}}));
  CHECK_THROWS_AS(io::to_fixed_point_problem(io::parse_instance_text(
                      "base: circle\nA: [[1,0,0],[0,1,0]]\nf_star: [[1,0],[0,1]]\n")),
                  Error);
}

TEST_CASE("property: parse and serialize round trip") {
  std::mt19937_64 rng(501);
  oracle::RandomInstanceOptions opt;
  opt.full_rank = false;
  opt.min_order = 0;
  for (int t = 0; t < 100; ++t) {
    const auto inst = oracle::random_instance(rng, opt);
    const std::string text = io::serialize(inst);
    const auto back = io::to_problem(io::parse_instance_text(text));
    CHECK(back.L() == inst.L());
    CHECK(back.v() == inst.v());
    CHECK(back.A_M() == inst.A_M());
    CHECK(back.A_N() == inst.A_N());
    CHECK(io::serialize(back) == text);
  }
  const auto p = make_fixed_point_problem(IntMatrix::from_rows({{0, 1}, {1, 0}}),
                                          IntMatrix::from_rows({{2, 1}, {1, 2}}), vec({1, 2}));
  const auto q = io::to_fixed_point_problem(io::parse_instance_text(io::serialize(p)));
  CHECK(q.f_star == p.f_star);
  CHECK(q.v == p.v);
  CHECK(q.bundle.gluing == p.bundle.gluing);
}

TEST_CASE("json reports use stable keys and write inf") {
  const auto inst = make_instance(BaseSpace::circle(), Int(-1) * IntMatrix::identity(2),
                                  Int(-1) * IntMatrix::identity(2), IntMatrix::zero(2, 2),
                                  vec({0, 0}));
  const auto j = report::to_json(nielsen(inst));
  for (const char* key : {"case", "N", "MCC", "MC", "R", "loose", "nu_odd", "nu_even",
                          "nu_inf", "witness"})
    CHECK(j.contains(key));
  CHECK(j["nu_even"] == "inf");
  CHECK(j["R"] == "inf");
  CHECK(j["N"] == 0);
  CHECK(j["loose"] == true);
  CHECK(j["case"] == "Circle2");
  CHECK(report::to_json(nielsen(inst)).dump() == j.dump());
}

TEST_CASE("text report mentions the case and the numbers") {
  const auto r = nielsen(oracle::gauss_instance(1, 1, vec({1, 0})));
  const auto text = report::render_text(r);
  CHECK(text.find("Circle0") != std::string::npos);
  CHECK(text.find("loose") != std::string::npos);
}
