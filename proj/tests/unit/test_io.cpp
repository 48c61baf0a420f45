#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "gbspline/eval.hpp"
#include "gbspline/io.hpp"
#include "support.hpp"

using namespace gbs;

TEST_CASE("parse_numbers") {
  CHECK(parse_numbers("0 0 1, 2;2\n# comment 9\n3 # tail 7\n") ==
        std::vector<double>{0, 0, 1, 2, 2, 3});
  CHECK(parse_numbers("").empty());
  CHECK(parse_numbers("-1.5e-3") == std::vector<double>{-1.5e-3});
  CHECK_THROWS_AS(parse_numbers("1 two 3"), Error);
}

TEST_CASE("read_knots and read_points") {
  const std::string path = "gbspline_io_test_knots.txt";
  {
    std::ofstream out(path);
    out << "# knots\n0\n0.5\n1.25 2\n";
  }
  CHECK(read_knots(path) == std::vector<double>{0, 0.5, 1.25, 2});
  CHECK(read_knots("0,1,2") == std::vector<double>{0, 1, 2});
  {
    std::ofstream out(path);
    out << "0 1\n# skipped\n2 3\n\n4,5\n";
  }
  CHECK(read_points(path) == std::vector<std::vector<double>>{{0, 1}, {2, 3}, {4, 5}});
  CHECK(read_points("0 1; 2 3") == std::vector<std::vector<double>>{{0, 1}, {2, 3}});
  std::remove(path.c_str());
}

TEST_CASE("format_double round-trips") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> d(-1e3, 1e3);
  for (int k = 0; k < 1000; ++k) {
    const double x = d(rng) * std::pow(10.0, k % 20 - 10);
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("basis dump and load is bit-exact") {
  std::mt19937_64 rng(71);
  for (const auto& fam : testing::all_families()) {
    const auto t = testing::random_knots(rng, 3, 12, 2, true);
    const auto basis = build_basis(t, fam, 3);
    const auto text = basis_to_json(basis).dump();
    const auto back = basis_from_json(nlohmann::json::parse(text));
    CHECK(back.polys == basis.polys);
    CHECK(back.genfunc == basis.genfunc);
    CHECK(back.deltas == basis.deltas);
    CHECK(back.family.kind() == basis.family.kind());
    CHECK(back.family.omega() == basis.family.omega());
    const auto [lo, hi] = t.domain(3);
    for (double x : testing::random_points(rng, 100, lo, hi)) {
      for (std::size_t i = 0; i < basis.size(); ++i) CHECK(eval_basis(back, i, x) == eval_basis(basis, i, x));
    }
  }
}

TEST_CASE("ladder dump and load") {
  const auto ladder = build_ladder(testing::uniform_knots(9), KnotFunctionFamily::exp(1.5), 4);
  const auto back = ladder_from_json(nlohmann::json::parse(ladder_to_json(ladder).dump()));
  REQUIRE(back.levels.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(back.levels[k].degree == ladder.levels[k].degree);
    CHECK(back.levels[k].polys == ladder.levels[k].polys);
    CHECK(back.levels[k].genfunc == ladder.levels[k].genfunc);
  }
  CHECK(eval_basis_derivative(back, 2, 4.3) == eval_basis_derivative(ladder, 2, 4.3));
}

TEST_CASE("malformed dumps are rejected") {
  const auto basis = build_basis(testing::uniform_knots(7), KnotFunctionFamily::trig(1.0), 3);
  const auto good = basis_to_json(basis);
  auto code = [](const nlohmann::json& j) {
    try {
      basis_from_json(j);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  auto missing = good;
  missing.erase("genfunc");
  CHECK(code(missing) == ErrorCode::ParseError);
  auto short_row = good;
  short_row["polys"][0].erase(0);
  CHECK(code(short_row) == ErrorCode::ParseError);
  auto bad_family = good;
  bad_family["family"]["kind"] = "bezier";
  CHECK(code(bad_family) == ErrorCode::ParseError);
  auto bad_number = good;
  bad_number["genfunc"][1][2][0] = "x";
  CHECK(code(bad_number) == ErrorCode::ParseError);
  auto bad_knots = good;
  bad_knots["knots"][2] = -5.0;
  CHECK(code(bad_knots) == ErrorCode::NotNondecreasing);
}

TEST_CASE("family descriptors") {
  CHECK(family_to_json(KnotFunctionFamily::linear()) == nlohmann::json{{"kind", "linear"}});
  CHECK(family_to_json(KnotFunctionFamily::trig(2.0))["omega"] == 2.0);
  const auto g = KnotFunctionFamily::generic_from(KnotFunctionFamily::trig(0.5));
  const auto back = family_from_json(family_to_json(g));
  CHECK(back.kind() == FamilyKind::Generic);
  CHECK(back.integral(2, 1.0) == g.integral(2, 1.0));
  const auto opaque = KnotFunctionFamily::generic([](double) { return 1.0; }, [](double s) { return s; });
  CHECK_THROWS_AS(family_from_json(family_to_json(opaque)), Error);
}
