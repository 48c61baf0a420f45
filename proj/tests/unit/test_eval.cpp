#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gbspline/eval.hpp"
#include "gbspline/oracle.hpp"
#include "support.hpp"

using namespace gbs;

TEST_CASE("eval_basis examples") {
  const auto quad = build_basis(KnotVector({0, 1, 2, 3}), KnotFunctionFamily::linear(), 2);
  CHECK(eval_basis(quad, 0, -0.5) == 0.0);
  CHECK(eval_basis(quad, 0, 3.5) == 0.0);
  CHECK(eval_basis(quad, 0, 1.5) == doctest::Approx(0.75));
  CHECK_THROWS_AS(eval_basis(quad, 1, 1.5), Error);

  const auto open = build_basis(KnotVector({0, 0, 0, 1, 1, 1}), KnotFunctionFamily::linear(), 2);
  CHECK(eval_basis(open, 0, 0.0) == 1.0);
  CHECK(eval_basis(open, 2, 1.0) == doctest::Approx(1.0));
  CHECK(eval_basis(open, 0, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("eval_basis_row") {
  const auto t = testing::uniform_knots(8);
  const auto basis = build_basis(t, KnotFunctionFamily::linear(), 2);
  const auto row = eval_basis_row(basis, 3.5);
  CHECK(row.interval.value == 3);
  CHECK(row.first == 1);
  REQUIRE(row.values.size() == 3);
  CHECK(row.values[0] == doctest::Approx(0.125));
  CHECK(row.values[1] == doctest::Approx(0.75));
  CHECK(row.values[2] == doctest::Approx(0.125));
  CHECK_THROWS_AS(eval_basis_row(basis, 1.5), Error);

  const auto ot = testing::open_knots(3, 4);
  const auto ob = build_basis(ot, KnotFunctionFamily::exp(1.0), 3);
  CHECK(eval_basis_row(ob, 0.01).first == 0);

  std::mt19937_64 rng(2);
  for (const auto& fam : testing::all_families()) {
    for (int p = 1; p <= 5; ++p) {
      const auto kv = testing::random_knots(rng, p, static_cast<std::size_t>(p) + 8,
                                            static_cast<std::size_t>(p), true);
      const auto b = build_basis(kv, fam, p);
      const auto [lo, hi] = kv.domain(p);
      for (double x : testing::random_points(rng, 100, lo, hi)) {
        const auto r = eval_basis_row(b, x);
        double sum = 0.0;
        for (std::size_t k = 0; k < r.values.size(); ++k) {
          sum += r.values[k];
          CHECK(r.values[k] == eval_basis(b, r.first + k, x));
        }
        if (p > 1 || fam.kind() == FamilyKind::Linear) CHECK(std::abs(sum - 1.0) < 1e-9);
      }
    }
  }
}

TEST_CASE("curves: constants, endpoints and locality") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> coord(-5, 5);
  for (const auto& fam : testing::all_families()) {
    for (int p = 2; p <= 4; ++p) {
      const auto t = testing::open_knots(p, 5, 0.0, 2.0);
      const auto basis = build_basis(t, fam, p);
      const std::size_t n = basis.size();

      GBSplineCurve flat(basis, std::vector<std::vector<double>>(n, {1.5, -2.0}));
      for (double x : testing::linspace(0.0, 2.0, 41)) {
        const auto f = eval_curve(flat, x);
        CHECK(std::abs(f[0] - 1.5) < 1e-12);
        CHECK(std::abs(f[1] + 2.0) < 1e-12);
      }

      std::vector<std::vector<double>> pts(n);
      for (auto& pt : pts) pt = {coord(rng), coord(rng), coord(rng)};
      GBSplineCurve curve(basis, pts);
      const auto start = eval_curve(curve, 0.0);
      const auto end = eval_curve(curve, 2.0);
      for (std::size_t d = 0; d < 3; ++d) {
        CHECK(std::abs(start[d] - pts[0][d]) < 1e-10);
        CHECK(std::abs(end[d] - pts[n - 1][d]) < 1e-10);
      }

      const std::size_t moved = n / 2;
      GBSplineCurve bumped = curve;
      const std::vector<double> shift{pts[moved][0] + 1, pts[moved][1] - 3, pts[moved][2]};
      bumped.set_control_point(moved, shift);
      const auto lo = t[moved], hi = t[moved + static_cast<std::size_t>(p) + 1];
      for (double x : testing::random_points(rng, 300, 0.0, 2.0)) {
        const auto a = eval_curve(curve, x);
        const auto b = eval_curve(bumped, x);
        if (x < lo || x > hi) {
          for (std::size_t d = 0; d < 3; ++d) CHECK(a[d] == b[d]);
        }
      }
    }
  }
  const auto basis = build_basis(testing::uniform_knots(6), KnotFunctionFamily::linear(), 2);
  CHECK_THROWS_AS(GBSplineCurve(basis, {{0.0}, {1.0}}), Error);
  CHECK_THROWS_AS(GBSplineCurve(basis, {{0.0}, {1.0}, {1.0, 2.0}}), Error);
}

TEST_CASE("basis derivatives match finite differences (property)") {
  std::mt19937_64 rng(37);
  const double step = 1e-6;
  for (const auto& fam : testing::all_families()) {
    for (int p = 2; p <= 4; ++p) {
      const auto t = testing::random_knots(rng, p, 12, static_cast<std::size_t>(p) - 1, p == 3);
      const auto ladder = build_ladder(t, fam, p);
      const auto& basis = ladder.top();
      const auto [lo, hi] = t.domain(p);
      for (double x : testing::random_points(rng, 60, lo, hi)) {
        if (testing::knot_distance(t, x) < 1e-4) continue;
        for (std::size_t i = 0; i < basis.size(); ++i) {
          const double fd = (eval_basis(basis, i, x + step) - eval_basis(basis, i, x - step)) / (2 * step);
          const double d = eval_basis_derivative(ladder, i, x);
          CHECK(std::abs(d - fd) <= 1e-5 * std::max(std::abs(fd), 1.0));
        }
      }
    }
  }
}

TEST_CASE("derivative examples") {
  const auto t = testing::uniform_knots(6);
  const auto ladder = build_ladder(t, KnotFunctionFamily::linear(), 2);
  CHECK(eval_basis_derivative(ladder, 1, 2.5) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(eval_basis_derivative(ladder, 1, 0.5) == 0.0);
  CHECK(eval_basis_derivative(ladder, 0, 2.5) == doctest::Approx(-0.5));

  BasisLadder top_only;
  top_only.levels.push_back(ladder.top());
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code([&] { eval_basis_derivative(top_only, 1, 2.5); }) == ErrorCode::LadderMissing);
  GBSplineCurve no_ladder(ladder.top(), std::vector<std::vector<double>>(3, {0.0}));
  CHECK(code([&] { eval_curve_derivative(no_ladder, 2.5); }) == ErrorCode::LadderMissing);
  GBSplineCurve curve(ladder, std::vector<std::vector<double>>(3, {0.0}));
  CHECK(code([&] { eval_curve_derivative(curve, 9.0); }) == ErrorCode::OutOfDomain);
}

TEST_CASE("curve derivatives") {
  // straight line: equally spaced control points on uniform knots
  const auto t = testing::uniform_knots(10);
  const auto ladder = build_ladder(t, KnotFunctionFamily::linear(), 3);
  std::vector<std::vector<double>> line;
  for (std::size_t i = 0; i < ladder.top().size(); ++i) line.push_back({2.0 * i, 1.0 - 0.5 * i});
  GBSplineCurve curve(ladder, line);
  for (double x : testing::linspace(3.0, 6.0, 25)) {
    const auto d = eval_curve_derivative(curve, x);
    CHECK(d[0] == doctest::Approx(2.0));
    CHECK(d[1] == doctest::Approx(-0.5));
  }

  GBSplineCurve flat(ladder, std::vector<std::vector<double>>(ladder.top().size(), {4.0}));
  CHECK(std::abs(eval_curve_derivative(flat, 4.2)[0]) < 1e-12);

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> coord(-3, 3);
  const double step = 1e-6;
  for (const auto& fam : testing::all_families()) {
    for (int p = 2; p <= 4; ++p) {
      const auto kv = testing::random_knots(rng, p, 13, 2, true);
      auto lad = build_ladder(kv, fam, p);
      std::vector<std::vector<double>> pts(lad.top().size());
      for (auto& pt : pts) pt = {coord(rng), coord(rng)};
      GBSplineCurve c(std::move(lad), pts);
      const auto [lo, hi] = c.domain();
      for (double x : testing::random_points(rng, 50, lo, hi)) {
        if (testing::knot_distance(kv, x) < 1e-4) continue;
        const auto d = eval_curve_derivative(c, x);
        const auto a = eval_curve(c, x + step), b = eval_curve(c, x - step);
        for (std::size_t k = 0; k < 2; ++k) {
          const double fd = (a[k] - b[k]) / (2 * step);
          CHECK(std::abs(d[k] - fd) <= 1e-5 * std::max(std::abs(fd), 1.0));
        }
        if (p >= 3) {
          const auto d2 = eval_curve_derivative(c, x, 2);
          const auto da = eval_curve_derivative(c, x + step), db = eval_curve_derivative(c, x - step);
          for (std::size_t k = 0; k < 2; ++k) {
            const double fd = (da[k] - db[k]) / (2 * step);
            CHECK(std::abs(d2[k] - fd) <= 1e-5 * std::max(std::abs(fd), 1.0));
          }
        }
      }
    }
  }
}

TEST_CASE("trig quadratic reproduces a circular arc") {
  // One interval [0, theta] of an open degree-2 trig basis spans {1, cos, sin},
  // so the arc (cos t, sin t) is exact; the control points come from
  // interpolating three arc points.
  const double theta = std::numbers::pi / 2;
  const KnotVector t({0, 0, 0, theta, theta, theta});
  const auto basis = build_basis(t, KnotFunctionFamily::trig(1.0), 2);
  const double xs[3] = {0.0, theta / 2, theta};
  double m[3][3];
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) m[r][c] = eval_basis(basis, static_cast<std::size_t>(c), xs[r]);
  }
  // Cramer's rule on the 3x3 system
  auto det3 = [](double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const double det = det3(m);
  std::vector<std::vector<double>> pts(3, std::vector<double>(2));
  for (int d = 0; d < 2; ++d) {
    for (int c = 0; c < 3; ++c) {
      double mc[3][3];
      for (int r = 0; r < 3; ++r) {
        for (int k = 0; k < 3; ++k) mc[r][k] = k == c ? (d == 0 ? std::cos(xs[r]) : std::sin(xs[r])) : m[r][k];
      }
      pts[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)] = det3(mc) / det;
    }
  }
  CHECK(pts[1][0] == doctest::Approx(1.0));
  CHECK(pts[1][1] == doctest::Approx(1.0));
  GBSplineCurve arc(basis, pts);
  for (double x : testing::linspace(0.0, theta, 101)) {
    const auto f = eval_curve(arc, x);
    CHECK(std::abs(std::hypot(f[0], f[1]) - 1.0) < 1e-7);
    CHECK(std::abs(f[0] - std::cos(x)) < 1e-12);
  }
}

TEST_CASE("smoothness at repeated knots") {
  // degree 3 with a double knot at 2 and a triple knot at 4
  const KnotVector t({0, 0, 0, 0, 1, 2, 2, 3, 4, 4, 4, 5, 6, 6, 6, 6});
  CHECK(is_smooth_at(t, 3, 2.0, 1));
  CHECK_FALSE(is_smooth_at(t, 3, 2.0, 2));
  CHECK_FALSE(is_smooth_at(t, 3, 4.0, 1));
  CHECK(is_smooth_at(t, 3, 1.5, 2));
  for (const auto& fam : testing::all_families()) {
    const auto ladder = build_ladder(t, fam, 3);
    const auto& basis = ladder.top();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (double knot : {2.0, 4.0}) {
        const double left = eval_basis(basis, i, std::nextafter(knot, 0.0));
        const double right = eval_basis(basis, i, knot);
        CHECK(std::abs(left - right) < 1e-12);
      }
      const double dl = eval_basis_derivative(ladder, i, std::nextafter(2.0, 0.0));
      const double dr = eval_basis_derivative(ladder, i, 2.0);
      CHECK(std::abs(dl - dr) < 1e-10 * std::max(1.0, std::abs(dr)));
    }
  }
}
