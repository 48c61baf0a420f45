#include <cmath>
#include <random>

#include "doctest.h"
#include "gbspline/core.hpp"
#include "support.hpp"

using namespace gbs;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected gbs::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("validate_knot_vector accepts sorted and repeated knots") {
  CHECK(validate_knot_vector({0, 0, 1, 2, 2}).size() == 5);
  CHECK(validate_knot_vector({0, 0, 0}).size() == 3);
}

TEST_CASE("validate_knot_vector reports the first decreasing position") {
  try {
    validate_knot_vector({0, 1, 0.5});
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNondecreasing);
    CHECK(e.index() == std::optional<std::size_t>{2});
  }
  CHECK(code_of([] { validate_knot_vector({0, NAN, 1}); }) == ErrorCode::NonFiniteKnot);
  CHECK(code_of([] { validate_knot_vector({0, INFINITY}); }) == ErrorCode::NonFiniteKnot);
  CHECK(code_of([] { validate_knot_vector({1.0}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("find_interval on [0,0,1,2,2], p = 1") {
  const KnotVector t({0, 0, 1, 2, 2});
  CHECK(find_interval(t, 1.5, 1).value == 2);
  CHECK(find_interval(t, 2.0, 1).value == 2);
  CHECK(find_interval(t, 0.0, 1).value == 1);
  CHECK(find_interval(t, 1.0, 1).value == 2);
  CHECK(code_of([&] { find_interval(t, 2.5, 1); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([&] { find_interval(t, -0.1, 1); }) == ErrorCode::OutOfDomain);
}

TEST_CASE("find_interval skips degenerate intervals and closes the domain on the right") {
  const KnotVector t({0, 0, 0, 1, 1, 2, 3, 3, 3});
  CHECK(find_interval(t, 1.0, 2).value == 4);
  CHECK(find_interval(t, 3.0, 2).value == 5);
  CHECK(find_interval(t, 0.0, 2).value == 2);
  // within tolerance of the ends: clamped
  CHECK(find_interval(t, 3.0 + 1e-10, 2).value == 5);
  CHECK(code_of([&] { find_interval(KnotVector({0, 0, 0}), 0.0, 1); }) == ErrorCode::OutOfDomain);
}

TEST_CASE("find_interval is consistent with membership (property)") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 1 + trial % 4;
    const auto t = testing::random_knots(rng, p, 8 + static_cast<std::size_t>(trial % 9),
                                         static_cast<std::size_t>(p), trial % 2 == 0);
    const auto [lo, hi] = t.domain(p);
    if (!(hi - lo > kDefaultTol)) continue;
    for (double x : testing::random_points(rng, 50, lo, hi)) {
      const auto j = find_interval(t, x, p).value;
      CHECK(x >= t[j]);
      CHECK((x < t[j + 1] || x == hi));
      CHECK(t.is_nonempty(j));
    }
    const auto j = find_interval(t, hi, p).value;
    CHECK(t[j + 1] == hi);
  }
}

TEST_CASE("locate_interval outside the domain") {
  const KnotVector t({0, 1, 2, 3, 4, 5});
  CHECK(locate_interval(t, 0.5, 2)->value == 0);
  CHECK(locate_interval(t, 4.5, 2)->value == 4);
  CHECK(locate_interval(t, 3.0, 2)->value == 2);  // domain end [2, 3] is closed
  CHECK_FALSE(locate_interval(t, 5.0, 2).has_value());
  CHECK_FALSE(locate_interval(t, -1.0, 2).has_value());
}

TEST_CASE("wrap_windows") {
  const std::vector<char> v{'a', 'b', 'c'};
  CHECK(wrap_windows(v, 2) == std::vector<std::vector<char>>{{'a', 'b'}, {'b', 'c'}});
  CHECK(wrap_windows(v, 3) == std::vector<std::vector<char>>{{'a', 'b', 'c'}});
  CHECK(code_of([] { wrap_windows(std::vector<char>{'a'}, 2); }) == ErrorCode::WidthTooLarge);
  CHECK(code_of([&] { wrap_windows(v, 0); }) == ErrorCode::InvalidArgument);

  for (std::size_t len = 1; len < 12; ++len) {
    std::vector<int> x(len);
    for (std::size_t k = 0; k < len; ++k) x[k] = static_cast<int>(k);
    for (std::size_t w = 1; w <= len; ++w) {
      const auto out = wrap_windows(x, w);
      REQUIRE(out.size() == len - w + 1);
      for (std::size_t i = 0; i < out.size(); ++i) {
        REQUIRE(out[i].size() == w);
        for (std::size_t k = 0; k < w; ++k) CHECK(out[i][k] == x[i + k]);
      }
    }
  }
}

TEST_CASE("mat2_inverse") {
  CHECK(mat2_inverse(Mat2::identity()) == Mat2::identity());
  const Mat2 b = mat2_inverse(Mat2{{1, 0, 1, 2}});
  CHECK(b(0, 0) == doctest::Approx(1.0));
  CHECK(b(0, 1) == doctest::Approx(0.0));
  CHECK(b(1, 0) == doctest::Approx(-0.5));
  CHECK(b(1, 1) == doctest::Approx(0.5));
  CHECK(code_of([] { mat2_inverse(Mat2{{1, 1, 1, 1}}); }) == ErrorCode::SingularOrIllConditioned);
  CHECK(code_of([] { mat2_inverse(Mat2{{1, 1, 1, 1 + 1e-12}}); }) ==
        ErrorCode::SingularOrIllConditioned);
}

TEST_CASE("mat2_inverse times A is the identity (property)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-3, 3);
  int accepted = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const Mat2 a{{d(rng), d(rng), d(rng), d(rng)}};
    Mat2 b;
    try {
      b = mat2_inverse(a);
    } catch (const Error&) {
      continue;
    }
    ++accepted;
    const Mat2 prod = b * a;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) CHECK(std::abs(prod(r, c) - (r == c)) < 1e-12);
    }
  }
  CHECK(accepted > 1900);
}
