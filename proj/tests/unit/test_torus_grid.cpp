#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <algorithm>
#include <cstring>
#include <sstream>

#include "ktcy/errors.hpp"
#include "ktcy/field_io.hpp"
#include "ktcy/torus_grid.hpp"
#include "test_support.hpp"

using namespace ktcy;
using ktcy::testing::random_band_limited;
using ktcy::testing::sup_diff;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid(2), std::invalid_argument);
  CHECK_THROWS_AS(Grid(7), std::invalid_argument);
  CHECK_NOTHROW(Grid(4));
  CHECK_NOTHROW(Grid(6));  // even but not a power of two
  CHECK(Grid(32).spacing() == doctest::Approx(1.0 / 32));
}

TEST_CASE("fields reject non-finite samples and wrong sizes") {
  const Grid g(4);
  CHECK_THROWS_AS(TorusField(g, std::vector<double>(15, 0.0)), std::invalid_argument);
  std::vector<double> v(16, 0.0);
  v[3] = std::nan("");
  CHECK_THROWS_AS(TorusField(g, v), std::domain_error);
}

TEST_CASE("periodic indexing") {
  const Grid g(8);
  const auto f = TorusField::sample(g, [](double x, double y) { return 10 * x + y; });
  CHECK(f(-1, 0) == f(7, 0));
  CHECK(f(3, 9) == f(3, 1));
}

TEST_CASE("derivative of sin(2 pi x)") {
  const Grid g(32);
  const auto f = TorusField::sample(g, [](double x, double) { return std::sin(2 * kPi * x); });
  const auto expect = TorusField::sample(g, [](double x, double) { return 2 * kPi * std::cos(2 * kPi * x); });
  CHECK(sup_diff(derivative(f, Partial::x), expect) <= 1e-12);
}

TEST_CASE("derivative of a constant vanishes") {
  const auto c = TorusField::constant(Grid(16), 3.5);
  for (auto p : {Partial::x, Partial::y, Partial::xx, Partial::yy, Partial::xy})
    CHECK(derivative(c, p).sup_norm() <= 1e-13);
}

TEST_CASE("mixed derivative of a separable product") {
  const Grid g(32);
  const auto f =
      TorusField::sample(g, [](double x, double y) { return std::sin(2 * kPi * x) * std::sin(2 * kPi * y); });
  const auto expect = TorusField::sample(
      g, [](double x, double y) { return 4 * kPi * kPi * std::cos(2 * kPi * x) * std::cos(2 * kPi * y); });
  CHECK(sup_diff(derivative(f, Partial::xy), expect) <= 1e-11);
}

TEST_CASE("odd derivatives annihilate the Nyquist mode") {
  const Grid g(16);
  // (-1)^i is the x Nyquist mode.
  const auto f = TorusField::sample(g, [](double x, double) { return std::cos(16 * kPi * x); });
  CHECK(derivative(f, Partial::x).sup_norm() <= 1e-12);
  CHECK(derivative(f, Partial::xy).sup_norm() <= 1e-12);
  // Second derivative keeps it: (2 pi 8)^2 times -f.
  CHECK(sup_diff(derivative(f, Partial::xx), -(256 * kPi * kPi) * f) <= 1e-9);
}

TEST_CASE("hessian agrees with separate derivatives") {
  std::mt19937_64 rng(3);
  const auto f = random_band_limited(Grid(32), rng, 5);
  const auto h = hessian(f);
  CHECK(sup_diff(h.xx, derivative(f, Partial::xx)) <= 1e-11);
  CHECK(sup_diff(h.yy, derivative(f, Partial::yy)) <= 1e-11);
  CHECK(sup_diff(h.xy, derivative(f, Partial::xy)) <= 1e-11);
}

TEST_CASE("integrate") {
  const Grid g(16);
  CHECK(integrate(TorusField::constant(g, 2.25)) == doctest::Approx(2.25).epsilon(1e-15));
  const auto s = TorusField::sample(g, [](double x, double) { return std::sin(2 * kPi * x); });
  CHECK(std::abs(integrate(s)) <= 1e-15);
  std::mt19937_64 rng(11);
  const auto r = random_band_limited(g, rng) + 4.0;
  CHECK(std::abs(integrate(derivative(r, Partial::x))) <= 1e-14);
  CHECK(std::abs(integrate(derivative(r, Partial::y))) <= 1e-14);
}

TEST_CASE("summation by parts holds to round-off") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Grid g(trial % 2 ? 32 : 24);
    const auto f = random_band_limited(g, rng, 4);
    const auto h = random_band_limited(g, rng, 4);
    const double lhs = integrate(f * derivative(h, Partial::x));
    const double rhs = -integrate(derivative(f, Partial::x) * h);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("mixed partials commute") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_band_limited(Grid(32), rng, 3, 0.1);
    CHECK(sup_diff(derivative(derivative(f, Partial::x), Partial::y), derivative(f, Partial::xy)) <= 1e-12);
  }
}

TEST_CASE("invert_laplacian") {
  const Grid g(32);
  SUBCASE("single mode") {
    const auto s = TorusField::sample(g, [](double x, double) { return std::sin(2 * kPi * x); });
    CHECK(sup_diff(invert_laplacian(-4 * kPi * kPi * s), s) <= 1e-14);
  }
  SUBCASE("zero") { CHECK(invert_laplacian(TorusField::zeros(g)).sup_norm() == 0.0); }
  SUBCASE("two-sided inverse on band-limited data") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = random_band_limited(g, rng, 6);
      const auto lap = [](const TorusField& v) { return derivative(v, Partial::xx) + derivative(v, Partial::yy); };
      // Forward-operator oracle.
      CHECK(sup_diff(lap(invert_laplacian(f)), f - integrate(f)) <= 1e-12);
      const auto mean_free = remove_mean(f);
      CHECK(sup_diff(invert_laplacian(lap(mean_free)), mean_free) <= 1e-12);
      CHECK(std::abs(integrate(invert_laplacian(f))) <= 1e-15);
    }
  }
  SUBCASE("non-zero mean is rejected") {
    CHECK_THROWS_AS(invert_laplacian(TorusField::constant(g, 1e-6)), NonZeroMeanInput);
    CHECK_NOTHROW(invert_laplacian(TorusField::constant(g, 1e-6), 1e-5));
  }
}

TEST_CASE("KTCY v1 layout is bit-exact") {
  const Grid g(4);
  const auto f = TorusField::sample(g, [](double x, double y) { return 4 * x + y / 4.0 + 0.5; });
  std::ostringstream os(std::ios::binary);
  write_ktcy(os, f);
  const std::string bytes = os.str();
  REQUIRE(bytes.size() == 4 + 4 + 16 * 8);
  CHECK(bytes.substr(0, 4) == "KTCY");
  CHECK(static_cast<unsigned char>(bytes[4]) == 4);
  CHECK(bytes[5] == 0);
  CHECK(bytes[6] == 0);
  CHECK(bytes[7] == 0);
  // Second sample is (i, j) = (0, 1): 0.5 + 0.0625, x index outermost.
  double second;
  std::memcpy(&second, bytes.data() + 8 + 8, 8);
  CHECK(second == 0.5625);
}

TEST_CASE("KTCY round trip preserves every bit") {
  std::mt19937_64 rng(23);
  for (int n : {4, 6, 16}) {
    const auto f = random_band_limited(Grid(n), rng, 2);
    std::stringstream ss(std::ios::in | std::ios::out | std::ios::binary);
    write_ktcy(ss, f);
    const auto back = read_ktcy(ss);
    REQUIRE(back.n() == n);
    for (std::size_t k = 0; k < f.values().size(); ++k) CHECK(back.at(k) == f.at(k));
  }
}

TEST_CASE("KTCY rejects malformed input") {
  auto parse = [](const std::string& s) {
    std::istringstream is(s, std::ios::binary);
    return read_ktcy(is);
  };
  CHECK_THROWS_AS(parse("KTCX"), FormatError);
  CHECK_THROWS_AS(parse(std::string("KTCY\x04\x00\x00\x00", 8)), FormatError);  // truncated
  CHECK_THROWS_AS(parse(std::string("KTCY\x05\x00\x00\x00", 8)), FormatError);  // odd n
  std::ostringstream os(std::ios::binary);
  write_ktcy(os, TorusField::zeros(Grid(4)));
  CHECK_THROWS_AS(parse(os.str() + "x"), FormatError);  // trailing byte
}

TEST_CASE("CSV export uses x index as row") {
  const auto f = TorusField::sample(Grid(4), [](double x, double y) { return 4 * x + 0 * y; });
  std::ostringstream os;
  write_csv(os, f);
  std::istringstream is(os.str());
  std::string line;
  int rows = 0;
  while (std::getline(is, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 3);
    CHECK(line.substr(0, line.find(',')) == std::to_string(rows));
    ++rows;
  }
  CHECK(rows == 4);
}
