#include <cmath>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "freeplate/domain.hpp"
#include "reference_values.hpp"
#include "test_helpers.hpp"

using namespace freeplate;
using freeplate::testutil::rel_close;
namespace ref = freeplate::testref;

namespace {
constexpr double kPi = std::numbers::pi;

double integrate(const QuadratureRule& rule, double (*f)(double, double)) {
  double acc = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(rule.nodes[i][0], rule.nodes[i][1]);
  return acc;
}
}  // namespace

TEST_CASE("domain factories validate extents") {
  CHECK_THROWS_AS(DomainSpec::interval(0.0), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::rectangle(1.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::disk(-1.0), std::invalid_argument);
}

TEST_CASE("domain geometry accessors") {
  const auto iv = DomainSpec::interval(2.5);
  CHECK(iv.dimension() == 1);
  CHECK(iv.volume() == 2.5);
  CHECK(iv.max_point_norm() == 2.5);

  const auto rect = DomainSpec::rectangle(3.0, 4.0);
  CHECK(rect.dimension() == 2);
  CHECK(rect.volume() == 12.0);
  CHECK(rect.max_point_norm() == 5.0);
  CHECK(rect.box_lo() == Point{0.0, 0.0});
  CHECK(rect.box_hi() == Point{3.0, 4.0});

  const auto disk = DomainSpec::disk(2.0);
  CHECK(disk.dimension() == 2);
  CHECK(rel_close(disk.volume(), 4.0 * kPi, 1e-15));
  CHECK(disk.max_point_norm() == 2.0);
  CHECK(disk.box_lo() == Point{-2.0, -2.0});
  CHECK(disk.box_hi() == Point{2.0, 2.0});
}

TEST_CASE("unit_ball_volume matches reference values") {
  CHECK(rel_close(unit_ball_volume(1), ref::kUnitBallVol1, 1e-13));
  CHECK(rel_close(unit_ball_volume(2), ref::kUnitBallVol2, 1e-13));
  CHECK(rel_close(unit_ball_volume(3), ref::kUnitBallVol3, 1e-13));
  CHECK(rel_close(unit_ball_volume(4), ref::kUnitBallVol4, 1e-13));
  CHECK(rel_close(unit_ball_volume(7), ref::kUnitBallVol7, 1e-13));
  CHECK_THROWS_AS(unit_ball_volume(0), std::invalid_argument);
}

TEST_CASE("interval quadrature integrates polynomials exactly") {
  const auto d = DomainSpec::interval(2.0);
  const auto rule = quadrature(d, 4);
  CHECK(rule.exact_degree == 7);
  for (const auto& p : rule.nodes) {
    CHECK(p[0] >= 0.0);
    CHECK(p[0] <= 2.0);
  }
  const double got = integrate(rule, [](double x, double) { return std::pow(x, 5); });
  CHECK(rel_close(got, 64.0 / 6.0, 1e-14));  // integral of x^5 over [0, 2]
}

TEST_CASE("rectangle quadrature integrates tensor monomials exactly") {
  const auto d = DomainSpec::rectangle(1.0, 1.0);
  const auto rule = quadrature(d, 4);
  const double x2y2 = integrate(rule, [](double x, double y) { return x * x * y * y; });
  CHECK(rel_close(x2y2, ref::kIntX2Y2UnitSquare, 1e-14));
  const double x7y6 = integrate(rule, [](double x, double y) {
    return std::pow(x, 7) * std::pow(y, 6);
  });
  CHECK(rel_close(x7y6, 1.0 / 56.0, 1e-13));
  double vol = 0.0;
  for (const double w : rule.weights) {
    CHECK(w > 0.0);
    vol += w;
  }
  CHECK(rel_close(vol, 1.0, 1e-14));
}

TEST_CASE("disk quadrature integrates total-degree monomials exactly") {
  const auto d = DomainSpec::disk(1.0);
  const auto rule = quadrature(d, 6);  // exact through total degree 10
  const double x2y2 = integrate(rule, [](double x, double y) { return x * x * y * y; });
  CHECK(rel_close(x2y2, ref::kIntX2Y2UnitDisk, 1e-13));
  const double x4 = integrate(rule, [](double x, double) { return std::pow(x, 4); });
  CHECK(rel_close(x4, ref::kIntX4UnitDisk, 1e-13));
  const double x6y2 = integrate(rule, [](double x, double y) {
    return std::pow(x, 6) * y * y;
  });
  CHECK(rel_close(x6y2, ref::kIntX6Y2UnitDisk, 1e-13));
  const double odd = integrate(rule, [](double x, double y) { return x * y * y; });
  CHECK(std::abs(odd) <= 1e-15);
  double vol = 0.0;
  for (const double w : rule.weights) {
    CHECK(w > 0.0);
    vol += w;
  }
  CHECK(rel_close(vol, kPi, 1e-13));
  for (const auto& p : rule.nodes) CHECK(std::hypot(p[0], p[1]) <= 1.0);
  CHECK_THROWS_AS(quadrature(d, 0), std::invalid_argument);
}

TEST_CASE("disk quadrature scales with the radius") {
  const auto rule = quadrature(DomainSpec::disk(2.0), 6);
  const double x2y2 = integrate(rule, [](double x, double y) { return x * x * y * y; });
  // integral over radius-R disk of x^2 y^2 is R^6 times the unit value.
  CHECK(rel_close(x2y2, 64.0 * ref::kIntX2Y2UnitDisk, 1e-13));
}

TEST_CASE("domain JSON round trip") {
  for (const auto& d : {DomainSpec::interval(1.5), DomainSpec::rectangle(2.0, 0.5),
                        DomainSpec::disk(3.0)}) {
    const auto back = DomainSpec::from_json(d.to_json());
    CHECK(back == d);
  }
  const auto d = DomainSpec::from_json(R"({"kind":"rectangle","extents":[1.0,1.0]})");
  CHECK(d.kind() == DomainKind::Rectangle);
}

TEST_CASE("domain JSON rejects malformed input") {
  CHECK_THROWS_AS(DomainSpec::from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::from_json(R"({"kind":"triangle","extents":[1.0]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::from_json(R"({"kind":"disk","extents":[1.0,2.0]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::from_json(R"({"kind":"disk","extents":[-1.0]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::from_json(R"({"kind":"disk"})"), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::from_json(R"({"kind":"rectangle","extents":["a","b"]})"),
                  std::invalid_argument);
}
