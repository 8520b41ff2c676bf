#include "qpd/chaos_scalar.hpp"
#include "qpd/classifiers.hpp"
#include "qpd/error.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace qpd;
using namespace qpd::chaos;

TEST_CASE("xi basics") {
  CHECK(xi(0.0, 3.2) == 0.0);
  CHECK(xi(3.2, 3.2) == 3.2);
  CHECK(xi(1.0, 3.2) == doctest::Approx(std::exp(2.2)).epsilon(1e-15));
  CHECK(xi(1.0, 3.2) == doctest::Approx(9.0250).epsilon(1e-4));
  CHECK_THROWS_AS(xi(-1.0, 3.0), Error);
  for (double rho : {0.5, 2.0, 3.2}) {
    CHECK(std::abs(xi(rho, rho) - rho) <= 1e-15);
    CHECK(xi_derivative(rho, rho) == doctest::Approx(1 - rho));
  }
}

TEST_CASE("xi is unimodal with maximum exp(rho - 1) at x = 1") {
  const double rho = 3.0;
  double best = 0.0, arg = 0.0;
  for (int k = 1; k < 20000; ++k) {
    const double x = k * 5e-4;
    if (xi(x, rho) > best) {
      best = xi(x, rho);
      arg = x;
    }
  }
  CHECK(arg == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(best == doctest::Approx(std::exp(rho - 1)).epsilon(1e-9));
  const auto iv = default_search_interval(rho);
  CHECK(iv.lo == 1e-9);
  CHECK(iv.hi == doctest::Approx(std::exp(rho - 1) + 1));
}

TEST_CASE("find_period3") {
  const auto c = find_period3(3.2);
  REQUIRE(c);
  CHECK((*c)[0] < (*c)[1]);
  CHECK((*c)[1] < (*c)[2]);
  for (double p : *c) {
    CHECK(std::abs(xi_iterate(p, 3.2, 3) - p) <= 1e-9 * std::max(1.0, p));
    CHECK(std::abs(xi(p, 3.2) - p) > 1e-6);
  }
  CHECK_FALSE(find_period3(2.0));
  CHECK_FALSE(find_period3(3.0));
  Period3Options small;
  small.grid_size = 999;
  CHECK_THROWS_AS(find_period3(3.2, small), Error);
}

TEST_CASE("period-3 cycles persist a little further along rho") {
  int violations = 0;
  for (int k = 0; k < 10; ++k) {
    const double rho = 3.11 + 0.04 * k;
    if (find_period3(rho) && !find_period3(rho + 0.05)) ++violations;
  }
  if (violations) MESSAGE("period-3 persistence violated at " << violations << " sample points");
  CHECK(violations == 0);
}

TEST_CASE("xi_preimages") {
  const double rho = 3.0;
  for (double t : {0.01, 0.5, 3.0, 7.0}) {
    const auto pre = xi_preimages(t, rho);
    REQUIRE(pre.size() == 2);
    CHECK(pre[0] <= 1.0);
    CHECK(pre[1] >= 1.0);
    for (double y : pre) CHECK(xi(y, rho) == doctest::Approx(t).epsilon(1e-12));
  }
  CHECK(xi_preimages(std::exp(rho - 1) * 1.01, rho).empty());
  CHECK(xi_preimages(0.0, rho).empty());
}

TEST_CASE("repelling radius") {
  for (double rho : {2.2, 2.9, 3.5}) {
    const double r = repelling_radius(rho);
    CHECK(r > 0.0);
    CHECK(r <= 0.5);
    for (int k = 0; k <= 100; ++k) CHECK(std::abs(xi_derivative(rho - r + 2 * r * k / 100, rho)) > 1.0);
  }
}

TEST_CASE("find_snap_back") {
  const auto w = find_snap_back(3.0);
  REQUIRE(w);
  CHECK(std::abs(w->x0 - 3.0) <= w->radius);
  CHECK(w->x0 != 3.0);
  CHECK(std::abs(xi_iterate(w->x0, 3.0, w->steps) - 3.0) <= 1e-9 * 3.0);
  CHECK(w->derivative_product != 0.0);
  CHECK(w->orbit.size() == static_cast<std::size_t>(w->steps) + 1);
  CHECK_FALSE(find_snap_back(2.5));
  CHECK_THROWS_AS(find_snap_back(1.5), Error);
}

TEST_CASE("snap-back onset coincides with the critical orbit landing on the fixed point") {
  const double oracle = test::critical_orbit_onset();
  CHECK(oracle == doctest::Approx(2.8331573754).epsilon(1e-9));
  CHECK(find_snap_back(oracle + 1e-3));
  CHECK_FALSE(find_snap_back(oracle - 1e-3));
  const double scanned = threshold_scan(DetectionKind::SnapBack, 2.5, 3.5, 0.01);
  CHECK(std::abs(scanned - oracle) <= 0.01 / 10 + 1e-12);
}

TEST_CASE("period-3 onset matches the saddle-node of xi^3") {
  double oracle = 10.0;
  for (int k = 1; k < 80; ++k) {
    const auto sn = test::period3_saddle_node(0.1 * k, 3.1);
    if (sn && sn->second > 3.0 && sn->second < 3.2 && std::abs(sn->first - sn->second) > 1e-3)
      oracle = std::min(oracle, sn->second);
  }
  REQUIRE(oracle < 3.2);
  const double scanned = threshold_scan(DetectionKind::Period3, 2.5, 3.5, 0.01);
  CHECK(std::abs(scanned - oracle) <= 0.01 / 10 + 1e-6);
  CHECK(scanned >= threshold_scan(DetectionKind::SnapBack, 2.5, 3.5, 0.01));
}

TEST_CASE("scan_detection") {
  const auto none = scan_detection(DetectionKind::Period3, 1.0, 2.0, 0.1);
  CHECK_FALSE(none.threshold);
  CHECK(none.grid.size() == 11);
  CHECK_THROWS_AS(threshold_scan(DetectionKind::Period3, 1.0, 2.0, 0.1), Error);

  const auto low = scan_detection(DetectionKind::SnapBack, 1.5, 2.5, 0.25);
  CHECK(low.grid.front().detail == "fixed point not repelling");

  const auto first = scan_detection(DetectionKind::Period3, 3.3, 3.4, 0.05);
  REQUIRE(first.threshold);
  CHECK(*first.threshold == 3.3);
  CHECK(first.resolution == 0.05);
  CHECK(first.reference == kDiamondThreshold);

  CHECK_THROWS_AS(scan_detection(DetectionKind::Period3, 2.0, 1.0, 0.1), Error);
  CHECK_THROWS_AS(scan_detection(DetectionKind::Period3, 1.0, 2.0, 0.0), Error);
  CHECK(detection_kind_from_string("snapback") == DetectionKind::SnapBack);
  CHECK_FALSE(detection_kind_from_string("period4"));
}

TEST_CASE("analyze_xi") {
  const auto a = analyze_xi(3.2);
  CHECK(a.fixed_point == 3.2);
  CHECK(a.multiplier == doctest::Approx(-2.2));
  CHECK(a.period3);
  CHECK(a.snap_back);
  const auto b = analyze_xi(1.5);
  CHECK_FALSE(b.period3);
  CHECK_FALSE(b.snap_back);
}
