#include <doctest.h>

#include <cmath>
#include <random>

#include "ignifront/error.hpp"
#include "ignifront/phi_curve.hpp"
#include "ignifront/psi_curve.hpp"

using namespace ignifront;

namespace {

const ModelParams base_params = validate_params(1.0, 0.3, 0.1, 0.2);

}  // namespace

TEST_CASE("c_plus bound") {
  const Reaction r(base_params);
  CHECK(c_plus_bound(r, 0.0) == doctest::Approx(2.1190693123383516).epsilon(1e-14));
  CHECK(c_plus_bound(r, 1.0) - c_plus_bound(r, 0.0) == doctest::Approx(5.0).epsilon(1e-14));
  for (double R : {0.0, 0.1, 1.0, 100.0}) {
    CHECK(c_plus_bound(r, R) > base_params.q * R / base_params.theta_hl);
  }
}

TEST_CASE("R_of_c at c = 0 and monotonicity") {
  const Reaction r(base_params);
  CHECK(R_of_c(r, 0.0) == doctest::Approx(-0.42381386246767032).epsilon(1e-10));
  double prev = -INFINITY;
  for (int i = 0; i < 50; ++i) {
    const double R = R_of_c(r, 0.1 * i);
    CHECK(R > prev);
    prev = R;
  }
}

TEST_CASE("psi(0) is the root of R_of_c and respects the bounds") {
  const Reaction r(base_params);
  const double c0 = psi(r, 0.0);
  CHECK(c0 == doctest::Approx(1.4066156583734424).epsilon(1e-9));
  CHECK(std::abs(R_of_c(r, c0)) <= 1e-10);
  CHECK(c0 < c_plus_bound(r, 0.0));
  for (double R : {0.1, 1.0, 10.0}) {
    const double c = psi(r, R);
    CHECK(c > base_params.q * R / base_params.theta_hl);
    CHECK(c < c_plus_bound(r, R));
  }
  CHECK_THROWS_AS(psi(r, -1.0), Error);
}

TEST_CASE("psi approaches its asymptote") {
  const Reaction r(base_params);
  const double R = 100.0 * base_params.theta_hl / base_params.q;
  const double c = psi(r, R);
  const double gap = c - base_params.q * R / base_params.theta_hl;
  CHECK(gap > 0.0);
  CHECK(gap <= v_at_hl(r, c) / base_params.theta_hl * (1 + 1e-6));
  CHECK(v_at_hl(r, c) < 0.05);
}

TEST_CASE("inverse consistency for random R") {
  const Reaction r(base_params);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ur(0.0, 3.0);
  for (int k = 0; k < 10; ++k) {
    const double R = ur(rng);
    CHECK(std::abs(R_of_c(r, psi(r, R)) - R) <= 1e-10 * std::max(1.0, R));
  }
}

TEST_CASE("sample_psi on [0, 3 R0]") {
  const Reaction r(base_params);
  const double R0 = critical_point(base_params).R0;
  const auto grid = linear_grid(0.0, 3.0 * R0, 64);
  const CurveSamples s = sample_psi(r, grid);
  REQUIRE(s.points.size() == 64);
  CHECK(s.kind == CurveKind::psi);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const auto& p = s.points[i];
    CHECK(s.residuals[i] <= 1e-10 * std::max(1.0, p.R));
    CHECK(p.c > base_params.q * p.R / base_params.theta_hl);
    CHECK(p.c < c_plus_bound(r, p.R));
    if (i > 0) CHECK(p.c > s.points[i - 1].c);
  }
}

TEST_CASE("custom linear reaction") {
  // F(u) = k (θ₊ - u) on the heat-loss region.
  const ModelParams p{1.0, 0.3, 0.1, 0.2, 0.0};
  CustomReaction cr;
  cr.f = [](double u) { return 4.0 * (0.5 - u); };
  cr.df = [](double) { return -4.0; };
  cr.domain = {0.15, 0.9};
  const Reaction r(p, cr);
  // Linear F: the separatrix is the straight line v = |λ₋|(θ₊ - u).
  for (double c : {0.0, 1.0, 2.0}) {
    const double lm = saddle_eigen(r, c).lambda_minus;
    CHECK(v_at_hl(r, c) == doctest::Approx(-lm * 0.3).epsilon(1e-9));
  }
  const double c = psi(r, 0.2);
  CHECK(c > p.q * 0.2 / p.theta_hl);
  CHECK(c < c_plus_bound(r, 0.2));
}
