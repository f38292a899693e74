#include <doctest.h>

#include <cmath>
#include <random>

#include "ignifront/error.hpp"
#include "ignifront/explicit_region.hpp"
#include "ignifront/phi_curve.hpp"

using namespace ignifront;

namespace {

const ModelParams alt_params = validate_params(1.0, 0.3, 0.2, 0.25);

ModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uq(0.2, 5.0), uh(0.05, 2.0), uf(0.1, 0.9);
  const double q = uq(rng);
  const double h = uh(rng);
  const double tp = theta_plus(q, h);
  const double hl = uf(rng) * tp;
  const double ig = uf(rng) * hl;
  return validate_params(q, h, ig, hl);
}

}  // namespace

TEST_CASE("critical point for the alternate parameter set") {
  const CriticalData d = critical_point(alt_params);
  CHECK(d.c_tilde == 1.0);
  CHECK(d.b == std::sqrt(5.0));
  CHECK(d.a == doctest::Approx(0.11180339887498948).epsilon(1e-14));
  CHECK(d.c0 == doctest::Approx(1.3626632076618443).epsilon(1e-12));
  CHECK(d.R0 == doctest::Approx(0.34066580191546107).epsilon(1e-12));
  CHECK(std::abs(d.R0 - d.x0_at_c0) <= 1e-9);
  CHECK(std::abs(critical_function(alt_params, d.c0)) <= 1e-12);
  CHECK(std::abs(flux_at_R(alt_params, d.R0, d.c0)) <= 1e-10);
  CHECK(d.a < d.R0);
}

TEST_CASE("critical function bracket holds for random parameters") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 200; ++k) {
    const ModelParams p = random_params(rng);
    const CriticalData d = critical_point(p);
    CHECK(critical_function(p, d.c_tilde) > 0.0);
    CHECK(critical_function(p, d.b) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(d.c_tilde < d.c0);
    CHECK(d.c0 < d.b);
    CHECK(0.0 < d.a);
    CHECK(d.a < d.R0);
  }
}

TEST_CASE("phi endpoint and anchor values") {
  const CriticalData d = critical_point(alt_params);
  CHECK(phi(alt_params, d, d.R0) == doctest::Approx(d.c0).epsilon(1e-8));
  CHECK(phi(alt_params, d, d.a) == doctest::Approx(d.b).epsilon(1e-10));
  CHECK_THROWS_AS(phi(alt_params, d, 0.0), Error);
  CHECK_THROWS_AS(phi(alt_params, d, 1.1 * d.R0), Error);
}

TEST_CASE("phi is strictly decreasing and interior to Q+") {
  const CriticalData d = critical_point(alt_params);
  double prev = INFINITY;
  for (int i = 1; i <= 100; ++i) {
    const double R = 0.01 * d.R0 + (d.R0 - 0.01 * d.R0) * i / 100.0;
    const double c = phi(alt_params, d, R);
    CHECK(c < prev);
    if (i < 100) CHECK(flux_at_R(alt_params, R, c) > 0.0);
    prev = c;
  }
}

TEST_CASE("phi asymptote at small R") {
  const CriticalData d = critical_point(alt_params);
  const double m = std::log(alt_params.theta_hl / alt_params.theta_ig);
  for (int k = 2; k <= 4; ++k) {
    const double R = std::pow(10.0, -k) * d.R0;
    CHECK(phi(alt_params, d, R) >= m / (2.0 * R));
  }
}

TEST_CASE("sample_phi certifies residuals and extrapolates the m-limit") {
  const CriticalData d = critical_point(alt_params);
  const auto grid = geometric_grid(1e-3 * d.R0, d.R0, 256);
  const CurveSamples s = sample_phi(alt_params, grid);
  REQUIRE(s.points.size() == 256);
  CHECK(s.kind == CurveKind::phi);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    CHECK(s.residuals[i] <= 1e-10 * alt_params.q * std::exp(s.points[i].c * s.points[i].R));
    if (i > 0) CHECK(s.points[i].c < s.points[i - 1].c);
  }
  CHECK(s.points.back().c == doctest::Approx(d.c0).epsilon(1e-8));
  CHECK(extrapolate_m_limit(s) == doctest::Approx(0.22314355131420976).epsilon(1e-3));
}

TEST_CASE("phi does not depend on h") {
  const ModelParams a = validate_params(1.0, 0.3, 0.2, 0.25);
  const ModelParams b = validate_params(1.0, 0.05, 0.2, 0.25);
  const auto grid = geometric_grid(1e-3 * critical_point(a).R0, critical_point(a).R0, 64);
  const CurveSamples sa = sample_phi(a, grid);
  const CurveSamples sb = sample_phi(b, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(sa.points[i].c == sb.points[i].c);
}

TEST_CASE("grids") {
  const auto g = geometric_grid(1e-3, 1.0, 4);
  CHECK(g.front() == 1e-3);
  CHECK(g.back() == 1.0);
  CHECK(g[1] == doctest::Approx(1e-2));
  const auto l = linear_grid(0.0, 3.0, 4);
  CHECK(l[2] == doctest::Approx(2.0));
  const std::vector<double> bad{0.2, 0.1};
  CHECK_THROWS_AS(sample_phi(alt_params, bad), Error);
}
