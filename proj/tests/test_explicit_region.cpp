#include <doctest.h>

#include <cmath>
#include <random>

#include "ignifront/error.hpp"
#include "ignifront/explicit_region.hpp"

using namespace ignifront;

namespace {

ModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uq(0.1, 10.0), uh(0.01, 5.0), uf(0.05, 0.95);
  const double q = uq(rng);
  const double h = uh(rng);
  const double tp = theta_plus(q, h);
  const double hl = uf(rng) * tp;
  const double ig = uf(rng) * hl;
  return validate_params(q, h, ig, hl);
}

}  // namespace

TEST_CASE("classify flags Q+ membership and its boundary") {
  const ModelParams p = validate_params(1.0, 0.3, 0.1, 0.2);
  CHECK(classify(p, 0.1, 1.0).in_Q_plus);
  CHECK_FALSE(classify(p, 0.1, 1.0).on_boundary);
  CHECK(classify(p, 0.2, 1.0).on_boundary);
  CHECK(classify(p, 0.2, 1.0).in_Q_plus);
  CHECK_FALSE(classify(p, 0.3, 1.0).in_Q_plus);
}

TEST_CASE("preheat profile matches the ODE and the gauge") {
  const ModelParams p = validate_params(1.0, 0.3, 0.1, 0.2);
  const double c = 2.0, R = 0.5;
  const ProfilePoint at0 = preheat_profile(p, c, R, 0.0);
  CHECK(at0.theta == p.theta_ig);
  CHECK(at0.theta_x == doctest::Approx(c * p.theta_ig));
  const ProfilePoint left = preheat_profile(p, c, R, -1.0);
  CHECK(left.theta == doctest::Approx(p.theta_ig * std::exp(-2.0)));
  // θ'' - cθ' + q = 0 on (0, R].
  for (double x : {0.1, 0.25, 0.4}) {
    const double d = 1e-4;
    const double tm = preheat_profile(p, c, R, x - d).theta;
    const double t0 = preheat_profile(p, c, R, x).theta;
    const double tp = preheat_profile(p, c, R, x + d).theta;
    const double res = (tp - 2 * t0 + tm) / (d * d) - c * preheat_profile(p, c, R, x).theta_x + p.q;
    CHECK(std::abs(res) < 1e-5);
  }
  CHECK_THROWS_AS(preheat_profile(p, 0.0, R, 0.1), Error);
  CHECK_THROWS_AS(preheat_profile(p, c, R, R + 0.1), Error);
}

TEST_CASE("G(R, c) = -c^2 (theta(R) - theta_hl)") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ur(0.01, 2.0), uc(0.1, 5.0);
  for (int k = 0; k < 200; ++k) {
    const ModelParams p = random_params(rng);
    const double R = ur(rng);
    const double c = uc(rng);
    const double th = preheat_profile(p, c, R, R).theta;
    const double g = G(p, R, c);
    CHECK(g == doctest::Approx(-c * c * (th - p.theta_hl)).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("G vanishes at (a, b) for random parameters") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 500; ++k) {
    const ModelParams p = random_params(rng);
    const double b = std::sqrt(p.q / p.theta_ig);
    const double a = (p.theta_hl / p.theta_ig - 1.0) / b;
    const double scale = p.q * std::exp(a * b);
    CHECK(std::abs(G(p, a, b)) <= 1e-12 * scale);
  }
}

TEST_CASE("analytic partials of G agree with finite differences") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ur(0.05, 1.0), uc(0.5, 4.0);
  for (int k = 0; k < 100; ++k) {
    const ModelParams p = random_params(rng);
    const double R = ur(rng), c = uc(rng);
    const GPartials d = G_partials(p, R, c);
    const double hR = 1e-6 * R, hc = 1e-6 * c;
    const double fdR = (G(p, R + hR, c) - G(p, R - hR, c)) / (2 * hR);
    const double fdc = (G(p, R, c + hc) - G(p, R, c - hc)) / (2 * hc);
    CHECK(d.dR == doctest::Approx(fdR).epsilon(1e-6).scale(p.q * std::exp(c * R)));
    CHECK(d.dc == doctest::Approx(fdc).epsilon(1e-6).scale(p.q * std::exp(c * R)));
  }
}

TEST_CASE("flux at R") {
  const ModelParams p = validate_params(1.0, 0.3, 0.1, 0.2);
  CHECK(flux_at_R(p, 0.1, 1.0) == doctest::Approx(0.1));
}
