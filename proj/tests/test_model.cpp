#include <doctest.h>

#include <cmath>
#include <random>

#include "ignifront/error.hpp"
#include "ignifront/model.hpp"

using namespace ignifront;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an ignifront::Error");
  return ErrorCode::UsageError;
}

}  // namespace

TEST_CASE("theta_plus closed forms") {
  CHECK(theta_plus(1.0, 0.3) == doctest::Approx(0.44279797597104105).epsilon(1e-15));
  CHECK(theta_plus(2.0, 2.0) == doctest::Approx(0.18920711500272107).epsilon(1e-15));
  CHECK(theta_plus(15.0, 1.0) == 1.0);
  CHECK(theta_plus(1.0, 100.0) == doctest::Approx(0.0024906793143211).epsilon(1e-12));
}

TEST_CASE("validate_params accepts the reference set and caches theta_plus") {
  const ModelParams p = validate_params(1.0, 0.3, 0.1, 0.2);
  CHECK(p.theta_plus == theta_plus(1.0, 0.3));
  CHECK(p.theta_plus == doctest::Approx(0.442798).epsilon(1e-6));
}

TEST_CASE("validate_params rejects bad inputs") {
  CHECK(code_of([] { validate_params(1.0, 0.3, 0.2, 0.1); }) == ErrorCode::OrderingViolated);
  CHECK(code_of([] { validate_params(1.0, 100.0, 0.1, 0.2); }) == ErrorCode::OrderingViolated);
  CHECK(code_of([] { validate_params(0.0, 0.3, 0.1, 0.2); }) == ErrorCode::NonPositiveParameter);
  CHECK(code_of([] { validate_params(1.0, -1.0, 0.1, 0.2); }) == ErrorCode::NonPositiveParameter);
  CHECK(code_of([] { validate_params(1.0, 0.3, 0.0, 0.2); }) == ErrorCode::NonPositiveParameter);
  CHECK(code_of([] { validate_params(NAN, 0.3, 0.1, 0.2); }) == ErrorCode::NonFinite);
  CHECK(code_of([] { validate_params(1.0, 0.3, 0.1, INFINITY); }) == ErrorCode::NonFinite);
  CHECK(is_validation_error(ErrorCode::OrderingViolated));
  CHECK_FALSE(is_validation_error(ErrorCode::BracketFailure));
}

TEST_CASE("reaction_full is piecewise with H(0) = 1") {
  const ModelParams p = validate_params(1.0, 0.3, 0.1, 0.2);
  CHECK(reaction_full(p, 0.05) == 0.0);
  CHECK(reaction_full(p, -1.0) == 0.0);
  CHECK(reaction_full(p, 0.1) == 1.0);
  CHECK(reaction_full(p, 0.15) == 1.0);
  CHECK(reaction_full(p, 0.2) == doctest::Approx(0.67792).epsilon(1e-14));
  CHECK(std::abs(reaction_full(p, p.theta_plus)) < 1e-14);
  CHECK(reaction_full(p, 0.6) < 0.0);

  const Reaction r(p);
  for (double th : {-0.5, 0.0, 0.05, 0.1, 0.15, 0.2, 0.3, 0.44, 0.5, 1.0}) {
    CHECK(r.full(th) == doctest::Approx(reaction_full(p, th)).epsilon(1e-13));
  }
}

TEST_CASE("restricted reaction, derivative and potential") {
  const ModelParams p = validate_params(1.0, 0.3, 0.1, 0.2);
  const Reaction r(p);
  CHECK(r.restricted(p.theta_plus) == 0.0);
  CHECK(r.derivative(p.theta_plus) == doctest::Approx(-3.604108188812965).epsilon(1e-14));
  CHECK(r.potential(p.theta_hl) == 0.0);
  CHECK(r.potential(p.theta_plus) == doctest::Approx(0.08980909500988269).epsilon(1e-13));
  CHECK(r.hamiltonian_speed(p.theta_hl) == doctest::Approx(0.42381386246767032).epsilon(1e-14));
  CHECK(r.hamiltonian_speed(p.theta_plus) == 0.0);
  CHECK_THROWS_AS(r.restricted(10.0), Error);
}

TEST_CASE("potential_drop matches U(theta_plus) - U(u) on random points") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uq(0.2, 5.0), uh(0.05, 2.0), uf(0.05, 0.9);
  for (int k = 0; k < 200; ++k) {
    const double q = uq(rng);
    const double h = uh(rng);
    const double tp = theta_plus(q, h);
    const double hl = uf(rng) * tp;
    const double ig = uf(rng) * hl;
    const ModelParams p = validate_params(q, h, ig, hl);
    const Reaction r(p);
    const double u = hl + uf(rng) * (tp - hl);
    const double direct = r.potential(tp) - r.potential(u);
    CHECK(r.potential_drop(u) == doctest::Approx(direct).epsilon(1e-9).scale(1e-12));
    CHECK(r.restricted(u) > 0.0);
    // Finite-difference derivative of U reproduces F.
    const double d = 1e-6 * (tp - hl);
    const double fd = (r.potential(u + d) - r.potential(u - d)) / (2 * d);
    CHECK(fd == doctest::Approx(r.restricted(u)).epsilon(1e-6));
  }
}

TEST_CASE("custom reaction equal to the quartic reproduces it") {
  const ModelParams p = validate_params(1.0, 0.3, 0.1, 0.2);
  const Reaction quartic(p);
  CustomReaction cr;
  cr.f = [&](double u) { return p.q - p.h * (std::pow(1.0 + u, 4) - 1.0); };
  cr.df = [&](double u) { return -4.0 * p.h * std::pow(1.0 + u, 3); };
  cr.domain = default_domain(p.theta_hl, p.theta_plus);
  const Reaction custom(p, cr);
  CHECK(custom.theta_plus() == doctest::Approx(p.theta_plus).epsilon(1e-14));
  CHECK_FALSE(custom.is_quartic());
  for (double u : {0.2, 0.3, 0.4, 0.44}) {
    CHECK(custom.potential_drop(u) == doctest::Approx(quartic.potential_drop(u)).epsilon(1e-11));
  }
}

TEST_CASE("custom reaction validation") {
  const ModelParams p{1.0, 0.3, 0.1, 0.2, 0.0};
  CustomReaction no_zero;
  no_zero.f = [](double) { return 1.0; };
  no_zero.df = [](double) { return 0.0; };
  no_zero.domain = {0.1, 1.0};
  CHECK(code_of([&] { Reaction(p, no_zero); }) == ErrorCode::InvalidReaction);

  CustomReaction missing;
  missing.domain = {0.1, 1.0};
  CHECK(code_of([&] { Reaction(p, missing); }) == ErrorCode::InvalidReaction);

  // Zero at 0.5 but F dips below zero inside [θ_hl, θ₊).
  CustomReaction dip;
  dip.f = [](double u) { return (0.5 - u) * (std::pow(u - 0.3, 2) - 0.001); };
  dip.df = [](double u) {
    return -(std::pow(u - 0.3, 2) - 0.001) + (0.5 - u) * 2.0 * (u - 0.3);
  };
  dip.domain = {0.15, 0.8};
  CHECK(code_of([&] { Reaction(p, dip); }) == ErrorCode::InvalidReaction);

  CustomReaction linear;
  linear.f = [](double u) { return 0.5 - u; };
  linear.df = [](double) { return -1.0; };
  linear.domain = {0.15, 0.8};
  const Reaction ok(p, linear);
  CHECK(ok.theta_plus() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(ok.params().theta_plus == ok.theta_plus());
  CHECK(ok.potential_drop(0.2) == doctest::Approx(0.045).epsilon(1e-12));
}
