#include "ignifront/model.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <utility>

#include "ignifront/error.hpp"

namespace ignifront {

namespace {

constexpr int kCustomValidationPoints = 256;

double integrate(const std::function<double(double)>& f, double a, double b) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, 1e-14);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::OrderingViolated: return "OrderingViolated";
    case ErrorCode::InvalidReaction: return "InvalidReaction";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::SpeedNonPositive: return "SpeedNonPositive";
    case ErrorCode::StabilityViolated: return "StabilityViolated";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::SeedTooLarge: return "SeedTooLarge";
    case ErrorCode::ToleranceFailure: return "ToleranceFailure";
    case ErrorCode::TailEstimateUnreliable: return "TailEstimateUnreliable";
    case ErrorCode::ExtrapolationBeyondTail: return "ExtrapolationBeyondTail";
    case ErrorCode::FrontLeftDomain: return "FrontLeftDomain";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonFinite:
    case ErrorCode::NonPositiveParameter:
    case ErrorCode::OrderingViolated:
    case ErrorCode::InvalidReaction:
    case ErrorCode::OutOfDomain:
    case ErrorCode::OutOfRange:
    case ErrorCode::SpeedNonPositive:
    case ErrorCode::StabilityViolated:
    case ErrorCode::UsageError:
      return true;
    default:
      return false;
  }
}

double theta_plus(double q, double h) { return std::pow(1.0 + q / h, 0.25) - 1.0; }

ModelParams validate_params(double q, double h, double theta_ig, double theta_hl) {
  if (!std::isfinite(q) || !std::isfinite(h) || !std::isfinite(theta_ig) ||
      !std::isfinite(theta_hl)) {
    throw Error(ErrorCode::NonFinite, "model parameters must be finite");
  }
  if (q <= 0.0) throw Error(ErrorCode::NonPositiveParameter, "q must be > 0, got " + fmt(q));
  if (h <= 0.0) throw Error(ErrorCode::NonPositiveParameter, "h must be > 0, got " + fmt(h));
  if (theta_ig <= 0.0) {
    throw Error(ErrorCode::NonPositiveParameter, "theta_ig must be > 0, got " + fmt(theta_ig));
  }
  const double tp = theta_plus(q, h);
  if (!(theta_ig < theta_hl) || !(theta_hl < tp)) {
    throw Error(ErrorCode::OrderingViolated,
                "need 0 < theta_ig < theta_hl < theta_plus, got theta_ig=" + fmt(theta_ig) +
                    ", theta_hl=" + fmt(theta_hl) + ", theta_plus=" + fmt(tp));
  }
  return ModelParams{q, h, theta_ig, theta_hl, tp};
}

double reaction_full(const ModelParams& p, double theta) {
  const double on = theta >= p.theta_ig ? p.q : 0.0;
  const double loss = theta >= p.theta_hl ? p.h * (std::pow(1.0 + theta, 4) - 1.0) : 0.0;
  return on - loss;
}

Interval default_domain(double theta_hl, double theta_plus) {
  const double span = theta_plus - theta_hl;
  return {theta_hl - 0.1 * span, theta_plus + 0.5 * span};
}

Reaction::Reaction(const ModelParams& params)
    : params_(params),
      theta_plus_(ignifront::theta_plus(params.q, params.h)),
      domain_(default_domain(params.theta_hl, theta_plus_)) {
  params_.theta_plus = theta_plus_;
}

Reaction::Reaction(const ModelParams& params, CustomReaction custom)
    : params_(params), custom_(std::move(custom)), domain_(custom_.domain) {
  if (!custom_.f || !custom_.df) {
    throw Error(ErrorCode::InvalidReaction, "custom reaction needs both F and F' handles");
  }
  if (!(params_.q > 0.0) || !(params_.theta_ig > 0.0) ||
      !(params_.theta_ig < params_.theta_hl)) {
    throw Error(ErrorCode::OrderingViolated, "need q > 0 and 0 < theta_ig < theta_hl");
  }
  if (!(domain_.lo <= params_.theta_hl && params_.theta_hl < domain_.hi)) {
    throw Error(ErrorCode::InvalidReaction, "domain W must contain theta_hl");
  }
  const double f_lo = custom_.f(params_.theta_hl);
  const double f_hi = custom_.f(domain_.hi);
  if (!(f_lo > 0.0) || !(f_hi < 0.0)) {
    throw Error(ErrorCode::InvalidReaction,
                "F must be positive at theta_hl and negative at the right end of W");
  }
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      custom_.f, params_.theta_hl, domain_.hi, f_lo, f_hi,
      boost::math::tools::eps_tolerance<double>(52), iters);
  theta_plus_ = 0.5 * (a + b);
  params_.theta_plus = theta_plus_;

  if (!(custom_.df(theta_plus_) < 0.0)) {
    throw Error(ErrorCode::InvalidReaction, "F'(theta_plus) must be negative");
  }
  for (int i = 0; i < kCustomValidationPoints; ++i) {
    const double u = params_.theta_hl +
                     (theta_plus_ - params_.theta_hl) * i / double(kCustomValidationPoints);
    if (!(custom_.f(u) > 0.0)) {
      throw Error(ErrorCode::InvalidReaction,
                  "F must be positive on [theta_hl, theta_plus), fails at u=" + fmt(u));
    }
    const double w =
        theta_plus_ + (domain_.hi - theta_plus_) * (i + 1) / double(kCustomValidationPoints);
    if (!(custom_.f(w) < 0.0)) {
      throw Error(ErrorCode::InvalidReaction,
                  "F must be negative on (theta_plus, W.hi], fails at u=" + fmt(w));
    }
  }
}

double Reaction::restricted(double u) const {
  if (!domain_.contains(u)) {
    throw Error(ErrorCode::OutOfDomain, "u=" + fmt(u) + " outside [" + fmt(domain_.lo) + ", " +
                                            fmt(domain_.hi) + "]");
  }
  return restricted_unchecked(u);
}

double Reaction::derivative(double u) const {
  if (!domain_.contains(u)) throw Error(ErrorCode::OutOfDomain, "u=" + fmt(u) + " outside W");
  if (custom_.df) return custom_.df(u);
  return -4.0 * params_.h * std::pow(1.0 + u, 3);
}

double Reaction::potential(double u) const {
  if (!domain_.contains(u)) throw Error(ErrorCode::OutOfDomain, "u=" + fmt(u) + " outside W");
  if (custom_.f) return integrate(custom_.f, params_.theta_hl, u);
  const double q = params_.q;
  const double h = params_.h;
  const double b = 1.0 + params_.theta_hl;
  return (q + h) * (u - params_.theta_hl) - (h / 5.0) * (std::pow(1.0 + u, 5) - std::pow(b, 5));
}

double Reaction::potential_drop(double u) const {
  if (!domain_.contains(u)) throw Error(ErrorCode::OutOfDomain, "u=" + fmt(u) + " outside W");
  if (custom_.f) return integrate(custom_.f, u, theta_plus_);
  // ∫_u^{θ₊} h(A^4 - s^4) ds with A = 1+θ₊, B = 1+u, factored as (h/5)(A-B)^2 (...)
  const double a = 1.0 + theta_plus_;
  const double b = 1.0 + u;
  const double d = a - b;
  return params_.h / 5.0 * d * d * (4 * a * a * a + 3 * a * a * b + 2 * a * b * b + b * b * b);
}

double Reaction::hamiltonian_speed(double u) const {
  return std::sqrt(2.0 * std::max(0.0, potential_drop(u)));
}

}  // namespace ignifront
