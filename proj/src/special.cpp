#include "copfdr/special.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace copfdr::special {

double softplus(double x) noexcept {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double log_expm1(double x) noexcept {
  if (x > 1.0) return x + std::log1p(-std::exp(-x));
  return std::log(std::expm1(x));
}

double log1m_exp(double x) noexcept {
  // Maechler's switch point
  if (x > -0.693147180559945309) return std::log(-std::expm1(x));
  return std::log1p(-std::exp(x));
}

double gamma_p(double a, double x) {
  if (!(a > 0.0)) throw std::domain_error("gamma_p: shape must be positive");
  if (std::isnan(x)) throw std::domain_error("gamma_p: NaN argument");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(a, x);
}

double gamma_p_log_arg(double a, double log_x) {
  if (!(a > 0.0)) throw std::domain_error("gamma_p: shape must be positive");
  if (log_x == -std::numeric_limits<double>::infinity()) return 0.0;
  if (log_x > -30.0) return gamma_p(a, std::exp(log_x));
  // x < 1e-13: P(a, x) = x^a e^{-x} / Gamma(a + 1) * (1 + x/(a+1) + ...);
  // the bracket and e^{-x} differ from 1 by far less than double epsilon.
  const double x = std::exp(log_x);
  return std::exp(a * log_x - std::lgamma(a + 1.0) - x) * (1.0 + x / (a + 1.0));
}

}  // namespace copfdr::special
