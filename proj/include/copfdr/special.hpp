#pragma once

namespace copfdr::special {

/// log(1 + exp(x)) without overflow.
double softplus(double x) noexcept;

/// log(exp(x) - 1) for x > 0 without overflow.
double log_expm1(double x) noexcept;

/// log(1 - exp(x)) for x < 0.
double log1m_exp(double x) noexcept;

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// P(a, exp(log_x)); stays accurate when exp(log_x) underflows to zero.
double gamma_p_log_arg(double a, double log_x);

}  // namespace copfdr::special
