#pragma once

namespace smoothtrim {

double normal_cdf(double x);
double normal_pdf(double x);

/// Inverse standard normal cdf (bisection bracket plus Newton polish).
double normal_quantile(double p);

/// Regularized lower incomplete gamma P(a, x).
double lower_regularized_gamma(double a, double x);

/// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// Chi-squared quantile. Common 1-dof levels come from an exact table;
/// anything else falls back to Newton on the regularized incomplete gamma.
double chi_squared_quantile(double p, double dof);

/// Student-t quantile via incomplete-beta inversion.
double student_t_quantile(double p, double dof);

}  // namespace smoothtrim
