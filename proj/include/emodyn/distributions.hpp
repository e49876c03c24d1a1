#pragma once

namespace emodyn {

// Upper tail of the Kolmogorov distribution,
// Q(lambda) = 2 * sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2),
// truncated once terms drop below 1e-12. Q(0) = 1.
double kolmogorov_q(double lambda);

double ln_gamma(double x);

// Regularized incomplete gamma P(a,x) and Q(a,x) = 1 - P(a,x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Regularized incomplete beta I_x(a,b).
double inc_beta(double a, double b, double x);

// Two-sided p of a Student t statistic with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

// P(X >= x) for a chi-squared variable with df degrees of freedom.
double chi_squared_upper_p(double x, double df);

}  // namespace emodyn
