#pragma once

#include <vector>

namespace symclust::eval {

struct CorrelationResult {
  double r;        // sample Pearson correlation, in [-1, 1]
  double p_value;  // two-sided, from the t distribution with n-2 dof
  long long n;
};

// Requires n >= 3 and nonzero variance in both series.
CorrelationResult pearson(const std::vector<double>& xs, const std::vector<double>& ys);

// Regularized incomplete beta function I_x(a, b), continued-fraction
// evaluation, absolute accuracy around 1e-12 for the arguments used here.
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided tail probability of |T| >= |t| for Student's t with `dof`
// degrees of freedom.
double student_t_two_sided_p(double t, long long dof);

}  // namespace symclust::eval
