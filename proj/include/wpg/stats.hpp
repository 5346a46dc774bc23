#pragma once

#include <functional>
#include <vector>

namespace wpg {

// Regularized lower incomplete gamma P(a,x).
double gamma_p(double a, double x);

// Upper tail of the chi-square distribution with k degrees of freedom.
double chi2_sf(double x, double k);

// Regularized incomplete beta I_x(a,b) = Beta(a,b) CDF at x.
double beta_cdf(double x, double a, double b);

// Kolmogorov-Smirnov statistic of a sample against a CDF.
double ks_statistic(std::vector<double> values, const std::function<double(double)>& cdf);

// Total variation distance between empirical counts and a reference pmf.
double total_variation(const std::vector<long long>& counts, const std::vector<double>& probs);

struct GofReport {
  double tv = 0.0;
  double tv_threshold = 0.0;  // mean-bound + 5 sigma from multinomial concentration
  double chi2 = 0.0;
  int dof = 0;
  double p_value = 1.0;
  bool pass = false;
};

// Chi-square + TV goodness of fit of counts against probs (bins with small
// expected counts are pooled). alpha is the rejection level for the p-value.
GofReport goodness_of_fit(const std::vector<long long>& counts, const std::vector<double>& probs,
                          double alpha = 1e-3);

// Two-sample chi-square homogeneity test over shared bins.
GofReport two_sample_chi_square(const std::vector<long long>& c1, const std::vector<long long>& c2,
                                double alpha = 1e-3);

double mean_of(const std::vector<double>& v);
double sd_of(const std::vector<double>& v);

}  // namespace wpg
