#include "wpg/stats.hpp"

#include <algorithm>
#include <cmath>

#include "wpg/error.hpp"

namespace wpg {

namespace {

// Series expansion of P(a,x), valid for x < a+1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x), valid for x >= a+1 (modified Lentz).
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double betacf(double a, double b, double x) {
  const double tiny = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return h;
}

}  // namespace

double gamma_p(double a, double x) {
  if (a <= 0 || x < 0) raise(errc::invalid_parameter, "gamma_p requires a > 0, x >= 0");
  if (x == 0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double chi2_sf(double x, double k) {
  if (x <= 0) return 1.0;
  if (x < k + 1.0) return 1.0 - gamma_p_series(k / 2.0, x / 2.0);
  return gamma_q_cf(k / 2.0, x / 2.0);
}

double beta_cdf(double x, double a, double b) {
  if (a <= 0 || b <= 0) raise(errc::invalid_parameter, "beta_cdf requires a > 0, b > 0");
  if (x <= 0) return 0.0;
  if (x >= 1) return 1.0;
  double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                       b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double ks_statistic(std::vector<double> values, const std::function<double(double)>& cdf) {
  if (values.empty()) raise(errc::invalid_parameter, "empty sample");
  std::sort(values.begin(), values.end());
  double n = static_cast<double>(values.size());
  double d = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    double f = cdf(values[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

double total_variation(const std::vector<long long>& counts, const std::vector<double>& probs) {
  if (counts.size() != probs.size()) raise(errc::invalid_parameter, "histogram/pmf size mismatch");
  long long total = 0;
  for (long long c : counts) total += c;
  if (total == 0) raise(errc::invalid_parameter, "empty histogram");
  double tv = 0.0;
  for (size_t i = 0; i < counts.size(); ++i)
    tv += std::abs(static_cast<double>(counts[i]) / static_cast<double>(total) - probs[i]);
  return tv / 2.0;
}

GofReport goodness_of_fit(const std::vector<long long>& counts, const std::vector<double>& probs,
                          double alpha) {
  GofReport rep;
  rep.tv = total_variation(counts, probs);
  long long total = 0;
  for (long long c : counts) total += c;
  double r = static_cast<double>(total);

  double mean_bound = 0.0;
  for (double p : probs) mean_bound += 0.5 * std::sqrt(std::max(0.0, p * (1.0 - p)) / r);
  rep.tv_threshold = mean_bound + 2.5 / std::sqrt(r);  // 5 sigma of the bounded-difference bound

  // pool bins left to right until the expected count reaches 5
  std::vector<double> exp_pooled;
  std::vector<double> obs_pooled;
  double e_acc = 0.0, o_acc = 0.0;
  for (size_t i = 0; i < counts.size(); ++i) {
    e_acc += probs[i] * r;
    o_acc += static_cast<double>(counts[i]);
    if (e_acc >= 5.0) {
      exp_pooled.push_back(e_acc);
      obs_pooled.push_back(o_acc);
      e_acc = o_acc = 0.0;
    }
  }
  if (e_acc > 0 || o_acc > 0) {
    if (!exp_pooled.empty()) {
      exp_pooled.back() += e_acc;
      obs_pooled.back() += o_acc;
    } else {
      exp_pooled.push_back(e_acc);
      obs_pooled.push_back(o_acc);
    }
  }
  rep.dof = static_cast<int>(exp_pooled.size()) - 1;
  rep.chi2 = 0.0;
  for (size_t i = 0; i < exp_pooled.size(); ++i) {
    if (exp_pooled[i] <= 0) continue;
    double d = obs_pooled[i] - exp_pooled[i];
    rep.chi2 += d * d / exp_pooled[i];
  }
  rep.p_value = rep.dof >= 1 ? chi2_sf(rep.chi2, rep.dof) : 1.0;
  rep.pass = rep.tv < rep.tv_threshold && rep.p_value > alpha;
  return rep;
}

GofReport two_sample_chi_square(const std::vector<long long>& c1, const std::vector<long long>& c2,
                                double alpha) {
  if (c1.size() != c2.size()) raise(errc::invalid_parameter, "histogram size mismatch");
  double n1 = 0, n2 = 0;
  for (long long c : c1) n1 += static_cast<double>(c);
  for (long long c : c2) n2 += static_cast<double>(c);
  if (n1 == 0 || n2 == 0) raise(errc::invalid_parameter, "empty histogram");
  double k1 = std::sqrt(n2 / n1), k2 = std::sqrt(n1 / n2);

  GofReport rep;
  int bins = 0;
  double o1_acc = 0, o2_acc = 0;
  for (size_t i = 0; i < c1.size(); ++i) {
    o1_acc += static_cast<double>(c1[i]);
    o2_acc += static_cast<double>(c2[i]);
    if (o1_acc + o2_acc >= 10.0) {
      double d = k1 * o1_acc - k2 * o2_acc;
      rep.chi2 += d * d / (o1_acc + o2_acc);
      ++bins;
      o1_acc = o2_acc = 0;
    }
  }
  if ((o1_acc > 0 || o2_acc > 0) && bins > 0) {
    double d = k1 * o1_acc - k2 * o2_acc;
    rep.chi2 += d * d / (o1_acc + o2_acc);
    ++bins;
  }
  rep.dof = bins - 1;
  rep.p_value = rep.dof >= 1 ? chi2_sf(rep.chi2, rep.dof) : 1.0;
  rep.pass = rep.p_value > alpha;
  return rep;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) raise(errc::invalid_parameter, "empty sample");
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = mean_of(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace wpg
