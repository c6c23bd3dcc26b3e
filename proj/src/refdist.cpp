#include "vmedad/refdist.hpp"

#include "vmedad/types.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>

namespace vmedad {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxTerms = 100000;

// Stirling remainder ln Gamma(x) - [(x - 1/2) ln x - x + ln sqrt(2 pi)].
double stirling_tail(double x) {
  const double x2 = x * x;
  return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * x2)) / x2) / x2) / x;
}

double gamma_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int n = 0; n < kMaxTerms; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
}

// Upper tail Q(a, x) by modified Lentz.
double gamma_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
}

double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m < kMaxTerms; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

// Median of a continuous law on [0, inf): expanding bracket, bisection to a
// relative width of 1e-6, then Newton steps kept inside the bracket.
double solve_median(const std::function<double(double)>& cdf, const std::function<double(double)>& pdf,
                    double start) {
  double lo = 0.0;
  double hi = std::max(start, 1.0);
  while (cdf(hi) < 0.5) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw Error("median bracket diverged");
  }
  while (hi - lo > 1e-6 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < 0.5) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double f = cdf(x) - 0.5;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double dens = pdf(x);
    double next = dens > 0.0 ? x - f / dens : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double delta = std::abs(next - x);
    x = next;
    if (delta <= 1e-14 * std::max(1.0, x)) break;
  }
  return x;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw Error("log_gamma: argument must be positive");
  static constexpr std::array<double, 9> kCoef = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    // reflection
    return std::log(std::numbers::pi / std::abs(std::sin(std::numbers::pi * x))) - log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double sum = kCoef[0];
  for (std::size_t i = 1; i < kCoef.size(); ++i) sum += kCoef[i] / (z + static_cast<double>(i));
  const double t = z + 7.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error("log_beta: arguments must be positive");
  const double small = std::min(a, b);
  const double big = std::max(a, b);
  if (big < 100.0) return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
  // ln Gamma(big) - ln Gamma(big + small) without subtracting two large numbers
  const double s = big + small;
  const double diff = -(big - 0.5) * std::log1p(small / big) - small * std::log(s) + small +
                      stirling_tail(big) - stirling_tail(s);
  return log_gamma(small) + diff;
}

double reg_inc_gamma(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(a)) throw Error("reg_inc_gamma: domain error");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return std::min(1.0, gamma_series(a, x));
  return std::clamp(1.0 - gamma_continued_fraction(a, x), 0.0, 1.0);
}

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0)) throw Error("reg_inc_beta: domain error");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::clamp(std::exp(log_front) * beta_continued_fraction(a, b, x) / a, 0.0, 1.0);
  }
  return std::clamp(1.0 - std::exp(log_front) * beta_continued_fraction(b, a, 1.0 - x) / b, 0.0, 1.0);
}

double chisq_median(int d) {
  if (d < 1) throw Error("chisq_median: d must be >= 1");
  const double k = 0.5 * d;
  const double log_norm = k * std::numbers::ln2 + log_gamma(k);
  auto cdf = [k](double x) { return reg_inc_gamma(k, 0.5 * x); };
  auto pdf = [k, log_norm](double x) {
    if (x <= 0.0) return 0.0;
    return std::exp((k - 1.0) * std::log(x) - 0.5 * x - log_norm);
  };
  return solve_median(cdf, pdf, static_cast<double>(d));
}

double f_median(double d1, double d2) {
  if (!(d1 > 0.0) || !(d2 > 0.0)) throw Error("f_median: degrees of freedom must be positive");
  const double a = 0.5 * d1;
  const double b = 0.5 * d2;
  const double lb = log_beta(a, b);
  auto cdf = [=](double x) { return reg_inc_beta(a, b, d1 * x / (d1 * x + d2)); };
  auto pdf = [=](double x) {
    if (x <= 0.0) return 0.0;
    const double denom = d1 * x + d2;
    const double y = d1 * x / denom;
    const double log_dens = (a - 1.0) * std::log(y) + (b - 1.0) * std::log1p(-y) - lb;
    return std::exp(log_dens) * d1 * d2 / (denom * denom);
  };
  return solve_median(cdf, pdf, 1.0);
}

ReferenceValues normal_reference(int d) {
  ReferenceValues r;
  r.family = Family::normal;
  r.d = d;
  r.phi2_scale = std::sqrt(chisq_median(d));
  r.c_med_diag = chisq_median(1);
  r.phi2_vec.assign(static_cast<std::size_t>(d), 0.0);
  r.phi3 = r.phi2_vec;
  r.phi4 = r.phi2_vec;
  return r;
}

ReferenceValues t_reference(int d, double nu) {
  if (d < 1) throw Error("t_reference: d must be >= 1");
  if (!(nu > 0.0)) throw Error("t_reference: nu must be positive");
  ReferenceValues r;
  r.family = Family::student_t;
  r.d = d;
  r.nu = nu;
  r.phi2_scale = std::sqrt(static_cast<double>(d) * f_median(static_cast<double>(d), nu));
  r.c_med_diag = f_median(1.0, nu);
  r.phi2_vec.assign(static_cast<std::size_t>(d), 0.0);
  r.phi3 = r.phi2_vec;
  r.phi4 = r.phi2_vec;
  return r;
}

std::vector<CurvePoint> figure2_curve(const std::vector<int>& d_list, const std::vector<double>& nu_grid) {
  if (d_list.empty() || nu_grid.empty()) throw Error("figure2_curve: empty grid");
  std::vector<CurvePoint> out;
  out.reserve(d_list.size() * nu_grid.size());
  for (int d : d_list) {
    for (double nu : nu_grid) out.push_back({d, nu, t_reference(d, nu).phi2_scale});
  }
  return out;
}

void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& curve) {
  os << "d,nu,phi2_med\n";
  const auto old = os.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& p : curve) os << p.d << ',' << p.nu << ',' << p.phi2_med << '\n';
  os.precision(old);
}

}  // namespace vmedad
