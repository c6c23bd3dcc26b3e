#pragma once

// Closed-form population VMedAD values for elliptical normal and Student-t
// laws, and the special functions they need.

#include <iosfwd>
#include <optional>
#include <vector>

namespace vmedad {

/// ln Gamma(x) for x > 0 (Lanczos, g = 7).
double log_gamma(double x);

/// ln B(a, b), with a cancellation-free path when max(a, b) is large.
double log_beta(double a, double b);

/// Lower regularized incomplete gamma P(a, x): series for x < a + 1, Lentz
/// continued fraction otherwise.
double reg_inc_gamma(double a, double x);

/// Regularized incomplete beta I_x(a, b): continued fraction, evaluated on
/// the complementary side when x > (a + 1) / (a + b + 2).
double reg_inc_beta(double a, double b, double x);

/// Median of chi-square with d degrees of freedom.
double chisq_median(int d);

/// Median of F(d1, d2).
double f_median(double d1, double d2);

enum class Family { normal, student_t };

struct ReferenceValues {
  Family family = Family::normal;
  int d = 1;
  std::optional<double> nu;
  double phi2_scale = 0.0;  ///< population Phi_2^Med of the standardized law
  double c_med_diag = 0.0;  ///< C_Med = c_med_diag * Sigma
  std::vector<double> phi2_vec;
  std::vector<double> phi3;
  std::vector<double> phi4;
};

ReferenceValues normal_reference(int d);
ReferenceValues t_reference(int d, double nu);

struct CurvePoint {
  int d = 0;
  double nu = 0.0;
  double phi2_med = 0.0;
};

/// phi2_scale of t_d(nu) over the grid, row-major in (d, nu).
std::vector<CurvePoint> figure2_curve(const std::vector<int>& d_list, const std::vector<double>& nu_grid);

/// CSV with header "d,nu,phi2_med".
void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& curve);

}  // namespace vmedad
