#pragma once

// Closed-form machinery for the unit disk: the determinant f_l(k) whose real
// zeros are the clamped transmission eigenvalues, the far-field Fourier
// coefficients lambda_l(k) and the resulting analytic far-field pattern.

#include "clamped_te/specfun.hpp"

#include <span>
#include <vector>

namespace clamped_te::disk {

/// f_l(k) = i k J_l(k) H_l'(ik) - k H_l(ik) J_l'(k).
cplx determinant(int ell, cplx k);

/// Same function written with J_{l-1} - J_{l+1} and H_{l-1} - H_{l+1} in
/// place of the derivatives (negative orders by reflection).
cplx determinant_recurrence(int ell, cplx k);

/// For real k > 0, f_l(k) = (2/pi) i^{-l-1} g_l(k) with the real function
/// g_l(k) = k (J_l(k) K_l'(k) - K_l(k) J_l'(k)).
double determinant_real(int ell, double k);

struct DiskRoot {
    double k = 0.0;
    int ell = 0;
    int multiplicity = 1;  // 1 for l = 0, otherwise 2 (modes +l and -l)
};

/// Zeros of f_0..f_{ell_max} in [k_min, k_max]: sign changes of g_l on a
/// 1e-3 grid, then bisection to an interval narrower than tol. Ascending.
std::vector<DiskRoot> te_roots(int ell_max, double k_min, double k_max, double tol = 1e-12);

/// |f_l(i s)| for each s > 0.
std::vector<double> imag_axis_scan(int ell, std::span<const double> s_grid);

/// Far-field coefficient lambda_l(k) of the Helmholtz part for the incident
/// wave e^{ik x.d}. lambda_{-l} = lambda_l, so negative l is accepted.
cplx lambda(int ell, double k);

/// Default truncation max(20, ceil(3k)).
int default_truncation(double k);

struct SeriesValue {
    cplx value;
    bool tail_ok = true;  // |lambda_L| < 1e-14 max_l |lambda_l|
};

/// u_inf(theta; phi) = (4/i) sum_{|l| <= L} lambda_l(k) e^{il(theta - phi)};
/// L <= 0 selects default_truncation(k).
SeriesValue farfield_analytic(double k, double theta, double phi, int truncation = 0);

/// Coefficients lambda_0..lambda_L for repeated evaluation.
std::vector<cplx> lambda_table(double k, int truncation);
SeriesValue farfield_from_table(std::span<const cplx> lambdas, double theta, double phi);

}  // namespace clamped_te::disk
