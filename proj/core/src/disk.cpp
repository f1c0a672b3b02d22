#include "clamped_te/disk.hpp"

#include "clamped_te/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace clamped_te::disk {
namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kGridStep = 1e-3;

cplx j_signed(int order, cplx z) {
    return order >= 0 ? specfun::bessel_j(order, z) : (order % 2 == 0 ? 1.0 : -1.0) * specfun::bessel_j(-order, z);
}

cplx h_signed(int order, cplx z) {
    return order >= 0 ? specfun::hankel1(order, z) : (order % 2 == 0 ? 1.0 : -1.0) * specfun::hankel1(-order, z);
}

void check_order(int ell) {
    if (ell < 0 || ell >= specfun::max_order) throw InvalidArgument("order l out of range");
}

double k_deriv(int ell, double x) {
    if (ell == 0) return -specfun::bessel_k(1, x);
    return -0.5 * (specfun::bessel_k(ell - 1, x) + specfun::bessel_k(ell + 1, x));
}

}  // namespace

cplx determinant(int ell, cplx k) {
    check_order(ell);
    const cplx ik = kI * k;
    return ik * specfun::bessel_j(ell, k) * specfun::hankel1_deriv(ell, ik) -
           k * specfun::hankel1(ell, ik) * specfun::bessel_j_deriv(ell, k);
}

cplx determinant_recurrence(int ell, cplx k) {
    check_order(ell);
    const cplx ik = kI * k;
    return 0.5 * ik * specfun::bessel_j(ell, k) * (h_signed(ell - 1, ik) - h_signed(ell + 1, ik)) -
           0.5 * k * specfun::hankel1(ell, ik) * (j_signed(ell - 1, k) - j_signed(ell + 1, k));
}

double determinant_real(int ell, double k) {
    check_order(ell);
    if (!(k > 0.0)) throw InvalidArgument("k must be positive");
    const double j = specfun::bessel_j(ell, k).real();
    const double jp = specfun::bessel_j_deriv(ell, k).real();
    return k * (j * k_deriv(ell, k) - specfun::bessel_k(ell, k) * jp);
}

std::vector<DiskRoot> te_roots(int ell_max, double k_min, double k_max, double tol) {
    if (ell_max < 0) throw InvalidArgument("ell_max must be non-negative");
    if (!(k_min > 0.0) || !(k_max > k_min)) throw InvalidArgument("need 0 < k_min < k_max");
    if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    const int steps = std::max(1, static_cast<int>(std::ceil((k_max - k_min) / kGridStep)));
    std::vector<DiskRoot> roots;
    for (int ell = 0; ell <= ell_max; ++ell) {
        double a = k_min;
        double fa = determinant_real(ell, a);
        for (int s = 1; s <= steps; ++s) {
            const double b = s == steps ? k_max : k_min + (k_max - k_min) * s / steps;
            const double fb = determinant_real(ell, b);
            if (fa == 0.0 || (fa < 0.0) != (fb < 0.0)) {
                double lo = a, hi = b, flo = fa;
                if (fa == 0.0) hi = a;
                while (hi - lo > tol) {
                    const double mid = 0.5 * (lo + hi);
                    if (mid <= lo || mid >= hi) break;
                    const double fm = determinant_real(ell, mid);
                    if (fm == 0.0) {
                        lo = hi = mid;
                        break;
                    }
                    if ((fm < 0.0) == (flo < 0.0)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                const double root = 0.5 * (lo + hi);
                if (roots.empty() || roots.back().ell != ell || std::abs(roots.back().k - root) > 10 * tol)
                    roots.push_back({root, ell, ell == 0 ? 1 : 2});
            }
            a = b;
            fa = fb;
        }
    }
    std::sort(roots.begin(), roots.end(), [](const DiskRoot& x, const DiskRoot& y) { return x.k < y.k; });
    return roots;
}

std::vector<double> imag_axis_scan(int ell, std::span<const double> s_grid) {
    std::vector<double> out;
    out.reserve(s_grid.size());
    for (double s : s_grid) {
        if (!(s > 0.0)) throw InvalidArgument("imaginary-axis scan needs s > 0");
        out.push_back(std::abs(determinant(ell, cplx{0.0, s})));
    }
    return out;
}

cplx lambda(int ell, double k) {
    ell = std::abs(ell);
    check_order(ell);
    if (!(k > 0.0)) throw InvalidArgument("k must be positive");
    const cplx ik = kI * k;
    const cplx kc{k, 0.0};
    const cplx h_ik = specfun::hankel1(ell, ik);
    const cplx den = ik * specfun::hankel1(ell, kc) * specfun::hankel1_deriv(ell, ik) -
                     k * h_ik * specfun::hankel1_deriv(ell, kc);
    if (!(std::abs(den) > 1e-300) || !std::isfinite(std::abs(den))) {
        std::ostringstream os;
        os << "lambda_" << ell << "(" << k << "): denominator not representable";
        throw DomainError(os.str());
    }
    return -determinant(ell, kc) / den;
}

int default_truncation(double k) { return std::max(20, static_cast<int>(std::ceil(3.0 * k))); }

std::vector<cplx> lambda_table(double k, int truncation) {
    if (truncation <= 0) truncation = default_truncation(k);
    if (truncation >= specfun::max_order) throw InvalidArgument("series truncation exceeds the supported order");
    std::vector<cplx> lam(truncation + 1);
    for (int l = 0; l <= truncation; ++l) lam[l] = lambda(l, k);
    return lam;
}

SeriesValue farfield_from_table(std::span<const cplx> lambdas, double theta, double phi) {
    if (lambdas.empty()) throw InvalidArgument("empty coefficient table");
    const double a = theta - phi;
    cplx sum = lambdas[0];
    double peak = std::abs(lambdas[0]);
    for (std::size_t l = 1; l < lambdas.size(); ++l) {
        sum += 2.0 * lambdas[l] * std::cos(static_cast<double>(l) * a);
        peak = std::max(peak, std::abs(lambdas[l]));
    }
    SeriesValue v;
    v.value = -4.0 * kI * sum;
    v.tail_ok = std::abs(lambdas.back()) < 1e-14 * peak;
    return v;
}

SeriesValue farfield_analytic(double k, double theta, double phi, int truncation) {
    const std::vector<cplx> lam = lambda_table(k, truncation);
    return farfield_from_table(lam, theta, phi);
}

}  // namespace clamped_te::disk
