#pragma once

// Integer-order Bessel, Hankel and modified Bessel functions.
//
// Complex arguments are supported on the closed upper half plane and the open
// right half plane, which covers every argument produced by the boundary
// operators (k*r and i*k*r for k near the positive real axis). Points on the
// negative real axis are evaluated as limits from above (arg z = pi).

#include <complex>
#include <span>
#include <stdexcept>
#include <string>

namespace clamped_te {

using cplx = std::complex<double>;

/// Raised when an argument or order lies outside the supported range.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

namespace specfun {

inline constexpr int max_order = 60;
inline constexpr double max_abs_arg = 200.0;

cplx bessel_j(int order, cplx z);
cplx bessel_y(int order, cplx z);
cplx hankel1(int order, cplx z);
cplx bessel_j_deriv(int order, cplx z);
cplx hankel1_deriv(int order, cplx z);

/// Modified Bessel function of the second kind for real x > 0.
double bessel_k(int order, double x);

/// J_0..J_{out.size()-1}(z) in one backward sweep.
void bessel_j_sequence(cplx z, std::span<cplx> out);
/// H^(1)_0..H^(1)_{out.size()-1}(z) by upward recurrence.
void hankel1_sequence(cplx z, std::span<cplx> out);

/// Orders 0 and 1 together; this is the hot path of kernel assembly.
struct Pair01 {
    cplx c0;
    cplx c1;
};
Pair01 bessel_j01(cplx z);
Pair01 hankel1_01(cplx z);

}  // namespace specfun
}  // namespace clamped_te
