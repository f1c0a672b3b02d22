#include "clamped_te/specfun.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace clamped_te::specfun {
namespace {

constexpr double kEps = 1e-17;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// Below this modulus the ascending series are used; above it J comes from
// Miller's algorithm and K (hence H) from Temme's continued fraction.
constexpr double kSeriesRadiusJ = 4.0;
constexpr double kSeriesRadiusK = 2.0;

[[noreturn]] void domain_fail(const char* fn, int order, cplx z, const char* why) {
    std::ostringstream os;
    os << fn << "(" << order << ", " << z << "): " << why;
    throw DomainError(os.str());
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_common(const char* fn, int order, cplx z) {
    if (!finite(z)) domain_fail(fn, order, z, "non-finite argument");
    if (order < 0 || order > max_order) domain_fail(fn, order, z, "order out of range");
    if (std::abs(z) > max_abs_arg) domain_fail(fn, order, z, "argument modulus too large");
}

void check_hankel(const char* fn, int order, cplx z) {
    check_common(fn, order, z);
    if (z == cplx{0.0, 0.0}) domain_fail(fn, order, z, "logarithmic singularity at z = 0");
    if (z.imag() < 0.0 && z.real() <= 0.0) domain_fail(fn, order, z, "argument in the closed third quadrant");
}

cplx checked(const char* fn, int order, cplx z, cplx value) {
    if (!finite(value)) domain_fail(fn, order, z, "result overflows double precision");
    return value;
}

Pair01 j01_series(cplx z) {
    const cplx t = 0.5 * z;
    const cplx q = -t * t;
    cplx term0{1.0, 0.0};
    cplx term1 = t;
    cplx s0 = term0;
    cplx s1 = term1;
    for (int m = 1; m < 200; ++m) {
        term0 *= q / (double(m) * double(m));
        term1 *= q / (double(m) * double(m + 1));
        s0 += term0;
        s1 += term1;
        if (std::abs(term0) <= kEps * std::abs(s0) && std::abs(term1) <= kEps * std::abs(s1)) break;
    }
    return {s0, s1};
}

// K_0 and K_1. T is double for real arguments or cplx for |arg w| < pi.
template <class T>
std::pair<T, T> k01(T w) {
    using std::abs;
    using std::exp;
    using std::log;
    using std::sqrt;
    if (abs(w) <= kSeriesRadiusK) {
        const T t = 0.5 * w;
        const T q = t * t;
        const T lg = log(t);
        T p0 = T(1.0);  // q^m / (m!)^2
        T p1 = T(1.0);  // q^m / (m! (m+1)!)
        T i0 = p0, i1 = p1;
        T s0 = T(0.0);                       // sum H_m q^m/(m!)^2
        T s1 = T(-2.0 * kEulerGamma + 1.0);  // sum (psi(m+1)+psi(m+2)) q^m/(m!(m+1)!)
        double h = 0.0;                      // harmonic number H_m
        for (int m = 1; m < 200; ++m) {
            p0 *= q / (double(m) * double(m));
            p1 *= q / (double(m) * double(m + 1));
            h += 1.0 / m;
            const double h_next = h + 1.0 / (m + 1);
            i0 += p0;
            i1 += p1;
            s0 += h * p0;
            s1 += (-2.0 * kEulerGamma + h + h_next) * p1;
            if (abs(p0) * (h + 1.0) <= kEps * abs(i0) && abs(p1) * (h_next + 1.0) <= kEps * abs(i1)) break;
        }
        const T k0 = -(lg + kEulerGamma) * i0 + s0;
        const T k1 = 1.0 / w + lg * (t * i1) - 0.25 * w * s1;
        return {k0, k1};
    }
    // Steed's evaluation of Temme's continued fraction (order 0, so mu = 0).
    T b = 2.0 * (1.0 + w);
    T d = 1.0 / b;
    T h = d;
    T delh = d;
    T q1 = T(0.0);
    T q2 = T(1.0);
    const double a1 = 0.25;
    T q = T(a1);
    T c = T(a1);
    double a = -a1;
    T s = 1.0 + q * delh;
    for (int i = 2; i < 100000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / double(i);
        const T qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const T dels = q * delh;
        s += dels;
        if (abs(dels) < 1e-17 * abs(s)) break;
    }
    h = a1 * h;
    const T k0 = sqrt(kPi / (2.0 * w)) * exp(-w) / s;
    const T k1 = k0 * (w + 0.5 - h) / w;
    return {k0, k1};
}

// Backward recurrence for J_0..J_nmax with Im z >= 0, normalised by
// exp(-iz) = J_0 + 2 sum_{m>=1} (-i)^m J_m.
void miller_upper(cplx z, std::span<cplx> out) {
    const int nmax = static_cast<int>(out.size()) - 1;
    const double m = std::max<double>(nmax, std::abs(z));
    int start = static_cast<int>(m + 30.0 + 12.0 * std::cbrt(m + 1.0));
    start += start % 2;
    std::vector<cplx> j(static_cast<std::size_t>(start) + 2, cplx{});
    j[start + 1] = 0.0;
    j[start] = 1e-300;
    for (int n = start; n >= 1; --n) {
        j[n - 1] = (2.0 * n / z) * j[n] - j[n + 1];
        if (std::abs(j[n - 1]) > 1e250) {
            for (int r = n - 1; r <= start + 1; ++r) j[r] *= 1e-250;
        }
    }
    // (-i)^m cycles through 1, -i, -1, i
    static constexpr cplx phase[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    cplx sum = j[0];
    for (int n = 1; n <= start; ++n) sum += 2.0 * phase[n % 4] * j[n];
    const cplx scale = std::exp(-kI * z) / sum;
    for (int n = 0; n <= nmax; ++n) out[n] = j[n] * scale;
}

void j_sequence_impl(cplx z, std::span<cplx> out) {
    if (out.empty()) return;
    if (z == cplx{0.0, 0.0}) {
        out[0] = 1.0;
        for (std::size_t n = 1; n < out.size(); ++n) out[n] = 0.0;
        return;
    }
    const bool flip = z.imag() < 0.0;
    const cplx zz = flip ? std::conj(z) : z;
    if (out.size() <= 2 && std::abs(zz) <= kSeriesRadiusJ) {
        const Pair01 p = j01_series(zz);
        out[0] = p.c0;
        if (out.size() == 2) out[1] = p.c1;
    } else {
        miller_upper(zz, out);
    }
    if (flip)
        for (auto& v : out) v = std::conj(v);
}

Pair01 h01_upper(cplx z) {
    // H^(1)_nu(z) = (2/pi) i^(-nu-1) K_nu(-iz), valid for -pi/2 < arg z <= pi
    const cplx w{z.imag(), -z.real()};
    const auto [k0, k1] = k01<cplx>(w);
    return {-kI * (2.0 / kPi) * k0, -(2.0 / kPi) * k1};
}

Pair01 h01_impl(cplx z) {
    if (z.imag() >= 0.0) return h01_upper(z);
    // Fourth quadrant: H^(1) = 2J - H^(2) and H^(2)(z) = conj(H^(1)(conj z)).
    const Pair01 h2 = h01_upper(std::conj(z));
    cplx j[2];
    j_sequence_impl(z, j);
    return {2.0 * j[0] - std::conj(h2.c0), 2.0 * j[1] - std::conj(h2.c1)};
}

}  // namespace

Pair01 bessel_j01(cplx z) {
    check_common("bessel_j", 1, z);
    cplx v[2];
    j_sequence_impl(z, v);
    return {v[0], v[1]};
}

Pair01 hankel1_01(cplx z) {
    check_hankel("hankel1", 1, z);
    const Pair01 h = h01_impl(z);
    if (!finite(h.c0) || !finite(h.c1)) domain_fail("hankel1", 1, z, "result overflows double precision");
    return h;
}

void bessel_j_sequence(cplx z, std::span<cplx> out) {
    if (out.empty()) return;
    check_common("bessel_j", static_cast<int>(out.size()) - 1, z);
    j_sequence_impl(z, out);
}

void hankel1_sequence(cplx z, std::span<cplx> out) {
    if (out.empty()) return;
    const int nmax = static_cast<int>(out.size()) - 1;
    check_hankel("hankel1", nmax, z);
    const Pair01 h = h01_impl(z);
    out[0] = h.c0;
    if (nmax >= 1) out[1] = h.c1;
    for (int n = 1; n < nmax; ++n) out[n + 1] = (2.0 * n / z) * out[n] - out[n - 1];
    for (int n = 0; n <= nmax; ++n) checked("hankel1", n, z, out[n]);
}

cplx bessel_j(int order, cplx z) {
    check_common("bessel_j", order, z);
    std::vector<cplx> v(static_cast<std::size_t>(order) + 1);
    j_sequence_impl(z, v);
    return checked("bessel_j", order, z, v[order]);
}

cplx hankel1(int order, cplx z) {
    check_hankel("hankel1", order, z);
    std::vector<cplx> v(static_cast<std::size_t>(order) + 1);
    hankel1_sequence(z, v);
    return v[order];
}

cplx bessel_y(int order, cplx z) {
    return (hankel1(order, z) - bessel_j(order, z)) / kI;
}

cplx bessel_j_deriv(int order, cplx z) {
    check_common("bessel_j_deriv", order, z);
    std::vector<cplx> v(static_cast<std::size_t>(order) + 2);
    j_sequence_impl(z, v);
    return order == 0 ? -v[1] : 0.5 * (v[order - 1] - v[order + 1]);
}

cplx hankel1_deriv(int order, cplx z) {
    check_hankel("hankel1_deriv", order, z);
    std::vector<cplx> v(static_cast<std::size_t>(order) + 2);
    hankel1_sequence(z, v);
    return order == 0 ? -v[1] : 0.5 * (v[order - 1] - v[order + 1]);
}

double bessel_k(int order, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) domain_fail("bessel_k", order, x, "requires x > 0");
    if (order < 0 || order > max_order) domain_fail("bessel_k", order, x, "order out of range");
    if (x > max_abs_arg) domain_fail("bessel_k", order, x, "argument too large");
    auto [km, k] = k01<double>(x);
    if (order == 0) return km;
    for (int n = 1; n < order; ++n) {
        const double next = km + (2.0 * n / x) * k;
        km = k;
        k = next;
    }
    if (!std::isfinite(k)) domain_fail("bessel_k", order, x, "result overflows double precision");
    return k;
}

}  // namespace clamped_te::specfun
