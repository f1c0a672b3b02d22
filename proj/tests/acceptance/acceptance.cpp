// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "clamped_te/beyn.hpp"
#include "clamped_te/bie.hpp"
#include "clamped_te/disk.hpp"
#include "clamped_te/recover.hpp"
#include "clamped_te/scatter.hpp"
#include "clamped_te/specfun.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace clamped_te;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %s (%.1fs)\n      %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), seconds_since(t0),
                o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

// Every eigenpair accepted by the BEM searches, for the property checks.
std::vector<NepEigenpair> all_accepted;

std::vector<NepEigenpair> search(const BoundaryCurve& c, double kmin, double kmax) {
    auto pairs = transmission_eigenvalues(c, kmin, kmax);
    all_accepted.insert(all_accepted.end(), pairs.begin(), pairs.end());
    return pairs;
}

std::vector<double> real_parts(const std::vector<NepEigenpair>& pairs) {
    std::vector<double> k;
    for (const auto& p : pairs) k.push_back(p.k.real());
    std::sort(k.begin(), k.end());
    return k;
}

// First `count` eigenvalues against a reference row, each within tol.
Outcome compare_first(const std::string& label, const std::vector<double>& got, const std::vector<double>& ref,
                      double tol) {
    Outcome o;
    std::ostringstream os;
    os << label << ":";
    if (got.size() < ref.size()) {
        o.pass = false;
        os << " only " << got.size() << " eigenvalues found";
    }
    for (std::size_t i = 0; i < ref.size() && i < got.size(); ++i) {
        const double err = std::abs(got[i] - ref[i]);
        if (!(err <= tol)) o.pass = false;
        os << ' ' << fmt("%.5f", got[i]) << "(" << fmt("%.0e", err) << ")";
    }
    o.detail = os.str();
    return o;
}

double first_disk_eigenvalue(int nodes) {
    const NepOperator op(make_grid(BoundaryCurve::circle(1.0), nodes));
    ContourSpec c;
    c.center = 1.6;
    c.radius = 0.2;
    const auto p = beyn_solve(op.as_problem(), c);
    if (p.size() != 1) throw std::runtime_error("expected one eigenvalue near 1.6");
    return p[0].k.real();
}

std::vector<double> k1;  // disk, peanut, ellipse(1, 0.5)

}  // namespace

int main() {
    const auto start = Clock::now();

    report(1, "disk determinant roots, l <= 2 on [1,5], within 1e-9, under 1 s", [] {
        const std::array<double, 3> ref{1.6146349995639885, 3.0516335028155406, 4.3645169097857216};
        const auto t0 = Clock::now();
        const auto roots = disk::te_roots(2, 1.0, 5.0);
        const double dt = seconds_since(t0);
        Outcome o;
        std::ostringstream os;
        for (double r : ref) {
            double best = 1e300;
            for (const auto& x : roots) best = std::min(best, std::abs(x.k - r));
            if (!(best <= 1e-9)) o.pass = false;
            os << fmt("%.16f", r) << " err " << fmt("%.1e", best) << "; ";
        }
        if (!(dt < 1.0)) o.pass = false;
        os << "roots returned " << roots.size() << " (includes the second l=0 zero 4.7338), time "
           << fmt("%.3f", dt) << " s";
        o.detail = os.str();
        return o;
    });

    report(2, "BEM + contour sweep, unit disk, 120 nodes: values and multiplicities within 5e-5, under 5 min", [] {
        const auto t0 = Clock::now();
        const auto pairs = search(BoundaryCurve::circle(1.0), 1.0, 5.0);
        const double dt = seconds_since(t0);
        const std::array<std::pair<double, int>, 3> ref{{{1.61464, 1}, {3.05164, 2}, {4.36453, 2}}};
        Outcome o;
        std::ostringstream os;
        for (const auto& [k, mult] : ref) {
            int n = 0;
            double worst = 0.0;
            for (const auto& p : pairs)
                if (std::abs(p.k.real() - k) < 5e-5) {
                    ++n;
                    worst = std::max(worst, std::abs(p.k.real() - k));
                }
            if (n != mult) o.pass = false;
            os << fmt("%.5f", k) << " x" << n << " (err " << fmt("%.1e", worst) << "); ";
        }
        if (!(dt < 300.0)) o.pass = false;
        os << "all:";
        for (double k : real_parts(pairs)) os << ' ' << fmt("%.6f", k);
        os << "; time " << fmt("%.1f", dt) << " s";
        o.detail = os.str();
        if (!pairs.empty()) k1.push_back(real_parts(pairs).front());
        return o;
    });

    report(3, "ellipses (1,b), b = 0.9..0.5: first four eigenvalues within 1e-3", [] {
        const std::array<std::pair<double, std::array<double, 4>>, 5> table{{
            {0.9, {1.70401, 3.13673, 3.30629, 4.54060}},
            {0.8, {1.81492, 3.24382, 3.62554, 4.67571}},
            {0.7, {1.95646, 3.38233, 4.03737, 4.82125}},
            {0.6, {2.14377, 3.56787, 4.58853, 5.00599}},
            {0.5, {2.40418, 3.82845, 5.26231, 5.36324}},
        }};
        Outcome o;
        std::ostringstream os;
        for (const auto& [b, ref] : table) {
            const auto got = real_parts(search(BoundaryCurve::ellipse(1.0, b), 1.0, 5.5));
            const Outcome r = compare_first(fmt("b=%.1f", b), got, {ref.begin(), ref.end()}, 1e-3);
            o.pass = o.pass && r.pass;
            os << r.detail << "\n      ";
            if (b == 0.5 && !got.empty()) k1.push_back(got.front());
        }
        o.detail = os.str();
        return o;
    });

    report(4, "deformed ellipses eps = 0.1, 0.2, 0.3 within 1e-3; k1,k2,k4 increase and k3 decreases in eps", [] {
        const std::array<std::pair<double, std::array<double, 4>>, 3> table{{
            {0.1, {1.88515, 3.31667, 3.80574, 4.77845}},
            {0.2, {1.89716, 3.34174, 3.77859, 4.86338}},
            {0.3, {1.91665, 3.38373, 3.75151, 4.96416}},
        }};
        Outcome o;
        std::ostringstream os;
        std::vector<std::vector<double>> rows;
        for (const auto& [eps, ref] : table) {
            const auto got = real_parts(search(BoundaryCurve::deformed_ellipse(eps), 1.0, 5.2));
            const Outcome r = compare_first(fmt("eps=%.1f", eps), got, {ref.begin(), ref.end()}, 1e-3);
            o.pass = o.pass && r.pass;
            os << r.detail << "\n      ";
            rows.push_back(got);
        }
        bool order = rows.size() == 3;
        for (const auto& r : rows) order = order && r.size() >= 4;
        if (order) {
            for (int j : {0, 1, 3}) order = order && rows[0][j] < rows[1][j] && rows[1][j] < rows[2][j];
            order = order && rows[0][2] > rows[1][2] && rows[1][2] > rows[2][2];
        }
        o.pass = o.pass && order;
        os << "orderings " << (order ? "reproduced" : "NOT reproduced");
        o.detail = os.str();
        return o;
    });

    report(5, "peanut: first four eigenvalues within 1e-3", [] {
        const auto got = real_parts(search(BoundaryCurve::peanut(), 1.0, 5.2));
        if (!got.empty()) k1.insert(k1.begin() + std::min<std::size_t>(1, k1.size()), got.front());
        return compare_first("peanut", got, {2.13093, 3.41900, 4.70289, 4.89266}, 1e-3);
    });

    report(6, "first eigenvalue ordering: disk < peanut < ellipse(1,0.5)", [] {
        Outcome o;
        o.pass = k1.size() == 3 && k1[0] < k1[1] && k1[1] < k1[2];
        std::ostringstream os;
        for (double k : k1) os << fmt("%.5f", k) << ' ';
        o.detail = os.str();
        return o;
    });

    report(7, "min |f_l(is)| over l <= 5, s in [0.05, 5] (step 1e-3) is positive", [] {
        std::vector<double> s;
        for (int i = 0; i <= 4950; ++i) s.push_back(0.05 + 1e-3 * i);
        double m = 1e300;
        for (int l = 0; l <= 5; ++l)
            for (double v : disk::imag_axis_scan(l, s)) m = std::min(m, v);
        return Outcome{m > 0.0, "minimum " + fmt("%.6e", m)};
    });

    report(8, "disk far-field matrix at k = 2 vs analytic series, entrywise relative error below 1e-6", [] {
        const FarFieldMatrix f = farfield_matrix(BoundaryCurve::circle(1.0), 2.0, 64, 120);
        const auto lam = disk::lambda_table(2.0, 0);
        double worst = 0.0;
        for (int i = 0; i < 64; ++i)
            for (int j = 0; j < 64; ++j) {
                const auto ref = disk::farfield_from_table(lam, 2 * std::numbers::pi * i / 64,
                                                           2 * std::numbers::pi * j / 64);
                worst = std::max(worst, std::abs(f.entries(i, j) - ref.value) / std::abs(ref.value));
            }
        return Outcome{worst < 1e-6, "max relative error " + fmt("%.2e", worst)};
    });

    report(9, "recovery from noisy data (delta 0.02, 150 k on [1,5], 20 points): disk within 0.054, peanut within 0.1",
           [] {
               const auto t0 = Clock::now();
               const auto grid = linspace(1.0, 5.0, 150);
               Outcome o;
               std::ostringstream os;
               auto check = [&](const BoundaryCurve& c, const std::vector<double>& ref, double tol) {
                   const RecoverySweep s = sweep(c, grid, 0.02);
                   os << c.describe() << " peaks:";
                   for (const auto& p : s.peaks) os << ' ' << fmt("%.4f", p.k);
                   os << " | errors:";
                   for (double r : ref) {
                       double best = 1e300;
                       for (const auto& p : s.peaks) best = std::min(best, std::abs(p.k - r));
                       if (!(best <= tol)) o.pass = false;
                       os << ' ' << fmt("%.4f", best);
                   }
                   std::size_t missing = std::count(s.missing.begin(), s.missing.end(), true);
                   if (missing) os << " (" << missing << " k missing)";
                   os << "\n      ";
               };
               check(BoundaryCurve::circle(1.0), {1.61464, 3.05164, 4.36453}, 0.054);
               check(BoundaryCurve::peanut(), {2.13093, 3.41900, 4.70289, 4.89266}, 0.1);
               const double dt = seconds_since(t0);
               if (!(dt < 1800.0)) o.pass = false;
               os << "time " << fmt("%.1f", dt) << " s";
               o.detail = os.str();
               return o;
           });

    report(10, "properties: special functions, diagonal NEP, realness and residuals, spectral convergence", [] {
        Outcome o;
        std::ostringstream os;

        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> ux(0.1, 20.0);
        double wr = 0.0;
        for (int t = 0; t < 50; ++t) {
            const double x = ux(rng);
            for (int nu = 0; nu <= 10; ++nu) {
                const cplx j = specfun::bessel_j(nu, x), y = specfun::bessel_y(nu, x);
                const cplx jp = specfun::bessel_j_deriv(nu, x);
                const cplx yp = (specfun::hankel1_deriv(nu, x) - jp) / cplx(0.0, 1.0);
                wr = std::max(wr, std::abs((j * yp - jp * y).real() - 2.0 / (std::numbers::pi * x)));
            }
        }
        double kid = 0.0;
        for (int nu = 0; nu <= 10; ++nu)
            for (double x = 0.1; x <= 10.0; x += 0.1) {
                const cplx h = specfun::hankel1(nu, cplx(0.0, x));
                const cplx ref = 2.0 / std::numbers::pi * std::pow(cplx(0.0, 1.0), -nu - 1) * specfun::bessel_k(nu, x);
                kid = std::max(kid, std::abs(h - ref) / std::abs(ref));
            }
        const bool sf_ok = wr < 1e-10 && kid < 1e-10;
        os << "Wronskian " << fmt("%.1e", wr) << ", K identity " << fmt("%.1e", kid) << "; ";

        const std::vector<cplx> roots{2.0, 2.2, 2.2, 2.45};
        const NepProblem diag{6, [&](cplx z) {
                                  Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(6, 6);
                                  for (std::size_t i = 0; i < roots.size(); ++i) t(i, i) = z - roots[i];
                                  return t;
                              }};
        ContourSpec c;
        c.center = 2.2;
        c.n_probe = 6;
        c.radius = 0.4;
        const auto dp = beyn_solve(diag, c);
        double derr = dp.size() == roots.size() ? 0.0 : 1.0;
        for (std::size_t i = 0; i < dp.size() && i < roots.size(); ++i)
            derr = std::max(derr, std::abs(dp[i].k - roots[i]));
        const bool diag_ok = derr < 1e-12;
        os << "diagonal NEP error " << fmt("%.1e", derr) << "; ";

        double im = 0.0, res = 0.0;
        for (const auto& p : all_accepted) {
            im = std::max(im, std::abs(p.k.imag()));
            res = std::max(res, p.residual);
        }
        const bool acc_ok = !all_accepted.empty() && im < 1e-6 && res < 1e-6;
        os << all_accepted.size() << " accepted pairs, max |Im k| " << fmt("%.1e", im) << ", max residual "
           << fmt("%.1e", res) << "; ";

        const double conv = std::abs(first_disk_eigenvalue(60) - first_disk_eigenvalue(120));
        const bool conv_ok = conv < 1e-6;
        os << "|k1(60) - k1(120)| " << fmt("%.1e", conv);

        o.pass = sf_ok && diag_ok && acc_ok && conv_ok;
        o.detail = os.str();
        return o;
    });

    std::printf("%d of 10 criteria failed; total time %.1f s\n", failures, seconds_since(start));
    return failures == 0 ? 0 : 1;
}
