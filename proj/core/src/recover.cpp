#include "clamped_te/recover.hpp"

#include "clamped_te/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace clamped_te {
namespace {

constexpr cplx kI{0.0, 1.0};
constexpr int kBisectionSteps = 80;

double average_norm(const FarFieldSolver& s, const std::vector<Vec2>& z_points) {
    double sum = 0.0;
    for (const Vec2& z : z_points) sum += s.solve(s.rhs(z)).g.norm();
    return sum / static_cast<double>(z_points.size());
}

}  // namespace

FarFieldSolver::FarFieldSolver(const FarFieldMatrix& f) : f_(&f), delta_(f.noise_delta) {
    if (f.entries.size() == 0 || f.entries.rows() != f.entries.cols())
        throw InvalidArgument("far-field matrix must be square and non-empty");
    Eigen::BDCSVD<CMatrix> svd(f.entries, Eigen::ComputeFullU | Eigen::ComputeFullV);
    u_ = svd.matrixU();
    v_ = svd.matrixV();
    sigma_ = svd.singularValues();
}

CVector FarFieldSolver::rhs(Vec2 z) const {
    const std::vector<Vec2> dirs = f_->directions();
    CVector phi(f_->n_dir);
    for (int i = 0; i < f_->n_dir; ++i) phi(i) = std::exp(-kI * (f_->k * dot(dirs[i], z)));
    return phi;
}

double FarFieldSolver::discrepancy(const CVector& phi, double alpha) const {
    const CVector beta = u_.adjoint() * phi;
    double res = 0.0, gn = 0.0;
    for (Eigen::Index i = 0; i < sigma_.size(); ++i) {
        const double s2 = sigma_(i) * sigma_(i);
        const double b2 = std::norm(beta(i));
        const double r = alpha / (s2 + alpha);
        res += r * r * b2;
        gn += s2 / ((s2 + alpha) * (s2 + alpha)) * b2;
    }
    const double fn = sigma_(0);
    return res - delta_ * delta_ * fn * fn * gn;
}

TikhonovResult FarFieldSolver::solve(const CVector& phi) const {
    if (phi.size() != u_.rows()) throw InvalidArgument("right-hand side length does not match F");
    double lo = kLogAlphaMin, hi = kLogAlphaMax;
    double log_alpha;
    if (discrepancy(phi, std::pow(10.0, lo)) >= 0.0) {
        log_alpha = lo;
    } else if (discrepancy(phi, std::pow(10.0, hi)) <= 0.0) {
        log_alpha = hi;
    } else {
        for (int it = 0; it < kBisectionSteps; ++it) {
            const double mid = 0.5 * (lo + hi);
            (discrepancy(phi, std::pow(10.0, mid)) < 0.0 ? lo : hi) = mid;
        }
        log_alpha = 0.5 * (lo + hi);
    }
    TikhonovResult r;
    r.alpha = std::pow(10.0, log_alpha);
    CVector coef = u_.adjoint() * phi;
    for (Eigen::Index i = 0; i < sigma_.size(); ++i) coef(i) *= sigma_(i) / (sigma_(i) * sigma_(i) + r.alpha);
    r.g = v_ * coef;
    return r;
}

TikhonovResult tikhonov_morozov(const FarFieldMatrix& f, Vec2 z) {
    const FarFieldSolver s(f);
    return s.solve(s.rhs(z));
}

std::vector<double> linspace(double a, double b, int count) {
    if (count < 2) throw InvalidArgument("linspace needs at least two points");
    std::vector<double> x(count);
    for (int i = 0; i < count; ++i) x[i] = a + (b - a) * i / (count - 1);
    x.back() = b;
    return x;
}

std::vector<Peak> detect_peaks(const std::vector<double>& k, const std::vector<double>& v, double factor) {
    if (k.size() != v.size()) throw InvalidArgument("grid and values differ in length");
    std::vector<double> finite;
    for (double x : v)
        if (std::isfinite(x)) finite.push_back(x);
    if (finite.size() < 3) return {};
    std::nth_element(finite.begin(), finite.begin() + finite.size() / 2, finite.end());
    double median = finite[finite.size() / 2];
    if (finite.size() % 2 == 0) {
        const double lower = *std::max_element(finite.begin(), finite.begin() + finite.size() / 2);
        median = 0.5 * (median + lower);
    }

    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const double y0 = v[i - 1], y1 = v[i], y2 = v[i + 1];
        if (!std::isfinite(y0) || !std::isfinite(y1) || !std::isfinite(y2)) continue;
        if (!(y1 > y0 && y1 > y2 && y1 > factor * median)) continue;
        const double x0 = k[i - 1], x1 = k[i], x2 = k[i + 1];
        const double d0 = (y1 - y0) / (x1 - x0);
        const double d1 = (y2 - y1) / (x2 - x1);
        const double curv = (d1 - d0) / (x2 - x0);
        double xv = x1;
        if (curv < 0.0) xv = 0.5 * (x0 + x1) - d0 / (2.0 * curv);
        xv = std::clamp(xv, x0, x2);
        peaks.push_back({xv, i, median > 0.0 ? y1 / median : std::numeric_limits<double>::infinity()});
    }
    return peaks;
}

RecoverySweep sweep(const BoundaryCurve& curve, const std::vector<double>& k_grid, double delta,
                    const SweepOptions& o) {
    if (k_grid.empty() || !std::is_sorted(k_grid.begin(), k_grid.end()))
        throw InvalidArgument("k grid must be non-empty and ascending");
    if (o.n_z < 1) throw InvalidArgument("need at least one interior point");
    RecoverySweep s;
    s.k_grid = k_grid;
    s.delta = delta;
    s.seed = o.seed;
    s.z_points = sample_interior_points(curve, o.n_z, o.seed);
    s.g_norm_avg.assign(k_grid.size(), std::numeric_limits<double>::quiet_NaN());
    s.missing.assign(k_grid.size(), true);
    std::vector<char> ok(k_grid.size(), 0);
    parallel_for(k_grid.size(), [&](std::size_t i) {
        try {
            const FarFieldMatrix f = add_noise(farfield_matrix(curve, k_grid[i], o.n_dir, o.n_nodes), delta, o.seed);
            s.g_norm_avg[i] = average_norm(FarFieldSolver(f), s.z_points);
            ok[i] = 1;
        } catch (const ConditioningError&) {
        }
    });
    for (std::size_t i = 0; i < ok.size(); ++i) s.missing[i] = !ok[i];
    s.peaks = detect_peaks(s.k_grid, s.g_norm_avg, o.peak_factor);
    return s;
}

RecoverySweep sweep_from_data(const std::vector<FarFieldMatrix>& data, const std::vector<Vec2>& z_points,
                              double peak_factor) {
    if (data.empty() || z_points.empty()) throw InvalidArgument("need far-field data and interior points");
    RecoverySweep s;
    s.z_points = z_points;
    s.delta = data.front().noise_delta;
    s.seed = data.front().seed;
    s.k_grid.resize(data.size());
    s.g_norm_avg.resize(data.size());
    s.missing.assign(data.size(), false);
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (i > 0 && !(data[i].k > data[i - 1].k)) throw InvalidArgument("far-field data must be sorted by ascending k");
        s.k_grid[i] = data[i].k;
    }
    parallel_for(data.size(), [&](std::size_t i) { s.g_norm_avg[i] = average_norm(FarFieldSolver(data[i]), z_points); });
    s.peaks = detect_peaks(s.k_grid, s.g_norm_avg, peak_factor);
    return s;
}

}  // namespace clamped_te
