#include "clamped_te/bie.hpp"

#include "clamped_te/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace clamped_te {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr cplx kI{0.0, 1.0};

// Weights R_d of the product rule for int ln(4 sin^2((t - s)/2)) f(s) ds
// with 2m equispaced nodes, indexed by the node offset d = |i - j|.
std::vector<double> log_weights(int n) {
    const int m = n / 2;
    std::vector<double> w(n);
    for (int d = 0; d < n; ++d) {
        double sum = 0.0;
        for (int p = 1; p < m; ++p) sum += std::cos(p * d * kPi / m) / p;
        w[d] = -2.0 * kPi / m * sum - kPi / (double(m) * m) * (d % 2 == 0 ? 1.0 : -1.0);
    }
    return w;
}

}  // namespace

cplx fundamental_solution(cplx tau, Vec2 x, Vec2 y) {
    return 0.25 * kI * specfun::hankel1_01(tau * norm(x - y)).c0;
}

LayerOperators assemble_layers(const CollocationGrid& g, cplx tau) {
    if (tau == cplx{0.0, 0.0}) throw InvalidArgument("wavenumber must be nonzero");
    if (g.n < 4 || g.n % 2 != 0) throw InvalidArgument("grid needs an even node count");
    const int n = g.n;
    const double h = g.spacing();
    const std::vector<double> rw = log_weights(n);
    LayerOperators ops{CMatrix(n, n), CMatrix(n, n)};
    CMatrix& s = ops.single;
    CMatrix& d = ops.normal_deriv;

    const cplx s_diag_const = 0.25 * kI - kEulerGamma / (2.0 * kPi);
    for (int i = 0; i < n; ++i) {
        const double jac = g.jacobian[i];
        const cplx smooth = (s_diag_const - std::log(0.5 * tau * jac) / (2.0 * kPi)) * jac;
        s(i, i) = rw[0] * (-jac / (4.0 * kPi)) + h * smooth;
        d(i, i) = h * (-g.curvature[i] * jac / (4.0 * kPi));
    }

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Vec2 diff = g.points[i] - g.points[j];
            const double r = norm(diff);
            const cplx z = tau * r;
            const specfun::Pair01 hk = specfun::hankel1_01(z);
            const specfun::Pair01 jk = specfun::bessel_j01(z);
            const double sn = std::sin(0.5 * (g.t[i] - g.t[j]));
            const double lg = std::log(4.0 * sn * sn);
            const double rdj = rw[j - i];

            // single layer: M = (i/4) H0 jac, log part M1 = -J0 jac / (4 pi)
            const cplx m_full = 0.25 * kI * hk.c0;
            const cplx m_log = -jk.c0 / (4.0 * kPi);
            const cplx s_entry = rdj * m_log + h * (m_full - m_log * lg);
            s(i, j) = s_entry * g.jacobian[j];
            s(j, i) = s_entry * g.jacobian[i];

            // normal derivative at x: L = -(i tau / 4) H1 (x - y).nu_x / r jac,
            // log part L1 = tau / (4 pi) J1 (x - y).nu_x / r jac
            const cplx l_full = -0.25 * kI * tau * hk.c1 / r;
            const cplx l_log = tau * jk.c1 / (4.0 * kPi * r);
            const cplx d_entry = rdj * l_log + h * (l_full - l_log * lg);
            d(i, j) = d_entry * (dot(diff, g.normals[i]) * g.jacobian[j]);
            d(j, i) = d_entry * (-dot(diff, g.normals[j]) * g.jacobian[i]);
        }
    }
    return ops;
}

CMatrix assemble_single_layer(const CollocationGrid& grid, cplx tau) { return assemble_layers(grid, tau).single; }

CMatrix assemble_normal_deriv(const CollocationGrid& grid, cplx tau) {
    return assemble_layers(grid, tau).normal_deriv;
}

cplx single_layer_potential(const CollocationGrid& g, cplx tau, const CVector& density, Vec2 x) {
    cplx sum{0.0, 0.0};
    for (int j = 0; j < g.n; ++j) sum += fundamental_solution(tau, x, g.points[j]) * density(j) * g.jacobian[j];
    return sum * g.spacing();
}

NepOperator::NepOperator(CollocationGrid grid) : grid_(std::move(grid)) {}

NepEvaluation NepOperator::evaluate(cplx k) const {
    const int n = grid_.n;
    const LayerOperators mod = assemble_layers(grid_, kI * k);
    const LayerOperators hel = assemble_layers(grid_, k);
    const CMatrix id = CMatrix::Identity(n, n);

    // A S^{-1} = (S^{-T} A^T)^T, so one LU of S^T per wavenumber.
    Eigen::PartialPivLU<CMatrix> lu_mod(mod.single.transpose());
    Eigen::PartialPivLU<CMatrix> lu_hel(hel.single.transpose());
    NepEvaluation e;
    e.rcond_modified = lu_mod.rcond();
    e.rcond_helmholtz = lu_hel.rcond();
    e.ill_conditioned = !(e.rcond_modified > kConditioningWarning) || !(e.rcond_helmholtz > kConditioningWarning);
    const CMatrix a = mod.normal_deriv - 0.5 * id;
    const CMatrix b = hel.normal_deriv + 0.5 * id;
    e.t = lu_mod.solve(a.transpose()).transpose() - lu_hel.solve(b.transpose()).transpose();
    return e;
}

NepProblem NepOperator::as_problem() const {
    return NepProblem{dim(), [this](cplx k) { return evaluate(k).t; }};
}

double relative_sigma_min(const CMatrix& t) {
    const Eigen::VectorXd sv = Eigen::BDCSVD<CMatrix>(t).singularValues();
    return sv(sv.size() - 1) / sv(0);
}

std::vector<FieldSample> eigenfunction_field(const CollocationGrid& g, double k, const CVector& v_boundary,
                                             std::span<const Vec2> eval_points) {
    if (v_boundary.size() != g.n) throw InvalidArgument("boundary trace length does not match the grid");
    const cplx tau_mod = kI * k;
    const cplx tau_hel{k, 0.0};
    const CVector phi = assemble_single_layer(g, tau_mod).partialPivLu().solve(-v_boundary);
    const CVector psi = assemble_single_layer(g, tau_hel).partialPivLu().solve(v_boundary);

    const double max_jac = *std::max_element(g.jacobian.begin(), g.jacobian.end());
    const double min_dist = g.spacing() * max_jac;
    std::vector<FieldSample> out;
    out.reserve(eval_points.size());
    for (const Vec2& p : eval_points) {
        FieldSample f;
        f.point = p;
        f.inside = contains(g, p);
        double dist = std::numeric_limits<double>::max();
        for (const Vec2& q : g.points) dist = std::min(dist, norm(p - q));
        f.too_close = dist < min_dist;
        if (!f.too_close)
            f.value = f.inside ? single_layer_potential(g, tau_hel, psi, p) : single_layer_potential(g, tau_mod, phi, p);
        out.push_back(f);
    }
    return out;
}

std::vector<NepEigenpair> transmission_eigenvalues(const BoundaryCurve& curve, double k_min, double k_max,
                                                   const EigenSearchOptions& o) {
    const NepOperator op(make_grid(curve, o.nodes));
    EigenpairFilter accept;
    std::optional<NepOperator> check;
    if (o.check_extra_nodes > 0) {
        check.emplace(make_grid(curve, o.nodes + o.check_extra_nodes));
        accept = [&](const NepEigenpair& p) { return relative_sigma_min(check->evaluate(p.k).t) < o.check_tol; };
    }
    return sweep_contours(op.as_problem(), k_min, k_max, o.radius, o.overlap, o.contour, accept);
}

}  // namespace clamped_te
