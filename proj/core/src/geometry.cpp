#include "clamped_te/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace clamped_te {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Trapezoid nodes for area and centroid integrals; plenty for the
// analytic curves in use (error decays geometrically).
constexpr int kIntegrationNodes = 512;

// Peanut radius r(t) = 0.5 sqrt(q), q = 3 cos^2 t + 1, and its derivatives.
struct Radial {
    double r, dr, ddr;
};

Radial peanut_radius(double t) {
    const double c = std::cos(t);
    const double q = 3.0 * c * c + 1.0;
    const double dq = -3.0 * std::sin(2.0 * t);
    const double ddq = -6.0 * std::cos(2.0 * t);
    const double sq = std::sqrt(q);
    return {0.5 * sq, 0.25 * dq / sq, 0.25 * (ddq / sq - 0.5 * dq * dq / (q * sq))};
}

}  // namespace

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

BoundaryCurve BoundaryCurve::make(CurveKind kind, const CurveParams& p) {
    switch (kind) {
        case CurveKind::circle:
            if (!(p.radius > 0.0)) throw InvalidArgument("circle radius must be positive");
            break;
        case CurveKind::ellipse:
            if (!(p.a > 0.0) || !(p.b > 0.0)) throw InvalidArgument("ellipse half-axes must be positive");
            break;
        case CurveKind::deformed_ellipse:
            if (!(p.eps > 0.0)) throw InvalidArgument("deformed ellipse needs eps > 0");
            break;
        case CurveKind::peanut:
            break;
    }
    return BoundaryCurve(kind, p);
}

BoundaryCurve BoundaryCurve::circle(double radius) {
    CurveParams p;
    p.radius = radius;
    return make(CurveKind::circle, p);
}

BoundaryCurve BoundaryCurve::ellipse(double a, double b) {
    CurveParams p;
    p.a = a;
    p.b = b;
    return make(CurveKind::ellipse, p);
}

BoundaryCurve BoundaryCurve::deformed_ellipse(double eps) {
    CurveParams p;
    p.eps = eps;
    return make(CurveKind::deformed_ellipse, p);
}

BoundaryCurve BoundaryCurve::peanut() { return make(CurveKind::peanut, CurveParams{}); }

Vec2 BoundaryCurve::position(double t) const {
    switch (kind_) {
        case CurveKind::circle:
            return {params_.radius * std::cos(t), params_.radius * std::sin(t)};
        case CurveKind::ellipse:
            return {params_.a * std::cos(t), params_.b * std::sin(t)};
        case CurveKind::deformed_ellipse:
            return {0.75 * std::cos(t) + params_.eps * std::cos(2.0 * t), std::sin(t)};
        case CurveKind::peanut: {
            const double r = peanut_radius(t).r;
            return {r * std::cos(t), r * std::sin(t)};
        }
    }
    return {};
}

Vec2 BoundaryCurve::first_derivative(double t) const {
    switch (kind_) {
        case CurveKind::circle:
            return {-params_.radius * std::sin(t), params_.radius * std::cos(t)};
        case CurveKind::ellipse:
            return {-params_.a * std::sin(t), params_.b * std::cos(t)};
        case CurveKind::deformed_ellipse:
            return {-0.75 * std::sin(t) - 2.0 * params_.eps * std::sin(2.0 * t), std::cos(t)};
        case CurveKind::peanut: {
            const Radial r = peanut_radius(t);
            const double c = std::cos(t), s = std::sin(t);
            return {r.dr * c - r.r * s, r.dr * s + r.r * c};
        }
    }
    return {};
}

Vec2 BoundaryCurve::second_derivative(double t) const {
    switch (kind_) {
        case CurveKind::circle:
            return {-params_.radius * std::cos(t), -params_.radius * std::sin(t)};
        case CurveKind::ellipse:
            return {-params_.a * std::cos(t), -params_.b * std::sin(t)};
        case CurveKind::deformed_ellipse:
            return {-0.75 * std::cos(t) - 4.0 * params_.eps * std::cos(2.0 * t), -std::sin(t)};
        case CurveKind::peanut: {
            const Radial r = peanut_radius(t);
            const double c = std::cos(t), s = std::sin(t);
            return {r.ddr * c - 2.0 * r.dr * s - r.r * c, r.ddr * s + 2.0 * r.dr * c - r.r * s};
        }
    }
    return {};
}

std::string BoundaryCurve::describe() const {
    std::ostringstream os;
    os << to_string(kind_);
    switch (kind_) {
        case CurveKind::circle: os << "(r=" << params_.radius << ")"; break;
        case CurveKind::ellipse: os << "(a=" << params_.a << ",b=" << params_.b << ")"; break;
        case CurveKind::deformed_ellipse: os << "(eps=" << params_.eps << ")"; break;
        case CurveKind::peanut: break;
    }
    return os.str();
}

std::string to_string(CurveKind kind) {
    switch (kind) {
        case CurveKind::circle: return "circle";
        case CurveKind::ellipse: return "ellipse";
        case CurveKind::deformed_ellipse: return "deformed";
        case CurveKind::peanut: return "peanut";
    }
    return "unknown";
}

CurveKind curve_kind_from_string(const std::string& name) {
    if (name == "circle" || name == "disk") return CurveKind::circle;
    if (name == "ellipse") return CurveKind::ellipse;
    if (name == "deformed" || name == "deformed_ellipse") return CurveKind::deformed_ellipse;
    if (name == "peanut") return CurveKind::peanut;
    throw InvalidArgument("unknown shape '" + name + "'");
}

double CollocationGrid::spacing() const { return kTwoPi / n; }

CollocationGrid make_grid(const BoundaryCurve& curve, int n) {
    if (n < 4 || n % 2 != 0) throw InvalidArgument("collocation grid needs an even node count >= 4");
    CollocationGrid g;
    g.n = n;
    g.t.resize(n);
    g.points.resize(n);
    g.normals.resize(n);
    g.jacobian.resize(n);
    g.curvature.resize(n);
    for (int i = 0; i < n; ++i) {
        const double t = kTwoPi * i / n;
        const Vec2 d1 = curve.first_derivative(t);
        const Vec2 d2 = curve.second_derivative(t);
        const double speed = norm(d1);
        if (!(speed > 0.0)) throw InvalidArgument("curve is not regular at t = " + std::to_string(t));
        g.t[i] = t;
        g.points[i] = curve.position(t);
        g.normals[i] = {d1.y / speed, -d1.x / speed};
        g.jacobian[i] = speed;
        g.curvature[i] = cross(d1, d2) / (speed * speed * speed);
    }
    return g;
}

double area(const BoundaryCurve& curve) {
    double sum = 0.0;
    for (int i = 0; i < kIntegrationNodes; ++i) {
        const double t = kTwoPi * i / kIntegrationNodes;
        sum += cross(curve.position(t), curve.first_derivative(t));
    }
    return 0.5 * sum * kTwoPi / kIntegrationNodes;
}

Vec2 centroid(const BoundaryCurve& curve) {
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < kIntegrationNodes; ++i) {
        const double t = kTwoPi * i / kIntegrationNodes;
        const Vec2 p = curve.position(t);
        const Vec2 d = curve.first_derivative(t);
        mx += p.x * p.x * d.y;
        my -= p.y * p.y * d.x;
    }
    const double h = kTwoPi / kIntegrationNodes;
    const double a2 = 2.0 * area(curve);
    return {mx * h / a2, my * h / a2};
}

int winding_number(const CollocationGrid& grid, Vec2 p) {
    int wn = 0;
    for (int i = 0; i < grid.n; ++i) {
        const Vec2 a = grid.points[i];
        const Vec2 b = grid.points[(i + 1) % grid.n];
        const double side = cross(b - a, p - a);
        if (a.y <= p.y) {
            if (b.y > p.y && side > 0.0) ++wn;
        } else if (b.y <= p.y && side < 0.0) {
            --wn;
        }
    }
    return wn;
}

bool contains(const CollocationGrid& grid, Vec2 p) { return winding_number(grid, p) != 0; }

std::vector<Vec2> sample_interior_points(const BoundaryCurve& curve, int count, std::uint64_t seed) {
    if (count < 0) throw InvalidArgument("interior point count must be non-negative");
    const CollocationGrid g = make_grid(curve, kIntegrationNodes);
    double xmin = std::numeric_limits<double>::max(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const Vec2& p : g.points) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const Vec2 c = centroid(curve);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(xmin, xmax), uy(ymin, ymax);
    std::vector<Vec2> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        const Vec2 p{ux(rng), uy(rng)};
        if (!contains(g, p)) continue;
        out.push_back(c + 0.9 * (p - c));
    }
    return out;
}

}  // namespace clamped_te
