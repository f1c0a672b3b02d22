#pragma once

// Analytic closed boundary curves and their collocation grids.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace clamped_te {

class InvalidArgument : public std::invalid_argument {
public:
    explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);

enum class CurveKind { circle, ellipse, deformed_ellipse, peanut };

/// Shape parameters; which fields are read depends on the kind.
///   circle:           radius
///   ellipse:          a (x half-axis), b (y half-axis)
///   deformed_ellipse: eps in (0.75 cos t + eps cos 2t, sin t)
///   peanut:           none, 0.5 sqrt(3 cos^2 t + 1) (cos t, sin t)
struct CurveParams {
    double radius = 1.0;
    double a = 1.0;
    double b = 1.0;
    double eps = 0.1;
};

/// Counterclockwise analytic parametrisation x(t), t in [0, 2 pi).
class BoundaryCurve {
public:
    static BoundaryCurve make(CurveKind kind, const CurveParams& params);
    static BoundaryCurve circle(double radius);
    static BoundaryCurve ellipse(double a, double b);
    static BoundaryCurve deformed_ellipse(double eps);
    static BoundaryCurve peanut();

    Vec2 position(double t) const;
    Vec2 first_derivative(double t) const;
    Vec2 second_derivative(double t) const;

    CurveKind kind() const { return kind_; }
    const CurveParams& params() const { return params_; }

    /// Short identifier such as "ellipse(a=1,b=0.8)".
    std::string describe() const;

private:
    BoundaryCurve(CurveKind kind, CurveParams params) : kind_(kind), params_(params) {}

    CurveKind kind_;
    CurveParams params_;
};

std::string to_string(CurveKind kind);
CurveKind curve_kind_from_string(const std::string& name);

/// Equispaced samples t_i = 2 pi i / n of a curve with everything the
/// boundary operators need.
struct CollocationGrid {
    int n = 0;
    std::vector<double> t;
    std::vector<Vec2> points;
    std::vector<Vec2> normals;       // unit outward
    std::vector<double> jacobian;    // |x'(t_i)|
    std::vector<double> curvature;   // signed, 1/r on a ccw circle

    double spacing() const;  // 2 pi / n
};

/// n must be even and at least 4.
CollocationGrid make_grid(const BoundaryCurve& curve, int n);

/// Enclosed area by the trapezoid rule on the line integral 1/2 (x y' - y x').
double area(const BoundaryCurve& curve);

/// Area centroid of the enclosed region.
Vec2 centroid(const BoundaryCurve& curve);

/// Winding number of the sampled polygon around p (nonzero means inside).
int winding_number(const CollocationGrid& grid, Vec2 p);
bool contains(const CollocationGrid& grid, Vec2 p);

/// Uniform rejection samples from the bounding box that fall inside the
/// curve, pulled towards the centroid by a factor 0.9.
std::vector<Vec2> sample_interior_points(const BoundaryCurve& curve, int count, std::uint64_t seed);

}  // namespace clamped_te
