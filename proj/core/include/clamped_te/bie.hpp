#pragma once

// Nystrom discretisation of the single-layer operator S_tau and the normal
// derivative of the single layer D^T_tau on an analytic closed curve, the
// clamped transmission operator
//
//   T(k) = (-1/2 I + D^T_{ik}) S_{ik}^{-1} - (1/2 I + D^T_k) S_k^{-1},
//
// and off-boundary evaluation of the layer potentials.
//
// Both operators act on nodal values of the density; the logarithmic part of
// the kernel is integrated with trigonometric (Kussmaul-Martensen) weights
// and the remainder with the trapezoid rule.

#include "clamped_te/beyn.hpp"
#include "clamped_te/geometry.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace clamped_te {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Fundamental solution (i/4) H0(tau |x - y|) for any admissible tau.
cplx fundamental_solution(cplx tau, Vec2 x, Vec2 y);

struct LayerOperators {
    CMatrix single;        // S_tau
    CMatrix normal_deriv;  // D^T_tau
};

/// Both operators at once; they share every Bessel evaluation.
LayerOperators assemble_layers(const CollocationGrid& grid, cplx tau);
CMatrix assemble_single_layer(const CollocationGrid& grid, cplx tau);
CMatrix assemble_normal_deriv(const CollocationGrid& grid, cplx tau);

/// Single-layer potential SL_tau[density](x) at a point off the boundary,
/// by the trapezoid rule.
cplx single_layer_potential(const CollocationGrid& grid, cplx tau, const CVector& density, Vec2 x);

/// T(k) together with reciprocal condition estimates of the two single-layer solves.
struct NepEvaluation {
    CMatrix t;
    double rcond_modified = 0.0;   // of S_{ik}
    double rcond_helmholtz = 0.0;  // of S_k
    bool ill_conditioned = false;  // S_k or S_{ik} close to singular
};

class NepOperator {
public:
    explicit NepOperator(CollocationGrid grid);

    int dim() const { return grid_.n; }
    const CollocationGrid& grid() const { return grid_; }

    NepEvaluation evaluate(cplx k) const;
    CMatrix operator()(cplx k) const { return evaluate(k).t; }

    /// View as a generic analytic matrix function for the contour solver.
    NepProblem as_problem() const;

    /// Threshold on rcond below which evaluations are flagged.
    static constexpr double kConditioningWarning = 1e-12;

private:
    CollocationGrid grid_;
};

/// sigma_min / sigma_max of T(k).
double relative_sigma_min(const CMatrix& t);

struct FieldSample {
    Vec2 point;
    bool inside = false;
    bool too_close = false;  // within one panel of the boundary: value omitted
    cplx value{0.0, 0.0};    // v inside, w outside
};

/// Reconstructs the transmission eigenfunction pair from the boundary trace
/// v on the grid: phi = S_{ik}^{-1}(-v) and psi = S_k^{-1} v, then
/// w = SL_{ik} phi outside and v = SL_k psi inside.
std::vector<FieldSample> eigenfunction_field(const CollocationGrid& grid, double k, const CVector& v_boundary,
                                             std::span<const Vec2> eval_points);

/// Settings for locating transmission eigenvalues on a real interval.
struct EigenSearchOptions {
    int nodes = 120;
    double radius = 0.35;
    double overlap = 0.1;
    ContourSpec contour{};
    /// Extra nodes for the spurious-eigenvalue cross check (0 disables it).
    int check_extra_nodes = 16;
    /// Relative sigma_min threshold on the refined grid.
    double check_tol = 1e-6;
};

/// Beyn sweep over [k_min, k_max] on a grid of `nodes` points, with each
/// candidate confirmed on a grid of nodes + check_extra_nodes points.
std::vector<NepEigenpair> transmission_eigenvalues(const BoundaryCurve& curve, double k_min, double k_max,
                                                   const EigenSearchOptions& options = {});

}  // namespace clamped_te
