#pragma once

// Eigenvalue recovery from far-field data: regularised solutions of the far
// field equation F g = phi_z, phi_z(xhat) = e^{-ik xhat.z}, whose norm grows
// without bound as k approaches a transmission eigenvalue.

#include "clamped_te/scatter.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace clamped_te {

struct TikhonovResult {
    CVector g;
    double alpha = 0.0;
};

/// Bisection bracket for log10(alpha).
inline constexpr double kLogAlphaMin = -16.0;
inline constexpr double kLogAlphaMax = 4.0;

/// Holds the SVD of one far-field matrix for repeated right-hand sides.
class FarFieldSolver {
public:
    explicit FarFieldSolver(const FarFieldMatrix& f);

    /// d(alpha) = |F g - phi|^2 - delta^2 |F|_2^2 |g|^2, increasing in alpha.
    double discrepancy(const CVector& phi, double alpha) const;

    /// g = (alpha I + F*F)^{-1} F* phi with alpha from d(alpha) = 0. If
    /// d(1e-16) >= 0 the noise-free fallback alpha = 1e-16 is used; if
    /// d(1e4) <= 0, alpha = 1e4.
    TikhonovResult solve(const CVector& phi) const;

    /// phi_z on the observation directions of the matrix.
    CVector rhs(Vec2 z) const;

private:
    const FarFieldMatrix* f_;
    Eigen::MatrixXcd u_;
    Eigen::MatrixXcd v_;
    Eigen::VectorXd sigma_;
    double delta_;
};

TikhonovResult tikhonov_morozov(const FarFieldMatrix& f, Vec2 z);

struct Peak {
    double k = 0.0;            // refined estimate
    std::size_t index = 0;     // grid index of the local maximum
    double prominence = 0.0;   // value / median of the curve
};

struct RecoverySweep {
    std::vector<double> k_grid;
    std::vector<double> g_norm_avg;  // NaN where the forward solve failed
    std::vector<bool> missing;
    std::vector<Vec2> z_points;
    double delta = 0.0;
    std::uint64_t seed = 0;
    std::vector<Peak> peaks;
};

struct SweepOptions {
    int n_z = 20;
    int n_dir = 64;
    int n_nodes = 120;
    std::uint64_t seed = 1;
    double peak_factor = 1.5;
};

/// 150 equispaced values on [1, 5] unless told otherwise.
std::vector<double> linspace(double a, double b, int count);

/// Synthesises noisy data at every k and averages |g_z| over n_z seeded
/// interior points. Peaks are detected before returning.
RecoverySweep sweep(const BoundaryCurve& curve, const std::vector<double>& k_grid, double delta,
                    const SweepOptions& options = {});

/// Same from precomputed matrices (ascending k). Interior points must be given.
RecoverySweep sweep_from_data(const std::vector<FarFieldMatrix>& data, const std::vector<Vec2>& z_points,
                              double peak_factor = 1.5);

/// Strict local maxima above factor x median, refined by the vertex of the
/// parabola through the maximum and its two neighbours. NaN entries never
/// qualify and are skipped by the median.
std::vector<Peak> detect_peaks(const std::vector<double>& k_grid, const std::vector<double>& values,
                               double factor = 1.5);

}  // namespace clamped_te
