#pragma once

// Forward plane-wave scattering by a clamped cavity. The scattered field is
// split as u = u_H + u_M with u_H = SL_k phi radiating and u_M = SL_{ik} psi
// decaying; the clamped conditions u = d_nu u = 0 give a 2n x 2n system.

#include "clamped_te/bie.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace clamped_te {

/// The forward system is too close to singular (typically an interior
/// Dirichlet resonance of S_k); perturbing k usually helps.
class ConditioningError : public std::runtime_error {
public:
    explicit ConditioningError(const std::string& what) : std::runtime_error(what) {}
};

struct ForwardDensities {
    CMatrix phi;  // one column per incident direction
    CMatrix psi;
    double rcond = 0.0;
};

/// Block system threshold below which forward_solve throws.
inline constexpr double kForwardRcondLimit = 1e-13;

/// Densities for u^inc = e^{ik x.d}, one column per direction in `dirs`.
ForwardDensities forward_solve(const CollocationGrid& grid, double k, std::span<const Vec2> dirs);

/// Far field of SL_k phi: sum_j e^{-ik xhat.y_j} phi_j |x'(t_j)| 2pi/n,
/// normalised so the fundamental solution has far field e^{-ik xhat.y}.
/// Rows follow obs_dirs, columns follow the columns of phi.
CMatrix farfield(const CollocationGrid& grid, double k, const CMatrix& phi, std::span<const Vec2> obs_dirs);

/// Direction (cos theta_i, sin theta_i), theta_i = 2 pi i / n_dir, i = 0..n_dir-1.
std::vector<Vec2> equispaced_directions(int n_dir);

struct FarFieldMatrix {
    double k = 0.0;
    int n_dir = 0;
    int n_nodes = 0;
    std::string shape;        // BoundaryCurve::describe() of the scatterer
    CMatrix entries;          // entries(i, j) = u_inf(xhat_i, d_j)
    double noise_delta = 0.0;
    std::uint64_t seed = 0;

    std::vector<Vec2> directions() const { return equispaced_directions(n_dir); }
};

FarFieldMatrix farfield_matrix(const BoundaryCurve& curve, double k, int n_dir = 64, int n_nodes = 120);

/// F(i,j) (1 + delta E(i,j)) with Re E, Im E uniform in [-1, 1] and
/// |E|_F = 1. The generator is seeded from (seed, k) only.
FarFieldMatrix add_noise(const FarFieldMatrix& f, double delta, std::uint64_t seed);

/// JSON with metadata and one [i, j, re, im] record per entry; doubles are
/// written in shortest round-trip form, so read(write(F)) == F exactly.
void write_farfield(std::ostream& os, const FarFieldMatrix& f);
FarFieldMatrix read_farfield(std::istream& is);

}  // namespace clamped_te
