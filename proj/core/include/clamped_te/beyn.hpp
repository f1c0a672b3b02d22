#pragma once

// Contour-integral eigensolver for analytic matrix-valued functions T(z)
// (W.-J. Beyn's method with first and second moments) on circles in the
// right half plane.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace clamped_te {

using cplx = std::complex<double>;

class BeynError : public std::runtime_error {
public:
    explicit BeynError(const std::string& what) : std::runtime_error(what) {}
};

struct ContourSpec {
    cplx center{2.0, 0.0};
    double radius = 0.35;
    int n_quad = 32;
    int n_probe = 8;
    double rank_tol = 1e-8;
    double res_tol = 1e-6;
    std::uint64_t rng_seed = 20240917;

    /// Throws InvalidArgument unless the contour lies in Re z > 0 and the
    /// sizes are usable for a problem of dimension dim.
    void validate(int dim) const;
};

/// An analytic matrix function of fixed dimension.
struct NepProblem {
    int dim = 0;
    std::function<Eigen::MatrixXcd(cplx)> evaluate;
};

struct NepEigenpair {
    cplx k;
    Eigen::VectorXcd v;   // unit 2-norm
    double residual = 0;  // |T(k) v| / (|T(k)|_2 |v|)
    int group_id = 0;     // equal ids share an eigenvalue within the merge tolerance
};

/// Optional extra acceptance test applied to every candidate pair.
using EigenpairFilter = std::function<bool(const NepEigenpair&)>;

inline constexpr double kMergeTolerance = 1e-6;

/// Eigenpairs strictly inside the contour with residual below res_tol.
/// An empty result is not an error. Throws BeynError when T(z) is singular
/// on the contour itself.
std::vector<NepEigenpair> beyn_solve(const NepProblem& nep, const ContourSpec& contour,
                                     const EigenpairFilter& accept = {});

/// Covers [k_min, k_max] with circles of the given radius centred on the real
/// axis, neighbours overlapping by `overlap` along the axis. Pairs are merged
/// across contours and sorted by Re k; group ids are reassigned.
std::vector<NepEigenpair> sweep_contours(const NepProblem& nep, double k_min, double k_max, double radius,
                                         double overlap, const ContourSpec& base = {},
                                         const EigenpairFilter& accept = {});

/// Sorts by Re k and numbers clusters (chained within tol) from 0.
void assign_groups(std::vector<NepEigenpair>& pairs, double tol = kMergeTolerance);

/// Relative residual |T v| / (|T|_2 |v|).
double relative_residual(const Eigen::MatrixXcd& t, const Eigen::VectorXcd& v);

}  // namespace clamped_te
