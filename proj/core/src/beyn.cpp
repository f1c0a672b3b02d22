#include "clamped_te/beyn.hpp"

#include "clamped_te/geometry.hpp"
#include "clamped_te/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace clamped_te {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::MatrixXcd probe_matrix(int dim, int cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd v(dim, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < dim; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            v(i, j) = {re, im};
        }
    return v;
}

struct Moments {
    Eigen::MatrixXcd a0;
    Eigen::MatrixXcd a1;
    double term_scale = 0.0;  // mean Frobenius norm of the quadrature summands
};

// Trapezoid rule on z = c + r exp(i theta_j), theta_j = 2 pi (j + 1/2) / N.
// The half-step offset keeps nodes off the real axis, where the physical
// eigenvalues sit. Moments are taken in the scaled variable (z - c) / r.
Moments contour_moments(const NepProblem& nep, const ContourSpec& c, const Eigen::MatrixXcd& probes) {
    const int n = c.n_quad;
    std::vector<Eigen::MatrixXcd> solved(n);
    std::vector<cplx> zeta(n);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
        zeta[j] = std::polar(1.0, kTwoPi * (static_cast<double>(j) + 0.5) / n);
        const cplx z = c.center + c.radius * zeta[j];
        const Eigen::MatrixXcd t = nep.evaluate(z);
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(t);
        if (!(lu.rcond() > 1e-14)) {
            std::ostringstream os;
            os << "T(z) is numerically singular on the contour at z = " << z << " (rcond " << lu.rcond()
               << "); shift or resize the contour";
            throw BeynError(os.str());
        }
        solved[j] = lu.solve(probes);
    });
    Moments m;
    m.a0 = Eigen::MatrixXcd::Zero(probes.rows(), probes.cols());
    m.a1 = m.a0;
    for (int j = 0; j < n; ++j) {
        m.a0 += zeta[j] * solved[j];
        m.a1 += zeta[j] * zeta[j] * solved[j];
        m.term_scale += solved[j].norm();
    }
    m.a0 /= double(n);
    m.a1 /= double(n);
    m.term_scale /= double(n);
    return m;
}

std::vector<NepEigenpair> beyn_once(const NepProblem& nep, const ContourSpec& c, const EigenpairFilter& accept,
                                    int& rank_out) {
    const Eigen::MatrixXcd probes = probe_matrix(nep.dim, c.n_probe, c.rng_seed);
    const Moments m = contour_moments(nep, c, probes);

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m.a0, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const double floor = c.rank_tol * std::max(sigma.size() ? sigma(0) : 0.0, m.term_scale);
    int rank = 0;
    while (rank < sigma.size() && sigma(rank) > floor) ++rank;
    rank_out = rank;
    if (rank == 0) return {};

    const Eigen::MatrixXcd v0 = svd.matrixU().leftCols(rank);
    const Eigen::MatrixXcd w0 = svd.matrixV().leftCols(rank);
    const Eigen::VectorXd inv_sigma = sigma.head(rank).cwiseInverse();
    const Eigen::MatrixXcd b = v0.adjoint() * m.a1 * w0 * inv_sigma.asDiagonal();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(b);
    if (eig.info() != Eigen::Success) throw BeynError("eigen decomposition of the reduced matrix failed");

    std::vector<NepEigenpair> out;
    for (int i = 0; i < rank; ++i) {
        const cplx mu = eig.eigenvalues()(i);
        if (!(std::abs(mu) < 1.0)) continue;
        NepEigenpair p;
        p.k = c.center + c.radius * mu;
        p.v = (v0 * eig.eigenvectors().col(i)).normalized();
        p.residual = relative_residual(nep.evaluate(p.k), p.v);
        if (!(p.residual < c.res_tol)) continue;
        if (accept && !accept(p)) continue;
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

void ContourSpec::validate(int dim) const {
    if (!(radius > 0.0)) throw InvalidArgument("contour radius must be positive");
    if (!(center.real() - radius > 0.0)) throw InvalidArgument("contour must lie in the half plane Re z > 0");
    if (n_quad < 16) throw InvalidArgument("contour needs at least 16 quadrature nodes");
    if (n_probe < 1 || n_probe > dim) throw InvalidArgument("probe count must lie in [1, dim]");
    if (!(rank_tol > 0.0) || !(res_tol > 0.0)) throw InvalidArgument("tolerances must be positive");
}

double relative_residual(const Eigen::MatrixXcd& t, const Eigen::VectorXcd& v) {
    const double tn = Eigen::BDCSVD<Eigen::MatrixXcd>(t).singularValues()(0);
    const double vn = v.norm();
    if (tn == 0.0 || vn == 0.0) return 0.0;
    return (t * v).norm() / (tn * vn);
}

void assign_groups(std::vector<NepEigenpair>& pairs, double tol) {
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const NepEigenpair& a, const NepEigenpair& b) { return a.k.real() < b.k.real(); });
    int group = -1;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i == 0 || std::abs(pairs[i].k - pairs[i - 1].k) >= tol) ++group;
        pairs[i].group_id = group;
    }
}

std::vector<NepEigenpair> beyn_solve(const NepProblem& nep, const ContourSpec& contour,
                                     const EigenpairFilter& accept) {
    if (!nep.evaluate || nep.dim < 1) throw InvalidArgument("NEP needs a positive dimension and an evaluator");
    contour.validate(nep.dim);
    ContourSpec c = contour;
    for (;;) {
        int rank = 0;
        auto pairs = beyn_once(nep, c, accept, rank);
        // A full-rank moment matrix may hide eigenvalues; retry with more probes.
        if (rank == c.n_probe && c.n_probe < nep.dim) {
            c.n_probe = std::min(2 * c.n_probe, nep.dim);
            continue;
        }
        assign_groups(pairs);
        return pairs;
    }
}

std::vector<NepEigenpair> sweep_contours(const NepProblem& nep, double k_min, double k_max, double radius,
                                         double overlap, const ContourSpec& base, const EigenpairFilter& accept) {
    if (!(k_min > 0.0) || !(k_max > k_min)) throw InvalidArgument("sweep needs 0 < k_min < k_max");
    if (!(radius > 0.0) || !(overlap >= 0.0) || !(overlap < 2.0 * radius))
        throw InvalidArgument("sweep needs radius > 0 and 0 <= overlap < 2 radius");
    const double step = 2.0 * radius - overlap;
    std::vector<double> centers;
    for (double c = k_min + radius - 0.5 * overlap;; c += step) {
        centers.push_back(c);
        if (c + radius - 0.5 * overlap >= k_max) break;
    }

    // Each contour owns the stretch of axis nearest its centre; a pair is
    // kept only by its owner so overlaps do not double count.
    std::vector<NepEigenpair> all;
    std::vector<std::size_t> source;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        ContourSpec c = base;
        c.center = centers[i];
        c.radius = radius;
        const bool last = i + 1 == centers.size();
        const double lo = i == 0 ? k_min : centers[i] - 0.5 * step;
        const double hi = last ? k_max : centers[i] + 0.5 * step;
        // Ownership is decided per cluster so copies of a multiple
        // eigenvalue on a boundary are not split between two contours.
        auto pairs = beyn_solve(nep, c, accept);
        for (std::size_t s = 0; s < pairs.size();) {
            std::size_t e = s;
            double mean = 0.0;
            while (e < pairs.size() && pairs[e].group_id == pairs[s].group_id) mean += pairs[e++].k.real();
            mean /= static_cast<double>(e - s);
            if (mean >= lo && (mean < hi || (last && mean <= hi))) {
                for (std::size_t q = s; q < e; ++q) {
                    all.push_back(std::move(pairs[q]));
                    source.push_back(i);
                }
            }
            s = e;
        }
    }

    // A cluster straddling an ownership boundary may be reported by two
    // contours; keep the contour that saw the most copies (then the lowest
    // residual) so genuine multiplicity within one contour survives.
    std::vector<std::size_t> order(all.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return all[a].k.real() < all[b].k.real(); });
    std::vector<NepEigenpair> merged;
    for (std::size_t s = 0; s < order.size();) {
        std::size_t e = s + 1;
        while (e < order.size() && std::abs(all[order[e]].k - all[order[e - 1]].k) < kMergeTolerance) ++e;
        std::map<std::size_t, std::vector<std::size_t>> by_source;
        for (std::size_t q = s; q < e; ++q) by_source[source[order[q]]].push_back(order[q]);
        const std::vector<std::size_t>* best = nullptr;
        double best_res = 0.0;
        for (const auto& [src, members] : by_source) {
            double worst = 0.0;
            for (std::size_t m : members) worst = std::max(worst, all[m].residual);
            if (!best || members.size() > best->size() || (members.size() == best->size() && worst < best_res)) {
                best = &members;
                best_res = worst;
            }
        }
        for (std::size_t m : *best) merged.push_back(std::move(all[m]));
        s = e;
    }
    assign_groups(merged);
    return merged;
}

}  // namespace clamped_te
