#include "clamped_te/scatter.hpp"

#include <nlohmann/json.hpp>

#include <bit>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace clamped_te {
namespace {

constexpr cplx kI{0.0, 1.0};
constexpr int kFormatVersion = 1;

}  // namespace

std::vector<Vec2> equispaced_directions(int n_dir) {
    if (n_dir < 1) throw InvalidArgument("need at least one direction");
    std::vector<Vec2> d(n_dir);
    for (int i = 0; i < n_dir; ++i) {
        const double th = 2.0 * std::numbers::pi * i / n_dir;
        d[i] = {std::cos(th), std::sin(th)};
    }
    return d;
}

ForwardDensities forward_solve(const CollocationGrid& g, double k, std::span<const Vec2> dirs) {
    if (!(k > 0.0)) throw InvalidArgument("wavenumber must be positive");
    const int n = g.n;
    const LayerOperators hel = assemble_layers(g, cplx{k, 0.0});
    const LayerOperators mod = assemble_layers(g, kI * k);
    CMatrix a(2 * n, 2 * n);
    const CMatrix half = 0.5 * CMatrix::Identity(n, n);
    a.topLeftCorner(n, n) = hel.single;
    a.topRightCorner(n, n) = mod.single;
    a.bottomLeftCorner(n, n) = hel.normal_deriv - half;
    a.bottomRightCorner(n, n) = mod.normal_deriv - half;

    CMatrix rhs(2 * n, static_cast<Eigen::Index>(dirs.size()));
    for (std::size_t c = 0; c < dirs.size(); ++c) {
        for (int i = 0; i < n; ++i) {
            const cplx u = std::exp(kI * (k * dot(g.points[i], dirs[c])));
            rhs(i, c) = -u;
            rhs(n + i, c) = -kI * k * dot(g.normals[i], dirs[c]) * u;
        }
    }
    Eigen::PartialPivLU<CMatrix> lu(a);
    ForwardDensities out;
    out.rcond = lu.rcond();
    if (!(out.rcond > kForwardRcondLimit)) {
        std::ostringstream os;
        os << "forward system is numerically singular at k = " << k << " (rcond " << out.rcond
           << "); perturb k slightly";
        throw ConditioningError(os.str());
    }
    const CMatrix x = lu.solve(rhs);
    out.phi = x.topRows(n);
    out.psi = x.bottomRows(n);
    return out;
}

CMatrix farfield(const CollocationGrid& g, double k, const CMatrix& phi, std::span<const Vec2> obs_dirs) {
    if (phi.rows() != g.n) throw InvalidArgument("density length does not match the grid");
    CMatrix kernel(static_cast<Eigen::Index>(obs_dirs.size()), g.n);
    const double h = g.spacing();
    for (std::size_t i = 0; i < obs_dirs.size(); ++i)
        for (int j = 0; j < g.n; ++j)
            kernel(i, j) = std::exp(-kI * (k * dot(obs_dirs[i], g.points[j]))) * (g.jacobian[j] * h);
    return kernel * phi;
}

FarFieldMatrix farfield_matrix(const BoundaryCurve& curve, double k, int n_dir, int n_nodes) {
    const CollocationGrid g = make_grid(curve, n_nodes);
    const std::vector<Vec2> dirs = equispaced_directions(n_dir);
    const ForwardDensities dens = forward_solve(g, k, dirs);
    FarFieldMatrix f;
    f.k = k;
    f.n_dir = n_dir;
    f.n_nodes = n_nodes;
    f.shape = curve.describe();
    f.entries = farfield(g, k, dens.phi, dirs);
    return f;
}

FarFieldMatrix add_noise(const FarFieldMatrix& f, double delta, std::uint64_t seed) {
    if (!(delta >= 0.0)) throw InvalidArgument("noise level must be non-negative");
    FarFieldMatrix out = f;
    out.noise_delta = delta;
    out.seed = seed;
    if (delta == 0.0) return out;
    const std::uint64_t kb = std::bit_cast<std::uint64_t>(f.k);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(kb), static_cast<std::uint32_t>(kb >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CMatrix e(f.entries.rows(), f.entries.cols());
    for (Eigen::Index j = 0; j < e.cols(); ++j)
        for (Eigen::Index i = 0; i < e.rows(); ++i) {
            const double re = u(rng);
            const double im = u(rng);
            e(i, j) = {re, im};
        }
    e /= e.norm();
    out.entries = f.entries.cwiseProduct((CMatrix::Ones(e.rows(), e.cols()) + delta * e));
    return out;
}

void write_farfield(std::ostream& os, const FarFieldMatrix& f) {
    nlohmann::json j;
    j["format"] = "clamped_te.farfield";
    j["version"] = kFormatVersion;
    j["shape"] = f.shape;
    j["k"] = f.k;
    j["n_dir"] = f.n_dir;
    j["n_nodes"] = f.n_nodes;
    j["delta"] = f.noise_delta;
    j["seed"] = f.seed;
    nlohmann::json rec = nlohmann::json::array();
    for (Eigen::Index i = 0; i < f.entries.rows(); ++i)
        for (Eigen::Index c = 0; c < f.entries.cols(); ++c)
            rec.push_back({i, c, f.entries(i, c).real(), f.entries(i, c).imag()});
    j["entries"] = std::move(rec);
    os << j.dump(1) << '\n';
}

FarFieldMatrix read_farfield(std::istream& is) {
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("far-field file is not valid JSON: ") + e.what());
    }
    try {
        if (j.at("format") != "clamped_te.farfield") throw InvalidArgument("not a far-field file");
        if (j.at("version").get<int>() != kFormatVersion) throw InvalidArgument("unsupported far-field file version");
        FarFieldMatrix f;
        f.shape = j.at("shape").get<std::string>();
        f.k = j.at("k").get<double>();
        f.n_dir = j.at("n_dir").get<int>();
        f.n_nodes = j.at("n_nodes").get<int>();
        f.noise_delta = j.at("delta").get<double>();
        f.seed = j.at("seed").get<std::uint64_t>();
        if (f.n_dir < 1) throw InvalidArgument("far-field file has n_dir < 1");
        f.entries = CMatrix::Constant(f.n_dir, f.n_dir, cplx{std::nan(""), 0.0});
        const auto& rec = j.at("entries");
        if (rec.size() != static_cast<std::size_t>(f.n_dir) * f.n_dir)
            throw InvalidArgument("far-field file has the wrong number of entries");
        for (const auto& r : rec) {
            const int i = r.at(0).get<int>();
            const int c = r.at(1).get<int>();
            if (i < 0 || c < 0 || i >= f.n_dir || c >= f.n_dir) throw InvalidArgument("entry index out of range");
            f.entries(i, c) = {r.at(2).get<double>(), r.at(3).get<double>()};
        }
        if (!f.entries.allFinite()) throw InvalidArgument("far-field file has missing or non-finite entries");
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed far-field file: ") + e.what());
    }
}

}  // namespace clamped_te
