#include "clamped_te/disk.hpp"
#include "clamped_te/scatter.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace clamped_te;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

}  // namespace

TEST(Scatter, DiskFarFieldMatchesSeries) {
    const double k = 2.0;
    const FarFieldMatrix f = farfield_matrix(BoundaryCurve::circle(1.0), k, 64, 120);
    ASSERT_EQ(f.entries.rows(), 64);
    const auto lam = disk::lambda_table(k, 0);
    double worst = 0.0;
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 64; ++j) {
            const cplx ref = disk::farfield_from_table(lam, 2 * kPi * i / 64, 2 * kPi * j / 64).value;
            worst = std::max(worst, std::abs(f.entries(i, j) - ref) / std::abs(ref));
        }
    EXPECT_LT(worst, 1e-6);
}

TEST(Scatter, DiskRotationEquivariance) {
    const FarFieldMatrix f = farfield_matrix(BoundaryCurve::circle(1.0), 2.7, 16, 80);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            EXPECT_LT(std::abs(f.entries((i + 3) % 16, (j + 3) % 16) - f.entries(i, j)), 1e-10 * f.entries.norm());
}

TEST(Scatter, BoundaryConditionsHoldOffTheGrid) {
    const BoundaryCurve c = BoundaryCurve::ellipse(1.0, 0.7);
    const double k = 2.4;
    const auto g = make_grid(c, 128);
    const Vec2 d{std::cos(0.4), std::sin(0.4)};
    const ForwardDensities dens = forward_solve(g, k, std::vector<Vec2>{d});
    const auto fine = make_grid(c, 1024);
    const CVector phi = test::resample(dens.phi.col(0), fine.n);
    const CVector psi = test::resample(dens.psi.col(0), fine.n);
    auto total = [&](Vec2 x) {
        return single_layer_potential(fine, cplx(k, 0.0), phi, x) + single_layer_potential(fine, kI * k, psi, x) +
               std::exp(kI * (k * dot(x, d)));
    };
    for (int i : {0, 30, 71}) {
        const Vec2 x = g.points[i], nu = g.normals[i];
        const CVector coef = test::one_sided_taylor([&](double h) { return total(x + h * nu); });
        EXPECT_LT(std::abs(coef(0)), 1e-6) << "node " << i;  // u = 0
        EXPECT_LT(std::abs(coef(1)), 1e-4) << "node " << i;  // d_nu u = 0
    }
}

TEST(Scatter, GridRefinement) {
    for (const auto& c : {BoundaryCurve::circle(1.0), BoundaryCurve::ellipse(1.0, 0.5),
                          BoundaryCurve::deformed_ellipse(0.3), BoundaryCurve::peanut()}) {
        const auto a = farfield_matrix(c, 3.0, 8, 120);
        const auto b = farfield_matrix(c, 3.0, 8, 240);
        EXPECT_LT((a.entries - b.entries).cwiseAbs().maxCoeff(), 1e-8) << c.describe();
    }
}

TEST(Scatter, SmallMatrixAndZeroDensity) {
    const auto f = farfield_matrix(BoundaryCurve::peanut(), 1.7, 4, 60);
    EXPECT_TRUE(f.entries.allFinite());
    EXPECT_GT(f.entries.norm(), 0.0);
    EXPECT_EQ(f.shape, "peanut");
    const auto g = make_grid(BoundaryCurve::peanut(), 60);
    const CMatrix zero = CMatrix::Zero(60, 1);
    EXPECT_EQ(farfield(g, 1.7, zero, equispaced_directions(5)).norm(), 0.0);
}

TEST(Scatter, FarFieldKernelConjugation) {
    // far field of conj(phi) at -k equals conj of far field of phi at k
    const auto g = make_grid(BoundaryCurve::ellipse(1.0, 0.6), 40);
    CMatrix phi(g.n, 1);
    for (int i = 0; i < g.n; ++i) phi(i, 0) = cplx(std::cos(g.t[i]), std::sin(3 * g.t[i]) + 0.2);
    const auto dirs = equispaced_directions(6);
    const CMatrix a = farfield(g, 2.0, phi, dirs);
    const CMatrix b = farfield(g, -2.0, phi.conjugate(), dirs);
    EXPECT_LT((b - a.conjugate()).norm(), 1e-13 * a.norm());
}

TEST(Scatter, Noise) {
    const auto f = farfield_matrix(BoundaryCurve::circle(1.0), 2.0, 16, 60);
    const auto same = add_noise(f, 0.0, 3);
    EXPECT_EQ(same.entries, f.entries);

    const double delta = 0.05;
    const auto n1 = add_noise(f, delta, 3);
    const auto n2 = add_noise(f, delta, 3);
    const auto n3 = add_noise(f, delta, 4);
    EXPECT_EQ(n1.entries, n2.entries);
    EXPECT_NE(n1.entries, n3.entries);
    EXPECT_EQ(n1.noise_delta, delta);
    const CMatrix e = (n1.entries - f.entries).cwiseQuotient(delta * f.entries);
    EXPECT_NEAR(e.norm(), 1.0, 1e-12);
    EXPECT_LE(e.real().cwiseAbs().maxCoeff(), 1.0);
    EXPECT_THROW(add_noise(f, -0.1, 1), InvalidArgument);
}

TEST(Scatter, FileRoundTripIsExact) {
    auto f = add_noise(farfield_matrix(BoundaryCurve::ellipse(1.0, 0.8), 3.3, 8, 60), 0.02, 11);
    std::stringstream ss;
    write_farfield(ss, f);
    const FarFieldMatrix g = read_farfield(ss);
    EXPECT_EQ(g.k, f.k);
    EXPECT_EQ(g.n_dir, f.n_dir);
    EXPECT_EQ(g.n_nodes, f.n_nodes);
    EXPECT_EQ(g.shape, f.shape);
    EXPECT_EQ(g.noise_delta, f.noise_delta);
    EXPECT_EQ(g.seed, f.seed);
    EXPECT_EQ(g.entries, f.entries);
}

TEST(Scatter, MalformedFiles) {
    std::stringstream bad("{not json");
    EXPECT_THROW(read_farfield(bad), InvalidArgument);
    std::stringstream wrong(R"({"format":"clamped_te.farfield","version":1,"shape":"x","k":1,"n_dir":2,)"
                            R"("n_nodes":4,"delta":0,"seed":0,"entries":[[0,0,1,0]]})");
    EXPECT_THROW(read_farfield(wrong), InvalidArgument);
}

TEST(Scatter, InvalidWavenumber) {
    const auto g = make_grid(BoundaryCurve::circle(1.0), 16);
    EXPECT_THROW(forward_solve(g, 0.0, std::vector<Vec2>{{1.0, 0.0}}), InvalidArgument);
}
