#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "doughslit/qsolve.hpp"

using namespace doughslit;
using namespace doughslit::qsolve;

namespace {

constexpr double pi = std::numbers::pi;

Grid small_grid(std::size_t n = 64) { return {n, n, 1.0}; }

ComplexField2D random_field(const Grid& g, const Potential& pot, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> d;
    ComplexField2D f(g);
    for (std::size_t i = 0; i < g.n_x; ++i)
        for (std::size_t j = 0; j < g.n_y; ++j)
            if (!g.is_boundary(i, j) && !pot.blocked(i, j)) f.values(i, j) = {d(rng), d(rng)};
    const double n = l2_norm(f);
    for (auto& v : f.values.flat()) v /= n;
    return f;
}

ComplexField2D mirror_y(const ComplexField2D& f) {
    ComplexField2D out(f.grid);
    for (std::size_t i = 0; i < f.grid.n_x; ++i)
        for (std::size_t j = 0; j < f.grid.n_y; ++j) out.values(i, j) = f.values(i, f.grid.n_y - 1 - j);
    return out;
}

double max_abs_diff(const ComplexField2D& a, const ComplexField2D& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) m = std::max(m, std::abs(a.values.flat()[k] - b.values.flat()[k]));
    return m;
}

// Second moment of |psi|^2 along y about its mean.
double y_variance(const ComplexField2D& f) {
    double w = 0, m1 = 0, m2 = 0;
    for (std::size_t i = 0; i < f.grid.n_x; ++i)
        for (std::size_t j = 0; j < f.grid.n_y; ++j) {
            const double p = std::norm(f.values(i, j)), y = f.grid.y(j);
            w += p;
            m1 += p * y;
            m2 += p * y * y;
        }
    m1 /= w;
    return m2 / w - m1 * m1;
}

}  // namespace

TEST(Grid, ValidationAndSpacing) {
    EXPECT_THROW((Grid{7, 64, 1.0}.validate()), InvalidParameter);
    EXPECT_THROW((Grid{64, 64, 0.0}.validate()), InvalidParameter);
    const Grid g{11, 21, 2.0};
    EXPECT_DOUBLE_EQ(g.dx(), 0.2);
    EXPECT_DOUBLE_EQ(g.dy(), 0.1);
    EXPECT_TRUE(g.is_boundary(0, 5));
    EXPECT_TRUE(g.is_boundary(3, 20));
    EXPECT_FALSE(g.is_boundary(1, 1));
}

TEST(Packet, PrintedFormula) {
    const WavePacketParams p{0.5, 0.4, 0.003, 0.006, 80.0};
    EXPECT_DOUBLE_EQ(std::abs(packet_value(p, p.x0, p.y0)), 1.0);
    EXPECT_NEAR(std::abs(packet_value(p, p.x0 + std::sqrt(2 * p.sigma_x), p.y0)), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(std::abs(packet_value(p, p.x0, p.y0 + std::sqrt(2 * p.sigma_y))), std::exp(-1.0), 1e-15);
    for (double y : {0.1, 0.4, 0.77}) EXPECT_EQ(std::arg(packet_value(p, p.x0, y)), 0.0);
}

TEST(Packet, NormalizedWithZeroWalls) {
    const Grid g = small_grid(96);
    const auto f = init_packet(g, {0.5, 0.5, 0.002, 0.005, 100.0});
    EXPECT_NEAR(l2_norm(f), 1.0, 1e-13);
    EXPECT_EQ(boundary_max(f), 0.0);
}

TEST(Packet, Errors) {
    const Grid g = small_grid();
    EXPECT_THROW(init_packet(g, {1.2, 0.5, 0.002, 0.005, 100}), InvalidParameter);
    EXPECT_THROW(init_packet(g, {0.5, 0.0, 0.002, 0.005, 100}), InvalidParameter);
    EXPECT_THROW(init_packet(g, {0.5, 0.5, -0.002, 0.005, 100}), InvalidParameter);
    EXPECT_THROW(init_packet(g, {0.5, 0.5, 1e-7, 1e-7, 100}), UnderResolution);
}

TEST(Potential, Examples) {
    const Grid g{101, 101, 1.0};
    SlitGeometry s;
    s.v0 = 1000.0;
    const auto soft = build_potential(g, s);
    const std::size_t bi = g.nearest_row(s.barrier_x);
    EXPECT_EQ(soft.values(10, 50), 0.0);
    EXPECT_EQ(soft.values(bi, static_cast<std::size_t>(std::lround(s.slit1_center * 100))), 0.0);
    EXPECT_EQ(soft.values(bi, 50), 1000.0);
    EXPECT_EQ(soft.blocked_count(), 0u);

    const auto hard = build_potential(g, SlitGeometry{});
    EXPECT_EQ(hard.blocked(bi, 50), 1);
    EXPECT_EQ(hard.blocked(bi, 42), 0);
    EXPECT_EQ(hard.blocked(10, 50), 0);
    for (std::size_t i = 0; i < g.n_x; ++i)
        for (std::size_t j = 0; j < g.n_y; ++j) EXPECT_EQ(hard.blocked(i, j), hard.blocked(i, g.n_y - 1 - j));
}

TEST(Potential, GeometryErrors) {
    const Grid g = small_grid();
    SlitGeometry s;
    s.slit2_center = s.slit1_center + 0.01;
    EXPECT_THROW(build_potential(g, s), InvalidParameter);
    s = SlitGeometry{};
    s.barrier_x = 0.995;
    EXPECT_THROW(build_potential(g, s), InvalidParameter);
    s = SlitGeometry{};
    s.slit_width = 0.0;
    EXPECT_THROW(build_potential(g, s), InvalidParameter);
}

TEST(Step, ZeroStaysZero) {
    const Grid g = small_grid();
    const auto pot = build_potential(g, SlitGeometry{});
    const ComplexField2D zero(g);
    const auto out = step(zero, pot, 1e-4);
    for (const auto& v : out.values.flat()) EXPECT_EQ(v, complex(0.0, 0.0));
}

TEST(Step, BoxEigenstateOnlyRotatesPhase) {
    const Grid g = small_grid(64);
    const double dt = 1e-4;
    ComplexField2D f(g);
    for (std::size_t i = 1; i + 1 < g.n_x; ++i)
        for (std::size_t j = 1; j + 1 < g.n_y; ++j) f.values(i, j) = std::sin(pi * g.x(i)) * std::sin(pi * g.y(j));
    const double n0 = l2_norm(f);
    for (auto& v : f.values.flat()) v /= n0;

    // The sampled mode is an exact eigenvector of the 5-point Laplacian.
    const double h = g.dx();
    const double e_grid = 2.0 * (2.0 / (h * h)) * std::pow(std::sin(pi * h / 2.0), 2);
    const double phase_cn = -2.0 * std::atan(0.5 * e_grid * dt);
    const double e11 = pi * pi;

    CrankNicolson cn(g, Potential::empty(g), {dt, 1e-12, 10000});
    ComplexField2D psi = f;
    for (int s = 0; s < 20; ++s) {
        const auto next = cn.step(psi);
        const std::size_t i = g.n_x / 2, j = g.n_y / 2;
        double dmod = 0.0;
        for (std::size_t k = 0; k < psi.values.size(); ++k)
            dmod = std::max(dmod, std::abs(std::abs(next.values.flat()[k]) - std::abs(psi.values.flat()[k])));
        EXPECT_LT(dmod, 1e-8);
        const double dphi = std::arg(next.values(i, j) / psi.values(i, j));
        EXPECT_NEAR(dphi, phase_cn, 1e-10);
        EXPECT_NEAR(dphi, -e_grid * dt, std::pow(e_grid * dt, 3) / 12.0 * 1.01 + 1e-12);
        // Against the continuum level the spatial truncation adds about (pi h)^2 / 12 relative.
        EXPECT_NEAR(dphi, -e11 * dt, e11 * dt * std::pow(pi * h, 2) / 12.0 * 1.05 + std::pow(e11 * dt, 3));
        psi = next;
    }
}

TEST(Step, PreservesNormWithBarrier) {
    const Grid g = small_grid();
    const auto pot = build_potential(g, SlitGeometry{});
    CrankNicolson cn(g, pot, {1e-4, 1e-10, 10000});
    auto psi = random_field(g, pot, 1);
    for (int s = 0; s < 10; ++s) {
        const double before = l2_norm(psi);
        psi = cn.step(psi);
        EXPECT_NEAR(l2_norm(psi) / before, 1.0, 1e-9);
        EXPECT_EQ(boundary_max(psi), 0.0);
        for (std::size_t k = 0; k < psi.values.size(); ++k) {
            if (pot.blocked.flat()[k]) {
                EXPECT_EQ(psi.values.flat()[k], complex(0.0, 0.0));
            }
            EXPECT_TRUE(std::isfinite(psi.values.flat()[k].real()));
        }
    }
}

TEST(Step, SoftBarrierPreservesNorm) {
    const Grid g = small_grid();
    SlitGeometry s;
    s.v0 = 5e4;
    const auto pot = build_potential(g, s);
    auto psi = random_field(g, pot, 8);
    const auto next = step(psi, pot, 1e-4);
    EXPECT_NEAR(l2_norm(next), 1.0, 1e-9);
}

TEST(Step, Linear) {
    const Grid g = small_grid();
    const auto pot = build_potential(g, SlitGeometry{});
    SolverConfig cfg{1e-4, 1e-13, 10000};
    CrankNicolson cn(g, pot, cfg);
    const auto a = random_field(g, pot, 2), b = random_field(g, pot, 3);
    const complex ca(0.7, -0.2), cb(-1.3, 0.4);
    ComplexField2D mix(g);
    for (std::size_t k = 0; k < mix.values.size(); ++k)
        mix.values.flat()[k] = ca * a.values.flat()[k] + cb * b.values.flat()[k];
    const auto sa = cn.step(a), sb = cn.step(b), sm = cn.step(mix);
    double err = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < mix.values.size(); ++k) {
        const complex want = ca * sa.values.flat()[k] + cb * sb.values.flat()[k];
        err = std::max(err, std::abs(sm.values.flat()[k] - want));
        scale = std::max(scale, std::abs(want));
    }
    EXPECT_LT(err / scale, 1e-9);
}

TEST(Step, MirrorEquivariant) {
    const Grid g = small_grid();
    const auto pot = build_potential(g, SlitGeometry::centered());
    CrankNicolson cn(g, pot, {1e-4, 1e-12, 10000});
    const auto f = random_field(g, pot, 4);
    const auto lhs = mirror_y(cn.step(f));
    const auto rhs = cn.step(mirror_y(f));
    EXPECT_LT(max_abs_diff(lhs, rhs), 1e-8);
}

TEST(Step, SolverFailureCarriesResidual) {
    const Grid g = small_grid();
    const auto pot = build_potential(g, SlitGeometry{});
    CrankNicolson cn(g, pot, {1e-4, 1e-14, 2});
    const auto f = random_field(g, pot, 5);
    try {
        cn.step(f);
        FAIL() << "expected a solver failure";
    } catch (const SolverFailure& e) {
        EXPECT_GT(e.residual(), 1e-14);
        EXPECT_EQ(e.iterations(), 2u);
        EXPECT_EQ(e.step_index(), -1);
    }
    try {
        evolve(f, pot, SolverConfig{1e-4, 1e-14, 2}, 3, 1);
        FAIL() << "expected a solver failure";
    } catch (const SolverFailure& e) {
        EXPECT_EQ(e.step_index(), 1);
    }
}

TEST(Evolve, RecordingContract) {
    const Grid g = small_grid(32);
    const auto pot = Potential::empty(g);
    const auto f = init_packet(g, {0.5, 0.5, 0.005, 0.005, 10});
    auto s = evolve(f, pot, 1e-4, 1, 1);
    ASSERT_EQ(s.frames.size(), 2u);
    EXPECT_EQ(s.frames[0].step, 0u);
    EXPECT_EQ(s.frames[1].step, 1u);
    s = evolve(f, pot, 1e-4, 7, 3);
    std::vector<std::size_t> steps;
    for (const auto& fr : s.frames) steps.push_back(fr.step);
    EXPECT_EQ(steps, (std::vector<std::size_t>{0, 3, 6, 7}));
    EXPECT_DOUBLE_EQ(s.frames.back().time, 7e-4);
    EXPECT_THROW(evolve(f, pot, 1e-4, 0, 1), InvalidParameter);
    EXPECT_THROW(evolve(f, pot, 1e-4, 3, 0), InvalidParameter);

    const auto again = evolve(f, pot, 1e-4, 7, 3);
    for (std::size_t k = 0; k < s.frames.size(); ++k) EXPECT_EQ(s.frames[k].modulus, again.frames[k].modulus);
}

TEST(Evolve, SymmetricPacketStaysSymmetric) {
    const Grid g = small_grid(64);
    const auto slits = SlitGeometry::centered();
    const auto pot = build_potential(g, slits);
    const auto f = init_packet(g, {0.55, 0.5, 0.002, 0.005, 60});
    const auto s = evolve(f, pot, 1e-4, 60, 10);
    for (const auto& fr : s.frames)
        for (std::size_t i = 0; i < g.n_x; ++i)
            for (std::size_t j = 0; j < g.n_y; ++j)
                EXPECT_NEAR(fr.modulus(i, j), fr.modulus(i, g.n_y - 1 - j), 1e-8);
}

TEST(Evolve, FreeDispersionMatchesClosedForm) {
    // |psi|^2 of the printed packet has variance sigma / 2, which spreads as
    // (sigma / 2) (1 + (t / sigma)^2) for a free particle with hbar = m = 1.
    const Grid g = small_grid(160);
    const double sigma = 0.002, dt = 1e-4;
    const auto f = init_packet(g, {0.5, 0.5, sigma, sigma, 0.0});
    CrankNicolson cn(g, Potential::empty(g), {dt, 1e-12, 10000});
    auto psi = f;
    int checked = 0;
    for (int s = 1; s <= 40; ++s) {
        psi = cn.step(psi);
        if (inner_ring_max(psi) >= 1e-6) break;
        const double t = s * dt;
        const double want = std::sqrt(0.5 * sigma * (1.0 + (t / sigma) * (t / sigma)));
        EXPECT_NEAR(std::sqrt(y_variance(psi)) / want, 1.0, 0.01) << "step " << s;
        ++checked;
    }
    EXPECT_GE(checked, 20);
}

TEST(Screen, ProfileContract) {
    const Grid g = small_grid();
    const SlitGeometry s;
    ModulusFrame frame(g.n_x, g.n_y, 0.0);
    EXPECT_THROW(screen_profile(frame, g, s, 0.9), EmptyProfile);
    EXPECT_THROW(screen_profile(frame, g, s, 0.5), InvalidParameter);
    EXPECT_THROW(screen_profile(frame, g, s, s.far_edge()), InvalidParameter);

    const std::size_t row = g.nearest_row(0.9);
    for (std::size_t j = 1; j + 1 < g.n_y; ++j) {
        const double y = g.y(j);
        frame(row, j) = std::exp(-std::pow((y - 0.3) / 0.05, 2)) + std::exp(-std::pow((y - 0.7) / 0.05, 2));
    }
    const auto p = screen_profile(frame, g, s, 0.9);
    double sum = 0.0;
    for (double v : p.probability) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-14);
    for (std::size_t j = 0; j < g.n_y; ++j) EXPECT_NEAR(p.probability[j], p.probability[g.n_y - 1 - j], 1e-15);
}

TEST(Screen, TimePointSelection) {
    const Grid g = small_grid(32);
    const SlitGeometry s;
    FieldSeries series;
    series.grid = g;
    const std::size_t before = 5, after = g.nearest_row(0.9);
    for (double beyond : {0.0, 0.1, 0.3, 0.4, 0.35, 0.2}) {
        ModulusFrame m(g.n_x, g.n_y, 0.0);
        m(before, 10) = std::sqrt(1.0 - beyond);
        m(after, 10) = std::sqrt(beyond);
        series.frames.push_back({series.frames.size(), 0.0, m});
    }
    const auto tp = select_time_points(series, s);
    ASSERT_TRUE(tp.has_value());
    EXPECT_EQ(tp->t1, 2u);
    EXPECT_EQ(tp->t3, 5u);
    EXPECT_EQ(tp->t2, 3u);

    FieldSeries none;
    none.grid = g;
    none.frames.push_back({0, 0.0, ModulusFrame(g.n_x, g.n_y, 0.0)});
    EXPECT_FALSE(select_time_points(none, s).has_value());
}
