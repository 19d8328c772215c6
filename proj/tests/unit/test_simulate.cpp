#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "ltlab/errors.hpp"
#include "ltlab/simulate.hpp"

using namespace ltlab;

TEST(Mix64, MatchesSplitMix64ReferenceStream) {
    // SplitMix64 seeded with 0 emits mix64(k * golden_gamma) for k = 1, 2, 3.
    EXPECT_EQ(stream_seed({0, 0}), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(stream_seed({0, 1}), 0x6E789E6AA1B965F4ULL);
    EXPECT_EQ(stream_seed({0, 2}), 0x06C45D188009454FULL);
}

TEST(Mix64, DistinctPathIdsGiveDistinctStreams) {
    std::set<std::uint64_t> seeds;
    for (std::uint64_t id = 0; id < 10000; ++id) seeds.insert(stream_seed({20240601, id}));
    EXPECT_EQ(seeds.size(), 10000u);

    const auto grid = make_time_grid(1.0, 4);
    std::set<double> first_steps;
    for (std::uint64_t id = 0; id < 10000; ++id) {
        first_steps.insert(simulate(Brownian{}, grid, {20240601, id}).values[1]);
    }
    EXPECT_EQ(first_steps.size(), 10000u);
}

TEST(GaussianStream, Moments) {
    GaussianStream g(99);
    const int n = 1'000'000;
    double s1 = 0.0, s2 = 0.0, s4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = g.next();
        s1 += z;
        s2 += z * z;
        s4 += z * z * z * z;
    }
    EXPECT_NEAR(s1 / n, 0.0, 5.0 / std::sqrt(n));
    EXPECT_NEAR(s2 / n, 1.0, 5.0 * std::sqrt(2.0 / n));
    EXPECT_NEAR(s4 / n, 3.0, 5.0 * std::sqrt(96.0 / n));
}

TEST(GaussianStream, UniformInUnitInterval) {
    GaussianStream g(1);
    for (int i = 0; i < 100000; ++i) {
        const double u = g.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Simulate, DeterministicForFixedInputs) {
    const auto grid = make_time_grid(1.0, 1024);
    for (const ProcessSpec& spec : std::vector<ProcessSpec>{Brownian{}, DriftedBrownian{0.3, 2.0},
                                                            OrnsteinUhlenbeck{1.5, 0.7, 0.2},
                                                            GeometricBrownian{0.05, 0.3, 2.0}}) {
        const auto a = simulate(spec, grid, {17, 3});
        const auto b = simulate(spec, grid, {17, 3});
        EXPECT_EQ(a.values, b.values);
        EXPECT_EQ(a.qv, b.qv);
        EXPECT_NE(a.values, simulate(spec, grid, {17, 4}).values);
    }
}

TEST(Simulate, RejectsInvalidParameters) {
    const auto grid = make_time_grid(1.0, 8);
    EXPECT_THROW(simulate(DriftedBrownian{0.0, 0.0}, grid, {}), InvalidArgument);
    EXPECT_THROW(simulate(OrnsteinUhlenbeck{0.0, 1.0, 0.0}, grid, {}), InvalidArgument);
    EXPECT_THROW(simulate(OrnsteinUhlenbeck{1.0, -1.0, 0.0}, grid, {}), InvalidArgument);
    EXPECT_THROW(simulate(GeometricBrownian{0.0, 1.0, 0.0}, grid, {}), InvalidArgument);
    EXPECT_THROW(simulate(Deterministic{"square"}, grid, {}), InvalidArgument);
}

TEST(Simulate, BrownianQvMeanIsTEnd) {
    // Var(qv_end) = n * Var((dB)^2) = n * 2 dt^2.
    const std::size_t n = 1 << 16;
    const int paths = 1000;
    const auto grid = make_time_grid(1.0, n);
    double sum = 0.0;
    double max_increment = 0.0;
    for (int id = 0; id < paths; ++id) {
        const auto p = simulate(Brownian{}, grid, {2024, static_cast<std::uint64_t>(id)});
        sum += p.qv.back();
        if (id == 0) {
            for (std::size_t i = 0; i < n; ++i) max_increment = std::max(max_increment, std::abs(p.values[i + 1] - p.values[i]));
        }
    }
    const double se = std::sqrt(2.0 * grid.dt() * grid.dt() * n) / std::sqrt(paths);
    EXPECT_NEAR(sum / paths, 1.0, 3.0 * se);

    const double bound = 6.0 * std::sqrt(grid.dt() * 2.0 * std::log(static_cast<double>(n)));
    if (max_increment >= bound) {
        std::cerr << "warning: brownian max increment " << max_increment << " exceeds " << bound << '\n';
    }
}

TEST(Simulate, OrnsteinUhlenbeckExactTransitionMoments) {
    const OrnsteinUhlenbeck ou{2.0, 0.5, 1.0};
    const auto grid = make_time_grid(1.0, 4);  // coarse: exactness must not depend on dt
    const int paths = 20000;
    double s1 = 0.0, s2 = 0.0;
    for (int id = 0; id < paths; ++id) {
        const double x = simulate(ou, grid, {5, static_cast<std::uint64_t>(id)}).values.back();
        s1 += x;
        s2 += x * x;
    }
    const double mean = ou.x0 * std::exp(-ou.theta);
    const double var = ou.sigma * ou.sigma * (1.0 - std::exp(-2.0 * ou.theta)) / (2.0 * ou.theta);
    const double m = s1 / paths;
    EXPECT_NEAR(m, mean, 4.0 * std::sqrt(var / paths));
    EXPECT_NEAR(s2 / paths - m * m, var, 4.0 * var * std::sqrt(2.0 / paths));
}

TEST(Simulate, GeometricBrownianExactTransitionMoments) {
    const GeometricBrownian gbm{0.1, 0.4, 2.0};
    const auto grid = make_time_grid(1.0, 2);
    const int paths = 20000;
    double sum_log = 0.0;
    for (int id = 0; id < paths; ++id) {
        const auto p = simulate(gbm, grid, {6, static_cast<std::uint64_t>(id)});
        ASSERT_GT(p.values.back(), 0.0);
        sum_log += std::log(p.values.back());
    }
    const double expected = std::log(gbm.x0) + (gbm.mu - 0.5 * gbm.sigma * gbm.sigma);
    EXPECT_NEAR(sum_log / paths, expected, 4.0 * gbm.sigma / std::sqrt(paths));
}

TEST(Simulate, AnalyticQv) {
    const auto grid = make_time_grid(2.0, 16);
    const auto bm = simulate(Brownian{}, grid, {1, 0}, QvMode::analytic);
    for (std::size_t i = 0; i <= 16; ++i) EXPECT_DOUBLE_EQ(bm.qv[i], grid.point(i));
    const auto ou = simulate(OrnsteinUhlenbeck{1.0, 0.5, 0.0}, grid, {1, 0}, QvMode::analytic);
    EXPECT_DOUBLE_EQ(ou.qv.back(), 0.25 * 2.0);
    const auto gbm = simulate(GeometricBrownian{0.0, 0.3, 1.0}, grid, {1, 0}, QvMode::analytic);
    EXPECT_GT(gbm.qv.back(), 0.0);
    // Same values as realized mode; only qv differs.
    EXPECT_EQ(gbm.values, simulate(GeometricBrownian{0.0, 0.3, 1.0}, grid, {1, 0}).values);
}

TEST(DeterministicPath, Linear) {
    const auto grid = make_time_grid(1.0, 8);
    const auto p = simulate(Deterministic{"linear"}, grid, {});
    EXPECT_EQ(p.values, grid.points());
    EXPECT_NEAR(p.qv.back(), 1.0 / 8, 1e-16);
}

TEST(DeterministicPath, Zigzag) {
    const auto p = deterministic_path("zigzag", make_time_grid(1.0, 4));
    EXPECT_EQ(p.values, (std::vector<double>{0, 1, 0, 1, 0}));
    EXPECT_EQ(p.qv, (std::vector<double>{0, 1, 2, 3, 4}));
}

TEST(DeterministicPath, SineAndConstant) {
    const auto grid = make_time_grid(1.0, 100);
    const auto s = deterministic_path("sine", grid);
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        EXPECT_LE(std::abs(s.values[i]), 1.0);
        EXPECT_DOUBLE_EQ(s.values[i], std::sin(2.0 * std::numbers::pi * grid.point(i)));
    }
    const auto c = deterministic_path("constant", grid);
    for (double v : c.values) EXPECT_EQ(v, 0.0);
    for (double q : c.qv) EXPECT_EQ(q, 0.0);
    EXPECT_THROW(deterministic_path("triangle", grid), InvalidArgument);
}

TEST(DeterministicPath, PrescribedQv) {
    const auto p = deterministic_path("zigzag", make_time_grid(1.0, 4));
    const auto q = with_prescribed_qv(p, {0.0, 1.0, 3.0, 6.0, 10.0});
    EXPECT_EQ(q.values, p.values);
    EXPECT_DOUBLE_EQ(q.qv_increment(3), 4.0);
    EXPECT_THROW(with_prescribed_qv(p, {0.0, 1.0, 0.5, 6.0, 10.0}), InvalidArgument);
}
