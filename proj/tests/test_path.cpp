#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "rough/errors.hpp"
#include "rough/path.hpp"
#include "rough/presets.hpp"
#include "rough/stochastic.hpp"

using namespace rough;

TEST_CASE("SampledPath invariants") {
    CHECK_THROWS_AS(SampledPath({0.0, 0.5}, {0.0, 1.0, 2.0}, 1), ShapeError);  // count mismatch
    CHECK_THROWS_AS(SampledPath({0.0, 0.5, 0.5, 1.0}, {0.0, 1.0, 2.0, 3.0}, 1), ShapeError);
    CHECK_THROWS_AS(SampledPath({0.1, 1.0}, {0.0, 1.0}, 1), ShapeError);  // must start at 0
    CHECK_THROWS_AS(SampledPath({0.0, 0.9}, {0.0, 1.0}, 1), ShapeError);  // must end at 1
}

TEST_CASE("p_variation") {
    SUBCASE("linear path: |v| for any p >= 1") {
        const SampledPath line = presets::path("linear", 4);
        for (double p : {1.0, 1.5, 2.0, 3.0}) CHECK(p_variation(line, p) == doctest::Approx(1.0));
    }
    SUBCASE("zigzag 0->1->0: total variation 2, 2-variation sqrt(2)") {
        const SampledPath zig = presets::path("zigzag", 0);
        CHECK(p_variation(zig, 1.0) == doctest::Approx(2.0));
        CHECK(p_variation(zig, 2.0) == doctest::Approx(std::sqrt(2.0)));
        // against the brute-force oracle
        const auto inc = [&zig](std::size_t i, std::size_t j) {
            return std::abs(zig.value(j, 0) - zig.value(i, 0));
        };
        CHECK(p_variation(zig, 2.0) ==
              doctest::Approx(oracles::brute_force_p_variation(inc, 3, 2.0)));
    }
    SUBCASE("matches brute force on random small paths") {
        for (std::uint64_t seed : {3u, 4u, 5u}) {
            const SampledPath x = oracles::random_pl_path(seed, 2, 3, 4.0);
            const auto inc = [&x](std::size_t i, std::size_t j) {
                double s = 0.0;
                for (std::size_t c = 0; c < x.dim(); ++c) {
                    const double d = x.value(j, c) - x.value(i, c);
                    s += d * d;
                }
                return std::sqrt(s);
            };
            for (double p : {1.0, 1.7, 2.5})
                CHECK(p_variation(x, p) ==
                      doctest::Approx(oracles::brute_force_p_variation(inc, x.grid_size(), p)));
        }
    }
    SUBCASE("non-increasing in p; dominates the endpoint increment at p=1") {
        const SampledPath x = oracles::random_pl_path(17, 1, 5, 3.0);
        double prev = p_variation(x, 1.0);
        CHECK(prev >= std::abs(x.value(x.grid_size() - 1, 0) - x.value(0, 0)));
        for (double p : {1.3, 1.9, 2.4, 3.0, 4.0}) {
            const double cur = p_variation(x, p);
            CHECK(cur <= prev * (1 + 1e-12));
            prev = cur;
        }
    }
    SUBCASE("p < 1 rejected") {
        const SampledPath x = presets::path("linear", 2);
        CHECK_THROWS_AS((void)p_variation(x, 0.5), RegularityError);
    }
}

TEST_CASE("holder_norm") {
    SUBCASE("linear scalar path, exponent 1") {
        const SampledPath line = presets::path("linear", 5);
        CHECK(holder_norm(line, 1.0) == doctest::Approx(1.0));
    }
    SUBCASE("constant path") {
        const SampledPath c({0.0, 0.5, 1.0}, {2.0, 2.0, 2.0}, 1);
        CHECK(holder_norm(c, 0.5) == doctest::Approx(0.0));
    }
    SUBCASE("Brownian sample: exponent 0.55 grows under refinement, 0.45 stays tame") {
        const SampledPath w = sample({GaussianKind::brownian, 0.5, 1, 10, 2024});
        std::vector<double> h45, h55;
        for (int m = 6; m <= 10; ++m) {
            std::vector<double> coarse((1u << m) + 1);
            for (std::size_t k = 0; k < coarse.size(); ++k)
                coarse[k] = static_cast<double>(k) / static_cast<double>(coarse.size() - 1);
            coarse.back() = 1.0;
            const SampledPath wm = resample(w, coarse);
            h45.push_back(holder_norm(wm, 0.45));
            h55.push_back(holder_norm(wm, 0.55));
        }
        for (std::size_t i = 0; i + 1 < h55.size(); ++i) CHECK(h55[i + 1] > h55[i]);
        CHECK(h55.back() / h55.front() > h45.back() / h45.front());
        CHECK(std::isfinite(h45.back()));
    }
}

TEST_CASE("rho_variation_2d") {
    SUBCASE("R(s,t) = s*t telescopes to 1 at rho = 1") {
        std::vector<double> grid{0.0, 0.3, 0.6, 1.0};
        std::vector<double> vals;
        for (double s : grid)
            for (double t : grid) vals.push_back(s * t);
        const TwoParamGrid R(grid, grid, vals);
        const auto res = rho_variation_2d(R, 1.0);
        CHECK(res.exact);
        CHECK(res.value == doctest::Approx(1.0));
    }
    SUBCASE("constant R has zero variation") {
        std::vector<double> grid{0.0, 0.5, 1.0};
        const TwoParamGrid R(grid, grid, std::vector<double>(9, 3.0));
        CHECK(rho_variation_2d(R, 1.5).value == doctest::Approx(0.0));
    }
    SUBCASE("R(s,t) = min(s,t) on the dyadic 8-point grid: exactly 1") {
        std::vector<double> grid(8);
        for (std::size_t k = 0; k < 8; ++k) grid[k] = static_cast<double>(k) / 7.0;
        std::vector<double> vals;
        for (double s : grid)
            for (double t : grid) vals.push_back(std::min(s, t));
        const auto res = rho_variation_2d(TwoParamGrid(grid, grid, vals), 1.0);
        CHECK(res.exact);
        CHECK(res.value == doctest::Approx(1.0));
    }
    SUBCASE("grids beyond the cap return a flagged lower bound") {
        std::vector<double> grid(14);
        for (std::size_t k = 0; k < grid.size(); ++k)
            grid[k] = static_cast<double>(k) / static_cast<double>(grid.size() - 1);
        std::vector<double> vals;
        for (double s : grid)
            for (double t : grid) vals.push_back(std::min(s, t));
        const auto res = rho_variation_2d(TwoParamGrid(grid, grid, vals), 1.0);
        CHECK_FALSE(res.exact);
        CHECK(res.value == doctest::Approx(1.0));  // full grid already attains it here
    }
    SUBCASE("rho < 1 rejected") {
        std::vector<double> grid{0.0, 1.0};
        const TwoParamGrid R(grid, grid, {0.0, 0.0, 0.0, 1.0});
        CHECK_THROWS_AS((void)rho_variation_2d(R, 0.9), RegularityError);
    }
}

TEST_CASE("rs_integral") {
    SUBCASE("∫ t dt = 1/2 exactly for piecewise-linear data") {
        const SampledPath t = presets::path("linear", 6);
        const SampledPath I = rs_integral(t, t);
        CHECK(I.value(I.grid_size() - 1, 0) == doctest::Approx(0.5));
    }
    SUBCASE("∫ t^2 dt = 1/3 up to discretization") {
        const SampledPath t = presets::path("linear", 10);
        std::vector<double> sq(t.grid_size());
        for (std::size_t k = 0; k < t.grid_size(); ++k) sq[k] = t.times()[k] * t.times()[k];
        const SampledPath y(t.times(), sq, 1);
        const SampledPath I = rs_integral(y, t);
        CHECK(I.value(I.grid_size() - 1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
    }
    SUBCASE("∫ x dx = x(1)^2/2 exactly for any piecewise-linear x with x(0)=0") {
        const SampledPath x = oracles::random_pl_path(8, 1, 4, 5.0);
        const SampledPath I = rs_integral(x, x);
        const double x1 = x.value(x.grid_size() - 1, 0);
        CHECK(I.value(I.grid_size() - 1, 0) == doctest::Approx(0.5 * x1 * x1));
    }
    SUBCASE("incompatible shapes rejected") {
        const SampledPath x = presets::path("circle", 3);   // dim 2
        const SampledPath y = presets::path("linear", 3);   // dim 1
        CHECK_THROWS_AS((void)rs_integral(y, x), ShapeError);
    }
}

TEST_CASE("young_integral") {
    SUBCASE("constant integrand: c (x_t - x_0)") {
        const SampledPath x = oracles::random_pl_path(4, 1, 5, 2.0);
        const SampledPath c(x.times(), std::vector<double>(x.grid_size(), 3.0), 1);
        const SampledPath I = young_integral(c, x, 2.5, 1.0);
        for (std::size_t k = 0; k < x.grid_size(); ++k)
            CHECK(I.value(k, 0) == doctest::Approx(3.0 * (x.value(k, 0) - x.value(0, 0))));
    }
    SUBCASE("y=t against x=t at 2^12 points: 1/2 within 1e-3") {
        const SampledPath t = presets::path("linear", 12);
        const SampledPath I = young_integral(t, t, 2.0, 1.0);
        CHECK(I.value(I.grid_size() - 1, 0) == doctest::Approx(0.5).epsilon(1e-3));
    }
    SUBCASE("left-point sum approaches rs_integral under refinement") {
        double prev_gap = 1e9;
        for (int m : {8, 10, 12}) {
            const SampledPath t = presets::path("linear", m);
            std::vector<double> sy(t.grid_size()), sx(t.grid_size());
            for (std::size_t k = 0; k < t.grid_size(); ++k) {
                sy[k] = std::sin(3.0 * t.times()[k]);
                sx[k] = std::cos(2.0 * t.times()[k]);
            }
            const SampledPath y(t.times(), sy, 1);
            const SampledPath x(t.times(), sx, 1);
            const double young = young_integral(y, x, 2.5, 1.0).value(t.grid_size() - 1, 0);
            const double rs = rs_integral(y, x).value(t.grid_size() - 1, 0);
            const double gap = std::abs(young - rs);
            // |young - rs| <= mesh * Lip(y) * Lip(x) here; assert with slack
            CHECK(gap < 2.0 * std::pow(2.0, -m) * 3.0 * 2.0);
            CHECK(gap < prev_gap);
            prev_gap = gap;
        }
    }
    SUBCASE("bilinear in (y-values, x-increments)") {
        const SampledPath x = oracles::random_pl_path(31, 1, 4);
        const SampledPath y1 = oracles::random_pl_path(32, 1, 4);
        const SampledPath y2 = oracles::random_pl_path(33, 1, 4);
        std::vector<double> comb(y1.grid_size());
        for (std::size_t k = 0; k < comb.size(); ++k)
            comb[k] = 2.0 * y1.value(k, 0) - 0.5 * y2.value(k, 0);
        const SampledPath yc(y1.times(), comb, 1);
        const double lhs = young_integral(yc, x, 2.5, 1.0).value(x.grid_size() - 1, 0);
        const double rhs = 2.0 * young_integral(y1, x, 2.5, 1.0).value(x.grid_size() - 1, 0) -
                           0.5 * young_integral(y2, x, 2.5, 1.0).value(x.grid_size() - 1, 0);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
    SUBCASE("regularity gate: 1/p + 1/q <= 1 rejected") {
        const SampledPath t = presets::path("linear", 3);
        CHECK_THROWS_AS((void)young_integral(t, t, 2.0, 2.0 + 1e-9), RegularityError);
    }
}

TEST_CASE("cm_energy") {
    SUBCASE("h(t) = t has energy 1/2") {
        const CameronMartinPath h(presets::path("linear", 4));
        CHECK(cm_energy(h) == doctest::Approx(0.5));
    }
    SUBCASE("zero path has zero energy") {
        const CameronMartinPath h(SampledPath({0.0, 1.0}, {0.0, 0.0}, 1));
        CHECK(cm_energy(h) == doctest::Approx(0.0));
    }
    SUBCASE("ramp then flat: 1/4") {
        const CameronMartinPath h(SampledPath({0.0, 0.5, 1.0}, {0.0, 0.5, 0.5}, 1));
        CHECK(cm_energy(h) == doctest::Approx(0.25));
    }
    SUBCASE("quadratic scaling in the path") {
        const SampledPath base = oracles::random_pl_path(9, 2, 4);
        std::vector<double> scaled(base.data());
        for (double& v : scaled) v *= 3.0;
        const double e1 = cm_energy(CameronMartinPath(base));
        const double e2 = cm_energy(CameronMartinPath(SampledPath(base.times(), scaled, 2)));
        CHECK(e2 == doctest::Approx(9.0 * e1));
    }
}
