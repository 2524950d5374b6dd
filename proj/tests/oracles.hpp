#pragma once

// Test-side oracles, independent of the implementation paths they check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "rough/path.hpp"

namespace oracles {

// Brute-force p-variation: enumerate every partition of the grid.
inline double brute_force_p_variation(const rough::IncrementNorm& inc, std::size_t npoints,
                                      double p) {
    const std::size_t interior = npoints - 2;
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < (1ull << interior); ++mask) {
        std::vector<std::size_t> part{0};
        for (std::size_t b = 0; b < interior; ++b)
            if (mask & (1ull << b)) part.push_back(b + 1);
        part.push_back(npoints - 1);
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < part.size(); ++i)
            sum += std::pow(inc(part[i], part[i + 1]), p);
        best = std::max(best, sum);
    }
    return std::pow(best, 1.0 / p);
}

// Exact Riemann-Stieltjes Lévy area of a piecewise-linear planar path:
// (1/2) ∮ (x1 dx2 - x2 dx1), trapezoid per segment.
inline double rs_levy_area(const rough::SampledPath& x) {
    double area = 0.0;
    for (std::size_t k = 0; k + 1 < x.grid_size(); ++k) {
        const double x1m = 0.5 * (x.value(k, 0) + x.value(k + 1, 0));
        const double x2m = 0.5 * (x.value(k, 1) + x.value(k + 1, 1));
        const double dx1 = x.value(k + 1, 0) - x.value(k, 0);
        const double dx2 = x.value(k + 1, 1) - x.value(k, 1);
        area += 0.5 * (x1m * dx2 - x2m * dx1);
    }
    return area;
}

// Exact second iterated integral ∫_s^t (x_u - x_s) ⊗ dx_u of a
// piecewise-linear path over the whole grid, d x d row-major.
inline std::vector<double> rs_second_level(const rough::SampledPath& x) {
    const std::size_t d = x.dim();
    std::vector<double> acc(d * d, 0.0);
    for (std::size_t k = 0; k + 1 < x.grid_size(); ++k)
        for (std::size_t i = 0; i < d; ++i) {
            const double xi = x.value(k, i) - x.value(0, i);
            const double dxi = x.value(k + 1, i) - x.value(k, i);
            for (std::size_t j = 0; j < d; ++j) {
                const double dxj = x.value(k + 1, j) - x.value(k, j);
                acc[i * d + j] += xi * dxj + 0.5 * dxi * dxj;
            }
        }
    return acc;
}

// Classical RK4 for dy = sigma(y) x'(t) dt with piecewise-linear x,
// `substeps` stages per path segment.
inline std::vector<double> rk4_driven_ode(
    const rough::SampledPath& x,
    const std::function<void(const std::vector<double>&, double*)>& sigma, std::size_t n,
    std::vector<double> y, std::size_t substeps) {
    const std::size_t d = x.dim();
    std::vector<double> sig(n * d), k1(n), k2(n), k3(n), k4(n), tmp(n);
    const auto rhs = [&](const std::vector<double>& state, const std::vector<double>& xdot,
                         std::vector<double>& out) {
        sigma(state, sig.data());
        for (std::size_t a = 0; a < n; ++a) {
            double s = 0.0;
            for (std::size_t c = 0; c < d; ++c) s += sig[a * d + c] * xdot[c];
            out[a] = s;
        }
    };
    for (std::size_t seg = 0; seg + 1 < x.grid_size(); ++seg) {
        const double dt = (x.times()[seg + 1] - x.times()[seg]) / substeps;
        std::vector<double> xdot(d);
        for (std::size_t c = 0; c < d; ++c)
            xdot[c] = (x.value(seg + 1, c) - x.value(seg, c)) /
                      (x.times()[seg + 1] - x.times()[seg]);
        for (std::size_t s = 0; s < substeps; ++s) {
            rhs(y, xdot, k1);
            for (std::size_t a = 0; a < n; ++a) tmp[a] = y[a] + 0.5 * dt * k1[a];
            rhs(tmp, xdot, k2);
            for (std::size_t a = 0; a < n; ++a) tmp[a] = y[a] + 0.5 * dt * k2[a];
            rhs(tmp, xdot, k3);
            for (std::size_t a = 0; a < n; ++a) tmp[a] = y[a] + dt * k3[a];
            rhs(tmp, xdot, k4);
            for (std::size_t a = 0; a < n; ++a)
                y[a] += dt / 6.0 * (k1[a] + 2 * k2[a] + 2 * k3[a] + k4[a]);
        }
    }
    return y;
}

// P(N(0,1) >= x)
inline double normal_tail(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// Random piecewise-linear path on the dyadic grid with bounded increments.
inline rough::SampledPath random_pl_path(std::uint64_t seed, std::size_t dim, int m,
                                         double amplitude = 1.0) {
    const std::size_t npts = (static_cast<std::size_t>(1) << m) + 1;
    std::vector<double> times(npts), values(npts * dim, 0.0);
    for (std::size_t k = 0; k < npts; ++k)
        times[k] = static_cast<double>(k) / static_cast<double>(npts - 1);
    times.back() = 1.0;
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t k = 1; k < npts; ++k)
        for (std::size_t c = 0; c < dim; ++c)
            values[k * dim + c] =
                values[(k - 1) * dim + c] + amplitude * u(gen) / static_cast<double>(npts - 1);
    return rough::SampledPath(std::move(times), std::move(values), dim);
}

}  // namespace oracles
