#include "rough/path.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "rough/errors.hpp"

namespace rough {

namespace {

constexpr double kGridTol = 1e-12;

double euclid(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = b[i] - a[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

SampledPath::SampledPath(std::vector<double> times, std::vector<double> values, std::size_t dim)
    : times_(std::move(times)), values_(std::move(values)), dim_(dim) {
    if (dim_ == 0) throw ShapeError("SampledPath: dim must be positive");
    if (times_.size() < 2) throw ShapeError("SampledPath: need at least two samples");
    if (values_.size() != times_.size() * dim_)
        throw ShapeError("SampledPath: value count does not match time count");
    if (std::abs(times_.front()) > kGridTol || std::abs(times_.back() - 1.0) > kGridTol)
        throw ShapeError("SampledPath: time grid must span [0,1]");
    for (std::size_t k = 0; k + 1 < times_.size(); ++k)
        if (!(times_[k] < times_[k + 1]))
            throw ShapeError("SampledPath: times must be strictly increasing");
}

std::vector<double> SampledPath::at(double t) const {
    std::vector<double> out(dim_);
    if (t <= times_.front()) {
        for (std::size_t c = 0; c < dim_; ++c) out[c] = value(0, c);
        return out;
    }
    if (t >= times_.back()) {
        for (std::size_t c = 0; c < dim_; ++c) out[c] = value(times_.size() - 1, c);
        return out;
    }
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - times_.begin()) - 1;
    const double w = (t - times_[k]) / (times_[k + 1] - times_[k]);
    for (std::size_t c = 0; c < dim_; ++c)
        out[c] = (1.0 - w) * value(k, c) + w * value(k + 1, c);
    return out;
}

TwoParamGrid::TwoParamGrid(std::vector<double> s, std::vector<double> t, std::vector<double> v)
    : s_grid(std::move(s)), t_grid(std::move(t)), values(std::move(v)) {
    if (s_grid.size() < 2 || t_grid.size() < 2)
        throw ShapeError("TwoParamGrid: need at least 2 points per axis");
    if (values.size() != s_grid.size() * t_grid.size())
        throw ShapeError("TwoParamGrid: matrix shape does not match grids");
    for (std::size_t i = 0; i + 1 < s_grid.size(); ++i)
        if (!(s_grid[i] < s_grid[i + 1])) throw ShapeError("TwoParamGrid: s grid not increasing");
    for (std::size_t j = 0; j + 1 < t_grid.size(); ++j)
        if (!(t_grid[j] < t_grid[j + 1])) throw ShapeError("TwoParamGrid: t grid not increasing");
}

CameronMartinPath::CameronMartinPath(SampledPath h) : h_(std::move(h)), energy_(0.0) {
    const auto& times = h_.times();
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double dt = times[k + 1] - times[k];
        double inc2 = 0.0;
        for (std::size_t c = 0; c < h_.dim(); ++c) {
            const double d = h_.value(k + 1, c) - h_.value(k, c);
            inc2 += d * d;
        }
        energy_ += 0.5 * inc2 / dt;
    }
}

double p_variation(const IncrementNorm& inc, std::size_t npoints, double p) {
    if (p < 1.0) throw RegularityError("p_variation requires p >= 1");
    if (npoints < 2) throw ShapeError("p_variation: need at least two grid points");
    // best[j] = max over partitions of [t_0, t_j] of sum |A|^p
    std::vector<double> best(npoints, 0.0);
    for (std::size_t j = 1; j < npoints; ++j) {
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < j; ++i)
            m = std::max(m, best[i] + std::pow(inc(i, j), p));
        best[j] = m;
    }
    return std::pow(best[npoints - 1], 1.0 / p);
}

double p_variation(const SampledPath& x, double p) {
    return p_variation(
        [&x](std::size_t i, std::size_t j) { return euclid(x.value(i), x.value(j)); },
        x.grid_size(), p);
}

double holder_norm(const IncrementNorm& inc, std::span<const double> times, double exponent) {
    if (!(exponent > 0.0 && exponent <= 1.0))
        throw RegularityError("holder_norm requires exponent in (0,1]");
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        for (std::size_t j = i + 1; j < times.size(); ++j)
            m = std::max(m, inc(i, j) / std::pow(times[j] - times[i], exponent));
    return m;
}

double holder_norm(const SampledPath& x, double exponent) {
    return holder_norm(
        [&x](std::size_t i, std::size_t j) { return euclid(x.value(i), x.value(j)); },
        x.times(), exponent);
}

namespace {

constexpr std::size_t kRhoExhaustiveCap = 12;

// Sum over cells of |rectangular increment|^rho for one partition pair;
// partitions are given as ordered index lists including both endpoints.
double rho_sum(const TwoParamGrid& R, const std::vector<std::size_t>& si,
               const std::vector<std::size_t>& tj, double rho) {
    double total = 0.0;
    for (std::size_t a = 0; a + 1 < si.size(); ++a)
        for (std::size_t b = 0; b + 1 < tj.size(); ++b) {
            const double rect = R(si[a + 1], tj[b + 1]) - R(si[a + 1], tj[b]) -
                                R(si[a], tj[b + 1]) + R(si[a], tj[b]);
            total += std::pow(std::abs(rect), rho);
        }
    return total;
}

// All subsets of interior points, endpoints always included.
void enumerate_partitions(std::size_t n, std::vector<std::vector<std::size_t>>& out) {
    const std::size_t interior = n - 2;
    out.clear();
    out.reserve(static_cast<std::size_t>(1) << interior);
    for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << interior); ++mask) {
        std::vector<std::size_t> part;
        part.push_back(0);
        for (std::size_t b = 0; b < interior; ++b)
            if (mask & (static_cast<std::size_t>(1) << b)) part.push_back(b + 1);
        part.push_back(n - 1);
        out.push_back(std::move(part));
    }
}

}  // namespace

RhoVariation rho_variation_2d(const TwoParamGrid& R, double rho) {
    if (rho < 1.0) throw RegularityError("rho_variation_2d requires rho >= 1");
    const std::size_t ns = R.s_grid.size();
    const std::size_t nt = R.t_grid.size();

    std::vector<std::size_t> full_s(ns), full_t(nt);
    for (std::size_t i = 0; i < ns; ++i) full_s[i] = i;
    for (std::size_t j = 0; j < nt; ++j) full_t[j] = j;

    if (ns > kRhoExhaustiveCap || nt > kRhoExhaustiveCap) {
        // Lower bound from the full-grid partition pair, flagged inexact.
        return {std::pow(rho_sum(R, full_s, full_t, rho), 1.0 / rho), false};
    }

    std::vector<std::vector<std::size_t>> s_parts, t_parts;
    enumerate_partitions(ns, s_parts);
    enumerate_partitions(nt, t_parts);
    double best = 0.0;
    for (const auto& sp : s_parts)
        for (const auto& tp : t_parts) best = std::max(best, rho_sum(R, sp, tp, rho));
    return {std::pow(best, 1.0 / rho), true};
}

std::vector<double> merge_times(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        double t;
        if (j == b.size() || (i < a.size() && a[i] < b[j] - kGridTol))
            t = a[i++];
        else if (i == a.size() || b[j] < a[i] - kGridTol)
            t = b[j++];
        else {
            t = a[i];
            ++i;
            ++j;
        }
        out.push_back(t);
    }
    return out;
}

SampledPath resample(const SampledPath& x, const std::vector<double>& new_times) {
    std::vector<double> values;
    values.reserve(new_times.size() * x.dim());
    for (double t : new_times) {
        const std::vector<double> v = x.at(t);
        values.insert(values.end(), v.begin(), v.end());
    }
    return SampledPath(new_times, std::move(values), x.dim());
}

SampledPath rs_integral(const SampledPath& y, const SampledPath& x) {
    const std::size_t d = x.dim();
    if (y.dim() % d != 0)
        throw ShapeError("rs_integral: integrand dim must be a multiple of integrator dim");
    const std::size_t n = y.dim() / d;

    const std::vector<double> times = merge_times(y.times(), x.times());
    const SampledPath yr = resample(y, times);
    const SampledPath xr = resample(x, times);

    std::vector<double> out(times.size() * n, 0.0);
    std::vector<double> acc(n, 0.0);
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        // trapezoid per segment: exact for piecewise-linear y against piecewise-linear x
        for (std::size_t a = 0; a < n; ++a) {
            double s = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                const double ymid = 0.5 * (yr.value(k, a * d + c) + yr.value(k + 1, a * d + c));
                s += ymid * (xr.value(k + 1, c) - xr.value(k, c));
            }
            acc[a] += s;
            out[(k + 1) * n + a] = acc[a];
        }
    }
    return SampledPath(times, std::move(out), n);
}

SampledPath young_integral(const SampledPath& y, const SampledPath& x, double p, double q) {
    if (!(1.0 / p + 1.0 / q > 1.0))
        throw RegularityError("young_integral requires 1/p + 1/q > 1");
    if (y.grid_size() != x.grid_size())
        throw ShapeError("young_integral: grids must agree");
    const std::size_t d = x.dim();
    if (y.dim() % d != 0)
        throw ShapeError("young_integral: integrand dim must be a multiple of integrator dim");
    const std::size_t n = y.dim() / d;

    std::vector<double> out(x.grid_size() * n, 0.0);
    std::vector<double> acc(n, 0.0);
    for (std::size_t k = 0; k + 1 < x.grid_size(); ++k) {
        for (std::size_t a = 0; a < n; ++a) {
            double s = 0.0;
            for (std::size_t c = 0; c < d; ++c)
                s += y.value(k, a * d + c) * (x.value(k + 1, c) - x.value(k, c));
            acc[a] += s;
            out[(k + 1) * n + a] = acc[a];
        }
    }
    return SampledPath(x.times(), std::move(out), n);
}

double cm_energy(const CameronMartinPath& h) { return h.energy(); }

}  // namespace rough
