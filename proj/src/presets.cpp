#include "rough/presets.hpp"

#include <cmath>
#include <cstddef>

#include "rough/errors.hpp"

namespace rough::presets {

namespace {

std::vector<double> dyadic_times(int m) {
    const std::size_t npts = (static_cast<std::size_t>(1) << m) + 1;
    std::vector<double> t(npts);
    for (std::size_t k = 0; k < npts; ++k)
        t[k] = static_cast<double>(k) / static_cast<double>(npts - 1);
    t.back() = 1.0;
    return t;
}

SampledPath from_function(int m, std::size_t dim,
                          const std::function<void(double, double*)>& f) {
    const std::vector<double> times = dyadic_times(m);
    std::vector<double> values(times.size() * dim);
    for (std::size_t k = 0; k < times.size(); ++k) f(times[k], values.data() + k * dim);
    return SampledPath(times, std::move(values), dim);
}

}  // namespace

SampledPath path(const std::string& name, int m) {
    if (name == "linear" || name == "time")
        return from_function(m, 1, [](double t, double* v) { v[0] = t; });
    if (name == "circle")
        return from_function(m, 2, [](double t, double* v) {
            v[0] = std::cos(2 * M_PI * t) - 1.0;
            v[1] = std::sin(2 * M_PI * t);
        });
    if (name == "parabola")
        return from_function(m, 2, [](double t, double* v) {
            v[0] = t;
            v[1] = t * t;
        });
    if (name == "tcubed")
        return from_function(m, 2, [](double t, double* v) {
            v[0] = t;
            v[1] = t * t * t;
        });
    if (name == "zigzag")
        return SampledPath({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0}, 1);
    throw ShapeError("unknown path preset: " + name);
}

VectorFieldFamily vector_field(const std::string& name, std::size_t dim) {
    VectorFieldFamily vf;
    if (name == "identity") {
        const std::size_t n = dim;
        vf.state_dim = n;
        vf.noise_dim = n;
        vf.sigma = [n](std::span<const double>, double* out) {
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t i = 0; i < n; ++i) out[a * n + i] = (a == i) ? 1.0 : 0.0;
        };
        vf.dsigma = [n](std::span<const double>, double* out) {
            for (std::size_t q = 0; q < n * n * n; ++q) out[q] = 0.0;
        };
        vf.d2sigma = [n](std::span<const double>, double* out) {
            for (std::size_t q = 0; q < n * n * n * n; ++q) out[q] = 0.0;
        };
        return vf;
    }
    if (name == "geometric" || name == "geom_decay") {
        vf.state_dim = 1;
        vf.noise_dim = 1;
        vf.sigma = [](std::span<const double> y, double* out) { out[0] = y[0]; };
        vf.dsigma = [](std::span<const double>, double* out) { out[0] = 1.0; };
        vf.d2sigma = [](std::span<const double>, double* out) { out[0] = 0.0; };
        if (name == "geom_decay") {
            vf.drift = [](std::span<const double> y, double* out) { out[0] = -y[0]; };
            vf.ddrift = [](std::span<const double>, double* out) { out[0] = -1.0; };
        }
        return vf;
    }
    if (name == "area") {
        // dy1 = dx1, dy2 = y1 dx2
        vf.state_dim = 2;
        vf.noise_dim = 2;
        vf.sigma = [](std::span<const double> y, double* out) {
            out[0] = 1.0;
            out[1] = 0.0;
            out[2] = 0.0;
            out[3] = y[0];
        };
        vf.dsigma = [](std::span<const double>, double* out) {
            for (int q = 0; q < 8; ++q) out[q] = 0.0;
            out[6] = 1.0;  // d sigma_{2,2} / d y_1
        };
        vf.d2sigma = [](std::span<const double>, double* out) {
            for (int q = 0; q < 16; ++q) out[q] = 0.0;
        };
        return vf;
    }
    if (name == "rotation") {
        // bounded C^3_b coefficients
        vf.state_dim = 2;
        vf.noise_dim = 2;
        vf.sigma = [](std::span<const double> y, double* out) {
            out[0] = std::sin(y[1]);
            out[1] = std::cos(y[1]);
            out[2] = std::cos(y[0]);
            out[3] = -std::sin(y[0]);
        };
        vf.dsigma = [](std::span<const double> y, double* out) {
            for (int q = 0; q < 8; ++q) out[q] = 0.0;
            out[0 * 2 + 1] = std::cos(y[1]);   // (a=1,i=1): d/dy2
            out[1 * 2 + 1] = -std::sin(y[1]);  // (a=1,i=2): d/dy2
            out[2 * 2 + 0] = -std::sin(y[0]);  // (a=2,i=1): d/dy1
            out[3 * 2 + 0] = -std::cos(y[0]);  // (a=2,i=2): d/dy1
        };
        vf.d2sigma = [](std::span<const double> y, double* out) {
            for (int q = 0; q < 32; ++q) out[q] = 0.0;
            out[(0 * 2 + 1) * 2 + 1] = -std::sin(y[1]);
            out[(1 * 2 + 1) * 2 + 1] = -std::cos(y[1]);
            out[(2 * 2 + 0) * 2 + 0] = -std::cos(y[0]);
            out[(3 * 2 + 0) * 2 + 0] = std::sin(y[0]);
        };
        return vf;
    }
    throw ShapeError("unknown vector field preset: " + name);
}

OneForm one_form(const std::string& name) {
    OneForm f;
    if (name == "exact") {
        // f = dg for g(x) = |x|^2/2 on R^2
        f.in_dim = 2;
        f.out_dim = 1;
        f.value = [](std::span<const double> x, double* out) {
            out[0] = x[0];
            out[1] = x[1];
        };
        f.gradient = [](std::span<const double>, double* out) {
            out[0] = 1.0;  // (a=1,j=1,k=1)
            out[1] = 0.0;
            out[2] = 0.0;
            out[3] = 1.0;  // (a=1,j=2,k=2)
        };
        return f;
    }
    if (name == "swirl") {
        f.in_dim = 2;
        f.out_dim = 2;
        f.value = [](std::span<const double> x, double* out) {
            out[0] = std::sin(x[1]);
            out[1] = std::cos(x[0]);
            out[2] = x[1] * 0.5;
            out[3] = std::sin(x[0] + x[1]);
        };
        f.gradient = [](std::span<const double> x, double* out) {
            // (a,j,k) = d f_{a,j} / d x_k
            for (int q = 0; q < 8; ++q) out[q] = 0.0;
            out[(0 * 2 + 0) * 2 + 1] = std::cos(x[1]);
            out[(0 * 2 + 1) * 2 + 0] = -std::sin(x[0]);
            out[(1 * 2 + 0) * 2 + 1] = 0.5;
            out[(1 * 2 + 1) * 2 + 0] = std::cos(x[0] + x[1]);
            out[(1 * 2 + 1) * 2 + 1] = std::cos(x[0] + x[1]);
        };
        return f;
    }
    throw ShapeError("unknown one-form preset: " + name);
}

}  // namespace rough::presets
