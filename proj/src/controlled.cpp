#include "rough/controlled.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "rough/errors.hpp"

namespace rough {

ControlledPath::ControlledPath(std::shared_ptr<const RoughPath> ref, std::size_t vdim,
                               std::vector<double> values, std::vector<double> derivs)
    : ref_(std::move(ref)), vdim_(vdim), values_(std::move(values)), derivs_(std::move(derivs)) {
    if (!ref_) throw ShapeError("ControlledPath: missing reference");
    if (ref_->level() != 2) throw ShapeError("ControlledPath: reference must be level 2");
    const std::size_t m = ref_->grid_size();
    if (values_.size() != m * vdim_ || derivs_.size() != m * vdim_ * ref_->dim())
        throw ShapeError("ControlledPath: value/derivative array shape mismatch");
}

std::vector<double> ControlledPath::remainder(std::size_t i, std::size_t j) const {
    const std::size_t d = ref_->dim();
    std::vector<double> r(vdim_);
    std::vector<double> inc(d);
    for (std::size_t c = 0; c < d; ++c)
        inc[c] = ref_->basepoint(j).deg1(c) - ref_->basepoint(i).deg1(c);
    const auto yi = value(i);
    const auto yj = value(j);
    const auto dy = deriv(i);
    for (std::size_t a = 0; a < vdim_; ++a) {
        double s = yj[a] - yi[a];
        for (std::size_t c = 0; c < d; ++c) s -= dy[a * d + c] * inc[c];
        r[a] = s;
    }
    return r;
}

ControlledPath from_reference(std::shared_ptr<const RoughPath> X) {
    if (!X) throw ShapeError("from_reference: missing reference");
    const std::size_t d = X->dim();
    const std::size_t m = X->grid_size();
    std::vector<double> values(m * d);
    std::vector<double> derivs(m * d * d, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t c = 0; c < d; ++c) values[k * d + c] = X->basepoint(k).deg1(c);
        for (std::size_t c = 0; c < d; ++c) derivs[(k * d + c) * d + c] = 1.0;
    }
    return ControlledPath(std::move(X), d, std::move(values), std::move(derivs));
}

void check_smooth_map(const SmoothMap& g, std::span<const double> points, std::size_t npoints) {
    if (!g.value || !g.jacobian) throw ShapeError("smooth map must provide value and jacobian");
    const std::size_t in = g.in_dim, out = g.out_dim;
    const double h = 1e-6;
    std::vector<double> x(in), fp(out), fm(out), jac(out * in);
    for (std::size_t pt = 0; pt < npoints; ++pt) {
        for (std::size_t c = 0; c < in; ++c) x[c] = points[pt * in + c];
        g.jacobian(x, jac.data());
        for (std::size_t b = 0; b < in; ++b) {
            x[b] += h;
            g.value(x, fp.data());
            x[b] -= 2 * h;
            g.value(x, fm.data());
            x[b] += h;
            for (std::size_t a = 0; a < out; ++a) {
                const double fd = (fp[a] - fm[a]) / (2 * h);
                const double an = jac[a * in + b];
                if (std::abs(fd - an) / std::max(1.0, std::abs(an)) > 1e-5)
                    throw ShapeError("smooth map jacobian fails finite-difference check");
            }
        }
    }
}

ControlledPath compose(const SmoothMap& g, const ControlledPath& yp) {
    if (g.in_dim != yp.vdim()) throw ShapeError("compose: map input dim mismatch");
    const std::size_t m = yp.grid_size();
    const std::size_t d = yp.reference().dim();
    const std::size_t out = g.out_dim;

    {
        // consistency probe on a few grid values
        const std::size_t nprobe = std::min<std::size_t>(6, m);
        std::vector<double> probes(nprobe * g.in_dim);
        for (std::size_t q = 0; q < nprobe; ++q) {
            const std::size_t k = q * (m - 1) / std::max<std::size_t>(1, nprobe - 1);
            const auto v = yp.value(k);
            std::copy(v.begin(), v.end(), probes.begin() + q * g.in_dim);
        }
        check_smooth_map(g, probes, nprobe);
    }

    std::vector<double> values(m * out);
    std::vector<double> derivs(m * out * d, 0.0);
    std::vector<double> jac(out * g.in_dim);
    for (std::size_t k = 0; k < m; ++k) {
        const auto y = yp.value(k);
        g.value(y, values.data() + k * out);
        g.jacobian(y, jac.data());
        const auto dy = yp.deriv(k);
        for (std::size_t a = 0; a < out; ++a)
            for (std::size_t c = 0; c < d; ++c) {
                double s = 0.0;
                for (std::size_t b = 0; b < g.in_dim; ++b)
                    s += jac[a * g.in_dim + b] * dy[b * d + c];
                derivs[(k * out + a) * d + c] = s;
            }
    }
    return ControlledPath(yp.reference_ptr(), out, std::move(values), std::move(derivs));
}

ControlledPath controlled_integral(const ControlledPath& yp) {
    const RoughPath& X = yp.reference();
    const std::size_t d = X.dim();
    if (yp.vdim() % d != 0)
        throw ShapeError("controlled_integral: values must be Mat(n,d) with d = reference dim");
    const std::size_t n = yp.vdim() / d;
    const std::size_t m = yp.grid_size();

    std::vector<double> values(m * n, 0.0);
    std::vector<double> derivs(m * n * d, 0.0);
    // Z'_s = Y_s
    for (std::size_t k = 0; k < m; ++k) {
        const auto y = yp.value(k);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t j = 0; j < d; ++j) derivs[(k * n + a) * d + j] = y[a * d + j];
    }
    std::vector<double> inc1(d), inc2(d * d), acc(n, 0.0);
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const auto& b0 = X.basepoint(k);
        const auto& b1 = X.basepoint(k + 1);
        for (std::size_t c = 0; c < d; ++c) inc1[c] = b1.deg1(c) - b0.deg1(c);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                inc2[a * d + b] = b1.deg2(a, b) - b0.deg2(a, b) - b0.deg1(a) * inc1[b];

        const auto y = yp.value(k);
        const auto dy = yp.deriv(k);
        for (std::size_t a = 0; a < n; ++a) {
            double s = 0.0;
            for (std::size_t j = 0; j < d; ++j) s += y[a * d + j] * inc1[j];
            // Y' contraction: first X^2 index pairs with the derivative direction
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t c = 0; c < d; ++c)
                    s += dy[(a * d + j) * d + c] * inc2[c * d + j];
            acc[a] += s;
            values[(k + 1) * n + a] = acc[a];
        }
    }
    return ControlledPath(yp.reference_ptr(), n, std::move(values), std::move(derivs));
}

double remainder_norm(const ControlledPath& yp, double exponent) {
    const auto& times = yp.reference().times();
    const auto inc = [&yp](std::size_t i, std::size_t j) {
        const auto r = yp.remainder(i, j);
        double s = 0.0;
        for (double v : r) s += v * v;
        return std::sqrt(s);
    };
    return holder_norm(inc, times, exponent);
}

}  // namespace rough
