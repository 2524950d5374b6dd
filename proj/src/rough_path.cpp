#include "rough/rough_path.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

#include "rough/errors.hpp"

namespace rough {

namespace {

double frobenius(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Level-wise increment blocks from basepoint elements, expanded from Chen's
// identity X_{0,j} = X_{0,i} ⊗ X_{i,j} (cheaper than inverse-and-multiply in
// the O(M^2) variation loops).
void increment_deg1(const RoughPath& X, std::size_t i, std::size_t j, std::vector<double>& out) {
    const std::size_t d = X.dim();
    out.resize(d);
    const auto& bi = X.basepoint(i);
    const auto& bj = X.basepoint(j);
    for (std::size_t a = 0; a < d; ++a) out[a] = bj.deg1(a) - bi.deg1(a);
}

void increment_deg2(const RoughPath& X, std::size_t i, std::size_t j, std::vector<double>& out) {
    const std::size_t d = X.dim();
    out.resize(d * d);
    const auto& bi = X.basepoint(i);
    const auto& bj = X.basepoint(j);
    for (std::size_t a = 0; a < d; ++a) {
        const double xa = bi.deg1(a);
        for (std::size_t b = 0; b < d; ++b)
            out[a * d + b] =
                bj.deg2(a, b) - bi.deg2(a, b) - xa * (bj.deg1(b) - bi.deg1(b));
    }
}

void increment_deg3(const RoughPath& X, std::size_t i, std::size_t j,
                    const std::vector<double>& inc2, std::vector<double>& out) {
    const std::size_t d = X.dim();
    out.resize(d * d * d);
    const auto& bi = X.basepoint(i);
    const auto& bj = X.basepoint(j);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c)
                out[(a * d + b) * d + c] = bj.deg3(a, b, c) - bi.deg3(a, b, c) -
                                           bi.deg2(a, b) * (bj.deg1(c) - bi.deg1(c)) -
                                           bi.deg1(a) * inc2[b * d + c];
}

}  // namespace

RoughPath::RoughPath(std::size_t dim, int level, double p, std::vector<double> times,
                     std::vector<TruncatedTensor> basepoints)
    : dim_(dim), level_(level), p_(p), times_(std::move(times)), base_(std::move(basepoints)) {
    if (level_ != 2 && level_ != 3) throw ShapeError("RoughPath: level must be 2 or 3");
    if (!p_band_ok(level_, p_))
        throw RegularityError("RoughPath: roughness p outside the admissible band for the level");
    if (times_.size() < 2 || base_.size() != times_.size())
        throw ShapeError("RoughPath: basepoint count must match grid size");
    for (std::size_t k = 0; k + 1 < times_.size(); ++k)
        if (!(times_[k] < times_[k + 1]))
            throw ShapeError("RoughPath: times must be strictly increasing");
    for (const auto& b : base_) {
        if (b.dim() != dim_ || b.level() != level_)
            throw ShapeError("RoughPath: basepoint tensor shape mismatch");
        if (!b.group_like(1e-9)) throw ShapeError("RoughPath: basepoints must be group-like");
    }
    if (base_.front().max_degree_norm() > 1e-12)
        throw ShapeError("RoughPath: X_{0,0} must be the identity");
}

bool p_band_ok(int level, double p) {
    if (level == 2) return p > 2.0 && p < 3.0;
    if (level == 3) return p > 3.0 && p < 4.0;
    return false;
}

TruncatedTensor RoughPath::increment(std::size_t i, std::size_t j) const {
    if (i > j || j >= base_.size()) throw ShapeError("RoughPath::increment: bad indices");
    return tensor_mul(tensor_inverse(base_[i]), base_[j]);
}

double RoughPath::level_increment_norm(int lvl, std::size_t i, std::size_t j) const {
    std::vector<double> b1, b2, b3;
    switch (lvl) {
        case 1:
            increment_deg1(*this, i, j, b1);
            return frobenius(b1);
        case 2:
            increment_deg2(*this, i, j, b2);
            return frobenius(b2);
        case 3:
            increment_deg2(*this, i, j, b2);
            increment_deg3(*this, i, j, b2, b3);
            return frobenius(b3);
        default:
            throw ShapeError("level_increment_norm: level out of range");
    }
}

SampledPath RoughPath::first_level_path() const {
    std::vector<double> values(times_.size() * dim_);
    for (std::size_t k = 0; k < times_.size(); ++k)
        for (std::size_t c = 0; c < dim_; ++c) values[k * dim_ + c] = base_[k].deg1(c);
    return SampledPath(times_, std::move(values), dim_);
}

RoughPath lift_bv(const SampledPath& x, int level, double p) {
    if (level != 2 && level != 3) throw ShapeError("lift_bv: level must be 2 or 3");
    if (!p_band_ok(level, p))
        throw RegularityError("lift_bv: p outside the admissible band for the level");
    const std::size_t d = x.dim();
    std::vector<TruncatedTensor> base;
    base.reserve(x.grid_size());
    base.push_back(TruncatedTensor::identity(d, level));
    std::vector<double> delta(d);
    for (std::size_t k = 0; k + 1 < x.grid_size(); ++k) {
        for (std::size_t c = 0; c < d; ++c) delta[c] = x.value(k + 1, c) - x.value(k, c);
        base.push_back(tensor_mul(base.back(), TruncatedTensor::segment_exp(delta, level)));
    }
    return RoughPath(d, level, p, x.times(), std::move(base));
}

namespace {

// Dyadic triples (a 2^k, a 2^k + 2^{k-1}, (a+1) 2^k) when M is a power of
// two; otherwise consecutive triples plus (0, u, M) scans.
std::vector<std::array<std::size_t, 3>> chen_triples(std::size_t npoints) {
    const std::size_t M = npoints - 1;
    std::vector<std::array<std::size_t, 3>> out;
    if (M >= 2 && (M & (M - 1)) == 0) {
        for (std::size_t span = 2; span <= M; span *= 2)
            for (std::size_t a = 0; a + span <= M; a += span)
                out.push_back({a, a + span / 2, a + span});
    } else {
        for (std::size_t u = 1; u < M; ++u) {
            out.push_back({u - 1, u, u + 1});
            out.push_back({0, u, M});
        }
    }
    return out;
}

}  // namespace

ValidationReport validate(const RoughPath& X, double tol) {
    ValidationReport rep;
    rep.tol = tol;

    std::vector<TruncatedTensor> base;
    base.reserve(X.grid_size());
    for (std::size_t k = 0; k < X.grid_size(); ++k) base.push_back(X.basepoint(k));
    for (const auto& tri : chen_triples(X.grid_size()))
        rep.max_chen_defect =
            std::max(rep.max_chen_defect, chen_defect(base, tri[0], tri[1], tri[2]));

    for (int lvl = 1; lvl <= X.level(); ++lvl) {
        const double exponent = X.roughness() / lvl;
        rep.level_variation.push_back(p_variation(
            [&X, lvl](std::size_t i, std::size_t j) { return X.level_increment_norm(lvl, i, j); },
            X.grid_size(), exponent));
    }

    // weak geometricity: Sym(X^2_{s,t}) = X^1_{s,t} ⊗ X^1_{s,t} / 2 for all pairs
    const std::size_t d = X.dim();
    std::vector<double> inc1, inc2;
    for (std::size_t i = 0; i + 1 < X.grid_size(); ++i)
        for (std::size_t j = i + 1; j < X.grid_size(); ++j) {
            increment_deg1(X, i, j, inc1);
            increment_deg2(X, i, j, inc2);
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) {
                    const double sym = 0.5 * (inc2[a * d + b] + inc2[b * d + a]);
                    rep.symmetry_residual = std::max(
                        rep.symmetry_residual, std::abs(sym - 0.5 * inc1[a] * inc1[b]));
                }
        }

    bool finite = true;
    for (double v : rep.level_variation) finite = finite && std::isfinite(v);
    rep.pass = finite && rep.max_chen_defect <= tol && rep.symmetry_residual <= tol;
    return rep;
}

double rp_distance(const RoughPath& X, const RoughPath& Y, double p) {
    if (X.dim() != Y.dim() || X.level() != Y.level() || X.times() != Y.times())
        throw ShapeError("rp_distance: rough paths must share grid, dim and level");
    double total = 0.0;
    std::vector<double> xa, xb, xc, ya, yb, yc;
    for (int lvl = 1; lvl <= X.level(); ++lvl) {
        const auto inc = [&](std::size_t i, std::size_t j) {
            double s = 0.0;
            switch (lvl) {
                case 1:
                    increment_deg1(X, i, j, xa);
                    increment_deg1(Y, i, j, ya);
                    for (std::size_t q = 0; q < xa.size(); ++q) {
                        const double dq = xa[q] - ya[q];
                        s += dq * dq;
                    }
                    break;
                case 2:
                    increment_deg2(X, i, j, xb);
                    increment_deg2(Y, i, j, yb);
                    for (std::size_t q = 0; q < xb.size(); ++q) {
                        const double dq = xb[q] - yb[q];
                        s += dq * dq;
                    }
                    break;
                default:
                    increment_deg2(X, i, j, xb);
                    increment_deg3(X, i, j, xb, xc);
                    increment_deg2(Y, i, j, yb);
                    increment_deg3(Y, i, j, yb, yc);
                    for (std::size_t q = 0; q < xc.size(); ++q) {
                        const double dq = xc[q] - yc[q];
                        s += dq * dq;
                    }
            }
            return std::sqrt(s);
        };
        total += p_variation(inc, X.grid_size(), p / lvl);
    }
    return total;
}

void check_one_form(const OneForm& f, std::span<const double> points, std::size_t npoints) {
    if (!f.value || !f.gradient) throw ShapeError("one-form must provide value and gradient");
    const std::size_t d = f.in_dim;
    const std::size_t n = f.out_dim;
    const double h = 1e-6;
    std::vector<double> x(d), fp(n * d), fm(n * d), grad(n * d * d);
    for (std::size_t pt = 0; pt < npoints; ++pt) {
        for (std::size_t c = 0; c < d; ++c) x[c] = points[pt * d + c];
        f.gradient(x, grad.data());
        for (std::size_t k = 0; k < d; ++k) {
            x[k] += h;
            f.value(x, fp.data());
            x[k] -= 2 * h;
            f.value(x, fm.data());
            x[k] += h;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t j = 0; j < d; ++j) {
                    const double fd = (fp[a * d + j] - fm[a * d + j]) / (2 * h);
                    const double an = grad[(a * d + j) * d + k];
                    if (std::abs(fd - an) / std::max(1.0, std::abs(an)) > 1e-5)
                        throw ShapeError("one-form gradient fails finite-difference check");
                }
        }
    }
}

RoughPath rough_integral(const OneForm& f, const RoughPath& X) {
    if (X.level() != 2)
        throw ShapeError("rough_integral: level-3 integration is not supported");
    if (f.in_dim != X.dim()) throw ShapeError("rough_integral: one-form input dim mismatch");
    if (!f.smooth_c3) throw RegularityError("rough_integral requires a C^3 one-form");

    const std::size_t d = X.dim();
    const std::size_t n = f.out_dim;
    const std::size_t M = X.grid_size() - 1;

    // gradient consistency probed on points along the path
    {
        const std::size_t nprobe = std::min<std::size_t>(8, X.grid_size());
        std::vector<double> probes(nprobe * d);
        for (std::size_t q = 0; q < nprobe; ++q) {
            const std::size_t k = q * M / std::max<std::size_t>(1, nprobe - 1);
            for (std::size_t c = 0; c < d; ++c) probes[q * d + c] = X.basepoint(k).deg1(c);
        }
        check_one_form(f, probes, nprobe);
    }

    std::vector<TruncatedTensor> out;
    out.reserve(M + 1);
    out.push_back(TruncatedTensor::identity(n, 2));

    std::vector<double> x(d), fv(n * d), grad(n * d * d), inc1(d), inc2(d * d);
    std::vector<double> y1(n), yhat2(n * n);
    for (std::size_t k = 0; k < M; ++k) {
        for (std::size_t c = 0; c < d; ++c) x[c] = X.basepoint(k).deg1(c);
        f.value(x, fv.data());
        f.gradient(x, grad.data());
        increment_deg1(X, k, k + 1, inc1);
        increment_deg2(X, k, k + 1, inc2);

        // Yhat^1 = f(x_s) X^1 + ∇f(x_s) X^2   (∇f contraction over (k,j) with X^2_{k,j})
        std::fill(y1.begin(), y1.end(), 0.0);
        for (std::size_t a = 0; a < n; ++a) {
            double s = 0.0;
            for (std::size_t j = 0; j < d; ++j) s += fv[a * d + j] * inc1[j];
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t kk = 0; kk < d; ++kk)
                    s += grad[(a * d + j) * d + kk] * inc2[kk * d + j];
            y1[a] = s;
        }
        // Yhat^2 = (f ⊗ f)(x_s) X^2
        std::fill(yhat2.begin(), yhat2.end(), 0.0);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                double s = 0.0;
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j)
                        s += fv[a * d + i] * fv[b * d + j] * inc2[i * d + j];
                yhat2[a * n + b] = s;
            }

        TruncatedTensor next = out.back();
        auto& deg1 = next.degree(1);
        auto& deg2 = next.degree(2);
        // cross term Y^1_{0,t_k} ⊗ Y^1_{t_k,t_{k+1}} completes Chen for the basepoint
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                deg2[a * n + b] += yhat2[a * n + b] + out.back().deg1(a) * y1[b];
        for (std::size_t a = 0; a < n; ++a) deg1[a] += y1[a];
        out.push_back(std::move(next));
    }
    return RoughPath(n, 2, X.roughness(), X.times(), std::move(out));
}

namespace {

// Exact cross integrals of the piecewise-linear grid representatives:
// C_k = ∫_0^{t_k} (a_u - a_0) ⊗ db_u accumulated segment by segment.
std::vector<std::vector<double>> cross_integral(const SampledPath& a, const SampledPath& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    std::vector<std::vector<double>> out(a.grid_size(), std::vector<double>(na * nb, 0.0));
    for (std::size_t k = 0; k + 1 < a.grid_size(); ++k) {
        out[k + 1] = out[k];
        for (std::size_t i = 0; i < na; ++i) {
            const double ai = a.value(k, i) - a.value(0, i);
            const double dai = a.value(k + 1, i) - a.value(k, i);
            for (std::size_t j = 0; j < nb; ++j) {
                const double dbj = b.value(k + 1, j) - b.value(k, j);
                out[k + 1][i * nb + j] += ai * dbj + 0.5 * dai * dbj;
            }
        }
    }
    return out;
}

void require_young(const RoughPath& X, const SampledPath& h, double q) {
    if (X.level() != 2)
        throw ShapeError("Young pairing/translation supports level-2 rough paths only");
    if (!(1.0 / X.roughness() + 1.0 / q > 1.0))
        throw RegularityError("Young pairing/translation requires 1/p + 1/q > 1");
    if (h.times() != X.times())
        throw ShapeError("Young pairing/translation requires a common grid");
}

}  // namespace

RoughPath young_pairing(const RoughPath& X, const SampledPath& h, double q) {
    require_young(X, h, q);
    const std::size_t d = X.dim();
    const std::size_t r = h.dim();
    const std::size_t D = d + r;

    const SampledPath x = X.first_level_path();
    const RoughPath H = lift_bv(h, 2, X.roughness());
    const auto xh = cross_integral(x, h);
    const auto hx = cross_integral(h, x);

    std::vector<TruncatedTensor> base;
    base.reserve(X.grid_size());
    for (std::size_t k = 0; k < X.grid_size(); ++k) {
        TruncatedTensor z = TruncatedTensor::identity(D, 2);
        auto& deg1 = z.degree(1);
        auto& deg2 = z.degree(2);
        for (std::size_t i = 0; i < d; ++i) deg1[i] = X.basepoint(k).deg1(i);
        for (std::size_t j = 0; j < r; ++j) deg1[d + j] = h.value(k, j) - h.value(0, j);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) deg2[i * D + j] = X.basepoint(k).deg2(i, j);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) deg2[(d + i) * D + (d + j)] = H.basepoint(k).deg2(i, j);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < r; ++j) deg2[i * D + (d + j)] = xh[k][i * r + j];
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < d; ++j) deg2[(d + i) * D + j] = hx[k][i * d + j];
        base.push_back(std::move(z));
    }
    return RoughPath(D, 2, X.roughness(), X.times(), std::move(base));
}

RoughPath young_translate(const RoughPath& X, const SampledPath& h, double q) {
    require_young(X, h, q);
    if (h.dim() != X.dim())
        throw ShapeError("young_translate: path dimension mismatch");
    const std::size_t d = X.dim();

    const SampledPath x = X.first_level_path();
    const RoughPath H = lift_bv(h, 2, X.roughness());
    const auto xh = cross_integral(x, h);
    const auto hx = cross_integral(h, x);

    std::vector<TruncatedTensor> base;
    base.reserve(X.grid_size());
    for (std::size_t k = 0; k < X.grid_size(); ++k) {
        TruncatedTensor z = TruncatedTensor::identity(d, 2);
        auto& deg1 = z.degree(1);
        auto& deg2 = z.degree(2);
        for (std::size_t i = 0; i < d; ++i)
            deg1[i] = X.basepoint(k).deg1(i) + h.value(k, i) - h.value(0, i);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                deg2[i * d + j] = X.basepoint(k).deg2(i, j) + xh[k][i * d + j] +
                                  hx[k][i * d + j] + H.basepoint(k).deg2(i, j);
        base.push_back(std::move(z));
    }
    return RoughPath(d, 2, X.roughness(), X.times(), std::move(base));
}

RoughPath scale(double eps, const RoughPath& X) {
    std::vector<TruncatedTensor> base;
    base.reserve(X.grid_size());
    for (std::size_t k = 0; k < X.grid_size(); ++k) base.push_back(dilation(eps, X.basepoint(k)));
    return RoughPath(X.dim(), X.level(), X.roughness(), X.times(), std::move(base));
}

}  // namespace rough
