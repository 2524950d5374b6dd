#include "rough/rde.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "rough/errors.hpp"

namespace rough {

namespace {

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

void step_increments(const RoughPath& X, std::size_t k, std::vector<double>& inc1,
                     std::vector<double>& inc2) {
    const std::size_t d = X.dim();
    const auto& b0 = X.basepoint(k);
    const auto& b1 = X.basepoint(k + 1);
    inc1.resize(d);
    inc2.resize(d * d);
    for (std::size_t c = 0; c < d; ++c) inc1[c] = b1.deg1(c) - b0.deg1(c);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            inc2[a * d + b] = b1.deg2(a, b) - b0.deg2(a, b) - b0.deg1(a) * inc1[b];
}

constexpr int kMaxHalvings = 40;
constexpr int kMaxPicardIterations = 50;
constexpr double kPicardTol = 1e-12;

}  // namespace

void check_vector_fields(const VectorFieldFamily& vf, std::span<const double> states,
                         std::size_t nstates) {
    if (!vf.sigma || !vf.dsigma)
        throw ShapeError("vector field family must provide sigma and dsigma");
    if (vf.has_drift() && !vf.ddrift)
        throw ShapeError("vector field family with drift must provide ddrift");
    const std::size_t n = vf.state_dim, d = vf.noise_dim;
    const double h = 1e-6;
    std::vector<double> y(n), sp(n * d), sm(n * d), ds(n * d * n);
    std::vector<double> bp(n), bm(n), db(n * n);
    for (std::size_t pt = 0; pt < nstates; ++pt) {
        for (std::size_t c = 0; c < n; ++c) y[c] = states[pt * n + c];
        vf.dsigma(y, ds.data());
        for (std::size_t b = 0; b < n; ++b) {
            y[b] += h;
            vf.sigma(y, sp.data());
            y[b] -= 2 * h;
            vf.sigma(y, sm.data());
            y[b] += h;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t i = 0; i < d; ++i) {
                    const double fd = (sp[a * d + i] - sm[a * d + i]) / (2 * h);
                    const double an = ds[(a * d + i) * n + b];
                    if (std::abs(fd - an) / std::max(1.0, std::abs(an)) > 1e-5)
                        throw ShapeError("dsigma fails finite-difference check");
                }
        }
        if (vf.has_drift()) {
            vf.ddrift(y, db.data());
            for (std::size_t b = 0; b < n; ++b) {
                y[b] += h;
                vf.drift(y, bp.data());
                y[b] -= 2 * h;
                vf.drift(y, bm.data());
                y[b] += h;
                for (std::size_t a = 0; a < n; ++a) {
                    const double fd = (bp[a] - bm[a]) / (2 * h);
                    const double an = db[a * n + b];
                    if (std::abs(fd - an) / std::max(1.0, std::abs(an)) > 1e-5)
                        throw ShapeError("ddrift fails finite-difference check");
                }
            }
        }
    }
}

Scheme scheme_from_string(const std::string& s) {
    if (s == "picard") return Scheme::picard;
    if (s == "euler") return Scheme::euler;
    throw ShapeError("unknown scheme: " + s);
}

std::string to_string(Scheme s) { return s == Scheme::picard ? "picard" : "euler"; }

namespace {

// Davie step over the whole grid; drift enters at first order as b(y)Δt.
void euler_sweep(const RoughPath& X, const VectorFieldFamily& vf, std::span<const double> y0,
                 std::vector<double>& out) {
    const std::size_t d = X.dim(), n = vf.state_dim;
    const std::size_t M = X.grid_size() - 1;
    out.assign((M + 1) * n, 0.0);
    std::vector<double> y(y0.begin(), y0.end());
    std::copy(y.begin(), y.end(), out.begin());

    std::vector<double> sig(n * d), dsig(n * d * n), bb(n), inc1, inc2;
    for (std::size_t k = 0; k < M; ++k) {
        step_increments(X, k, inc1, inc2);
        vf.sigma(y, sig.data());
        vf.dsigma(y, dsig.data());
        const double dt = X.times()[k + 1] - X.times()[k];
        if (vf.has_drift()) vf.drift(y, bb.data());
        for (std::size_t a = 0; a < n; ++a) {
            double s = 0.0;
            for (std::size_t j = 0; j < d; ++j) s += sig[a * d + j] * inc1[j];
            // sum_{i,j} (∇V_j V_i)_a X^2_{ij}
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    double vv = 0.0;
                    for (std::size_t b = 0; b < n; ++b)
                        vv += dsig[(a * d + j) * n + b] * sig[b * d + i];
                    s += vv * inc2[i * d + j];
                }
            if (vf.has_drift()) s += bb[a] * dt;
            y[a] += s;
        }
        if (!all_finite(y)) throw SolverError("instability: non-finite state in euler step");
        std::copy(y.begin(), y.end(), out.begin() + (k + 1) * n);
    }
}

// One Picard attempt on grid indices [a, b]: fixed point of
// Y -> z_a + ∫ sigma(Y) dX in the controlled sense on the sub-grid.
// Returns false when the contraction estimate fails (ratio >= 1).
bool picard_attempt(const RoughPath& X, const VectorFieldFamily& vf,
                    std::span<const double> za, std::size_t a, std::size_t b,
                    std::vector<double>& out) {
    const std::size_t d = X.dim(), n = vf.state_dim;
    const std::size_t len = b - a;

    std::vector<double> Y((len + 1) * n), Ynew((len + 1) * n);
    std::vector<double> Yp((len + 1) * n * d);
    for (std::size_t k = 0; k <= len; ++k)
        std::copy(za.begin(), za.end(), Y.begin() + k * n);
    {
        std::vector<double> sig(n * d);
        vf.sigma(za, sig.data());
        for (std::size_t k = 0; k <= len; ++k)
            std::copy(sig.begin(), sig.end(), Yp.begin() + k * n * d);
    }

    std::vector<double> sig(n * d), dsig(n * d * n), wprime(n * d * d), inc1, inc2;
    double prev_diff = std::numeric_limits<double>::infinity();
    for (int it = 0; it < kMaxPicardIterations; ++it) {
        std::copy(za.begin(), za.end(), Ynew.begin());
        for (std::size_t k = 0; k < len; ++k) {
            const double* yk = Y.data() + k * n;
            const double* ypk = Yp.data() + k * n * d;
            vf.sigma({yk, n}, sig.data());
            vf.dsigma({yk, n}, dsig.data());
            // W' = ∇sigma(Y)·Y' : (a,j,c) = sum_b dsig(a,j,b) Y'(b,c)
            for (std::size_t aa = 0; aa < n; ++aa)
                for (std::size_t j = 0; j < d; ++j)
                    for (std::size_t c = 0; c < d; ++c) {
                        double s = 0.0;
                        for (std::size_t bb = 0; bb < n; ++bb)
                            s += dsig[(aa * d + j) * n + bb] * ypk[bb * d + c];
                        wprime[(aa * d + j) * d + c] = s;
                    }
            step_increments(X, a + k, inc1, inc2);
            for (std::size_t aa = 0; aa < n; ++aa) {
                double s = Ynew[k * n + aa];
                for (std::size_t j = 0; j < d; ++j) s += sig[aa * d + j] * inc1[j];
                for (std::size_t j = 0; j < d; ++j)
                    for (std::size_t c = 0; c < d; ++c)
                        s += wprime[(aa * d + j) * d + c] * inc2[c * d + j];
                Ynew[(k + 1) * n + aa] = s;
            }
        }
        if (!all_finite(Ynew)) throw SolverError("instability: non-finite state in picard step");

        double diff = 0.0;
        for (std::size_t q = 0; q < Ynew.size(); ++q)
            diff = std::max(diff, std::abs(Ynew[q] - Y[q]));
        Y = Ynew;
        for (std::size_t k = 0; k <= len; ++k)
            vf.sigma({Y.data() + k * n, n}, Yp.data() + k * n * d);

        if (diff < kPicardTol) break;
        if (it >= 1 && diff >= prev_diff) return false;  // contraction estimate >= 1
        prev_diff = diff;
    }
    out = std::move(Y);
    return true;
}

std::vector<double> picard_sweep(const RoughPath& X, const VectorFieldFamily& vf,
                                 std::span<const double> y0,
                                 std::vector<std::string>& halving_log) {
    const std::size_t n = vf.state_dim;
    const std::size_t M = X.grid_size() - 1;

    // coefficient shift sigma(· + y0): solve z with z_0 = 0, y = y0 + z
    std::vector<double> y0v(y0.begin(), y0.end());
    VectorFieldFamily shifted = vf;
    shifted.sigma = [&vf, y0v, n](std::span<const double> z, double* out) {
        std::vector<double> y(n);
        for (std::size_t c = 0; c < n; ++c) y[c] = z[c] + y0v[c];
        vf.sigma(y, out);
    };
    shifted.dsigma = [&vf, y0v, n](std::span<const double> z, double* out) {
        std::vector<double> y(n);
        for (std::size_t c = 0; c < n; ++c) y[c] = z[c] + y0v[c];
        vf.dsigma(y, out);
    };
    shifted.drift = nullptr;
    shifted.ddrift = nullptr;

    std::vector<double> z((M + 1) * n, 0.0);
    std::vector<double> za(n, 0.0);
    std::size_t a = 0;
    std::size_t span = M;
    int halvings = 0;
    std::vector<double> piece;
    while (a < M) {
        span = std::min(span, M - a);
        if (picard_attempt(X, shifted, za, a, a + span, piece)) {
            for (std::size_t k = 0; k <= span; ++k)
                for (std::size_t c = 0; c < n; ++c) z[(a + k) * n + c] = piece[k * n + c];
            for (std::size_t c = 0; c < n; ++c) za[c] = piece[span * n + c];
            a += span;
            span *= 2;
        } else {
            if (span == 1 || ++halvings > kMaxHalvings)
                throw SolverError("picard iteration failed to contract after " +
                                  std::to_string(halvings) + " halvings");
            span = std::max<std::size_t>(1, span / 2);
            halving_log.push_back("halved to " + std::to_string(span) + " steps at index " +
                                  std::to_string(a));
        }
    }
    for (std::size_t k = 0; k <= M; ++k)
        for (std::size_t c = 0; c < n; ++c) z[k * n + c] += y0v[c];
    return z;
}

// Paired rough path over R^{d+n} from the solved first level: cross and
// solution blocks via Young-style compensated sums at Davie order.
RoughPath reconstruct_pair(const RoughPath& X, const VectorFieldFamily& vf,
                           const std::vector<double>& y) {
    const std::size_t d = X.dim(), n = vf.state_dim, D = d + n;
    const std::size_t M = X.grid_size() - 1;

    std::vector<TruncatedTensor> base;
    base.reserve(M + 1);
    base.push_back(TruncatedTensor::identity(D, 2));
    std::vector<double> sig(n * d), bb(n), inc1, inc2;
    for (std::size_t k = 0; k < M; ++k) {
        const double* yk = y.data() + k * n;
        const double* yk1 = y.data() + (k + 1) * n;
        vf.sigma({yk, n}, sig.data());
        const double dt = X.times()[k + 1] - X.times()[k];
        if (vf.has_drift()) vf.drift({yk, n}, bb.data());
        step_increments(X, k, inc1, inc2);

        TruncatedTensor next = base.back();
        auto& deg1 = next.degree(1);
        auto& deg2 = next.degree(2);

        std::vector<double> z1(D);
        for (std::size_t i = 0; i < d; ++i) z1[i] = inc1[i];
        for (std::size_t a = 0; a < n; ++a) z1[d + a] = yk1[a] - yk[a];

        // Zhat^2 blocks at Davie order
        std::vector<double> zhat2(D * D, 0.0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) zhat2[i * D + j] = inc2[i * d + j];
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t a = 0; a < n; ++a) {
                double s = 0.0;
                for (std::size_t j = 0; j < d; ++j) s += sig[a * d + j] * inc2[i * d + j];
                if (vf.has_drift()) s += bb[a] * inc1[i] * dt * 0.5;
                zhat2[i * D + (d + a)] = s;
            }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t i = 0; i < d; ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < d; ++j) s += sig[a * d + j] * inc2[j * d + i];
                if (vf.has_drift()) s += bb[a] * inc1[i] * dt * 0.5;
                zhat2[(d + a) * D + i] = s;
            }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                double s = 0.0;
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j)
                        s += sig[a * d + i] * sig[b * d + j] * inc2[i * d + j];
                if (vf.has_drift()) {
                    double sa = 0.0, sb = 0.0;
                    for (std::size_t i = 0; i < d; ++i) {
                        sa += sig[a * d + i] * inc1[i];
                        sb += sig[b * d + i] * inc1[i];
                    }
                    s += 0.5 * dt * (sa * bb[b] + bb[a] * sb) + 0.5 * dt * dt * bb[a] * bb[b];
                }
                zhat2[(d + a) * D + (d + b)] = s;
            }

        for (std::size_t i = 0; i < D; ++i)
            for (std::size_t j = 0; j < D; ++j)
                deg2[i * D + j] += zhat2[i * D + j] + base.back().deg1(i) * z1[j];
        for (std::size_t i = 0; i < D; ++i) deg1[i] += z1[i];
        base.push_back(std::move(next));
    }
    return RoughPath(D, 2, X.roughness(), X.times(), std::move(base));
}

VectorFieldFamily extend_with_drift(const VectorFieldFamily& vf) {
    const std::size_t n = vf.state_dim, d = vf.noise_dim;
    VectorFieldFamily ext;
    ext.state_dim = n;
    ext.noise_dim = d + 1;
    ext.smooth_c3b = vf.smooth_c3b;
    ext.sigma = [&vf, n, d](std::span<const double> y, double* out) {
        std::vector<double> sig(n * d), bb(n);
        vf.sigma(y, sig.data());
        vf.drift(y, bb.data());
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t i = 0; i < d; ++i) out[a * (d + 1) + i] = sig[a * d + i];
            out[a * (d + 1) + d] = bb[a];
        }
    };
    ext.dsigma = [&vf, n, d](std::span<const double> y, double* out) {
        std::vector<double> ds(n * d * n), db(n * n);
        vf.dsigma(y, ds.data());
        vf.ddrift(y, db.data());
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t b = 0; b < n; ++b)
                    out[(a * (d + 1) + i) * n + b] = ds[(a * d + i) * n + b];
            for (std::size_t b = 0; b < n; ++b) out[(a * (d + 1) + d) * n + b] = db[a * n + b];
        }
    };
    return ext;
}

SampledPath lambda_path(const std::vector<double>& times) {
    return SampledPath(times, std::vector<double>(times.begin(), times.end()), 1);
}

}  // namespace

RdeSolution solve_rde(const RoughPath& X, const VectorFieldFamily& vf,
                      std::span<const double> y0, Scheme scheme, bool want_pair) {
    if (X.level() != 2) throw ShapeError("solve_rde: driver must be a level-2 rough path");
    if (vf.noise_dim != X.dim()) throw ShapeError("solve_rde: noise dim mismatch");
    if (y0.size() != vf.state_dim) throw ShapeError("solve_rde: initial value dim mismatch");
    {
        std::vector<double> probe(y0.begin(), y0.end());
        check_vector_fields(vf, probe, 1);
    }

    const std::size_t n = vf.state_dim;
    std::vector<std::string> halving_log;
    std::vector<double> values;
    if (scheme == Scheme::euler) {
        euler_sweep(X, vf, y0, values);
    } else if (vf.has_drift()) {
        // drift via the Young pairing with λ_t = t
        const RoughPath Xp = young_pairing(X, lambda_path(X.times()), 1.0);
        const VectorFieldFamily ext = extend_with_drift(vf);
        values = picard_sweep(Xp, ext, y0, halving_log);
    } else {
        values = picard_sweep(X, vf, y0, halving_log);
    }

    std::vector<double> yprime(X.grid_size() * n * X.dim(), 0.0);
    for (std::size_t k = 0; k < X.grid_size(); ++k)
        vf.sigma({values.data() + k * n, n}, yprime.data() + k * n * X.dim());
    std::optional<RoughPath> pair;
    if (want_pair) pair = reconstruct_pair(X, vf, values);
    return RdeSolution{SampledPath(X.times(), std::move(values), n), std::move(yprime),
                       std::move(pair), scheme, std::move(halving_log)};
}

RdeSolution lyons_ito_map(const RoughPath& X, const VectorFieldFamily& vf,
                          std::span<const double> y0, Scheme scheme) {
    if (!vf.has_drift()) return solve_rde(X, vf, y0, scheme);
    const RoughPath Xp = young_pairing(X, lambda_path(X.times()), 1.0);
    RdeSolution sol = solve_rde(Xp, extend_with_drift(vf), y0, scheme);
    // report the Gubinelli derivative against the original noise, sigma(y_t)
    const std::size_t n = vf.state_dim;
    sol.yprime.assign(X.grid_size() * n * X.dim(), 0.0);
    for (std::size_t k = 0; k < X.grid_size(); ++k)
        vf.sigma(sol.y.value(k), sol.yprime.data() + k * n * X.dim());
    sol.pair.reset();
    return sol;
}

SampledPath skeleton(const CameronMartinPath& h, const VectorFieldFamily& vf,
                     std::span<const double> y0) {
    const RoughPath H = lift_bv(h.path(), 2, kDefaultRoughness);
    return lyons_ito_map(H, vf, y0, Scheme::picard).y;
}

JacobianSolution solve_jacobian(const RoughPath& X, const VectorFieldFamily& vf,
                                std::span<const double> y0) {
    if (!vf.d2sigma)
        throw ShapeError("solve_jacobian requires second derivatives of sigma");
    const std::size_t d = X.dim(), n = vf.state_dim;
    const std::size_t M = X.grid_size() - 1;

    // triangular structure: solve the state equation first
    RdeSolution ysol = solve_rde(X, vf, y0, Scheme::euler);

    std::vector<double> jgrid((M + 1) * n * n, 0.0);
    std::vector<double> kgrid((M + 1) * n * n, 0.0);
    using Mat = Eigen::MatrixXd;
    Mat J = Mat::Identity(n, n), K = Mat::Identity(n, n);
    for (std::size_t c = 0; c < n; ++c) jgrid[c * n + c] = kgrid[c * n + c] = 1.0;

    std::vector<double> dsig(n * d * n), db(n * n), inc1, inc2;
    std::vector<Mat> A(d, Mat::Zero(n, n));
    for (std::size_t k = 0; k < M; ++k) {
        const auto yk = ysol.y.value(k);
        vf.dsigma(yk, dsig.data());
        step_increments(X, k, inc1, inc2);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) A[i](a, b) = dsig[(a * d + i) * n + b];

        // frozen one-step matrix at order (X^1, X^2)
        Mat step = Mat::Identity(n, n);
        for (std::size_t i = 0; i < d; ++i) step += A[i] * inc1[i];
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) step += A[j] * A[i] * inc2[i * d + j];
        if (vf.has_drift()) {
            vf.ddrift(yk, db.data());
            const double dt = X.times()[k + 1] - X.times()[k];
            Mat A0(n, n);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) A0(a, b) = db[a * n + b];
            step += A0 * dt;
        }

        J = step * J;
        // the exact step inverse keeps j·k = Id structural while agreeing with
        // the frozen Euler step for the inverse equation at the same order
        K = K * step.inverse();
        if (!J.allFinite() || !K.allFinite())
            throw SolverError("instability: non-finite Jacobian step");
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                jgrid[(k + 1) * n * n + a * n + b] = J(a, b);
                kgrid[(k + 1) * n * n + a * n + b] = K(a, b);
            }
    }
    return JacobianSolution{std::move(ysol.y), std::move(jgrid), std::move(kgrid)};
}

NAlphaReport n_alpha(const RoughPath& X, double alpha, double p) {
    if (!(alpha > 0.0)) throw RegularityError("n_alpha requires alpha > 0");
    const int N = X.level();
    for (int i = 1; i <= N; ++i)
        if (p / i < 1.0) throw RegularityError("n_alpha: p/i must be >= 1 for every level");

    const std::size_t M = X.grid_size() - 1;
    NAlphaReport rep;
    rep.alpha = alpha;

    std::size_t a = 0;
    while (a < M) {
        // incremental DP per level over [a, t]: best[t] = max partition sum of |inc|^{p/i}
        std::vector<std::vector<double>> best(static_cast<std::size_t>(N));
        for (auto& v : best) v.assign(M - a + 1, 0.0);
        bool found = false;
        double control = 0.0;
        for (std::size_t t = a + 1; t <= M; ++t) {
            control = 0.0;
            for (int lvl = 1; lvl <= N; ++lvl) {
                auto& bl = best[static_cast<std::size_t>(lvl - 1)];
                double m = 0.0;
                for (std::size_t s = a; s < t; ++s)
                    m = std::max(m, bl[s - a] + std::pow(X.level_increment_norm(lvl, s, t),
                                                         p / lvl));
                bl[t - a] = m;
                control += m;
            }
            if (control >= alpha) {
                rep.taus.push_back(X.times()[t]);
                rep.controls.push_back(control);
                a = t;
                found = true;
                break;
            }
        }
        if (!found) {
            rep.taus.push_back(1.0);
            rep.controls.push_back(control);
            break;
        }
    }
    rep.n_alpha = 0;
    for (double tau : rep.taus)
        if (tau < 1.0) ++rep.n_alpha;
    return rep;
}

}  // namespace rough
