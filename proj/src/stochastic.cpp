#include "rough/stochastic.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>

#include "rough/errors.hpp"

namespace rough {

namespace {

// Box-Muller on mt19937_64: std::normal_distribution is implementation-
// defined, this keeps seeded output portable.
class GaussianRng {
  public:
    explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

  private:
    double uniform() {
        // 53-bit mantissa uniform in [0,1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

std::vector<double> dyadic_times(int m) {
    const std::size_t npts = (static_cast<std::size_t>(1) << m) + 1;
    std::vector<double> t(npts);
    for (std::size_t k = 0; k < npts; ++k)
        t[k] = static_cast<double>(k) / static_cast<double>(npts - 1);
    t.back() = 1.0;
    return t;
}

}  // namespace

double fbm_covariance(double hurst, double s, double t) {
    return 0.5 * (std::pow(s, 2 * hurst) + std::pow(t, 2 * hurst) -
                  std::pow(std::abs(t - s), 2 * hurst));
}

SampledPath sample(const GaussianSpec& spec) {
    if (spec.dim == 0) throw ShapeError("sample: dim must be positive");
    if (spec.m < 1 || spec.m > 20) throw ShapeError("sample: grid level m out of range");
    if (spec.kind == GaussianKind::fbm && !(spec.hurst > 0.0 && spec.hurst < 1.0))
        throw ShapeError("sample: Hurst parameter must lie in (0,1)");

    const std::vector<double> times = dyadic_times(spec.m);
    const std::size_t M = times.size() - 1;
    const std::size_t d = spec.dim;
    std::vector<double> values(times.size() * d, 0.0);
    GaussianRng rng(spec.seed);

    if (spec.kind == GaussianKind::brownian) {
        for (std::size_t k = 0; k < M; ++k) {
            const double sdt = std::sqrt(times[k + 1] - times[k]);
            for (std::size_t c = 0; c < d; ++c)
                values[(k + 1) * d + c] = values[k * d + c] + sdt * rng();
        }
        return SampledPath(times, std::move(values), d);
    }

    // fBm: exact grid marginals via Cholesky of the covariance matrix over
    // the interior grid points, i.i.d. per component.
    Eigen::MatrixXd cov(M, M);
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = 0; j < M; ++j)
            cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                fbm_covariance(spec.hurst, times[i + 1], times[j + 1]);

    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        cov.diagonal().array() += 1e-12;
        llt.compute(cov);
        if (llt.info() != Eigen::Success)
            throw CovarianceError("fBm covariance matrix is not positive semidefinite");
    }
    const Eigen::MatrixXd L = llt.matrixL();

    Eigen::VectorXd z(M);
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t k = 0; k < M; ++k) z(static_cast<Eigen::Index>(k)) = rng();
        const Eigen::VectorXd w = L * z;
        for (std::size_t k = 0; k < M; ++k)
            values[(k + 1) * d + c] = w(static_cast<Eigen::Index>(k));
    }
    return SampledPath(times, std::move(values), d);
}

RoughPath dyadic_lift(const SampledPath& w, int m, double p) {
    const std::vector<double> dy = dyadic_times(m);
    // the input grid must refine the dyadic level-m grid
    const auto& wt = w.times();
    std::size_t cursor = 0;
    for (double t : dy) {
        while (cursor < wt.size() && wt[cursor] < t - 1e-12) ++cursor;
        if (cursor >= wt.size() || std::abs(wt[cursor] - t) > 1e-12)
            throw ShapeError("dyadic_lift: sample grid does not refine the dyadic level-m grid");
    }
    const int level = (p > 3.0) ? 3 : 2;
    return lift_bv(resample(w, dy), level, p);
}

SampledPath stratonovich_solve(const SampledPath& w, const VectorFieldFamily& vf,
                               std::span<const double> y0, std::size_t substeps) {
    if (vf.noise_dim != w.dim()) throw ShapeError("stratonovich_solve: noise dim mismatch");
    if (y0.size() != vf.state_dim) throw ShapeError("stratonovich_solve: y0 dim mismatch");
    if (substeps < 1) throw ShapeError("stratonovich_solve: need at least one substep");

    const std::size_t n = vf.state_dim, d = vf.noise_dim;
    std::vector<double> times(substeps + 1);
    for (std::size_t k = 0; k <= substeps; ++k)
        times[k] = static_cast<double>(k) / static_cast<double>(substeps);
    times.back() = 1.0;
    const SampledPath wr = resample(w, times);

    std::vector<double> out((substeps + 1) * n);
    std::vector<double> y(y0.begin(), y0.end());
    std::copy(y.begin(), y.end(), out.begin());
    std::vector<double> sig0(n * d), sig1(n * d), b0(n), b1(n), ypred(n), dw(d);
    for (std::size_t k = 0; k < substeps; ++k) {
        const double dt = times[k + 1] - times[k];
        for (std::size_t c = 0; c < d; ++c) dw[c] = wr.value(k + 1, c) - wr.value(k, c);
        vf.sigma(y, sig0.data());
        if (vf.has_drift()) vf.drift(y, b0.data());
        for (std::size_t a = 0; a < n; ++a) {
            double s = y[a];
            for (std::size_t c = 0; c < d; ++c) s += sig0[a * d + c] * dw[c];
            if (vf.has_drift()) s += b0[a] * dt;
            ypred[a] = s;
        }
        vf.sigma(ypred, sig1.data());
        if (vf.has_drift()) vf.drift(ypred, b1.data());
        for (std::size_t a = 0; a < n; ++a) {
            double s = y[a];
            for (std::size_t c = 0; c < d; ++c)
                s += 0.5 * (sig0[a * d + c] + sig1[a * d + c]) * dw[c];
            if (vf.has_drift()) s += 0.5 * (b0[a] + b1[a]) * dt;
            y[a] = s;
        }
        if (!std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); }))
            throw SolverError("instability: non-finite state in Heun step");
        std::copy(y.begin(), y.end(), out.begin() + (k + 1) * n);
    }
    return SampledPath(times, std::move(out), n);
}

std::vector<WongZakaiRow> wong_zakai_study(const VectorFieldFamily& vf,
                                           std::span<const double> y0,
                                           const std::vector<std::uint64_t>& seeds,
                                           const std::vector<int>& levels, Scheme scheme,
                                           std::size_t oracle_substeps) {
    int m_max = 1;
    for (int m : levels) m_max = std::max(m_max, m);
    int m_sample = m_max;
    while ((static_cast<std::size_t>(1) << m_sample) < oracle_substeps) ++m_sample;

    std::vector<WongZakaiRow> rows;
    rows.reserve(seeds.size() * levels.size());
    const std::size_t n = vf.state_dim;
    for (const std::uint64_t seed : seeds) {
        const SampledPath w =
            sample({GaussianKind::brownian, 0.5, vf.noise_dim, m_sample, seed});
        const SampledPath oracle = stratonovich_solve(w, vf, y0, oracle_substeps);
        for (const int m : levels) {
            WongZakaiRow row{seed, m, std::numeric_limits<double>::quiet_NaN()};
            try {
                const RoughPath X = dyadic_lift(w, m, kDefaultRoughness);
                const RdeSolution sol = solve_rde(X, vf, y0, scheme);
                double sup = 0.0;
                for (std::size_t k = 0; k < sol.y.grid_size(); ++k) {
                    const std::vector<double> ref = oracle.at(sol.y.times()[k]);
                    for (std::size_t a = 0; a < n; ++a)
                        sup = std::max(sup, std::abs(sol.y.value(k, a) - ref[a]));
                }
                row.sup_error = sup;
            } catch (const SolverError&) {
                // row keeps NaN
            }
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<SchilderRow> schilder_tail(const std::vector<double>& eps_list, double delta,
                                       std::size_t n_samples, std::uint64_t seed, int m) {
    if (!(delta > 0.0)) throw ShapeError("schilder_tail requires delta > 0");
    if (n_samples == 0) throw ShapeError("schilder_tail requires n_samples > 0");

    const std::size_t steps = static_cast<std::size_t>(1) << m;
    const double sdt = std::sqrt(1.0 / static_cast<double>(steps));

    std::vector<SchilderRow> rows;
    rows.reserve(eps_list.size());
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
        const double eps = eps_list[e];
        if (!(eps > 0.0)) throw ShapeError("schilder_tail requires eps > 0");
        const double threshold = delta / eps;  // sup_t w_t >= delta/eps
        GaussianRng rng(seed + 0x9e3779b97f4a7c15ull * (e + 1));
        std::size_t hits = 0;
        for (std::size_t s = 0; s < n_samples; ++s) {
            double w = 0.0;
            bool hit = false;
            for (std::size_t k = 0; k < steps; ++k) {
                w += sdt * rng();
                if (w >= threshold) {
                    hit = true;
                    break;
                }
            }
            if (hit) ++hits;
        }
        const double p_hat = static_cast<double>(hits) / static_cast<double>(n_samples);
        const double rate_est = (hits == 0) ? std::numeric_limits<double>::quiet_NaN()
                                            : -eps * eps * std::log(p_hat);
        rows.push_back({eps, n_samples, p_hat, rate_est, 0.5 * delta * delta});
    }
    return rows;
}

bool complementary_young_ok(double hurst, double p) {
    if (!(hurst > 1.0 / 3.0 && hurst <= 0.5)) return false;  // level-2 lift regime
    if (!(p > 2.0 && p < 3.0)) return false;                 // admissible band for N=2
    if (!(p * hurst > 1.0)) return false;                    // fBm is of finite p-variation only for p > 1/H
    const double q = 1.0 / (hurst + 0.5);
    return 1.0 / p + 1.0 / q > 1.0;
}

void require_complementary_young(double hurst, double p) {
    if (!complementary_young_ok(hurst, p))
        throw RegularityError("complementary Young regularity violated for (H, p)");
}

}  // namespace rough
