#pragma once

#include <cstdint>
#include <vector>

#include "rough/path.hpp"
#include "rough/rde.hpp"
#include "rough/rough_path.hpp"

namespace rough {

enum class GaussianKind { brownian, fbm };

/// Sampler specification: a path on the dyadic grid of 2^m + 1 points, i.i.d.
/// components, deterministic in the 64-bit seed.
struct GaussianSpec {
    GaussianKind kind = GaussianKind::brownian;
    double hurst = 0.5;  // (0,1) for sampling; (1/3, 1/2] for lifted use
    std::size_t dim = 1;
    int m = 8;
    std::uint64_t seed = 0;
};

/// fBm covariance R(s,t) = (s^{2H} + t^{2H} - |t-s|^{2H}) / 2.
double fbm_covariance(double hurst, double s, double t);

/// Brownian: scaled i.i.d. increments.  fBm: exact grid marginals by Cholesky
/// factorization of the covariance matrix, per component.
SampledPath sample(const GaussianSpec& spec);

/// Lift of the level-m dyadic polygonal approximation w(m); the input grid
/// must refine the dyadic grid.
RoughPath dyadic_lift(const SampledPath& w, int m, double p = kDefaultRoughness);

/// Heun predictor-corrector consistent with the Stratonovich Riemann sum
/// (sigma(y_{t_i}) + sigma(y_{t_{i-1}}))/2 · Δw.  Oracle for Wong-Zakai runs.
SampledPath stratonovich_solve(const SampledPath& w, const VectorFieldFamily& vf,
                               std::span<const double> y0, std::size_t substeps);

struct WongZakaiRow {
    std::uint64_t seed = 0;
    int m = 0;
    double sup_error = 0.0;  // NaN when the solver failed for this row
};

/// For each seed and dyadic level m: sup-norm distance on the level-m grid
/// between solve_rde(dyadic_lift(w, m)) and the Heun oracle at `oracle_substeps`.
std::vector<WongZakaiRow> wong_zakai_study(const VectorFieldFamily& vf,
                                           std::span<const double> y0,
                                           const std::vector<std::uint64_t>& seeds,
                                           const std::vector<int>& levels,
                                           Scheme scheme = Scheme::euler,
                                           std::size_t oracle_substeps = 1u << 14);

struct SchilderRow {
    double eps = 0.0;
    std::size_t n_samples = 0;
    double p_hat = 0.0;
    double rate_est = 0.0;  // -eps^2 log p_hat; NaN when p_hat = 0
    double rate_ref = 0.0;  // delta^2 / 2
};

/// Monte Carlo tail of the scaled scalar Brownian supremum,
/// p_hat = P(sup_t eps·w_t >= delta) over the dyadic level-m grid.
std::vector<SchilderRow> schilder_tail(const std::vector<double>& eps_list, double delta,
                                       std::size_t n_samples, std::uint64_t seed, int m = 11);

/// Complementary Young regularity bookkeeping for the level-2 fBm regime:
/// H in (1/3, 1/2], p in (2,3) with p > 1/H, and 1/p + 1/q > 1 for
/// q = (H + 1/2)^{-1}.
bool complementary_young_ok(double hurst, double p);
/// Throwing form of the same gate.
void require_complementary_young(double hurst, double p);

}  // namespace rough
