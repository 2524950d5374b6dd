#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rough/path.hpp"
#include "rough/tensor.hpp"

namespace rough {

/// Geometric rough path on a grid, stored as group elements X_{0,t_k} from
/// the basepoint.  Increments X_{s,t} are recovered as X_{0,s}^{-1} ⊗ X_{0,t},
/// so Chen's identity holds by construction.
class RoughPath {
  public:
    RoughPath(std::size_t dim, int level, double p, std::vector<double> times,
              std::vector<TruncatedTensor> basepoints);

    std::size_t dim() const { return dim_; }
    int level() const { return level_; }
    double roughness() const { return p_; }
    std::size_t grid_size() const { return times_.size(); }
    const std::vector<double>& times() const { return times_; }

    const TruncatedTensor& basepoint(std::size_t k) const { return base_[k]; }
    TruncatedTensor increment(std::size_t i, std::size_t j) const;

    /// Frobenius norm of the level-`lvl` part of X_{t_i, t_j}.
    double level_increment_norm(int lvl, std::size_t i, std::size_t j) const;

    /// First level from the basepoint, x_t = X^1_{0,t}, as a SampledPath.
    SampledPath first_level_path() const;

  private:
    std::size_t dim_;
    int level_;
    double p_;
    std::vector<double> times_;
    std::vector<TruncatedTensor> base_;
};

/// Admissible roughness band for a level: (2,3) for N=2, (3,4) for N=3.
bool p_band_ok(int level, double p);
inline constexpr double kDefaultRoughness = 2.5;

/// Natural lift of a piecewise-linear path: basepoint elements are exact
/// iterated integrals (per-segment exponentials composed by tensor_mul).
RoughPath lift_bv(const SampledPath& x, int level, double p = kDefaultRoughness);

struct ValidationReport {
    double max_chen_defect = 0.0;
    std::vector<double> level_variation;  // ||X^i||_{p/i} on the grid, i = 1..N
    double symmetry_residual = 0.0;       // max over pairs |Sym(X^2) - X^1⊗X^1/2|
    double tol = 0.0;
    bool pass = false;
};

/// Chen defect over dyadic triples, level-wise variation norms, geometric
/// symmetry residual; pass/fail against tol (variation norms are reported,
/// only defect and symmetry are gated).
ValidationReport validate(const RoughPath& X, double tol);

/// sum_{i<=N} ||X^i - Y^i||_{p/i} over the common grid.
double rp_distance(const RoughPath& X, const RoughPath& Y, double p);

/// C^3 one-form f: R^d -> Mat(n,d) with gradient.
/// value: out(a,j) row-major, n x d.
/// gradient: grad(a,j,k) = d f_{a,j} / d x_k, n x d x d row-major.
struct OneForm {
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    std::function<void(std::span<const double>, double*)> value;
    std::function<void(std::span<const double>, double*)> gradient;
    bool smooth_c3 = true;
};

/// Finite-difference consistency check of the declared gradient at the given
/// points (relative error < 1e-5 at step 1e-6).  Throws ShapeError on failure.
void check_one_form(const OneForm& f, std::span<const double> points, std::size_t npoints);

/// Rough integral ∫ f(X) dX for N=2 via compensated Riemann sums on the full
/// grid (first level: f(x_s)X^1 + ∇f(x_s)X^2; second level with the
/// Y^1 ⊗ Y^1 cross term).
RoughPath rough_integral(const OneForm& f, const RoughPath& X);

/// Young pairing (X, h) over R^{d+r}: X and lift(h) on the diagonal blocks,
/// cross integrals ∫X^1⊗dh and ∫h⊗dX^1 evaluated exactly for the
/// piecewise-linear grid representatives.  Requires 1/p + 1/q > 1 and a
/// common grid; N=2 only.
RoughPath young_pairing(const RoughPath& X, const SampledPath& h, double q);

/// Young translation tau_h(X): first level X^1 + dh, second level
/// X^2 + ∫X^1⊗dh + ∫h⊗dX^1 + (lift h)^2.  N=2 only.
RoughPath young_translate(const RoughPath& X, const SampledPath& h, double q);

/// Dilation applied to every basepoint element.
RoughPath scale(double eps, const RoughPath& X);

}  // namespace rough
