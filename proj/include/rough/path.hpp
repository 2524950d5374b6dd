#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rough {

/// Piecewise-linear path on a time grid over [0,1].
///
/// `values` is (M+1) x dim row-major; the path is interpreted as linear
/// between consecutive samples.
class SampledPath {
  public:
    SampledPath(std::vector<double> times, std::vector<double> values, std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t grid_size() const { return times_.size(); }  // M+1
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& data() const { return values_; }

    std::span<const double> value(std::size_t k) const {
        return {values_.data() + k * dim_, dim_};
    }
    double value(std::size_t k, std::size_t c) const { return values_[k * dim_ + c]; }

    /// Linear interpolation at an arbitrary time in [0,1].
    std::vector<double> at(double t) const;

  private:
    std::vector<double> times_;
    std::vector<double> values_;
    std::size_t dim_;
};

/// Two-parameter function R(s,t) tabulated on a pair of grids.
struct TwoParamGrid {
    std::vector<double> s_grid;
    std::vector<double> t_grid;
    std::vector<double> values;  // |s_grid| x |t_grid| row-major

    TwoParamGrid(std::vector<double> s, std::vector<double> t, std::vector<double> v);
    double operator()(std::size_t i, std::size_t j) const {
        return values[i * t_grid.size() + j];
    }
};

/// Finite-energy path h with cached energy (1/2)∫|h'|^2 dt.
class CameronMartinPath {
  public:
    explicit CameronMartinPath(SampledPath h);
    const SampledPath& path() const { return h_; }
    double energy() const { return energy_; }

  private:
    SampledPath h_;
    double energy_;
};

/// Norm-of-increment callback: |A_{t_i, t_j}| for grid indices i < j.
using IncrementNorm = std::function<double(std::size_t, std::size_t)>;

/// p-variation over partitions with points on the sample grid, computed
/// exactly by dynamic programming.  `npoints` is the grid size M+1.
double p_variation(const IncrementNorm& inc, std::size_t npoints, double p);
double p_variation(const SampledPath& x, double p);

/// max over grid pairs s<t of |A_{s,t}| / (t-s)^exponent.
double holder_norm(const IncrementNorm& inc, std::span<const double> times, double exponent);
double holder_norm(const SampledPath& x, double exponent);

struct RhoVariation {
    double value;
    bool exact;  // false: grid too large, full-grid partition pair reported as a lower bound
};

/// rho-variation of a two-parameter function over partition pairs drawn from
/// the grids.  Exhaustive for grids of at most 12 points per axis.
RhoVariation rho_variation_2d(const TwoParamGrid& R, double rho);

/// Exact Riemann-Stieltjes integral of a piecewise-linear Mat(n,d)-valued
/// integrand against a piecewise-linear R^d integrator.  y.dim must be n*d
/// with d = x.dim; the grids are merged to a common refinement first.
SampledPath rs_integral(const SampledPath& y, const SampledPath& x);

/// Young integral as the left-point Riemann sum on the full grid.
/// Requires 1/p + 1/q > 1; grids must agree.
SampledPath young_integral(const SampledPath& y, const SampledPath& x, double p, double q);

double cm_energy(const CameronMartinPath& h);

/// Linear resampling of a path onto a new grid (exact for piecewise-linear data).
SampledPath resample(const SampledPath& x, const std::vector<double>& new_times);

/// Sorted union of two time grids.
std::vector<double> merge_times(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace rough
