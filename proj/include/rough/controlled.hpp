#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "rough/rough_path.hpp"

namespace rough {

/// Smooth map g: R^in -> R^out with Jacobian (and optional Hessian).
/// jacobian: jac(a,b) = d g_a / d y_b, out x in row-major.
/// hessian: hess(a,b,c) = d^2 g_a / d y_b d y_c, out x in x in row-major.
struct SmoothMap {
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    std::function<void(std::span<const double>, double*)> value;
    std::function<void(std::span<const double>, double*)> jacobian;
    std::function<void(std::span<const double>, double*)> hessian;  // may be empty
};

void check_smooth_map(const SmoothMap& g, std::span<const double> points, std::size_t npoints);

/// Controlled path (Y, Y') with respect to a level-2 reference rough path.
/// Values are flattened to vdim doubles per grid point; the Gubinelli
/// derivative is vdim x d per grid point.  The remainder
/// R_{s,t} = Y_t - Y_s - Y'_s X^1_{s,t} is recomputed on demand rather than
/// stored (the triple is redundant).
class ControlledPath {
  public:
    ControlledPath(std::shared_ptr<const RoughPath> ref, std::size_t vdim,
                   std::vector<double> values, std::vector<double> derivs);

    const RoughPath& reference() const { return *ref_; }
    std::shared_ptr<const RoughPath> reference_ptr() const { return ref_; }
    std::size_t vdim() const { return vdim_; }
    std::size_t grid_size() const { return ref_->grid_size(); }

    std::span<const double> value(std::size_t k) const {
        return {values_.data() + k * vdim_, vdim_};
    }
    std::span<const double> deriv(std::size_t k) const {
        const std::size_t d = ref_->dim();
        return {derivs_.data() + k * vdim_ * d, vdim_ * d};
    }
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& derivs() const { return derivs_; }

    /// Materialized remainder R_{t_i, t_j}.
    std::vector<double> remainder(std::size_t i, std::size_t j) const;

  private:
    std::shared_ptr<const RoughPath> ref_;
    std::size_t vdim_;
    std::vector<double> values_;  // (M+1) x vdim
    std::vector<double> derivs_;  // (M+1) x vdim x d
};

/// The reference itself as a controlled path: Y_t = X^1_{0,t}, Y' = Id, R = 0.
ControlledPath from_reference(std::shared_ptr<const RoughPath> X);

/// Composition g(Y): values g(Y_t), derivative ∇g(Y_t)·Y'_t.
ControlledPath compose(const SmoothMap& g, const ControlledPath& yp);

/// Controlled rough integral of a Mat(n,d)-valued controlled path
/// (vdim = n*d, d = reference dim) via the modified Riemann sum
/// sum_i { Y_{t_{i-1}} X^1 + Y'_{t_{i-1}} · X^2 }; the output derivative is
/// Z'_s = Y_s.
ControlledPath controlled_integral(const ControlledPath& yp);

/// Grid Hölder norm of the remainder at the given exponent.
double remainder_norm(const ControlledPath& yp, double exponent);

}  // namespace rough
