#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rough/controlled.hpp"
#include "rough/rough_path.hpp"

namespace rough {

/// RDE coefficients dy = sigma(y) dx + b(y) dt.
/// sigma: n x d row-major (columns are the vector fields V_1..V_d).
/// dsigma: (a,i,b) = d sigma_{a,i} / d y_b, n x d x n row-major.
/// d2sigma: (a,i,b,c), n x d x n x n row-major (optional).
/// drift/ddrift may be empty for driftless systems.
struct VectorFieldFamily {
    std::size_t state_dim = 0;
    std::size_t noise_dim = 0;
    std::function<void(std::span<const double>, double*)> sigma;
    std::function<void(std::span<const double>, double*)> dsigma;
    std::function<void(std::span<const double>, double*)> d2sigma;
    std::function<void(std::span<const double>, double*)> drift;
    std::function<void(std::span<const double>, double*)> ddrift;
    bool smooth_c3b = true;

    bool has_drift() const { return static_cast<bool>(drift); }
};

/// Finite-difference consistency of dsigma (and ddrift when present) at the
/// given states; throws ShapeError when the relative error exceeds 1e-5.
void check_vector_fields(const VectorFieldFamily& vf, std::span<const double> states,
                         std::size_t nstates);

enum class Scheme { picard, euler };
Scheme scheme_from_string(const std::string& s);
std::string to_string(Scheme s);

struct RdeSolution {
    SampledPath y;                 // solution on the driver grid
    std::vector<double> yprime;    // (M+1) x n x d Gubinelli derivative, sigma(y_t)
    std::optional<RoughPath> pair; // rough path over R^{d+n} when requested
    Scheme scheme = Scheme::picard;
    std::vector<std::string> halving_log;
};

/// Solve dy = sigma(y) dX (+ b(y) dt) driven by a level-2 rough path.
/// picard: fixed-point iteration of the controlled integral on adaptively
/// halved subintervals; euler: the Davie step
/// y += sigma(y) X^1 + (∇sigma·sigma)(y) X^2 + b(y) Δt.
RdeSolution solve_rde(const RoughPath& X, const VectorFieldFamily& vf,
                      std::span<const double> y0, Scheme scheme,
                      bool want_pair = false);

/// Lyons-Itô map with drift: Young pairing with λ_t = t, block coefficient
/// [sigma | b], solve, project.  Reduces to solve_rde when vf has no drift.
RdeSolution lyons_ito_map(const RoughPath& X, const VectorFieldFamily& vf,
                          std::span<const double> y0, Scheme scheme = Scheme::picard);

/// Skeleton ODE solution φ(h) for a Cameron-Martin path (Young regime).
SampledPath skeleton(const CameronMartinPath& h, const VectorFieldFamily& vf,
                     std::span<const double> y0);

struct JacobianSolution {
    SampledPath y;
    std::vector<double> j;  // (M+1) x n x n
    std::vector<double> k;  // (M+1) x n x n
};

/// Triangular system: solve for y first, then the linear Jacobian equations
/// with coefficients ∇V_i(y_t) frozen per step at order (X^1, X^2).
JacobianSolution solve_jacobian(const RoughPath& X, const VectorFieldFamily& vf,
                                std::span<const double> y0);

struct NAlphaReport {
    double alpha = 0.0;
    std::vector<double> taus;      // tau_1, tau_2, ... (tau_0 = 0 implicit), capped at 1
    std::vector<double> controls;  // control value attained on each interval
    int n_alpha = 0;               // max { m : tau_m < 1 }
};

/// Greedy stopping times at control budget alpha:
/// tau_m = first grid time with sum_i ||X^i||_{p/i,[tau_{m-1},t]}^{p/i} >= alpha.
NAlphaReport n_alpha(const RoughPath& X, double alpha, double p);

}  // namespace rough
