#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rough/path.hpp"

namespace rough {

inline constexpr int kMaxTensorLevel = 5;

/// Element of the truncated tensor algebra T^(N)(R^d), degrees 0..N stored
/// densely (degree k is a row-major array of dim^k doubles).  Rough paths use
/// N in {2,3}; signatures go up to N = 5.
class TruncatedTensor {
  public:
    TruncatedTensor(std::size_t dim, int level);  // zero element

    static TruncatedTensor identity(std::size_t dim, int level);
    /// exp of the degree-1 element v: degree-k part v^{⊗k}/k!.
    static TruncatedTensor segment_exp(std::span<const double> v, int level);

    std::size_t dim() const { return dim_; }
    int level() const { return level_; }

    double deg0() const { return deg0_; }
    double& deg0() { return deg0_; }

    const std::vector<double>& degree(int k) const { return degrees_[k - 1]; }
    std::vector<double>& degree(int k) { return degrees_[k - 1]; }

    double deg1(std::size_t i) const { return degrees_[0][i]; }
    double deg2(std::size_t i, std::size_t j) const { return degrees_[1][i * dim_ + j]; }
    double deg3(std::size_t i, std::size_t j, std::size_t k) const {
        return degrees_[2][(i * dim_ + j) * dim_ + k];
    }

    /// Frobenius norm of one degree block.
    double degree_norm(int k) const;
    /// max over degrees 1..N of the per-degree Frobenius norm.
    double max_degree_norm() const;

    bool group_like(double tol = 1e-12) const;

    TruncatedTensor& operator+=(const TruncatedTensor& o);
    TruncatedTensor& operator-=(const TruncatedTensor& o);
    TruncatedTensor& operator*=(double c);

  private:
    std::size_t dim_;
    int level_;
    double deg0_;
    std::vector<std::vector<double>> degrees_;  // [k-1] has dim^k entries
};

/// Graded truncated product: degree-k output is sum_{i+j=k} a_i ⊗ b_j.
TruncatedTensor tensor_mul(const TruncatedTensor& a, const TruncatedTensor& b);

/// Group inverse of a group-like element via the truncated Neumann series.
TruncatedTensor tensor_inverse(const TruncatedTensor& a);

/// Dilation: degree-k component scaled by eps^k.
TruncatedTensor dilation(double eps, const TruncatedTensor& a);

/// Antisymmetric part of the second level, (deg2 - deg2^T)/2, d x d row-major.
std::vector<double> levy_area(const TruncatedTensor& a);

/// Chen defect |X_{s,t} - X_{s,u} ⊗ X_{u,t}| (max per-degree Frobenius norm)
/// for basepoint elements X_{0,t_k}; s <= u <= t are grid indices.  Zero up
/// to roundoff for any basepoint representation.
double chen_defect(std::span<const TruncatedTensor> basepoints, std::size_t s, std::size_t u,
                   std::size_t t);

/// Chen defect of explicitly given increments (direct substitution into the
/// identity; this is where a hand-corrupted second level shows up).
double chen_defect(const TruncatedTensor& whole, const TruncatedTensor& left,
                   const TruncatedTensor& right);

/// Signature of a path over [0,1]: the full tensor of iterated integrals up
/// to degree K, exact for piecewise-linear paths.
struct Signature {
    TruncatedTensor tensor;
};

Signature signature(const SampledPath& path, int K);

}  // namespace rough
