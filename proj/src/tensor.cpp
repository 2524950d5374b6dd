#include "rough/tensor.hpp"

#include <cmath>
#include <cstddef>

#include "rough/errors.hpp"

namespace rough {

namespace {

std::size_t pow_dim(std::size_t d, int k) {
    std::size_t n = 1;
    for (int i = 0; i < k; ++i) n *= d;
    return n;
}

void require_same_shape(const TruncatedTensor& a, const TruncatedTensor& b) {
    if (a.dim() != b.dim() || a.level() != b.level())
        throw ShapeError("tensor shape mismatch: dim " + std::to_string(a.dim()) + "/" +
                         std::to_string(b.dim()) + ", level " + std::to_string(a.level()) + "/" +
                         std::to_string(b.level()));
}

}  // namespace

TruncatedTensor::TruncatedTensor(std::size_t dim, int level)
    : dim_(dim), level_(level), deg0_(0.0) {
    if (dim == 0) throw ShapeError("tensor dim must be positive");
    if (level < 1 || level > kMaxTensorLevel)
        throw ShapeError("tensor level out of range [1," + std::to_string(kMaxTensorLevel) + "]");
    degrees_.resize(static_cast<std::size_t>(level));
    for (int k = 1; k <= level; ++k)
        degrees_[static_cast<std::size_t>(k - 1)].assign(pow_dim(dim, k), 0.0);
}

TruncatedTensor TruncatedTensor::identity(std::size_t dim, int level) {
    TruncatedTensor t(dim, level);
    t.deg0_ = 1.0;
    return t;
}

TruncatedTensor TruncatedTensor::segment_exp(std::span<const double> v, int level) {
    TruncatedTensor t = identity(v.size(), level);
    t.degrees_[0].assign(v.begin(), v.end());
    double factorial = 1.0;
    for (int k = 2; k <= level; ++k) {
        factorial *= k;
        const std::vector<double>& prev = t.degrees_[static_cast<std::size_t>(k - 2)];
        std::vector<double>& cur = t.degrees_[static_cast<std::size_t>(k - 1)];
        // v^{⊗k}/k! built from v^{⊗(k-1)}/(k-1)! ⊗ v / k
        for (std::size_t p = 0; p < prev.size(); ++p)
            for (std::size_t i = 0; i < v.size(); ++i)
                cur[p * v.size() + i] = prev[p] * v[i] / static_cast<double>(k);
    }
    return t;
}

double TruncatedTensor::degree_norm(int k) const {
    double s = 0.0;
    for (double x : degrees_[static_cast<std::size_t>(k - 1)]) s += x * x;
    return std::sqrt(s);
}

double TruncatedTensor::max_degree_norm() const {
    double m = 0.0;
    for (int k = 1; k <= level_; ++k) m = std::max(m, degree_norm(k));
    return m;
}

bool TruncatedTensor::group_like(double tol) const { return std::abs(deg0_ - 1.0) <= tol; }

TruncatedTensor& TruncatedTensor::operator+=(const TruncatedTensor& o) {
    require_same_shape(*this, o);
    deg0_ += o.deg0_;
    for (int k = 1; k <= level_; ++k) {
        auto& a = degrees_[static_cast<std::size_t>(k - 1)];
        const auto& b = o.degrees_[static_cast<std::size_t>(k - 1)];
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    }
    return *this;
}

TruncatedTensor& TruncatedTensor::operator-=(const TruncatedTensor& o) {
    require_same_shape(*this, o);
    deg0_ -= o.deg0_;
    for (int k = 1; k <= level_; ++k) {
        auto& a = degrees_[static_cast<std::size_t>(k - 1)];
        const auto& b = o.degrees_[static_cast<std::size_t>(k - 1)];
        for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    }
    return *this;
}

TruncatedTensor& TruncatedTensor::operator*=(double c) {
    deg0_ *= c;
    for (auto& deg : degrees_)
        for (double& x : deg) x *= c;
    return *this;
}

TruncatedTensor tensor_mul(const TruncatedTensor& a, const TruncatedTensor& b) {
    require_same_shape(a, b);
    const std::size_t d = a.dim();
    const int level = a.level();
    TruncatedTensor c(d, level);
    c.deg0() = a.deg0() * b.deg0();
    for (int k = 1; k <= level; ++k) {
        std::vector<double>& out = c.degree(k);
        // i = 0 and j = 0 end terms use the scalar parts
        {
            const std::vector<double>& bk = b.degree(k);
            for (std::size_t p = 0; p < out.size(); ++p) out[p] += a.deg0() * bk[p];
            const std::vector<double>& ak = a.degree(k);
            for (std::size_t p = 0; p < out.size(); ++p) out[p] += ak[p] * b.deg0();
        }
        for (int i = 1; i < k; ++i) {
            const int j = k - i;
            const std::vector<double>& ai = a.degree(i);
            const std::vector<double>& bj = b.degree(j);
            const std::size_t nb = bj.size();
            for (std::size_t p = 0; p < ai.size(); ++p) {
                const double ap = ai[p];
                if (ap == 0.0) continue;
                double* dst = out.data() + p * nb;
                for (std::size_t q = 0; q < nb; ++q) dst[q] += ap * bj[q];
            }
        }
    }
    return c;
}

TruncatedTensor tensor_inverse(const TruncatedTensor& a) {
    if (!a.group_like(1e-9))
        throw ShapeError("tensor_inverse: element is not group-like (deg0 != 1)");
    const std::size_t d = a.dim();
    const int level = a.level();
    // a = 1 + u with u nilpotent; a^{-1} = sum_k (-u)^k truncated at the level.
    TruncatedTensor neg_u(d, level);
    for (int k = 1; k <= level; ++k) {
        const auto& src = a.degree(k);
        auto& dst = neg_u.degree(k);
        for (std::size_t i = 0; i < src.size(); ++i) dst[i] = -src[i];
    }
    TruncatedTensor result = TruncatedTensor::identity(d, level);
    TruncatedTensor power = TruncatedTensor::identity(d, level);
    for (int k = 1; k <= level; ++k) {
        power = tensor_mul(power, neg_u);
        result += power;
    }
    result.deg0() = 1.0;
    return result;
}

TruncatedTensor dilation(double eps, const TruncatedTensor& a) {
    TruncatedTensor out = a;
    out.deg0() = a.deg0();
    double scale = 1.0;
    for (int k = 1; k <= a.level(); ++k) {
        scale *= eps;
        for (double& x : out.degree(k)) x *= scale;
    }
    return out;
}

std::vector<double> levy_area(const TruncatedTensor& a) {
    if (a.level() < 2) throw ShapeError("levy_area requires level >= 2");
    const std::size_t d = a.dim();
    std::vector<double> area(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            area[i * d + j] = 0.5 * (a.deg2(i, j) - a.deg2(j, i));
    return area;
}

double chen_defect(std::span<const TruncatedTensor> basepoints, std::size_t s, std::size_t u,
                   std::size_t t) {
    if (!(s <= u && u <= t) || t >= basepoints.size())
        throw ShapeError("chen_defect: need grid indices s <= u <= t");
    const TruncatedTensor inv_s = tensor_inverse(basepoints[s]);
    const TruncatedTensor whole = tensor_mul(inv_s, basepoints[t]);
    const TruncatedTensor left = tensor_mul(inv_s, basepoints[u]);
    const TruncatedTensor right = tensor_mul(tensor_inverse(basepoints[u]), basepoints[t]);
    return chen_defect(whole, left, right);
}

double chen_defect(const TruncatedTensor& whole, const TruncatedTensor& left,
                   const TruncatedTensor& right) {
    TruncatedTensor defect = whole;
    defect -= tensor_mul(left, right);
    return defect.max_degree_norm();
}

Signature signature(const SampledPath& path, int K) {
    if (K < 1 || K > kMaxTensorLevel)
        throw ShapeError("signature level K out of range [1," + std::to_string(kMaxTensorLevel) +
                         "]");
    const std::size_t d = path.dim();
    TruncatedTensor sig = TruncatedTensor::identity(d, K);
    std::vector<double> delta(d);
    for (std::size_t k = 0; k + 1 < path.grid_size(); ++k) {
        for (std::size_t c = 0; c < d; ++c) delta[c] = path.value(k + 1, c) - path.value(k, c);
        sig = tensor_mul(sig, TruncatedTensor::segment_exp(delta, K));
    }
    return Signature{std::move(sig)};
}

}  // namespace rough
