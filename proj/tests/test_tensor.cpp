#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "rough/errors.hpp"
#include "rough/presets.hpp"
#include "rough/rough_path.hpp"
#include "rough/tensor.hpp"

using namespace rough;

namespace {

TruncatedTensor random_group_like(std::uint64_t seed, std::size_t d, int level) {
    // product of a few segment exponentials: group-like by construction
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TruncatedTensor t = TruncatedTensor::identity(d, level);
    std::vector<double> v(d);
    for (int s = 0; s < 4; ++s) {
        for (auto& c : v) c = u(gen);
        t = tensor_mul(t, TruncatedTensor::segment_exp(v, level));
    }
    return t;
}

TruncatedTensor random_tensor(std::uint64_t seed, std::size_t d, int level) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TruncatedTensor t(d, level);
    t.deg0() = 1.0;
    for (int k = 1; k <= level; ++k)
        for (auto& x : t.degree(k)) x = u(gen);
    return t;
}

double max_abs_diff(const TruncatedTensor& a, const TruncatedTensor& b) {
    TruncatedTensor c = a;
    c -= b;
    return c.max_degree_norm();
}

}  // namespace

TEST_CASE("tensor_mul: unit and degree-2 expansion") {
    const std::size_t d = 3;
    TruncatedTensor id = TruncatedTensor::identity(d, 2);
    TruncatedTensor a = random_group_like(7, d, 2);
    CHECK(max_abs_diff(tensor_mul(id, a), a) == doctest::Approx(0.0));

    // (1,v,0) ⊗ (1,w,0) = (1, v+w, v⊗w)
    TruncatedTensor v(d, 2), w(d, 2);
    v.deg0() = w.deg0() = 1.0;
    v.degree(1) = {1.0, 2.0, -1.0};
    w.degree(1) = {0.5, -0.25, 3.0};
    TruncatedTensor prod = tensor_mul(v, w);
    for (std::size_t i = 0; i < d; ++i) {
        CHECK(prod.deg1(i) == doctest::Approx(v.deg1(i) + w.deg1(i)));
        for (std::size_t j = 0; j < d; ++j)
            CHECK(prod.deg2(i, j) == doctest::Approx(v.deg1(i) * w.deg1(j)));
    }
}

TEST_CASE("tensor_mul: Chen product of lift increments of (t, t^3)") {
    const SampledPath x = presets::path("tcubed", 8);
    const RoughPath X = lift_bv(x, 2, 2.5);
    const std::size_t mid = (X.grid_size() - 1) / 2;
    const TruncatedTensor left = X.increment(0, mid);
    const TruncatedTensor right = X.increment(mid, X.grid_size() - 1);
    const TruncatedTensor whole = X.increment(0, X.grid_size() - 1);
    CHECK(max_abs_diff(tensor_mul(left, right), whole) < 1e-12);
}

TEST_CASE("tensor_mul: shape errors") {
    TruncatedTensor a(2, 2), b(3, 2), c(2, 3);
    CHECK_THROWS_AS((void)tensor_mul(a, b), ShapeError);
    CHECK_THROWS_AS((void)tensor_mul(a, c), ShapeError);
}

TEST_CASE("tensor_inverse") {
    SUBCASE("identity inverts to identity") {
        TruncatedTensor id = TruncatedTensor::identity(2, 3);
        CHECK(max_abs_diff(tensor_inverse(id), id) == doctest::Approx(0.0));
    }
    SUBCASE("level-2 closed form (1, v, v⊗v/2) -> (1, -v, v⊗v/2)") {
        std::vector<double> v{0.7, -1.3};
        TruncatedTensor a = TruncatedTensor::segment_exp(v, 2);
        TruncatedTensor inv = tensor_inverse(a);
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(inv.deg1(i) == doctest::Approx(-v[i]));
            for (std::size_t j = 0; j < 2; ++j)
                CHECK(inv.deg2(i, j) == doctest::Approx(0.5 * v[i] * v[j]));
        }
    }
    SUBCASE("random group-like: a ⊗ a^{-1} = identity within 1e-13") {
        for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
            for (int level : {2, 3}) {
                TruncatedTensor a = random_group_like(seed, 2, level);
                TruncatedTensor id = TruncatedTensor::identity(2, level);
                CHECK(max_abs_diff(tensor_mul(a, tensor_inverse(a)), id) < 1e-13);
                CHECK(max_abs_diff(tensor_mul(tensor_inverse(a), a), id) < 1e-13);
            }
        }
    }
    SUBCASE("non group-like rejected") {
        TruncatedTensor a(2, 2);  // deg0 = 0
        CHECK_THROWS_AS((void)tensor_inverse(a), ShapeError);
    }
}

TEST_CASE("dilation") {
    TruncatedTensor a = random_tensor(11, 2, 3);
    SUBCASE("eps = 1 is the identity action") {
        CHECK(max_abs_diff(dilation(1.0, a), a) == doctest::Approx(0.0));
    }
    SUBCASE("eps = 0 collapses to the scalar part") {
        TruncatedTensor z = dilation(0.0, a);
        CHECK(z.deg0() == doctest::Approx(1.0));
        CHECK(z.max_degree_norm() == doctest::Approx(0.0));
    }
    SUBCASE("group action: dilation(e, dilation(h, a)) = dilation(e*h, a) exactly") {
        for (std::uint64_t seed : {21u, 22u, 23u}) {
            TruncatedTensor t = random_tensor(seed, 3, 3);
            CHECK(max_abs_diff(dilation(0.5, dilation(-1.25, t)), dilation(-0.625, t)) == 0.0);
        }
    }
    SUBCASE("multiplicative: delta_eps(a ⊗ b) = delta_eps(a) ⊗ delta_eps(b)") {
        TruncatedTensor b = random_tensor(31, 2, 3);
        CHECK(max_abs_diff(dilation(0.3, tensor_mul(a, b)),
                           tensor_mul(dilation(0.3, a), dilation(0.3, b))) < 1e-15);
    }
}

TEST_CASE("levy_area") {
    SUBCASE("symmetric second level gives zero") {
        TruncatedTensor a(2, 2);
        a.deg0() = 1.0;
        a.degree(2) = {1.0, 0.5, 0.5, 2.0};
        for (double v : levy_area(a)) CHECK(v == doctest::Approx(0.0));
    }
    SUBCASE("linear path has zero area") {
        std::vector<double> v{1.0, -2.0};
        const auto area = levy_area(TruncatedTensor::segment_exp(v, 2));
        for (double x : area) CHECK(x == doctest::Approx(0.0));
    }
    SUBCASE("circle: area entry (1,2) = pi against the Riemann-Stieltjes oracle") {
        const SampledPath circle = presets::path("circle", 12);
        const RoughPath X = lift_bv(circle, 2, 2.5);
        const auto area = levy_area(X.basepoint(X.grid_size() - 1));
        CHECK(area[0 * 2 + 1] == doctest::Approx(M_PI).epsilon(1e-3));
        CHECK(area[0 * 2 + 1] == doctest::Approx(oracles::rs_levy_area(circle)).epsilon(1e-10));
        // exact antisymmetry
        CHECK(area[0] == 0.0);
        CHECK(area[3] == 0.0);
        CHECK(area[1] == -area[2]);
    }
}

TEST_CASE("chen_defect") {
    const SampledPath x = oracles::random_pl_path(99, 2, 5);
    const RoughPath X = lift_bv(x, 3, 3.5);
    std::vector<TruncatedTensor> base;
    for (std::size_t k = 0; k < X.grid_size(); ++k) base.push_back(X.basepoint(k));

    SUBCASE("basepoint storage satisfies Chen up to roundoff") {
        double worst = 0.0;
        for (std::size_t span = 2; span <= X.grid_size() - 1; span *= 2)
            for (std::size_t a = 0; a + span < X.grid_size(); a += span)
                worst = std::max(worst, chen_defect(base, a, a + span / 2, a + span));
        CHECK(worst < 1e-12);
    }
    SUBCASE("basepoint corruption cancels in inverse-and-multiply") {
        std::vector<TruncatedTensor> bad = base;
        bad[8].degree(2)[1] += 0.1;
        CHECK(chen_defect(bad, 0, 4, 8) < 1e-14);
    }
    SUBCASE("hand-corrupted increment shows the injected defect by direct substitution") {
        TruncatedTensor whole = X.increment(0, 8);
        const TruncatedTensor left = X.increment(0, 4);
        const TruncatedTensor right = X.increment(4, 8);
        whole.degree(2)[1] += 0.1;
        CHECK(chen_defect(whole, left, right) == doctest::Approx(0.1).epsilon(1e-9));
    }
    SUBCASE("index order is enforced") {
        CHECK_THROWS_AS((void)chen_defect(base, 4, 2, 8), ShapeError);
    }
}

TEST_CASE("signature") {
    SUBCASE("linear path: deg-k entry is v^{⊗k}/k!") {
        std::vector<double> times{0.0, 1.0};
        std::vector<double> vals{0.0, 0.0, 0.5, -2.0};
        const SampledPath line(times, vals, 2);
        const Signature sig = signature(line, 3);
        const double v1 = 0.5, v2 = -2.0;
        CHECK(sig.tensor.deg1(0) == doctest::Approx(v1));
        CHECK(sig.tensor.deg1(1) == doctest::Approx(v2));
        CHECK(sig.tensor.deg2(0, 1) == doctest::Approx(v1 * v2 / 2));
        CHECK(sig.tensor.deg3(1, 0, 1) == doctest::Approx(v2 * v1 * v2 / 6));
    }
    SUBCASE("zero path gives the identity") {
        std::vector<double> times{0.0, 0.5, 1.0};
        const SampledPath zero(times, std::vector<double>(6, 0.0), 2);
        const Signature sig = signature(zero, 4);
        CHECK(sig.tensor.deg0() == doctest::Approx(1.0));
        CHECK(sig.tensor.max_degree_norm() == doctest::Approx(0.0));
    }
    SUBCASE("concatenation: sig(x*y) = sig(x) ⊗ sig(y) on random pairs") {
        for (std::uint64_t seed : {5u, 6u, 7u}) {
            const SampledPath x = oracles::random_pl_path(seed, 2, 4);
            const SampledPath y = oracles::random_pl_path(seed + 100, 2, 4);
            // concatenate on [0,1/2] and [1/2,1] with matched start
            std::vector<double> times, vals;
            for (std::size_t k = 0; k < x.grid_size(); ++k) {
                times.push_back(0.5 * x.times()[k]);
                for (std::size_t c = 0; c < 2; ++c) vals.push_back(x.value(k, c));
            }
            for (std::size_t k = 1; k < y.grid_size(); ++k) {
                times.push_back(0.5 + 0.5 * y.times()[k]);
                for (std::size_t c = 0; c < 2; ++c)
                    vals.push_back(x.value(x.grid_size() - 1, c) + y.value(k, c) - y.value(0, c));
            }
            const SampledPath cat(times, vals, 2);
            const Signature sx = signature(x, 5);
            const Signature sy = signature(y, 5);
            const Signature scat = signature(cat, 5);
            CHECK(max_abs_diff(tensor_mul(sx.tensor, sy.tensor), scat.tensor) < 1e-12);
        }
    }
    SUBCASE("K out of range") {
        const SampledPath x = presets::path("linear", 3);
        CHECK_THROWS_AS((void)signature(x, 6), ShapeError);
        CHECK_THROWS_AS((void)signature(x, 0), ShapeError);
    }
}

TEST_CASE("tensor_mul associativity on random triples") {
    for (std::uint64_t seed : {41u, 42u, 43u}) {
        TruncatedTensor a = random_tensor(seed, 2, 3);
        TruncatedTensor b = random_tensor(seed + 10, 2, 3);
        TruncatedTensor c = random_tensor(seed + 20, 2, 3);
        CHECK(max_abs_diff(tensor_mul(tensor_mul(a, b), c), tensor_mul(a, tensor_mul(b, c))) <
              1e-13);
    }
}

TEST_CASE("lifted elements satisfy Sym(deg2) = deg1⊗deg1/2") {
    const SampledPath x = oracles::random_pl_path(123, 3, 5);
    const RoughPath X = lift_bv(x, 2, 2.5);
    const TruncatedTensor tail = X.basepoint(X.grid_size() - 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            worst = std::max(worst, std::abs(0.5 * (tail.deg2(i, j) + tail.deg2(j, i)) -
                                             0.5 * tail.deg1(i) * tail.deg1(j)));
    CHECK(worst < 1e-12);
}
