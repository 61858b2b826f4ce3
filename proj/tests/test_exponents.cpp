#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "rqlab/exponents.hpp"

using namespace rqlab;

TEST_CASE("validate accepts the standard triples") {
    REQUIRE_NOTHROW(validate(ExponentTriple{2, 1, 3, 1}));
    REQUIRE_NOTHROW(validate(ExponentTriple{3, 1, 2, 1}));
    REQUIRE_NOTHROW(validate(ExponentTriple{2, 1, 2, 1}));
    REQUIRE_NOTHROW(validate(ExponentTriple{2, 2, 3, 1}));
    REQUIRE_NOTHROW(validate(ExponentTriple{2, 3, 5, 1}));
    REQUIRE_NOTHROW(validate(ExponentTriple{2, 2, 3, 2}));
    REQUIRE_NOTHROW(validate(ExponentTriple{1.5, 1, 5.9, 2})); // p* = 6
}

TEST_CASE("validate rejects out-of-range exponents") {
    REQUIRE_THROWS_AS(validate(ExponentTriple{1.0, 1, 2, 1}), InvalidExponents);
    REQUIRE_THROWS_AS(validate(ExponentTriple{0.5, 1, 2, 1}), InvalidExponents);
    REQUIRE_THROWS_AS(validate(ExponentTriple{2, 0.5, 2, 1}), InvalidExponents);
    REQUIRE_THROWS_AS(validate(ExponentTriple{2, 2, 2, 1}), InvalidExponents); // q = r
    REQUIRE_THROWS_AS(validate(ExponentTriple{2, 3, 2, 1}), InvalidExponents); // q > r
    REQUIRE_THROWS_AS(validate(ExponentTriple{1.5, 1, 6.0, 2}), InvalidExponents); // r = p*
    REQUIRE_THROWS_AS(validate(ExponentTriple{1.5, 1, 7.0, 2}), InvalidExponents);
    REQUIRE_THROWS_AS(validate(ExponentTriple{2, 1, 3, 3}), InvalidExponents); // N
    REQUIRE_THROWS_AS(validate(ExponentTriple{2, 1, 3, 0}), InvalidExponents);
}

TEST_CASE("Sobolev conjugate") {
    CHECK(std::isinf(p_star(ExponentTriple{2, 1, 3, 1})));
    CHECK(std::isinf(p_star(ExponentTriple{2, 1, 3, 2}))); // p = N
    CHECK(std::isinf(p_star(ExponentTriple{3, 1, 2, 2}))); // p > N
    CHECK(p_star(ExponentTriple{1.5, 1, 2, 2}) == Catch::Approx(6.0).margin(1e-14));
}

TEST_CASE("regime classification covers the five cases") {
    CHECK(classify(ExponentTriple{3, 1, 2, 1}) == Regime::Subhomogeneous);
    CHECK(classify(ExponentTriple{2, 1, 2, 1}) == Regime::BorderlineRP);
    CHECK(classify(ExponentTriple{2, 1, 3, 1}) == Regime::ConvexConcave);
    CHECK(classify(ExponentTriple{2, 2, 3, 1}) == Regime::BorderlineQP);
    CHECK(classify(ExponentTriple{2, 3, 5, 1}) == Regime::Superhomogeneous);
    CHECK(regime_name(Regime::ConvexConcave) == std::string("ConvexConcave"));
}

TEST_CASE("derived constants match hand-computed values") {
    // p=2, q=1, r=3, N=1: theta = (1 - 1/3)/(1 + 1 - 1/2) = 4/9
    const RegimeInfo a = derived_constants(ExponentTriple{2, 1, 3, 1});
    CHECK(a.theta == Catch::Approx(4.0 / 9.0).margin(1e-14));
    CHECK(a.alpha0 == Catch::Approx(-1.25).margin(1e-14));
    CHECK(a.alphaStar == Catch::Approx(0.25).margin(1e-14));
    CHECK(a.alphaInflect == Catch::Approx(0.5).margin(1e-14));
    CHECK(std::isinf(a.pStar));
    CHECK(a.regime == Regime::ConvexConcave);

    // p=3, q=1, r=2: theta = (1 - 1/2)/(1 + 1 - 1/3) = 3/10
    const RegimeInfo b = derived_constants(ExponentTriple{3, 1, 2, 1});
    CHECK(b.theta == Catch::Approx(0.3).margin(1e-14));
    CHECK(b.alpha0 == Catch::Approx(-7.0 / 3.0).margin(1e-13));
    CHECK(b.alphaStar == Catch::Approx(-1.0 / 3.0).margin(1e-14));
    CHECK(b.alphaInflect == Catch::Approx(-1.0).margin(1e-14));

    // p=2, q=3, r=5: theta = (1/3 - 1/5)/(1/3 + 1 - 1/2) = 4/25
    const RegimeInfo c = derived_constants(ExponentTriple{2, 3, 5, 1});
    CHECK(c.theta == Catch::Approx(0.16).margin(1e-14));
    CHECK(c.alpha0 == Catch::Approx(-5.25).margin(1e-13));
    CHECK(c.alphaStar == Catch::Approx(2.25).margin(1e-14));
    CHECK(c.alphaInflect == Catch::Approx(1.5).margin(1e-14));

    // r = p has no inflection alpha
    const RegimeInfo d = derived_constants(ExponentTriple{2, 1, 2, 1});
    CHECK(std::isnan(d.alphaInflect));
}

namespace {

ExponentTriple random_valid_triple(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (;;) {
        ExponentTriple t;
        t.p = 1.2 + 3.0 * U(gen);
        t.q = 1.0 + 3.0 * U(gen);
        t.r = t.q + 0.1 + 2.5 * U(gen);
        t.N = (U(gen) < 0.5) ? 1 : 2;
        try {
            validate(t);
            return t;
        } catch (const InvalidExponents&) {
            // redraw; r can exceed p* for N = 2, p < 2
        }
    }
}

} // namespace

TEST_CASE("constants satisfy their defining relations on random triples") {
    std::mt19937_64 gen(2024);
    for (int k = 0; k < 200; ++k) {
        const ExponentTriple t = random_valid_triple(gen);
        const RegimeInfo info = derived_constants(t);
        INFO("p=" << t.p << " q=" << t.q << " r=" << t.r << " N=" << t.N);

        // alpha0 = 1 - 1/theta, and theta in (0,1) precisely because r < p*
        CHECK(info.theta > 0.0);
        CHECK(info.theta < 1.0);
        CHECK(info.alpha0 == Catch::Approx(1.0 - 1.0 / info.theta).margin(1e-12));

        // alphaStar solves alpha p/q + (1-alpha) p/r = 1
        const double comb =
            info.alphaStar * t.p / t.q + (1.0 - info.alphaStar) * t.p / t.r;
        CHECK(comb == Catch::Approx(1.0).margin(1e-13));

        // dilation exponent: zero at alpha0, affine with the predicted slope
        CHECK(scaling_exponent(t, info.alpha0) == Catch::Approx(0.0).margin(1e-10));
        const double slope = t.N * t.p * (t.r - t.q) / (t.q * t.r);
        for (const double alpha : {-0.7, 0.3, 1.9}) {
            const double e = scaling_exponent(t, alpha);
            CHECK(e == Catch::Approx(slope * (info.alpha0 - alpha)).margin(1e-10));
        }
    }
}

TEST_CASE("scaling exponent is decreasing in alpha") {
    const ExponentTriple t{2, 1, 3, 1};
    double prev = scaling_exponent(t, -2.0);
    for (double a = -1.5; a <= 2.0; a += 0.5) {
        const double e = scaling_exponent(t, a);
        CHECK(e < prev);
        prev = e;
    }
}
