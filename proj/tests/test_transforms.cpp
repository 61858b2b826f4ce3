#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rqlab/solver.hpp"
#include "rqlab/transforms.hpp"

using namespace rqlab;

TEST_CASE("project_M lands on the normalization manifold") {
    const Domain d = make_interval(0.0, 1.0, 40);
    const GridFunction u = random_function(d, 1);
    for (const double alpha : {-0.8, 0.0, 0.4, 1.0, 3.0}) {
        const AlphaParams ap{{2, 1, 3, 1}, alpha};
        const GridFunction m = project_M(u, ap);
        CHECK(I_alpha(m, ap) == Catch::Approx(1.0).epsilon(1e-12));
        // same ray: componentwise ratio is the normalization factor
        CHECK(m.v[5] / u.v[5] == Catch::Approx(m.v[17] / u.v[17]).epsilon(1e-12));
        CHECK(R_alpha(m, ap) == Catch::Approx(R_alpha(u, ap)).epsilon(1e-12));
    }
}

TEST_CASE("t-scaling reaches C_alpha and validates its arguments") {
    const Domain d = make_interval(0.0, 1.0, 40);
    const GridFunction u = random_function(d, 2);
    const AlphaParams ap{{2, 1, 3, 1}, 0.4};
    const ScaledFunction sc = t_alpha_scale(u, ap);
    CHECK(std::fabs(c_alpha_constraint(sc.u, ap)) < 1e-12);
    CHECK(sc.u.v[3] == Catch::Approx(sc.factor * u.v[3]).epsilon(1e-15));

    REQUIRE_THROWS_AS(t_alpha_scale(u, AlphaParams{{2, 1, 3, 1}, 1.0}), InvalidAlpha);
    REQUIRE_THROWS_AS(t_alpha_scale(u, AlphaParams{{2, 1, 2, 1}, 0.4}),
                      InvalidExponents);
}

TEST_CASE("s-scaling reaches C'_alpha for the r = p branch") {
    const Domain d = make_interval(0.0, 1.0, 40);
    const GridFunction u = random_function(d, 3);
    const AlphaParams ap{{2, 1, 2, 1}, 0.4};
    const ScaledFunction sc = s_alpha_scale(u, ap);
    CHECK(std::fabs(c_prime_constraint(sc.u, ap)) < 1e-12);

    REQUIRE_THROWS_AS(s_alpha_scale(u, AlphaParams{{2, 1, 2, 1}, 0.0}), InvalidAlpha);
    REQUIRE_THROWS_AS(s_alpha_scale(u, AlphaParams{{2, 2, 3, 1}, 0.4}),
                      InvalidExponents);
}

TEST_CASE("the three mu forms agree on their manifolds") {
    const Domain d = make_interval(0.0, 1.0, 40);
    const AlphaParams ap{{2, 1, 3, 1}, 0.7};
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        const GridFunction u = random_function(d, seed);
        const double muHom = mu_translation(u, ap, MuForm::Homogeneous);

        const GridFunction c = t_alpha_scale(u, ap).u;
        CHECK(mu_translation(c, ap, MuForm::OnC) == Catch::Approx(muHom).epsilon(1e-10));
        // the homogeneous form is scaling-invariant, so it agrees on the ray
        CHECK(mu_translation(c, ap, MuForm::Homogeneous) ==
              Catch::Approx(muHom).epsilon(1e-10));

        const GridFunction m = project_M(u, ap);
        CHECK(mu_translation(m, ap, MuForm::OnM) == Catch::Approx(muHom).epsilon(1e-10));
    }
}

TEST_CASE("manifold-bound mu forms reject off-manifold input") {
    const Domain d = make_interval(0.0, 1.0, 40);
    GridFunction u = random_function(d, 4);
    for (auto& x : u.v) x *= 17.0; // definitely not normalized
    const AlphaParams ap{{2, 1, 3, 1}, 0.7};
    REQUIRE_THROWS_AS(mu_translation(u, ap, MuForm::OnC), ConstraintViolated);
    REQUIRE_THROWS_AS(mu_translation(u, ap, MuForm::OnM), ConstraintViolated);
    REQUIRE_THROWS_AS(mu_translation(u, AlphaParams{{2, 1, 2, 1}, 0.4},
                                     MuForm::Homogeneous),
                      InvalidExponents);
    REQUIRE_THROWS_AS(mu_translation(project_M(u, AlphaParams{{2, 1, 3, 1}, 1.0}),
                                     AlphaParams{{2, 1, 3, 1}, 1.0}, MuForm::OnM),
                      InvalidAlpha);
}

TEST_CASE("nu level for the r = p branch") {
    const GridFunction u(make_interval(0.0, 1.0, 4), {1.0, 2.0, 3.0});
    // J_2 = 48, ||u||_2^2 = 3.5: nu = (1 - alpha) * 48/3.5
    const AlphaParams ap{{2, 1, 2, 1}, 0.25};
    CHECK(nu_translation(u, ap) == Catch::Approx(0.75 * 48.0 / 3.5).epsilon(1e-13));
    REQUIRE_THROWS_AS(nu_translation(u, AlphaParams{{2, 1, 3, 1}, 0.25}),
                      InvalidExponents);
}

TEST_CASE("translation record identities hold for any function") {
    // On the C_alpha representative the two constraints force, algebraically:
    //   E  = ((r-q)/(rq)) (alphaStar - alpha) J(w)
    //   d2 = (p - alpha q - (1-alpha) r) J(w)
    // independent of whether u is a critical point.
    const Domain d = make_interval(0.0, 1.0, 60);
    const ExponentTriple t{2, 1, 3, 1};
    const RegimeInfo info = derived_constants(t);
    for (const double alpha : {0.1, 0.25, 0.5, 0.8, 1.7}) {
        const AlphaParams ap{t, alpha};
        const GridFunction u = project_M(random_function(d, 77), ap);
        const TranslationRecord rec = translation_record(u, ap);
        const double Jw = std::pow(rec.gradP, t.p);
        const double cE = (t.r - t.q) / (t.r * t.q);
        INFO("alpha = " << alpha);
        CHECK(rec.energy ==
              Catch::Approx(cE * (info.alphaStar - alpha) * Jw).margin(1e-9 * Jw));
        CHECK(rec.fiber2 ==
              Catch::Approx((t.p - alpha * t.q - (1.0 - alpha) * t.r) * Jw)
                  .margin(1e-9 * Jw));
        CHECK(rec.kind == LevelKind::Mu);
        CHECK(rec.sign == (alpha < 1.0 ? 1.0 : -1.0));
        CHECK(rec.lambda == Catch::Approx(R_alpha(u, ap)).epsilon(1e-12));
    }
}

TEST_CASE("translation record endpoints") {
    const Domain d = make_interval(0.0, 1.0, 40);
    const ExponentTriple t{2, 1, 3, 1};
    {
        const AlphaParams ap{t, 1.0};
        const TranslationRecord rec = translation_record(project_M(random_function(d, 5), ap), ap);
        CHECK(rec.value == 0.0); // |1-alpha|^{(p-q)/(r-p)} factor vanishes
        CHECK(std::isnan(rec.energy));
        CHECK(std::isnan(rec.normQ));
        CHECK(std::isfinite(rec.lambda));
    }
    {
        const AlphaParams ap{t, 0.0};
        const TranslationRecord rec = translation_record(project_M(random_function(d, 5), ap), ap);
        CHECK(rec.value == 0.0);
        CHECK(std::isfinite(rec.energy)); // C_alpha exists at alpha = 0
    }
    {
        const ExponentTriple b{2, 1, 2, 1};
        const AlphaParams ap{b, 0.0};
        const TranslationRecord rec = translation_record(project_M(random_function(d, 5), ap), ap);
        CHECK(rec.kind == LevelKind::Nu);
        CHECK(std::isnan(rec.energy)); // C'_alpha does not exist at alpha = 0
        CHECK(std::isfinite(rec.value));
    }
}

TEST_CASE("solutions map back to their alpha") {
    const Domain d = make_interval(0.0, 1.0, 50);
    const ExponentTriple t{2, 1, 3, 1};
    const AlphaParams ap{t, 0.5};
    SolveOptions opts;
    const SolveResult res = minimize_ground_state(ap, d, opts);
    REQUIRE(res.converged);

    const ScaledFunction sc = t_alpha_scale(res.point.u, ap);
    const double mu = mu_translation(sc.u, ap, MuForm::OnC);
    const TranslatedProblem tp = standard_problem(ap, mu);
    CHECK(tp.mu2 == 1.0); // alpha < 1: '+' branch
    const double tol = 1e-4;
    const double back = alpha_from_solution(sc.u, tp, opts.epsReg, tol);
    CHECK(back == Catch::Approx(0.5).margin(1e-12));

    // a random function does not pass the residual gate
    const GridFunction junk = random_function(d, 123);
    REQUIRE_THROWS_AS(alpha_from_solution(junk, tp, opts.epsReg, tol),
                      ResidualTooLarge);
}

TEST_CASE("two-solution threshold constant") {
    // ((r-p)/(p-q)) ((p-q)/(r-q))^{(r-q)/(r-p)} lambda^{(r-q)/(r-p)} at
    // (2,1,3), lambda = 10: 1 * (1/2)^2 * 10^2 = 25.
    CHECK(lambda_star(ExponentTriple{2, 1, 3, 1}, 10.0) ==
          Catch::Approx(25.0).epsilon(1e-13));
    REQUIRE_THROWS_AS(lambda_star(ExponentTriple{3, 1, 2, 1}, 10.0),
                      InvalidExponents);
    REQUIRE_THROWS_AS(lambda_star(ExponentTriple{2, 1, 3, 1}, 0.0), Error);
}

TEST_CASE("critical point construction records level and residual") {
    const Domain d = make_interval(0.0, 1.0, 30);
    const GridFunction u = random_function(d, 6);
    const AlphaParams ap{{2, 1, 3, 1}, 0.4};
    const CriticalPoint cp = make_critical_point(u, ap, 1e-10, Normalization::Unnormalized);
    CHECK(cp.lambda == Catch::Approx(R_alpha(u, ap)).epsilon(1e-14));
    CHECK(cp.residual == Catch::Approx(el_residual_nonlocal(u, ap, 1e-10)).epsilon(1e-14));
    CHECK(cp.normalization == Normalization::Unnormalized);
}
