#pragma once

// Normalizations of the ray through a critical point and the translation
// levels they carry.
//
// A critical point of the 0-homogeneous R_alpha is a ray {c u}.  Three
// representatives are useful:
//
//   M_alpha :  I_alpha(u) = 1                       (minimization manifold)
//   C_alpha :  |1-alpha| J(u) / ||u||_r^r = 1       (r != p, alpha != 1)
//   C'_alpha:  |alpha|   J(u) / ||u||_q^q = 1       (r  = p, alpha != 0)
//
// On C_alpha the nonlocal Euler-Lagrange equation collapses to
//
//   -Delta_p u = mu_alpha |u|^{q-2}u + sgn(1-alpha) |u|^{r-2}u,
//   mu_alpha = alpha J / ||u||_q^q,
//
// and conversely any solution of that two-term equation is a critical point
// of R_alpha with alpha = mu ||u||_q^q / J (alpha < 1 for the +, alpha > 1
// for the - branch).  The r = p analogue uses C'_alpha and
// nu_alpha = (1-alpha) R_0(u).

#include <cmath>
#include <string>

#include "rqlab/exponents.hpp"
#include "rqlab/functionals.hpp"
#include "rqlab/grid.hpp"

namespace rqlab {

enum class Normalization { OnM, OnC, OnCPrime, Unnormalized };

struct CriticalPoint {
    GridFunction u;
    AlphaParams ap;
    double lambda = 0.0;   // R_alpha(u)
    double residual = 0.0; // el_residual_nonlocal at u
    Normalization normalization = Normalization::Unnormalized;
};

inline CriticalPoint make_critical_point(GridFunction u, const AlphaParams& ap,
                                         double epsReg,
                                         Normalization norm = Normalization::Unnormalized) {
    CriticalPoint cp;
    cp.lambda = R_alpha(u, ap);
    cp.residual = el_residual_nonlocal(u, ap, epsReg);
    cp.u = std::move(u);
    cp.ap = ap;
    cp.normalization = norm;
    return cp;
}

// u / I_alpha(u)^{1/p}; the result lies on M_alpha.
inline GridFunction project_M(const GridFunction& u, const AlphaParams& ap) {
    const double logI = log_I_alpha(u, ap); // raises ZeroFunction for u = 0
    const double inv = std::exp(-logI / ap.triple.p);
    GridFunction w = u;
    for (auto& x : w.v) x *= inv;
    return w;
}

struct ScaledFunction {
    double factor = 1.0;
    GridFunction u;
};

// t_alpha(u) = (|1-alpha| J / ||u||_r^r)^{1/(r-p)}; t u lies on C_alpha.
inline ScaledFunction t_alpha_scale(const GridFunction& u, const AlphaParams& ap) {
    if (ap.triple.r == ap.triple.p)
        throw InvalidExponents("t_alpha_scale needs r != p");
    if (ap.alpha == 1.0)
        throw InvalidAlpha("t_alpha_scale undefined at alpha = 1");
    require_nonzero(u, "t_alpha_scale");
    const double J = dirichlet_energy(u, ap.triple.p);
    const double nrr = lp_norm_pow(u, ap.triple.r);
    const double t = std::pow(std::fabs(1.0 - ap.alpha) * J / nrr,
                              1.0 / (ap.triple.r - ap.triple.p));
    ScaledFunction out{t, u};
    for (auto& x : out.u.v) x *= t;
    return out;
}

// s_alpha(u) = (|alpha| J / ||u||_q^q)^{-1/(p-q)}; s u lies on C'_alpha.
inline ScaledFunction s_alpha_scale(const GridFunction& u, const AlphaParams& ap) {
    if (ap.triple.q == ap.triple.p)
        throw InvalidExponents("s_alpha_scale needs q != p");
    if (ap.alpha == 0.0)
        throw InvalidAlpha("s_alpha_scale undefined at alpha = 0");
    require_nonzero(u, "s_alpha_scale");
    const double J = dirichlet_energy(u, ap.triple.p);
    const double nqq = lp_norm_pow(u, ap.triple.q);
    const double s = std::pow(std::fabs(ap.alpha) * J / nqq,
                              -1.0 / (ap.triple.p - ap.triple.q));
    ScaledFunction out{s, u};
    for (auto& x : out.u.v) x *= s;
    return out;
}

// Residual of the C_alpha constraint, zero on the manifold.
inline double c_alpha_constraint(const GridFunction& u, const AlphaParams& ap) {
    const double J = dirichlet_energy(u, ap.triple.p);
    return std::fabs(1.0 - ap.alpha) * J / lp_norm_pow(u, ap.triple.r) - 1.0;
}

inline double c_prime_constraint(const GridFunction& u, const AlphaParams& ap) {
    const double J = dirichlet_energy(u, ap.triple.p);
    return std::fabs(ap.alpha) * J / lp_norm_pow(u, ap.triple.q) - 1.0;
}

enum class MuForm { Homogeneous, OnC, OnM };

// Translation level mu attached to the ray of u (r != p).  Three algebraically
// equivalent expressions:
//
//   Homogeneous: alpha |1-alpha|^{(p-q)/(r-p)} R_{alpha*}(u)^{(r-q)/(r-p)}
//                (0-homogeneous; the only form defined at alpha = 1)
//   OnC:         alpha J / ||u||_q^q                  (requires u on C_alpha)
//   OnM:         alpha |1-alpha|^{(p-q)/(r-p)} J^{(r-q)/(r-p)}
//                  ||u||_q^{-q - alpha r (p-q) / ((alpha-1)(r-p))}   (u on M_alpha)
inline double mu_translation(const GridFunction& u, const AlphaParams& ap, MuForm form) {
    const double p = ap.triple.p, q = ap.triple.q, r = ap.triple.r;
    if (r == p) throw InvalidExponents("mu_translation needs r != p");
    require_nonzero(u, "mu_translation");
    const double alpha = ap.alpha;
    switch (form) {
    case MuForm::Homogeneous: {
        if (alpha == 0.0) return 0.0;
        AlphaParams star = ap;
        star.alpha = derived_constants(ap.triple).alphaStar;
        const double Rstar = R_alpha(u, star);
        return alpha * std::pow(std::fabs(1.0 - alpha), (p - q) / (r - p)) *
               std::pow(Rstar, (r - q) / (r - p));
    }
    case MuForm::OnC: {
        if (std::fabs(c_alpha_constraint(u, ap)) > 1e-8)
            throw ConstraintViolated("mu_translation(OnC): u is not on C_alpha");
        return alpha * dirichlet_energy(u, p) / lp_norm_pow(u, q);
    }
    case MuForm::OnM: {
        if (alpha == 1.0)
            throw InvalidAlpha("mu_translation(OnM) undefined at alpha = 1");
        const double I = I_alpha(u, ap);
        if (std::fabs(I - 1.0) > 1e-8)
            throw ConstraintViolated("mu_translation(OnM): u is not on M_alpha");
        if (alpha == 0.0) return 0.0;
        const double lambda = dirichlet_energy(u, p); // J = lambda on M_alpha
        const double nq = lp_norm(u, q);
        const double expo = -q - alpha * r * (p - q) / ((alpha - 1.0) * (r - p));
        return alpha * std::pow(std::fabs(1.0 - alpha), (p - q) / (r - p)) *
               std::pow(lambda, (r - q) / (r - p)) * std::pow(nq, expo);
    }
    }
    return 0.0;
}

// nu_alpha = (1-alpha) J / ||u||_p^p = (1-alpha) R_0(u); 0-homogeneous, so no
// normalization is required (r = p branch).
inline double nu_translation(const GridFunction& u, const AlphaParams& ap) {
    if (ap.triple.r != ap.triple.p)
        throw InvalidExponents("nu_translation needs r = p");
    require_nonzero(u, "nu_translation");
    const double J = dirichlet_energy(u, ap.triple.p);
    return (1.0 - ap.alpha) * J / lp_norm_pow(u, ap.triple.p);
}

// Inverse direction of the bijection: a solution of
// -Delta_p u = mu1 |u|^{q-2}u +- |u|^{r-2}u is a critical point of R_alpha at
// alpha = mu1 ||u||_q^q / J; the "+" branch forces alpha < 1, the "-" branch
// alpha > 1.  `tolerance` bounds the admissible equation residual.
inline double alpha_from_solution(const GridFunction& u, const TranslatedProblem& tp,
                                  double epsReg, double tolerance) {
    require_nonzero(u, "alpha_from_solution");
    const double res = el_residual_translated(u, tp, epsReg);
    if (!(res <= tolerance))
        throw ResidualTooLarge("alpha_from_solution: residual " + std::to_string(res) +
                               " exceeds tolerance " + std::to_string(tolerance));
    const double J = dirichlet_energy(u, tp.p);
    const double alpha = tp.mu1 * lp_norm_pow(u, tp.e1) / J;
    if (tp.mu2 > 0.0 && alpha >= 1.0 + 1e-6)
        throw Error("alpha_from_solution: '+' branch must give alpha < 1, got " +
                    std::to_string(alpha));
    if (tp.mu2 < 0.0 && alpha <= 1.0 - 1e-6)
        throw Error("alpha_from_solution: '-' branch must give alpha > 1, got " +
                    std::to_string(alpha));
    return alpha;
}

// Lambda* below which the two-solution existence statement of the
// convex-concave problem is guaranteed:
//   Lambda* = ((r-p)/(p-q)) ((p-q)/(r-q))^{(r-q)/(r-p)} lambda1(alpha*)^{(r-q)/(r-p)}.
inline double lambda_star(const ExponentTriple& t, double lambda1AtAlphaStar) {
    if (!(t.q < t.p && t.p < t.r))
        throw InvalidExponents("lambda_star needs q < p < r");
    if (!(lambda1AtAlphaStar > 0.0))
        throw Error("lambda_star needs a positive ground-state level");
    const double p = t.p, q = t.q, r = t.r;
    const double ex = (r - q) / (r - p);
    return (r - p) / (p - q) * std::pow((p - q) / (r - q), ex) *
           std::pow(lambda1AtAlphaStar, ex);
}

// The translated problem the C_alpha representative solves (r != p).
inline TranslatedProblem standard_problem(const AlphaParams& ap, double mu) {
    TranslatedProblem tp;
    tp.mu1 = mu;
    tp.e1 = ap.triple.q;
    tp.mu2 = (ap.alpha < 1.0) ? 1.0 : (ap.alpha > 1.0 ? -1.0 : 0.0);
    tp.e2 = ap.triple.r;
    tp.p = ap.triple.p;
    return tp;
}

// The r = p analogue the C'_alpha representative solves.
inline TranslatedProblem borderline_problem(const AlphaParams& ap, double nu) {
    TranslatedProblem tp;
    tp.mu1 = nu;
    tp.e1 = ap.triple.p;
    tp.mu2 = (ap.alpha > 0.0) ? 1.0 : (ap.alpha < 0.0 ? -1.0 : 0.0);
    tp.e2 = ap.triple.q;
    tp.p = ap.triple.p;
    return tp;
}

enum class LevelKind { Mu, Nu };

// One row of bifurcation data: the ray at one alpha, its level, translation
// value, and the normalized representative's norms/energy/fiber data.
struct TranslationRecord {
    double alpha = 0.0;
    double lambda = 0.0; // R_alpha level
    double value = 0.0;  // mu or nu
    LevelKind kind = LevelKind::Mu;
    double sign = 0.0;   // sgn(1-alpha) for Mu, sgn(alpha) for Nu
    double normQ = 0.0;
    double normR = 0.0;
    double gradP = 0.0;  // ||grad u||_p of the normalized representative
    double energy = 0.0;
    double fiber2 = 0.0;
};

// Build the record for a critical point given by its M_alpha representative.
// For r != p the C_alpha representative carries the norms/energy/fiber data;
// at alpha = 1 that representative does not exist and those fields are NaN
// (the level itself comes from the Homogeneous form, which is defined there).
inline TranslationRecord translation_record(const GridFunction& uOnM,
                                            const AlphaParams& ap) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    TranslationRecord rec;
    rec.alpha = ap.alpha;
    rec.lambda = R_alpha(uOnM, ap);
    const bool borderline = (ap.triple.r == ap.triple.p);
    rec.kind = borderline ? LevelKind::Nu : LevelKind::Mu;
    if (!borderline) {
        rec.sign = (ap.alpha < 1.0) ? 1.0 : (ap.alpha > 1.0 ? -1.0 : 0.0);
        rec.value = mu_translation(uOnM, ap, MuForm::Homogeneous);
        if (ap.alpha == 1.0) {
            rec.normQ = rec.normR = rec.gradP = rec.energy = rec.fiber2 = nan;
            return rec;
        }
        const GridFunction w = t_alpha_scale(uOnM, ap).u;
        const TranslatedProblem tp = standard_problem(ap, mu_translation(w, ap, MuForm::OnC));
        rec.value = tp.mu1; // OnC form on the representative itself
        rec.normQ = lp_norm(w, ap.triple.q);
        rec.normR = lp_norm(w, ap.triple.r);
        rec.gradP = std::pow(dirichlet_energy(w, ap.triple.p), 1.0 / ap.triple.p);
        rec.energy = energy_translated(w, tp);
        rec.fiber2 = fiber_derivatives(w, tp).d2;
        return rec;
    }
    rec.sign = (ap.alpha > 0.0) ? 1.0 : (ap.alpha < 0.0 ? -1.0 : 0.0);
    rec.value = nu_translation(uOnM, ap);
    if (ap.alpha == 0.0) {
        rec.normQ = rec.normR = rec.gradP = rec.energy = rec.fiber2 = nan;
        return rec;
    }
    const GridFunction w = s_alpha_scale(uOnM, ap).u;
    const TranslatedProblem tp = borderline_problem(ap, nu_translation(w, ap));
    rec.normQ = lp_norm(w, ap.triple.q);
    rec.normR = lp_norm(w, ap.triple.r);
    rec.gradP = std::pow(dirichlet_energy(w, ap.triple.p), 1.0 / ap.triple.p);
    rec.energy = energy_translated(w, tp);
    rec.fiber2 = fiber_derivatives(w, tp).d2;
    return rec;
}

} // namespace rqlab
