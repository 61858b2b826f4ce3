#pragma once

// The functionals of the problem family:
//
//   J(u)       = ||grad u||_p^p                    (p-homogeneous)
//   I_alpha(u) = ||u||_q^{alpha p} ||u||_r^{(1-alpha) p}   (p-homogeneous)
//   R_alpha(u) = J(u) / I_alpha(u)                 (0-homogeneous)
//
// together with the Frechet gradient of R_alpha, the strong-form residuals of
// the nonlocal Euler-Lagrange equation
//
//   -Delta_p u = alpha (J/||u||_q^q) |u|^{q-2}u + (1-alpha)(J/||u||_r^r) |u|^{r-2}u
//
// and of translated two-term equations -Delta_p u = mu1 |u|^{e1-2}u + mu2 |u|^{e2-2}u,
// plus the associated energy and fiber-map derivatives.
//
// I_alpha is evaluated through logarithms: for large |alpha| the individual
// factors ||u||^{alpha p} overflow double range long before the product does.

#include <cmath>
#include <utility>

#include "rqlab/exponents.hpp"
#include "rqlab/grid.hpp"

namespace rqlab {

struct AlphaParams {
    ExponentTriple triple;
    double alpha = 0.5;
};

// Two-term right-hand side -Delta_p u = mu1 |u|^{e1-2}u + mu2 |u|^{e2-2}u.
// Covers the mu-branch (e1=q, e2=r, mu2=sgn(1-alpha)) and the r=p branch
// (e1=p, mu1=nu, e2=q, mu2=sgn(alpha)) with one code path.
struct TranslatedProblem {
    double mu1 = 0.0;
    double e1 = 1.0;
    double mu2 = 0.0;
    double e2 = 2.0;
    double p = 2.0;
};

inline void require_nonzero(const GridFunction& u, const char* who) {
    for (double x : u.v)
        if (x != 0.0) return;
    throw ZeroFunction(std::string(who) + ": function is identically zero");
}

// sign(u)|u|^e with sign(0) = 0; e = 0 gives the pointwise sign, which is the
// a.e. meaning of |u|^{q-2}u at q = 1.
inline double sgn_pow(double u, double e) {
    const double s = (u > 0.0) ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
    if (e == 0.0) return s;
    return s * std::pow(std::fabs(u), e);
}

// log I_alpha(u); kept separate so extreme alpha cannot overflow.
inline double log_I_alpha(const GridFunction& u, const AlphaParams& ap) {
    require_nonzero(u, "I_alpha");
    const double p = ap.triple.p;
    const double nq = lp_norm(u, ap.triple.q);
    const double nr = lp_norm(u, ap.triple.r);
    return ap.alpha * p * std::log(nq) + (1.0 - ap.alpha) * p * std::log(nr);
}

inline double I_alpha(const GridFunction& u, const AlphaParams& ap) {
    return std::exp(log_I_alpha(u, ap));
}

inline double R_alpha(const GridFunction& u, const AlphaParams& ap) {
    const double J = dirichlet_energy(u, ap.triple.p);
    return J * std::exp(-log_I_alpha(u, ap));
}

// Mass-weighted Frechet gradient of R_alpha at u:
//
//   (p / I_alpha) [ -Delta_p u - J ( alpha |u|^{q-2}u / ||u||_q^q
//                                  + (1-alpha) |u|^{r-2}u / ||u||_r^r ) ].
//
// "Mass-weighted" means the directional derivative of R_alpha along v equals
// <grad, v>_mass, so the field is the strong-form quantity the equation talks
// about, not the raw partial-derivative vector.
inline GridFunction R_alpha_gradient(const GridFunction& u, const AlphaParams& ap,
                                     double epsReg) {
    require_nonzero(u, "R_alpha_gradient");
    const double p = ap.triple.p, q = ap.triple.q, r = ap.triple.r;
    const double J = dirichlet_energy(u, p);
    const double nqq = lp_norm_pow(u, q); // ||u||_q^q
    const double nrr = lp_norm_pow(u, r);
    const double cq = ap.alpha * J / nqq;
    const double cr = (1.0 - ap.alpha) * J / nrr;
    const double scale = p * std::exp(-log_I_alpha(u, ap));
    GridFunction g = p_laplacian_apply(u, p, epsReg);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double x = u.v[k];
        g.v[k] = scale * (g.v[k] - cq * sgn_pow(x, q - 1.0) - cr * sgn_pow(x, r - 1.0));
    }
    return g;
}

// Mass-weighted L2 norm of the strong residual of the nonlocal equation;
// equals (I_alpha/p) times the gradient norm.
inline double el_residual_nonlocal(const GridFunction& u, const AlphaParams& ap,
                                   double epsReg) {
    require_nonzero(u, "el_residual_nonlocal");
    const double p = ap.triple.p, q = ap.triple.q, r = ap.triple.r;
    const double J = dirichlet_energy(u, p);
    const double cq = ap.alpha * J / lp_norm_pow(u, q);
    const double cr = (1.0 - ap.alpha) * J / lp_norm_pow(u, r);
    GridFunction f = p_laplacian_apply(u, p, epsReg);
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double x = u.v[k];
        const double rho = f.v[k] - cq * sgn_pow(x, q - 1.0) - cr * sgn_pow(x, r - 1.0);
        s += rho * rho;
    }
    return std::sqrt(u.dom.node_weight() * s);
}

inline double el_residual_translated(const GridFunction& u, const TranslatedProblem& tp,
                                     double epsReg) {
    require_nonzero(u, "el_residual_translated");
    GridFunction f = p_laplacian_apply(u, tp.p, epsReg);
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double x = u.v[k];
        const double rho = f.v[k] - tp.mu1 * sgn_pow(x, tp.e1 - 1.0)
                                  - tp.mu2 * sgn_pow(x, tp.e2 - 1.0);
        s += rho * rho;
    }
    return std::sqrt(u.dom.node_weight() * s);
}

// E(u) = (1/p) J - (mu1/e1) ||u||_{e1}^{e1} - (mu2/e2) ||u||_{e2}^{e2}; E(0) = 0.
inline double energy_translated(const GridFunction& u, const TranslatedProblem& tp) {
    return dirichlet_energy(u, tp.p) / tp.p -
           tp.mu1 / tp.e1 * lp_norm_pow(u, tp.e1) -
           tp.mu2 / tp.e2 * lp_norm_pow(u, tp.e2);
}

// First and second derivatives of the fiber map t -> E(t u) at t = 1:
//   d1 = J - mu1 ||u||_{e1}^{e1} - mu2 ||u||_{e2}^{e2}        (Nehari identity at solutions)
//   d2 = (p-1) J - mu1 (e1-1) ||u||_{e1}^{e1} - mu2 (e2-1) ||u||_{e2}^{e2}
struct FiberDerivatives {
    double d1 = 0.0;
    double d2 = 0.0;
};

inline FiberDerivatives fiber_derivatives(const GridFunction& u, const TranslatedProblem& tp) {
    require_nonzero(u, "fiber_derivatives");
    const double J = dirichlet_energy(u, tp.p);
    const double n1 = lp_norm_pow(u, tp.e1);
    const double n2 = lp_norm_pow(u, tp.e2);
    FiberDerivatives d;
    d.d1 = J - tp.mu1 * n1 - tp.mu2 * n2;
    d.d2 = (tp.p - 1.0) * J - tp.mu1 * (tp.e1 - 1.0) * n1 - tp.mu2 * (tp.e2 - 1.0) * n2;
    return d;
}

} // namespace rqlab
