#pragma once

// Exponent triples (p, q, r) in dimension N and every constant derived from them.
//
// The objects of study are quotients
//
//     R_alpha(u) = ||grad u||_p^p / ( ||u||_q^{alpha p} ||u||_r^{(1-alpha) p} )
//
// over W^{1,p}_0 of a bounded domain, with p > 1 and 1 <= q < r < p*.  All the
// thresholds that organize the alpha-dependence of inf R_alpha are simple
// rational expressions in (p, q, r, N); this header computes them.

#include <cmath>
#include <limits>
#include <string>

#include "rqlab/errors.hpp"

namespace rqlab {

// Problem exponents.  N is the space dimension (1 or 2 here: intervals and
// rectangles); p is the gradient exponent; q < r are the two norm exponents.
struct ExponentTriple {
    double p = 2.0;
    double q = 1.0;
    double r = 3.0;
    int N = 1;
};

// Sobolev conjugate p* = Np/(N-p) for p < N, +infinity otherwise.
inline double p_star(const ExponentTriple& t) {
    if (t.p < static_cast<double>(t.N))
        return static_cast<double>(t.N) * t.p / (static_cast<double>(t.N) - t.p);
    return std::numeric_limits<double>::infinity();
}

// Position of (q, r) relative to p.  Each valid triple lands in exactly one
// class; SuperhomEqual (p = q < r) is kept as a label for callers that treat
// the q = p < r line as the boundary case of the superhomogeneous family, but
// classification itself files that line under BorderlineQP.
enum class Regime {
    Subhomogeneous,   // q < r < p
    BorderlineRP,     // q < r = p
    ConvexConcave,    // q < p < r
    BorderlineQP,     // q = p < r
    Superhomogeneous, // p < q < r
    SuperhomEqual,    // p = q < r (alias line of BorderlineQP, never returned)
};

inline const char* regime_name(Regime g) {
    switch (g) {
    case Regime::Subhomogeneous:   return "Subhomogeneous";
    case Regime::BorderlineRP:     return "BorderlineRP";
    case Regime::ConvexConcave:    return "ConvexConcave";
    case Regime::BorderlineQP:     return "BorderlineQP";
    case Regime::Superhomogeneous: return "Superhomogeneous";
    case Regime::SuperhomEqual:    return "SuperhomEqual";
    }
    return "?";
}

// Derived constants:
//
//   theta       = (1/q - 1/r) / (1/q + 1/N - 1/p)      interpolation exponent in (0,1)
//   alpha0      = (qr(N-p) - Nqp) / (Np(r-q)) = 1 - 1/theta
//                 threshold below which inf R_alpha = 0 (scaling collapse)
//   alphaStar   = q(r-p) / (p(r-q))                    solves alpha p/q + (1-alpha) p/r = 1;
//                 zero-energy level of the translated equation
//   alphaInflect= (r-p)/(r-q)                          fiber second derivative vanishes here
//                 (undefined when r = p; reported as NaN)
//   pStar       = Sobolev conjugate
struct RegimeInfo {
    double alpha0 = 0.0;
    double theta = 0.0;
    double alphaStar = 0.0;
    double alphaInflect = 0.0; // NaN when r = p
    double pStar = 0.0;        // +inf when p >= N
    Regime regime = Regime::ConvexConcave;
};

// Checks p > 1, 1 <= q < r <= p (r = p allowed) or r < p* when p < N.
// Throws InvalidExponents with a message naming the violated condition.
inline void validate(const ExponentTriple& t) {
    if (!(t.N == 1 || t.N == 2))
        throw InvalidExponents("N must be 1 or 2, got " + std::to_string(t.N));
    if (!(t.p > 1.0))
        throw InvalidExponents("p must exceed 1, got " + std::to_string(t.p));
    if (!(t.q >= 1.0))
        throw InvalidExponents("q must be >= 1, got " + std::to_string(t.q));
    if (!(t.q < t.r))
        throw InvalidExponents("q < r required, got q=" + std::to_string(t.q) +
                               ", r=" + std::to_string(t.r));
    if (!(t.r < p_star(t)))
        throw InvalidExponents("r must stay below p* = Np/(N-p), got r=" +
                               std::to_string(t.r));
    if (!std::isfinite(t.p) || !std::isfinite(t.q) || !std::isfinite(t.r))
        throw InvalidExponents("exponents must be finite");
}

inline Regime classify(const ExponentTriple& t) {
    if (t.r < t.p)  return Regime::Subhomogeneous;
    if (t.r == t.p) return Regime::BorderlineRP;
    // r > p from here on
    if (t.q < t.p)  return Regime::ConvexConcave;
    if (t.q == t.p) return Regime::BorderlineQP;
    return Regime::Superhomogeneous;
}

inline RegimeInfo derived_constants(const ExponentTriple& t) {
    validate(t);
    const double p = t.p, q = t.q, r = t.r, N = static_cast<double>(t.N);
    RegimeInfo info;
    info.theta = (1.0 / q - 1.0 / r) / (1.0 / q + 1.0 / N - 1.0 / p);
    info.alpha0 = (q * r * (N - p) - N * q * p) / (N * p * (r - q));
    info.alphaStar = q * (r - p) / (p * (r - q));
    info.alphaInflect = (r == p) ? std::numeric_limits<double>::quiet_NaN()
                                 : (r - p) / (r - q);
    info.pStar = p_star(t);
    info.regime = classify(t);
    return info;
}

// Exponent e(alpha) in the dilation law  R_alpha(u(./t); t Omega) = t^e R_alpha(u; Omega):
//
//     e = N - p - (alpha p/q + (1-alpha) p/r) N = (N p (r-q) / (q r)) (alpha0 - alpha).
//
// Vanishes exactly at alpha = alpha0, which is why minimization collapses below it.
inline double scaling_exponent(const ExponentTriple& t, double alpha) {
    const double p = t.p, q = t.q, r = t.r, N = static_cast<double>(t.N);
    return N - p - (alpha * p / q + (1.0 - alpha) * p / r) * N;
}

} // namespace rqlab
