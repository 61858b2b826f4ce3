#pragma once

// Trace alpha -> (lambda_1(alpha), mu or nu, norms, energy, fiber data) over a
// grid of alpha values with optional warm starting, plus the comparative
// checks that consume such sweeps: weighted monotonicity, two-sided level
// bounds, shape classification per exponent regime, scaling and domain
// monotonicity of the ground level.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "rqlab/exponents.hpp"
#include "rqlab/functionals.hpp"
#include "rqlab/grid.hpp"
#include "rqlab/solver.hpp"
#include "rqlab/transforms.hpp"

namespace rqlab {

struct SweepConfig {
    ExponentTriple triple;
    std::vector<double> alphaGrid; // strictly increasing, all > alpha0
    bool warmStart = true;
    Domain domain;
    SolveOptions opts;
};

inline void validate(const SweepConfig& cfg) {
    validate(cfg.triple);
    if (cfg.alphaGrid.empty()) throw ValidationError("alpha grid is empty");
    const double a0 = derived_constants(cfg.triple).alpha0;
    for (std::size_t i = 0; i < cfg.alphaGrid.size(); ++i) {
        if (i > 0 && !(cfg.alphaGrid[i] > cfg.alphaGrid[i - 1]))
            throw ValidationError("alpha grid must be strictly increasing");
        if (!(cfg.alphaGrid[i] > a0))
            throw ValidationError(
                "alpha grid reaches the threshold where the ground level "
                "degenerates to 0 and is not attained (alpha0 = " +
                std::to_string(a0) + ")");
    }
}

// One sweep row: the translated-problem data of the ground state at one alpha,
// plus solver diagnostics.  `value` is mu for r != p and nu for r = p.
struct SweepRecord {
    double alpha = 0.0;
    double lambda1 = 0.0;
    double value = 0.0;
    LevelKind kind = LevelKind::Mu;
    double normQ = 0.0;
    double normR = 0.0;
    double gradP = 0.0;
    double energy = 0.0;
    double fiber2 = 0.0;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

inline SweepRecord make_sweep_record(const TranslationRecord& tr,
                                     const SolveResult& res) {
    SweepRecord row;
    row.alpha = tr.alpha;
    row.lambda1 = tr.lambda;
    row.value = tr.value;
    row.kind = tr.kind;
    row.normQ = tr.normQ;
    row.normR = tr.normR;
    row.gradP = tr.gradP;
    row.energy = tr.energy;
    row.fiber2 = tr.fiber2;
    row.iterations = res.iterations;
    row.residual = res.point.residual;
    row.converged = res.converged;
    return row;
}

// One ground-state solve per grid value.  With warmStart the previous
// converged minimizer seeds the next solve (the numerical counterpart of
// continuity of alpha -> u_alpha); rows that fail to converge are recorded
// with their best iterate and the sweep continues.
inline std::vector<SweepRecord> sweep_alpha(const SweepConfig& cfg) {
    validate(cfg);
    std::vector<SweepRecord> rows;
    rows.reserve(cfg.alphaGrid.size());
    GridFunction prev(cfg.domain);
    bool havePrev = false;
    for (const double alpha : cfg.alphaGrid) {
        AlphaParams ap{cfg.triple, alpha};
        SolveResult res = minimize_ground_state(
            ap, cfg.domain, cfg.opts, (cfg.warmStart && havePrev) ? &prev : nullptr);
        TranslationRecord tr = translation_record(res.point.u, ap);
        rows.push_back(make_sweep_record(tr, res));
        if (res.converged) {
            prev = res.point.u;
            havePrev = true;
        }
    }
    return rows;
}

// Check report; serialized to JSON by the CLI.
struct Report {
    std::string check;
    bool passed = true;
    std::vector<std::string> details;
    double worstViolation = 0.0;
};

namespace detail {

inline std::string fmt(const char* pattern, double a, double b, double c) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

} // namespace detail

// The measure-weighted level |Omega|^{alpha p/q + (1-alpha) p/r} lambda_1(alpha)
// is increasing in alpha; verify strictly across converged rows.
inline Report check_monotonicity(const ExponentTriple& t,
                                 const std::vector<SweepRecord>& rows,
                                 double measure) {
    Report rep;
    rep.check = "weighted-monotonicity";
    double prevW = -std::numeric_limits<double>::infinity();
    double prevA = 0.0;
    bool first = true;
    for (const auto& row : rows) {
        if (!row.converged) continue;
        const double expo = row.alpha * t.p / t.q + (1.0 - row.alpha) * t.p / t.r;
        const double wv = std::pow(measure, expo) * row.lambda1;
        if (!first && !(wv > prevW)) {
            rep.passed = false;
            rep.worstViolation = std::max(rep.worstViolation, prevW - wv);
            rep.details.push_back(detail::fmt(
                "not increasing between alpha=%.6g (%.12g) and next (%.12g)",
                prevA, prevW, wv));
        }
        prevW = wv;
        prevA = row.alpha;
        first = false;
    }
    return rep;
}

// Two-sided level bounds with a discretization slack:
//   lambda_1(alpha) >= lamAlpha0Proxy * |Omega|^{-(1/q-1/r)(alpha-alpha0) p}
//   lambda_1(alpha) <= lamAt1 * |Omega|^{(1/q-1/r)(1-alpha) p}      (alpha <= 1)
//   lambda_1(alpha) <= lamAt1^alpha * lamAt0^{1-alpha}              (alpha >= 1)
// lamAlpha0Proxy is the ground level computed at alpha0 on the same grid (the
// infimum there is a Gagliardo-Nirenberg-type constant; the discrete solve
// provides the reference value).
inline Report check_bounds(const ExponentTriple& t,
                           const std::vector<SweepRecord>& rows,
                           double lamAlpha0Proxy, double lamAt1, double lamAt0,
                           double measure, double slack = 0.01) {
    Report rep;
    rep.check = "level-bounds";
    const double a0 = derived_constants(t).alpha0;
    const double qr = 1.0 / t.q - 1.0 / t.r;
    for (const auto& row : rows) {
        if (!row.converged) continue;
        const double lower =
            lamAlpha0Proxy * std::pow(measure, -qr * (row.alpha - a0) * t.p);
        if (row.lambda1 < lower * (1.0 - slack)) {
            rep.passed = false;
            rep.worstViolation =
                std::max(rep.worstViolation, lower * (1.0 - slack) - row.lambda1);
            rep.details.push_back(detail::fmt(
                "alpha=%.6g: lambda=%.12g below lower bound %.12g", row.alpha,
                row.lambda1, lower));
        }
        if (row.alpha <= 1.0) {
            const double upper = lamAt1 * std::pow(measure, qr * (1.0 - row.alpha) * t.p);
            if (row.lambda1 > upper * (1.0 + slack)) {
                rep.passed = false;
                rep.worstViolation =
                    std::max(rep.worstViolation, row.lambda1 - upper * (1.0 + slack));
                rep.details.push_back(detail::fmt(
                    "alpha=%.6g: lambda=%.12g above Hoelder bound %.12g", row.alpha,
                    row.lambda1, upper));
            }
        }
        if (row.alpha >= 1.0) {
            const double upper =
                std::pow(lamAt1, row.alpha) * std::pow(lamAt0, 1.0 - row.alpha);
            if (row.lambda1 > upper * (1.0 + slack)) {
                rep.passed = false;
                rep.worstViolation =
                    std::max(rep.worstViolation, row.lambda1 - upper * (1.0 + slack));
                rep.details.push_back(detail::fmt(
                    "alpha=%.6g: lambda=%.12g above geometric-mean bound %.12g",
                    row.alpha, row.lambda1, upper));
            }
        }
    }
    return rep;
}

// Shape of the level branch over alpha, per regime:
//   ConvexConcave:   mu -> 0 at both ends of (0,1), interior max (endpoints
//                    below `endpointFraction` of the max)
//   Superhomogeneous: interior min, value at the largest alpha more than
//                    `trendFactor` times the min (the finite stand-in for
//                    mu -> infinity)
//   Subhomogeneous:  mu strictly increasing over the grid within [0,1)
//   BorderlineRP:    nu decreasing, final value -> 0
// Throws InsufficientRange when the grid does not reach the endpoints the
// regime's shape statement is about.
inline Report classify_asymptotics(const std::vector<SweepRecord>& rows,
                                   Regime regime, double trendFactor = 10.0,
                                   double endpointFraction = 0.1) {
    Report rep;
    rep.check = "branch-shape";
    std::vector<const SweepRecord*> ok;
    for (const auto& row : rows)
        if (row.converged) ok.push_back(&row);
    if (ok.size() < 3) throw InsufficientRange("need at least 3 converged rows");
    const double aFirst = ok.front()->alpha, aLast = ok.back()->alpha;

    auto argExtreme = [&](bool wantMax) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < ok.size(); ++i) {
            if (wantMax ? (ok[i]->value > ok[best]->value)
                        : (ok[i]->value < ok[best]->value))
                best = i;
        }
        return best;
    };

    switch (regime) {
    case Regime::ConvexConcave: {
        if (aFirst > 0.05 || aLast < 0.95)
            throw InsufficientRange("convex-concave shape needs a grid spanning (0,1)");
        const std::size_t imax = argExtreme(true);
        const double vmax = ok[imax]->value;
        rep.details.push_back(detail::fmt("interior max %.12g at alpha=%.6g (%g)",
                                          vmax, ok[imax]->alpha, 0.0));
        if (imax == 0 || imax + 1 == ok.size()) {
            rep.passed = false;
            rep.details.push_back("max attained at the boundary of the grid");
        }
        for (const auto* edge : {ok.front(), ok.back()}) {
            if (!(edge->value < endpointFraction * vmax)) {
                rep.passed = false;
                rep.worstViolation = std::max(rep.worstViolation,
                                              edge->value - endpointFraction * vmax);
                rep.details.push_back(detail::fmt(
                    "endpoint alpha=%.6g: value %.12g not below %.3g of the max",
                    edge->alpha, edge->value, endpointFraction));
            }
        }
        break;
    }
    case Regime::Superhomogeneous: {
        if (aLast < 10.0)
            throw InsufficientRange("superhomogeneous trend needs the grid to reach large alpha");
        const std::size_t imin = argExtreme(false);
        const double vmin = ok[imin]->value;
        rep.details.push_back(detail::fmt("interior min %.12g at alpha=%.6g (%g)",
                                          vmin, ok[imin]->alpha, 0.0));
        if (imin == 0 || imin + 1 == ok.size()) {
            rep.passed = false;
            rep.details.push_back("min attained at the boundary of the grid");
        }
        if (!(ok.back()->value > trendFactor * vmin)) {
            rep.passed = false;
            rep.worstViolation = trendFactor * vmin - ok.back()->value;
            rep.details.push_back(detail::fmt(
                "value at alpha=%.6g is %.12g, not above %g x the interior min",
                ok.back()->alpha, ok.back()->value, trendFactor));
        }
        break;
    }
    case Regime::Subhomogeneous:
    case Regime::BorderlineQP: {
        for (std::size_t i = 1; i < ok.size(); ++i) {
            if (ok[i]->alpha >= 1.0) break;
            if (!(ok[i]->value > ok[i - 1]->value)) {
                rep.passed = false;
                rep.worstViolation = std::max(rep.worstViolation,
                                              ok[i - 1]->value - ok[i]->value);
                rep.details.push_back(detail::fmt(
                    "not increasing at alpha=%.6g (%.12g -> %.12g)", ok[i]->alpha,
                    ok[i - 1]->value, ok[i]->value));
            }
        }
        break;
    }
    case Regime::BorderlineRP: {
        if (aLast < 0.99)
            throw InsufficientRange("r = p shape needs the grid to reach alpha = 1");
        for (std::size_t i = 1; i < ok.size(); ++i) {
            if (!(ok[i]->value < ok[i - 1]->value)) {
                rep.passed = false;
                rep.worstViolation = std::max(rep.worstViolation,
                                              ok[i]->value - ok[i - 1]->value);
                rep.details.push_back(detail::fmt(
                    "not decreasing at alpha=%.6g (%.12g -> %.12g)", ok[i]->alpha,
                    ok[i - 1]->value, ok[i]->value));
            }
        }
        if (!(std::fabs(ok.back()->value) <= 1e-10)) {
            rep.passed = false;
            rep.details.push_back(detail::fmt(
                "final value %.12g at alpha=%.6g does not vanish (%g)",
                ok.back()->value, ok.back()->alpha, 0.0));
        }
        break;
    }
    case Regime::SuperhomEqual:
        rep.details.push_back("alias regime is never produced by classification");
        break;
    }
    return rep;
}

// Scaling of the ground level under domain dilation x -> t x: exact on the
// grid via transplantation, and reproduced by an independent solve on the
// scaled domain within `resolveTol` (relative).
inline Report scaling_check(const AlphaParams& ap, const Domain& dom,
                            const std::vector<double>& tFactors,
                            const SolveOptions& opts, double transplantTol = 1e-10,
                            double resolveTol = 5e-3) {
    Report rep;
    rep.check = "scaling-law";
    const SolveResult base = minimize_ground_state(ap, dom, opts);
    const double lam = base.point.lambda;
    for (const double t : tFactors) {
        if (!(t > 0.0)) throw ValidationError("scale factors must be positive");
        const double expo = scaling_exponent(ap.triple, ap.alpha);
        const double predicted = std::pow(t, expo) * lam;
        // transplant identity: same nodal values on the dilated grid
        const GridFunction moved = transplant(base.point.u, t);
        const double lamMoved = R_alpha(moved, ap);
        const double errT = std::fabs(lamMoved / predicted - 1.0);
        if (!(errT <= transplantTol)) {
            rep.passed = false;
            rep.worstViolation = std::max(rep.worstViolation, errT);
            rep.details.push_back(detail::fmt(
                "t=%.4g: transplant ratio off by %.3g (tol %.3g)", t, errT,
                transplantTol));
        }
        // independent solve on the scaled domain
        Domain scaled = moved.dom;
        SolveResult re = minimize_ground_state(ap, scaled, opts);
        const double errS = std::fabs(re.point.lambda / predicted - 1.0);
        if (!(errS <= resolveTol)) {
            rep.passed = false;
            rep.worstViolation = std::max(rep.worstViolation, errS);
            rep.details.push_back(detail::fmt(
                "t=%.4g: re-solved level off by %.3g (tol %.3g)", t, errS,
                resolveTol));
        }
    }
    return rep;
}

// Domain monotonicity of the ground level: shrinking the domain raises it.
inline Report domain_monotonicity_check(const AlphaParams& ap, const Domain& inner,
                                        const Domain& outer,
                                        const SolveOptions& opts) {
    const bool nested = inner.ax >= outer.ax && inner.bx <= outer.bx &&
                        (inner.kind == DomainKind::Interval ||
                         (inner.ay >= outer.ay && inner.by <= outer.by));
    if (inner.kind != outer.kind || !nested)
        throw DomainError("inner domain is not contained in the outer domain");
    Report rep;
    rep.check = "domain-monotonicity";
    const double lamIn = minimize_ground_state(ap, inner, opts).point.lambda;
    const double lamOut = minimize_ground_state(ap, outer, opts).point.lambda;
    if (!(lamIn >= lamOut * (1.0 - 1e-3))) {
        rep.passed = false;
        rep.worstViolation = lamOut * (1.0 - 1e-3) - lamIn;
    }
    rep.details.push_back(detail::fmt("inner %.12g vs outer %.12g (slack %.0e)",
                                      lamIn, lamOut, 1e-3));
    return rep;
}

// CSV schema shared by the CLI and the test suite; 17 significant digits so
// values round-trip exactly.
inline std::string csv_header() {
    return "alpha,lambda1,value,kind,norm_q,norm_r,grad_p,energy,fiber2,"
           "iterations,residual,converged";
}

inline std::string csv_row(const SweepRecord& row) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%.17g,%d",
                  row.alpha, row.lambda1, row.value,
                  row.kind == LevelKind::Mu ? "mu" : "nu", row.normQ, row.normR,
                  row.gradP, row.energy, row.fiber2, row.iterations, row.residual,
                  row.converged ? 1 : 0);
    return buf;
}

} // namespace rqlab
