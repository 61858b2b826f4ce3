#pragma once

// Ground states and other critical points of R_alpha by projected descent on
// the normalization manifold I_alpha = 1.
//
// Iteration: at the current u on M_alpha, form the strong-form residual field
//
//   rho = -Delta_p u - J ( alpha |u|^{q-2}u / ||u||_q^q
//                        + (1-alpha) |u|^{r-2}u / ||u||_r^r ),
//
// precondition it by one linear elliptic solve (see below), take an Armijo
// backtracking step on R_alpha along the preconditioned direction, and project
// back to M_alpha.  Since R_alpha is 0-homogeneous the projection does not
// change the value, so the line search acts on the functional itself.
//
// Preconditioner.  In 1D the descent direction d solves the linearized flux
// problem -(psi'(u') d')' = rho with psi'(g) = (g^2+eps^2)^{(p-4)/2}((p-1)g^2+eps^2)
// frozen per cell (tridiagonal, Thomas algorithm).  At p = 2 this is the exact
// inverse Laplacian and the update u - d with unit step is inverse iteration,
// which is why the classical case converges in a dozen steps.  In 2D the
// constant-coefficient Dirichlet Laplacian is inverted exactly by tensor sine
// diagonalization and scaled by the volume-averaged flux coefficient.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "rqlab/exponents.hpp"
#include "rqlab/functionals.hpp"
#include "rqlab/grid.hpp"
#include "rqlab/transforms.hpp"

namespace rqlab {

struct SolveOptions {
    int maxIter = 5000;
    double tolResidual = 0.0; // 0 = automatic: 1e-8 for p=2, 1e-6 otherwise
    double step0 = 1.0;
    double armijoC = 1e-4;
    double armijoShrink = 0.5;
    double epsReg = 1e-10;
    std::uint64_t seed = 12345;
    int multistart = 1;
    bool positivity = true; // restrict iterates to |u|; sound for ground states
};

inline double resolved_tolerance(const SolveOptions& opts, double p) {
    if (opts.tolResidual > 0.0) return opts.tolResidual;
    return (p == 2.0) ? 1e-8 : 1e-6;
}

struct HistoryEntry {
    int iter = 0;
    double value = 0.0;
    double residual = 0.0;
};

struct SolveResult {
    CriticalPoint point; // M_alpha-normalized
    int iterations = 0;
    bool converged = false;
    bool alphaAtOrBelowThreshold = false; // alpha <= alpha0: level 0, not attained
    std::vector<HistoryEntry> history;
};

namespace detail {

// psi'(g): derivative of the regularized flux g (g^2+eps^2)^{(p-2)/2}.
inline double flux_coefficient(double g, double p, double eps) {
    const double s = g * g + eps * eps;
    if (p == 2.0) return 1.0;
    return std::pow(s, (p - 4.0) / 2.0) * ((p - 1.0) * g * g + eps * eps);
}

// Tridiagonal solve of -(c d')' = rhs on the interior nodes (Dirichlet), with
// per-cell coefficients c[0..n-1]; Thomas algorithm.
inline void solve_tridiagonal_flux(const std::vector<double>& c, double h,
                                   const std::vector<double>& rhs,
                                   std::vector<double>& x) {
    const std::size_t m = rhs.size();
    const double ih2 = 1.0 / (h * h);
    std::vector<double> cp(m), dp(m);
    double b0 = (c[0] + c[1]) * ih2;
    cp[0] = -c[1] * ih2 / b0;
    dp[0] = rhs[0] / b0;
    for (std::size_t i = 1; i < m; ++i) {
        const double a = -c[i] * ih2;
        const double b = (c[i] + c[i + 1]) * ih2;
        const double upper = -c[i + 1] * ih2;
        const double den = b - a * cp[i - 1];
        cp[i] = upper / den;
        dp[i] = (rhs[i] - a * dp[i - 1]) / den;
    }
    x.resize(m);
    x[m - 1] = dp[m - 1];
    for (std::size_t i = m - 1; i-- > 0;)
        x[i] = dp[i] - cp[i] * x[i + 1];
}

// Exact inverse of the 5-point Dirichlet Laplacian on a tensor grid via sine
// diagonalization; O(m^3) per solve, fine at the grid sizes used here.
struct SineSolver {
    int n = 0; // cells per axis
    double hx = 0.0, hy = 0.0;
    std::vector<double> S;    // m x m sine matrix, S[a*m+b] = sin((a+1)(b+1)pi/n)
    std::vector<double> lamX; // eigenvalues of the 1D stencil per axis
    std::vector<double> lamY;

    void init(const Domain& d) {
        n = d.cells;
        hx = d.hx();
        hy = d.hy();
        const int m = n - 1;
        S.resize(static_cast<std::size_t>(m) * m);
        lamX.resize(m);
        lamY.resize(m);
        const double pi = 3.14159265358979323846;
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b)
                S[static_cast<std::size_t>(a) * m + b] =
                    std::sin((a + 1.0) * (b + 1.0) * pi / n);
            const double sx = std::sin((a + 1.0) * pi / (2.0 * n));
            lamX[a] = 4.0 * sx * sx / (hx * hx);
            lamY[a] = 4.0 * sx * sx / (hy * hy);
        }
    }

    // X <- S * X * S (both multiplications with the symmetric sine matrix).
    void transform(std::vector<double>& X, std::vector<double>& tmp) const {
        const int m = n - 1;
        tmp.assign(static_cast<std::size_t>(m) * m, 0.0);
        // tmp = S * X
        for (int a = 0; a < m; ++a)
            for (int k = 0; k < m; ++k) {
                const double s = S[static_cast<std::size_t>(a) * m + k];
                if (s == 0.0) continue;
                const double* row = &X[static_cast<std::size_t>(k) * m];
                double* out = &tmp[static_cast<std::size_t>(a) * m];
                for (int b = 0; b < m; ++b) out[b] += s * row[b];
            }
        // X = tmp * S
        for (int a = 0; a < m; ++a) {
            const double* row = &tmp[static_cast<std::size_t>(a) * m];
            double* out = &X[static_cast<std::size_t>(a) * m];
            for (int b = 0; b < m; ++b) {
                double acc = 0.0;
                for (int k = 0; k < m; ++k)
                    acc += row[k] * S[static_cast<std::size_t>(k) * m + b];
                out[b] = acc;
            }
        }
    }

    // Solve (-Delta_h) x = rhs.
    void solve(const std::vector<double>& rhs, std::vector<double>& x,
               std::vector<double>& tmp) const {
        const int m = n - 1;
        x = rhs;
        transform(x, tmp);
        const double norm = 4.0 / (static_cast<double>(n) * n); // (2/n)^2
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i)
                x[static_cast<std::size_t>(j) * m + i] *=
                    norm / (lamX[i] + lamY[j]);
        transform(x, tmp);
    }
};

// One preconditioner application: d approximately solves (linearized -Delta_p) d = rho.
struct Preconditioner {
    bool is1d = true;
    double h = 0.0;
    SineSolver sine;      // 2D only
    std::vector<double> coef, work, work2;

    void init(const Domain& d) {
        is1d = (d.kind == DomainKind::Interval);
        h = d.hx();
        if (!is1d) sine.init(d);
    }

    void apply(const GridFunction& u, double p, double eps,
               const std::vector<double>& rho, std::vector<double>& d) {
        const int n = u.dom.cells;
        if (is1d) {
            coef.resize(n);
            double prev = 0.0;
            for (int c = 0; c < n; ++c) {
                const double next = (c + 1 < n) ? u.v[c] : 0.0;
                coef[c] = flux_coefficient((next - prev) / h, p, eps);
                prev = next;
            }
            // keep the matrix invertible where p > 2 flattens the coefficient
            const double cap = *std::max_element(coef.begin(), coef.end());
            const double floor = std::max(cap * 1e-12, 1e-300);
            for (double& c : coef) c = std::max(c, floor);
            solve_tridiagonal_flux(coef, h, rho, d);
            return;
        }
        // 2D: constant-coefficient solve scaled by the mean flux coefficient.
        double cbar = 1.0;
        if (p != 2.0) {
            const double hx = u.dom.hx(), hy = u.dom.hy();
            const int m = n - 1;
            auto val = [&](int i, int j) -> double {
                if (i <= 0 || i >= n || j <= 0 || j >= n) return 0.0;
                return u.v[static_cast<std::size_t>(j - 1) * m + (i - 1)];
            };
            double acc = 0.0;
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    const double u00 = val(i, j), u10 = val(i + 1, j);
                    const double u01 = val(i, j + 1), u11 = val(i + 1, j + 1);
                    const double a = u10 - u00, b = u11 - u01;
                    const double c = u01 - u00, dd = u11 - u10;
                    const double g2 = (a * a + b * b) / (2.0 * hx * hx) +
                                      (c * c + dd * dd) / (2.0 * hy * hy);
                    acc += flux_coefficient(std::sqrt(g2), p, eps);
                }
            cbar = std::max(acc / (static_cast<double>(n) * n), 1e-300);
        }
        sine.solve(rho, d, work);
        if (cbar != 1.0)
            for (double& x : d) x /= cbar;
    }
};

} // namespace detail

namespace detail {

// Project onto the odd subspace across the domain midline (x direction).
// R_alpha is invariant under u -> -u(reflected), so on a symmetric grid the
// odd subspace is flow-invariant and its minimizer is a critical point of the
// full quotient (symmetric criticality); the full-equation residual certifies
// this at convergence.  Used to reach sign-changing critical points, which a
// free descent escapes through rounding-level symmetry breaking.
inline void antisymmetrize(GridFunction& u) {
    const int n = u.dom.cells, m = n - 1;
    if (u.dom.kind == DomainKind::Interval) {
        for (int i = 0; i < m / 2 + (m % 2); ++i) {
            const double a = u.v[i], b = u.v[static_cast<std::size_t>(m - 1 - i)];
            const double o = (a - b) / 2.0;
            u.v[i] = o;
            u.v[static_cast<std::size_t>(m - 1 - i)] = -o;
        }
        if (m % 2 == 1) u.v[m / 2] = 0.0;
        return;
    }
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m / 2 + (m % 2); ++i) {
            double& a = u.v[static_cast<std::size_t>(j) * m + i];
            double& b = u.v[static_cast<std::size_t>(j) * m + (m - 1 - i)];
            const double o = (a - b) / 2.0;
            a = o;
            b = -o;
        }
}

inline SolveResult descend(const AlphaParams& ap, const Domain& dom,
                           const SolveOptions& opts, const GridFunction* warmStart,
                           bool oddConstrained) {
    validate(ap.triple);
    const double p = ap.triple.p, q = ap.triple.q, r = ap.triple.r;
    const double tol = resolved_tolerance(opts, p);
    const double eps = opts.epsReg;
    const double w = dom.node_weight();
    const bool positivity = opts.positivity && !oddConstrained;

    SolveResult out;
    out.alphaAtOrBelowThreshold = (ap.alpha <= derived_constants(ap.triple).alpha0);

    GridFunction u = warmStart ? *warmStart : random_function(dom, opts.seed);
    if (positivity)
        for (auto& x : u.v) x = std::fabs(x);
    if (oddConstrained) antisymmetrize(u);
    u = project_M(u, ap);

    double R = R_alpha(u, ap);
    Preconditioner pre;
    pre.init(dom);

    GridFunction rho(dom), trial(dom);
    std::vector<double> dir;
    // stagnation guard: residual floors out near machine precision of R long
    // before maxIter in ill-scaled cases; stop when no measurable progress
    double bestResidual = std::numeric_limits<double>::infinity();
    int bestIter = 0;
    const int stagnationWindow = 300;

    int it = 0;
    for (; it < opts.maxIter; ++it) {
        const double J = dirichlet_energy(u, p);
        const double cq = ap.alpha * J / lp_norm_pow(u, q);
        const double cr = (1.0 - ap.alpha) * J / lp_norm_pow(u, r);
        GridFunction plap = p_laplacian_apply(u, p, eps);
        double rnorm2 = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
            const double x = u.v[k];
            const double rk = plap.v[k] - cq * sgn_pow(x, q - 1.0) -
                              cr * sgn_pow(x, r - 1.0);
            rho.v[k] = rk;
            rnorm2 += rk * rk;
        }
        const double residual = std::sqrt(w * rnorm2);
        if (!std::isfinite(residual) || !std::isfinite(R))
            throw NotConverged("iteration produced a non-finite value");
        out.history.push_back({it, R, residual});
        if (residual <= tol) {
            out.converged = true;
            break;
        }
        if (residual < bestResidual * 0.995) {
            bestResidual = residual;
            bestIter = it;
        } else if (it - bestIter >= stagnationWindow) {
            break; // numerical floor reached above tolerance
        }

        pre.apply(u, p, eps, rho.v, dir);
        // dR along -dir; gradient = (p / I_alpha) rho and I_alpha = 1 here
        double rd = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) rd += rho.v[k] * dir[k];
        const double slope = -p * w * rd; // negative for an SPD preconditioner

        double t = opts.step0;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t k = 0; k < u.size(); ++k) {
                double vk = u.v[k] - t * dir[k];
                trial.v[k] = positivity ? std::fabs(vk) : vk;
            }
            if (oddConstrained) antisymmetrize(trial);
            bool nonzero = false;
            for (double x : trial.v)
                if (x != 0.0) { nonzero = true; break; }
            if (nonzero) {
                const double Rt = R_alpha(trial, ap);
                if (std::isfinite(Rt) && Rt <= R + opts.armijoC * t * slope) {
                    accepted = true;
                    break;
                }
            }
            t *= opts.armijoShrink;
        }
        if (!accepted) break; // no measurable descent left; report best iterate
        u = project_M(trial, ap);
        R = R_alpha(u, ap);
    }

    out.iterations = it;
    out.point = make_critical_point(std::move(u), ap, eps, Normalization::OnM);
    return out;
}

} // namespace detail

// Minimize R_alpha over M_alpha.  Returns the best iterate even when the
// residual tolerance is not reached (converged=false); throws NotConverged
// only on NaN/Inf blowup.  alpha <= alpha0 is allowed but flagged: there the
// infimum is 0 and not attained, so descent just documents the collapse.
inline SolveResult minimize_ground_state(const AlphaParams& ap, const Domain& dom,
                                         const SolveOptions& opts,
                                         const GridFunction* warmStart = nullptr) {
    return detail::descend(ap, dom, opts, warmStart, false);
}

// Lowest critical point in the odd subspace across the x midline: a
// sign-changing critical point of the full quotient on symmetric domains.
inline SolveResult minimize_odd_constrained(const AlphaParams& ap, const Domain& dom,
                                            const SolveOptions& opts,
                                            const GridFunction* start = nullptr) {
    return detail::descend(ap, dom, opts, start, true);
}

// Mass-weighted L2 distance between M_alpha-normalized rays, after sign
// alignment; the dedup metric for multistart.
inline double ray_distance(const GridFunction& a, const GridFunction& b) {
    const double s = (mass_inner(a, b) >= 0.0) ? 1.0 : -1.0;
    double acc = 0.0;
    for (std::size_t k = 0; k < a.v.size(); ++k) {
        const double d = a.v[k] - s * b.v[k];
        acc += d * d;
    }
    return std::sqrt(a.dom.node_weight() * acc);
}

// Run `opts.multistart` solves from varied starts (nonnegative random, an
// antisymmetric two-bump pair, signed random) and keep the distinct rays.
// Results are sorted by level, then lexicographically on sign-aligned values.
inline std::vector<SolveResult> multistart_spectrum(const AlphaParams& ap,
                                                    const Domain& dom,
                                                    const SolveOptions& opts) {
    if (opts.multistart < 1) throw Error("multistart must be >= 1");
    std::vector<SolveResult> kept;
    for (int s = 0; s < opts.multistart; ++s) {
        SolveOptions o = opts;
        GridFunction start(dom);
        bool odd = false;
        if (s == 0) {
            start = random_function(dom, opts.seed);
            for (auto& x : start.v) x = std::fabs(x);
        } else if (s == 1) {
            // antisymmetric two-bump start, held in the odd subspace to reach
            // a sign-changing critical point instead of sliding to the ground
            // state through rounding-level symmetry breaking
            const double Lx = dom.bx - dom.ax;
            const double width = 0.4 * Lx;
            Point c1{dom.ax + 0.25 * Lx, 0.0}, c2{dom.ax + 0.75 * Lx, 0.0};
            if (dom.kind == DomainKind::Rectangle) {
                c1.y = c2.y = 0.5 * (dom.ay + dom.by);
            }
            const GridFunction b1 = bump(dom, c1, width);
            const GridFunction b2 = bump(dom, c2, width);
            for (std::size_t k = 0; k < start.size(); ++k)
                start.v[k] = b1.v[k] - b2.v[k];
            odd = true;
        } else {
            start = random_function(dom, opts.seed + static_cast<std::uint64_t>(s));
            o.positivity = false;
        }
        SolveResult res = odd ? minimize_odd_constrained(ap, dom, o, &start)
                              : minimize_ground_state(ap, dom, o, &start);
        bool duplicate = false;
        for (const auto& other : kept)
            if (ray_distance(res.point.u, other.point.u) <= 1e-4) {
                duplicate = true;
                break;
            }
        if (!duplicate) kept.push_back(std::move(res));
    }
    std::sort(kept.begin(), kept.end(), [](const SolveResult& a, const SolveResult& b) {
        if (a.point.lambda != b.point.lambda) return a.point.lambda < b.point.lambda;
        // canonical alignment: flip each so its largest-magnitude entry is positive
        auto canon = [](const GridFunction& g) {
            double best = 0.0;
            for (double x : g.v)
                if (std::fabs(x) > std::fabs(best)) best = x;
            return best >= 0.0 ? 1.0 : -1.0;
        };
        const double sa = canon(a.point.u), sb = canon(b.point.u);
        for (std::size_t k = 0; k < a.point.u.size(); ++k) {
            const double xa = sa * a.point.u.v[k], xb = sb * b.point.u.v[k];
            if (xa != xb) return xa < xb;
        }
        return false;
    });
    return kept;
}

// k disjoint translates of one bump with equal norms (exact on the grid:
// centers are snapped to nodes, so the sampled profiles coincide).
struct BumpFamily {
    int k = 0;
    std::vector<GridFunction> bumps;
};

namespace detail {

// Snap x to the grid so translates share nodal samples.
inline double snap(double x, double origin, double h) {
    return origin + std::round((x - origin) / h) * h;
}

// Try to build k equal bumps of the given width centered near evenly spaced
// slots shifted by `shift`; returns false if they do not fit disjointly.
inline bool try_bump_family(const Domain& dom, int k, double width, double shift,
                            BumpFamily& fam) {
    const double h = dom.hx();
    const double Lx = dom.bx - dom.ax;
    width = std::max(4.0 * h, std::floor(width / (2.0 * h)) * 2.0 * h);
    fam.k = k;
    fam.bumps.clear();
    double prevRight = dom.ax;
    for (int i = 0; i < k; ++i) {
        const double slot = dom.ax + (i + 0.5) * Lx / k;
        const double c = snap(slot + shift, dom.ax, h);
        const double left = c - width / 2.0, right = c + width / 2.0;
        if (!(left > dom.ax && right < dom.bx)) return false;
        if (!(left >= prevRight - 1e-12)) return false;
        prevRight = right;
        Point center{c, 0.0};
        if (dom.kind == DomainKind::Rectangle)
            center.y = detail::snap(0.5 * (dom.ay + dom.by), dom.ay, dom.hy());
        double w2 = width;
        if (dom.kind == DomainKind::Rectangle) {
            const double Ly = dom.by - dom.ay;
            w2 = std::min(width, std::floor(0.95 * Ly / (2.0 * dom.hy())) * 2.0 * dom.hy());
            if (!(center.y - w2 / 2.0 > dom.ay && center.y + w2 / 2.0 < dom.by))
                return false;
        }
        try {
            fam.bumps.push_back(bump(dom, center, dom.kind == DomainKind::Interval
                                                      ? width
                                                      : std::min(width, w2)));
        } catch (const DomainError&) {
            return false;
        }
    }
    return true;
}

// sup over the unit sphere of the eta-quotient
//   Phi(eta) = (sum |eta|^p) / ((sum |eta|^q)^{alpha p/q} (sum |eta|^r)^{(1-alpha)p/r}),
// which is 0-homogeneous and symmetric under sign flips and permutations, so a
// scan over the positive orthant suffices.  Coarse scan plus golden refinement.
inline double sphere_sup(int k, const AlphaParams& ap) {
    const double p = ap.triple.p, q = ap.triple.q, r = ap.triple.r;
    const double eq = ap.alpha * p / q, er = (1.0 - ap.alpha) * p / r;
    auto phi = [&](const double* eta, int m) {
        double sp = 0.0, sq = 0.0, sr = 0.0;
        for (int i = 0; i < m; ++i) {
            const double e = eta[i];
            sp += std::pow(e, p);
            sq += std::pow(e, q);
            sr += std::pow(e, r);
        }
        return sp / (std::pow(sq, eq) * std::pow(sr, er));
    };
    if (k == 1) return 1.0;
    const double pi2 = 1.57079632679489662;
    if (k == 2) {
        auto f = [&](double th) {
            double eta[2] = {std::cos(th), std::sin(th)};
            return phi(eta, 2);
        };
        // coarse scan for the bracketing interval, then golden-section
        const int m = 64;
        double bestTh = 0.0, best = f(0.0);
        for (int i = 1; i <= m; ++i) {
            const double th = pi2 * i / m;
            const double v = f(th);
            if (v > best) { best = v; bestTh = th; }
        }
        double a = std::max(0.0, bestTh - pi2 / m), b = std::min(pi2, bestTh + pi2 / m);
        const double gr = 0.6180339887498949;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        for (int i = 0; i < 80; ++i) {
            if (f(c) > f(d)) { b = d; d = c; c = b - gr * (b - a); }
            else { a = c; c = d; d = a + gr * (b - a); }
        }
        return std::max(best, f(0.5 * (a + b)));
    }
    if (k == 3) {
        auto f = [&](double th, double phiAng) {
            double eta[3] = {std::sin(phiAng) * std::cos(th),
                             std::sin(phiAng) * std::sin(th), std::cos(phiAng)};
            return phi(eta, 3);
        };
        const int m = 48;
        double best = 0.0, bt = 0.0, bp = 0.0;
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= m; ++j) {
                const double v = f(pi2 * i / m, pi2 * j / m);
                if (v > best) { best = v; bt = pi2 * i / m; bp = pi2 * j / m; }
            }
        // two rounds of coordinate-wise golden refinement
        const double gr = 0.6180339887498949;
        for (int round = 0; round < 2; ++round) {
            {
                double a = std::max(0.0, bt - pi2 / m), b = std::min(pi2, bt + pi2 / m);
                double c = b - gr * (b - a), d = a + gr * (b - a);
                for (int i = 0; i < 60; ++i) {
                    if (f(c, bp) > f(d, bp)) { b = d; d = c; c = b - gr * (b - a); }
                    else { a = c; c = d; d = a + gr * (b - a); }
                }
                bt = 0.5 * (a + b);
            }
            {
                double a = std::max(0.0, bp - pi2 / m), b = std::min(pi2, bp + pi2 / m);
                double c = b - gr * (b - a), d = a + gr * (b - a);
                for (int i = 0; i < 60; ++i) {
                    if (f(bt, c) > f(bt, d)) { b = d; d = c; c = b - gr * (b - a); }
                    else { a = c; c = d; d = a + gr * (b - a); }
                }
                bp = 0.5 * (a + b);
            }
        }
        return std::max(best, f(bt, bp));
    }
    throw Error("genus bounds implemented for k <= 3");
}

} // namespace detail

// Upper bound for the k-th minimax level: the symmetric set spanned by k
// disjoint equal bumps realizes sup R_alpha = R_alpha(g) * sup Phi(eta), and
// any such set bounds lambda_k from above.  The bound is minimized over a
// small placement/width grid, refined once around the best candidate.
inline double genus_upper_bound(int k, const AlphaParams& ap, const Domain& dom,
                                double bumpWidth, const SolveOptions& opts) {
    (void)opts;
    validate(ap.triple);
    if (k < 1) throw Error("genus_upper_bound needs k >= 1");
    const double Lx = dom.bx - dom.ax;
    if (!(bumpWidth > 0.0) || !(bumpWidth * k <= Lx))
        throw DomainError("k bumps of the requested width do not fit in the domain");

    const double etaSup = detail::sphere_sup(k, ap);
    double best = std::numeric_limits<double>::infinity();
    double bestWidth = bumpWidth, bestShift = 0.0;

    auto evaluate = [&](double width, double shift) {
        BumpFamily fam;
        if (!detail::try_bump_family(dom, k, width, shift, fam)) return;
        const double v = R_alpha(fam.bumps[0], ap) * etaSup;
        if (v < best) { best = v; bestWidth = width; bestShift = shift; }
    };

    const double slot = Lx / k;
    for (int wi = 0; wi < 4; ++wi) {
        const double width = bumpWidth * (0.4 + 0.2 * wi); // 0.4..1.0 of requested
        const double margin = std::max(0.0, (slot - width) / 2.0);
        for (int si = 0; si < 8; ++si)
            evaluate(width, -margin + 2.0 * margin * (si + 0.5) / 8.0);
    }
    // one refinement pass around the best candidate
    const double w0 = bestWidth, s0 = bestShift;
    for (int wi = -2; wi <= 2; ++wi) {
        const double width = w0 * (1.0 + 0.08 * wi);
        if (!(width > 0.0)) continue;
        for (int si = -2; si <= 2; ++si)
            evaluate(width, s0 + si * dom.hx());
    }
    if (!std::isfinite(best))
        throw DomainError("no feasible bump family found for the requested width");
    return best;
}

// Ground state at the degeneracy threshold alpha = (r-p)/(r-q), where the
// fiber second derivative of the translated energy vanishes identically.
inline TranslationRecord find_degenerate(const ExponentTriple& t, const Domain& dom,
                                         const SolveOptions& opts) {
    validate(t);
    if (t.r == t.p)
        throw InvalidExponents("degeneracy threshold (r-p)/(r-q) needs r != p");
    AlphaParams ap{t, (t.r - t.p) / (t.r - t.q)};
    const SolveResult res = minimize_ground_state(ap, dom, opts);
    return translation_record(res.point.u, ap);
}

} // namespace rqlab
