#pragma once

// Uniform-grid discretization of intervals and axis-aligned rectangles with
// zero Dirichlet boundary, and the discrete ingredients of the quotient
// R_alpha: lumped L^sigma norms, the p-Dirichlet energy J(u) = ||grad u||_p^p,
// and its pointwise (mass-scaled) gradient, i.e. the discrete -Delta_p u.
//
// Scheme summary.  Nodal values live at interior nodes; boundary nodes are
// identically zero.  Norms use trapezoid (tensor-trapezoid) weights, which on
// a uniform grid with zero trace reduce to w_i = h (resp. hx*hy).  The energy
// uses one gradient evaluation per cell:
//
//   1D:  J = sum_cells h |du/h|^p
//   2D:  J = sum_cells hx hy G^p,   G^2 = (a^2+b^2)/(2 hx^2) + (c^2+d^2)/(2 hy^2)
//
// where a,b (c,d) are the two x-differences (y-differences) across the cell.
// Averaging the squares rather than the differences keeps the p = 2 operator
// equal to the classical 3-/5-point stencil while staying a per-cell midpoint
// quadrature of |grad u|^2 with O(h^2) consistency.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rqlab/errors.hpp"

namespace rqlab {

enum class DomainKind { Interval, Rectangle };

// A point; y is ignored for intervals.
struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct Domain {
    DomainKind kind = DomainKind::Interval;
    double ax = 0.0, bx = 1.0;
    double ay = 0.0, by = 1.0; // unused for Interval
    int cells = 2;             // per axis; spacing = side/cells

    double hx() const { return (bx - ax) / cells; }
    double hy() const { return (by - ay) / cells; }
    double measure() const {
        return kind == DomainKind::Interval ? (bx - ax) : (bx - ax) * (by - ay);
    }
    // Quadrature weight of one interior node (trapezoid lumping).
    double node_weight() const {
        return kind == DomainKind::Interval ? hx() : hx() * hy();
    }
    int interior_per_axis() const { return cells - 1; }
    std::size_t interior_count() const {
        const std::size_t m = static_cast<std::size_t>(cells - 1);
        return kind == DomainKind::Interval ? m : m * m;
    }
    bool same_grid(const Domain& o) const {
        return kind == o.kind && cells == o.cells && ax == o.ax && bx == o.bx &&
               ay == o.ay && by == o.by;
    }
};

inline Domain make_interval(double a, double b, int cells) {
    if (cells < 2) throw DomainError("cells must be >= 2");
    if (!(b > a)) throw DomainError("interval needs b > a");
    Domain d;
    d.kind = DomainKind::Interval;
    d.ax = a; d.bx = b;
    d.cells = cells;
    return d;
}

inline Domain make_rectangle(double ax, double bx, double ay, double by, int cells) {
    if (cells < 2) throw DomainError("cells must be >= 2");
    if (!(bx > ax) || !(by > ay)) throw DomainError("rectangle needs bx > ax and by > ay");
    Domain d;
    d.kind = DomainKind::Rectangle;
    d.ax = ax; d.bx = bx; d.ay = ay; d.by = by;
    d.cells = cells;
    return d;
}

// Interior nodal values, row-major over (i,j) with i fastest (x-axis), both
// running 1..cells-1.  Boundary values are implicit zeros.
struct GridFunction {
    Domain dom;
    std::vector<double> v;

    GridFunction() = default;
    explicit GridFunction(const Domain& d) : dom(d), v(d.interior_count(), 0.0) {}
    GridFunction(const Domain& d, std::vector<double> vals) : dom(d), v(std::move(vals)) {
        if (v.size() != d.interior_count())
            throw DomainError("value count does not match interior node count");
    }

    std::size_t size() const { return v.size(); }
    double& operator[](std::size_t k) { return v[k]; }
    double operator[](std::size_t k) const { return v[k]; }

    // 2D accessor; i,j in 1..cells-1.
    double at(int i, int j) const {
        const int m = dom.interior_per_axis();
        return v[static_cast<std::size_t>(j - 1) * m + (i - 1)];
    }
};

inline bool all_finite(const GridFunction& u) {
    for (double x : u.v)
        if (!std::isfinite(x)) return false;
    return true;
}

// Coordinates of interior node k.
inline Point node_point(const Domain& d, std::size_t k) {
    if (d.kind == DomainKind::Interval)
        return {d.ax + d.hx() * static_cast<double>(k + 1), 0.0};
    const int m = d.interior_per_axis();
    const int i = static_cast<int>(k % m) + 1;
    const int j = static_cast<int>(k / m) + 1;
    return {d.ax + d.hx() * i, d.ay + d.hy() * j};
}

// --- quadrature norms ------------------------------------------------------

inline double lp_norm_pow(const GridFunction& u, double sigma) {
    // sum_i w |u_i|^sigma  (the sigma-th power of the norm)
    const double w = u.dom.node_weight();
    double s = 0.0;
    if (sigma == 1.0) {
        for (double x : u.v) s += std::fabs(x);
    } else if (sigma == 2.0) {
        for (double x : u.v) s += x * x;
    } else {
        for (double x : u.v) s += std::pow(std::fabs(x), sigma);
    }
    return w * s;
}

inline double lp_norm(const GridFunction& u, double sigma) {
    if (!(sigma >= 1.0)) throw Error("lp_norm needs sigma >= 1");
    return std::pow(lp_norm_pow(u, sigma), 1.0 / sigma);
}

// Mass inner product <u,v> = sum_i w u_i v_i and its norm.
inline double mass_inner(const GridFunction& a, const GridFunction& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.v.size(); ++k) s += a.v[k] * b.v[k];
    return a.dom.node_weight() * s;
}

inline double mass_norm(const GridFunction& a) {
    return std::sqrt(mass_inner(a, a));
}

// --- p-Dirichlet energy and its operator ------------------------------------

inline double dirichlet_energy(const GridFunction& u, double p) {
    const Domain& d = u.dom;
    const int n = d.cells;
    if (d.kind == DomainKind::Interval) {
        const double h = d.hx();
        double s = 0.0;
        double prev = 0.0;
        for (int c = 0; c < n; ++c) {
            const double next = (c + 1 < n) ? u.v[c] : 0.0;
            const double g = (next - prev) / h;
            s += std::pow(std::fabs(g), p);
            prev = next;
        }
        return h * s;
    }
    const double hx = d.hx(), hy = d.hy();
    const int m = n - 1;
    auto val = [&](int i, int j) -> double {
        if (i <= 0 || i >= n || j <= 0 || j >= n) return 0.0;
        return u.v[static_cast<std::size_t>(j - 1) * m + (i - 1)];
    };
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double u00 = val(i, j), u10 = val(i + 1, j);
            const double u01 = val(i, j + 1), u11 = val(i + 1, j + 1);
            const double a = u10 - u00, b = u11 - u01; // x-differences
            const double c = u01 - u00, dd = u11 - u10; // y-differences
            const double g2 = (a * a + b * b) / (2.0 * hx * hx) +
                              (c * c + dd * dd) / (2.0 * hy * hy);
            s += std::pow(g2, p / 2.0);
        }
    }
    return hx * hy * s;
}

// Discrete -Delta_p u: the gradient of dirichlet_energy divided by p and by
// the lumped mass, so that at p = 2, epsReg = 0 it is exactly the classical
// second-difference stencil and <out, v>_mass = sum_cells |grad u|^{p-2} grad u . grad v.
// epsReg replaces |grad u|^2 by |grad u|^2 + epsReg^2 inside the (p-2)/2 power.
inline GridFunction p_laplacian_apply(const GridFunction& u, double p, double epsReg) {
    const Domain& d = u.dom;
    const int n = d.cells;
    GridFunction out(d);
    const double e2 = epsReg * epsReg;
    if (d.kind == DomainKind::Interval) {
        const double h = d.hx();
        double prev = 0.0;
        double psiPrev = 0.0;
        for (int c = 0; c < n; ++c) {
            const double next = (c + 1 < n) ? u.v[c] : 0.0;
            const double g = (next - prev) / h;
            const double psi = (p == 2.0 && epsReg == 0.0)
                                   ? g
                                   : g * std::pow(g * g + e2, (p - 2.0) / 2.0);
            // flux difference lands on the cell's left node (skip node 0)
            if (c > 0) out.v[c - 1] = (psiPrev - psi) / h;
            psiPrev = psi;
            prev = next;
        }
        // last flux exits through the right boundary; nothing to scatter
        return out;
    }
    const double hx = d.hx(), hy = d.hy();
    const int m = n - 1;
    auto val = [&](int i, int j) -> double {
        if (i <= 0 || i >= n || j <= 0 || j >= n) return 0.0;
        return u.v[static_cast<std::size_t>(j - 1) * m + (i - 1)];
    };
    auto add = [&](int i, int j, double x) {
        if (i <= 0 || i >= n || j <= 0 || j >= n) return;
        out.v[static_cast<std::size_t>(j - 1) * m + (i - 1)] += x;
    };
    const double cx = 1.0 / (2.0 * hx * hx);
    const double cy = 1.0 / (2.0 * hy * hy);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double u00 = val(i, j), u10 = val(i + 1, j);
            const double u01 = val(i, j + 1), u11 = val(i + 1, j + 1);
            const double a = u10 - u00, b = u11 - u01;
            const double c = u01 - u00, dd = u11 - u10;
            const double g2 = (a * a + b * b) * cx + (c * c + dd * dd) * cy;
            const double coef = (p == 2.0 && epsReg == 0.0)
                                    ? 1.0
                                    : std::pow(g2 + e2, (p - 2.0) / 2.0);
            const double fa = coef * a * cx, fb = coef * b * cx;
            const double fc = coef * c * cy, fd = coef * dd * cy;
            add(i, j, -fa - fc);
            add(i + 1, j, fa - fd);
            add(i, j + 1, -fb + fc);
            add(i + 1, j + 1, fb + fd);
        }
    }
    return out;
}

// --- construction helpers ----------------------------------------------------

// Polynomial bump (1-s^2)^2, s = 2(x-center)/width, tensorized in 2D (square
// support of side `width`).  Support must stay strictly inside the domain.
inline GridFunction bump(const Domain& d, Point center, double width) {
    if (!(width > 0.0)) throw DomainError("bump width must be positive");
    const double half = width / 2.0;
    if (!(center.x - half > d.ax && center.x + half < d.bx))
        throw DomainError("bump support touches the boundary (x-axis)");
    if (d.kind == DomainKind::Rectangle &&
        !(center.y - half > d.ay && center.y + half < d.by))
        throw DomainError("bump support touches the boundary (y-axis)");
    auto profile = [&](double s) {
        if (std::fabs(s) >= 1.0) return 0.0;
        const double t = 1.0 - s * s;
        return t * t;
    };
    GridFunction u(d);
    for (std::size_t k = 0; k < u.size(); ++k) {
        const Point pt = node_point(d, k);
        double val = profile(2.0 * (pt.x - center.x) / width);
        if (d.kind == DomainKind::Rectangle)
            val *= profile(2.0 * (pt.y - center.y) / width);
        u.v[k] = val;
    }
    return u;
}

// Deterministic pseudo-random values in [-1,1].  The generator output is
// mapped to doubles by hand (top 53 bits) so the stream does not depend on
// the standard library's distribution implementation.
inline GridFunction random_function(const Domain& d, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    GridFunction u(d);
    for (auto& x : u.v) {
        const double u01 = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        x = 2.0 * u01 - 1.0;
    }
    return u;
}

// Congruent dilation x -> t x: same nodal values on the scaled grid, i.e. the
// function v(y) = u(y/t) on t*Omega.  All discrete quantities then scale by
// exact powers of t, which is what makes the scaling checks machine-precision.
inline GridFunction transplant(const GridFunction& u, double t) {
    if (!(t > 0.0)) throw DomainError("transplant factor must be positive");
    Domain d = u.dom;
    d.ax *= t; d.bx *= t;
    d.ay *= t; d.by *= t;
    return GridFunction(d, u.v);
}

// --- serialization -----------------------------------------------------------

// One-line header (kind, bounds, cells) followed by one nodal value per line.
inline void save_csv(const GridFunction& u, std::ostream& os) {
    char buf[64];
    auto put = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        os << buf;
    };
    if (u.dom.kind == DomainKind::Interval) {
        os << "interval,";
        put(u.dom.ax); os << ',';
        put(u.dom.bx); os << ',';
        os << u.dom.cells << '\n';
    } else {
        os << "rectangle,";
        put(u.dom.ax); os << ',';
        put(u.dom.bx); os << ',';
        put(u.dom.ay); os << ',';
        put(u.dom.by); os << ',';
        os << u.dom.cells << '\n';
    }
    for (double x : u.v) {
        put(x);
        os << '\n';
    }
}

inline void save_csv(const GridFunction& u, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open for writing: " + path);
    save_csv(u, f);
}

inline GridFunction load_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("empty grid-function stream");
    std::vector<std::string> parts;
    {
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) parts.push_back(tok);
    }
    Domain d;
    try {
        if (parts.size() == 4 && parts[0] == "interval") {
            d = make_interval(std::stod(parts[1]), std::stod(parts[2]), std::stoi(parts[3]));
        } else if (parts.size() == 6 && parts[0] == "rectangle") {
            d = make_rectangle(std::stod(parts[1]), std::stod(parts[2]),
                               std::stod(parts[3]), std::stod(parts[4]),
                               std::stoi(parts[5]));
        } else {
            throw ParseError("unrecognized grid-function header: " + line);
        }
    } catch (const std::invalid_argument&) {
        throw ParseError("bad number in grid-function header: " + line);
    }
    std::vector<double> vals;
    vals.reserve(d.interior_count());
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        try {
            vals.push_back(std::stod(line));
        } catch (const std::invalid_argument&) {
            throw ParseError("bad nodal value: " + line);
        }
    }
    if (vals.size() != d.interior_count())
        throw ParseError("nodal value count does not match header");
    return GridFunction(d, std::move(vals));
}

inline GridFunction load_csv_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open for reading: " + path);
    return load_csv(f);
}

} // namespace rqlab
