#pragma once

// INI-style configuration for the command-line front end.  Sections
// [problem] [solver] [sweep] [output]; unknown sections or keys are rejected
// so typos fail loudly instead of silently using defaults.

#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "rqlab/errors.hpp"
#include "rqlab/exponents.hpp"
#include "rqlab/grid.hpp"
#include "rqlab/solver.hpp"
#include "rqlab/sweep.hpp"

namespace rqlab {

struct Config {
    // [problem]
    ExponentTriple triple;
    std::string domainKind; // "interval" | "rectangle"; required
    double ax = 0.0, bx = 1.0, ay = 0.0, by = 1.0;
    int cells = 200;
    double alpha = 0.5; // used by single-solve style commands
    // [solver]
    SolveOptions opts;
    // [sweep]
    double alphaMin = 0.0, alphaMax = 1.0;
    int steps = 10;
    bool warmStart = true;
    // [output]
    std::string format = "csv"; // csv | json
    std::string path;           // empty = stdout (or the output-dir default)
    // bookkeeping
    bool haveP = false, haveQ = false, haveR = false, haveN = false;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline double parse_real(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": not a number: '" + v + "'");
    }
}

inline long long parse_int(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": not an integer: '" + v + "'");
    }
}

inline bool parse_flag(const std::string& v, int line) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ParseError("line " + std::to_string(line) + ": not a flag: '" + v + "'");
}

} // namespace detail

inline Config parse_config(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string rawLine, section;
    int line = 0;
    while (std::getline(in, rawLine)) {
        ++line;
        std::string s = detail::trim(rawLine);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ParseError("line " + std::to_string(line) + ": unterminated section");
            section = s.substr(1, s.size() - 2);
            if (section != "problem" && section != "solver" && section != "sweep" &&
                section != "output")
                throw ParseError("line " + std::to_string(line) + ": unknown section [" +
                                 section + "]");
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(line) + ": expected key=value");
        const std::string key = detail::trim(s.substr(0, eq));
        const std::string val = detail::trim(s.substr(eq + 1));
        if (section.empty())
            throw ParseError("line " + std::to_string(line) + ": key outside a section");

        if (section == "problem") {
            if (key == "p") { cfg.triple.p = detail::parse_real(val, line); cfg.haveP = true; }
            else if (key == "q") { cfg.triple.q = detail::parse_real(val, line); cfg.haveQ = true; }
            else if (key == "r") { cfg.triple.r = detail::parse_real(val, line); cfg.haveR = true; }
            else if (key == "N") { cfg.triple.N = static_cast<int>(detail::parse_int(val, line)); cfg.haveN = true; }
            else if (key == "domain") cfg.domainKind = val;
            else if (key == "ax") cfg.ax = detail::parse_real(val, line);
            else if (key == "bx") cfg.bx = detail::parse_real(val, line);
            else if (key == "ay") cfg.ay = detail::parse_real(val, line);
            else if (key == "by") cfg.by = detail::parse_real(val, line);
            else if (key == "cells") cfg.cells = static_cast<int>(detail::parse_int(val, line));
            else if (key == "alpha") cfg.alpha = detail::parse_real(val, line);
            else throw ValidationError("line " + std::to_string(line) +
                                       ": unknown key '" + key + "' in [problem]");
        } else if (section == "solver") {
            if (key == "maxIter") cfg.opts.maxIter = static_cast<int>(detail::parse_int(val, line));
            else if (key == "tol") cfg.opts.tolResidual = detail::parse_real(val, line);
            else if (key == "step0") cfg.opts.step0 = detail::parse_real(val, line);
            else if (key == "armijoC") cfg.opts.armijoC = detail::parse_real(val, line);
            else if (key == "epsReg") cfg.opts.epsReg = detail::parse_real(val, line);
            else if (key == "seed") cfg.opts.seed = static_cast<std::uint64_t>(detail::parse_int(val, line));
            else if (key == "multistart") cfg.opts.multistart = static_cast<int>(detail::parse_int(val, line));
            else if (key == "positivity") cfg.opts.positivity = detail::parse_flag(val, line);
            else throw ValidationError("line " + std::to_string(line) +
                                       ": unknown key '" + key + "' in [solver]");
        } else if (section == "sweep") {
            if (key == "alphaMin") cfg.alphaMin = detail::parse_real(val, line);
            else if (key == "alphaMax") cfg.alphaMax = detail::parse_real(val, line);
            else if (key == "steps") {
                cfg.steps = static_cast<int>(detail::parse_int(val, line));
                if (cfg.steps < 1)
                    throw ParseError("line " + std::to_string(line) +
                                     ": steps must be >= 1");
            } else if (key == "warmStart") cfg.warmStart = detail::parse_flag(val, line);
            else throw ValidationError("line " + std::to_string(line) +
                                       ": unknown key '" + key + "' in [sweep]");
        } else { // output
            if (key == "format") {
                if (val != "csv" && val != "json")
                    throw ValidationError("line " + std::to_string(line) +
                                          ": format must be csv or json");
                cfg.format = val;
            } else if (key == "path") cfg.path = val;
            else throw ValidationError("line " + std::to_string(line) +
                                       ": unknown key '" + key + "' in [output]");
        }
    }
    return cfg;
}

// Semantic validation after parsing and flag overrides.
inline void validate(const Config& cfg) {
    if (!cfg.haveP || !cfg.haveQ || !cfg.haveR || !cfg.haveN)
        throw ValidationError("p, q, r and N are required in [problem]");
    if (cfg.domainKind != "interval" && cfg.domainKind != "rectangle")
        throw ValidationError("domain must be 'interval' or 'rectangle'");
    try {
        validate(cfg.triple);
    } catch (const InvalidExponents& e) {
        throw ValidationError(e.what());
    }
    if ((cfg.domainKind == "interval") != (cfg.triple.N == 1))
        throw ValidationError("domain kind must match N (interval:1, rectangle:2)");
    if (cfg.cells < 2) throw ValidationError("cells must be >= 2");
    if (cfg.opts.maxIter < 1) throw ValidationError("maxIter must be >= 1");
    if (cfg.opts.tolResidual < 0.0) throw ValidationError("tol must be >= 0");
    if (!(cfg.opts.armijoC > 0.0 && cfg.opts.armijoC < 1.0))
        throw ValidationError("armijoC must be in (0,1)");
    if (cfg.opts.multistart < 1) throw ValidationError("multistart must be >= 1");
    if (!(cfg.alphaMax >= cfg.alphaMin))
        throw ValidationError("alphaMax must be >= alphaMin");
}

inline Domain domain_from(const Config& cfg) {
    if (cfg.domainKind == "interval") return make_interval(cfg.ax, cfg.bx, cfg.cells);
    return make_rectangle(cfg.ax, cfg.bx, cfg.ay, cfg.by, cfg.cells);
}

inline std::vector<double> alpha_grid_from(const Config& cfg) {
    std::vector<double> grid;
    grid.reserve(cfg.steps);
    if (cfg.steps == 1) {
        grid.push_back(cfg.alphaMin);
        return grid;
    }
    for (int i = 0; i < cfg.steps; ++i)
        grid.push_back(cfg.alphaMin +
                       (cfg.alphaMax - cfg.alphaMin) * i / (cfg.steps - 1.0));
    return grid;
}

// Effective-configuration echo placed at the top of outputs.
inline std::string config_echo(const Config& cfg) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "p=%.17g q=%.17g r=%.17g N=%d domain=%s ax=%.17g bx=%.17g "
                  "ay=%.17g by=%.17g cells=%d alpha=%.17g maxIter=%d tol=%.17g "
                  "step0=%.17g armijoC=%.17g epsReg=%.17g seed=%llu multistart=%d "
                  "positivity=%d alphaMin=%.17g alphaMax=%.17g steps=%d warmStart=%d",
                  cfg.triple.p, cfg.triple.q, cfg.triple.r, cfg.triple.N,
                  cfg.domainKind.c_str(), cfg.ax, cfg.bx, cfg.ay, cfg.by, cfg.cells,
                  cfg.alpha, cfg.opts.maxIter, cfg.opts.tolResidual, cfg.opts.step0,
                  cfg.opts.armijoC, cfg.opts.epsReg,
                  static_cast<unsigned long long>(cfg.opts.seed), cfg.opts.multistart,
                  cfg.opts.positivity ? 1 : 0, cfg.alphaMin, cfg.alphaMax, cfg.steps,
                  cfg.warmStart ? 1 : 0);
    return buf;
}

} // namespace rqlab
