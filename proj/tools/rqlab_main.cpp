// rqlab: command-line front end for the R_alpha critical-point laboratory.
//
// Commands:
//   solve         one ground-state solve at [problem] alpha
//   sweep         alpha sweep with warm starting, CSV/JSON rows
//   verify        identity suite + gradient check, JSON reports
//   genus         bump-construction upper bounds for the first k levels
//   degenerate    ground state at the fiber-degeneracy alpha
//   scale-check   dilation law for the ground level
//   domain-check  domain monotonicity of the ground level
//
// Exit codes: 0 ok, 2 invalid configuration, 3 non-convergence,
//             4 a property check failed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rqlab/config.hpp"
#include "rqlab/exponents.hpp"
#include "rqlab/grid.hpp"
#include "rqlab/properties.hpp"
#include "rqlab/solver.hpp"
#include "rqlab/sweep.hpp"
#include "rqlab/transforms.hpp"

using nlohmann::json;

namespace {

constexpr const char* kOutputDirEnv = "RQLAB_OUTPUT_DIR";

struct CliArgs {
    std::string configPath;
    std::string outputPath; // overrides [output] path
    std::string format;     // overrides [output] format
    double alpha = 0.0;
    bool alphaSet = false;
    long long seed = 0;
    bool seedSet = false;
    int k = 2;
    double bumpWidth = 0.0; // 0 = auto
    std::vector<double> tFactors{0.5, 2.0, 3.0};
    double shrink = 0.5;
};

rqlab::Config load_config(const CliArgs& args) {
    std::ifstream in(args.configPath);
    if (!in) throw rqlab::ValidationError("cannot open config file: " + args.configPath);
    std::stringstream ss;
    ss << in.rdbuf();
    rqlab::Config cfg = rqlab::parse_config(ss.str());
    if (args.alphaSet) cfg.alpha = args.alpha;
    if (args.seedSet) cfg.opts.seed = static_cast<std::uint64_t>(args.seed);
    if (!args.format.empty()) cfg.format = args.format;
    if (!args.outputPath.empty()) cfg.path = args.outputPath;
    rqlab::validate(cfg);
    return cfg;
}

// Resolve the output stream: explicit path, else $RQLAB_OUTPUT_DIR/<cmd>.<ext>,
// else stdout.
class Output {
  public:
    Output(const rqlab::Config& cfg, const std::string& command) {
        std::string path = cfg.path;
        if (path.empty()) {
            if (const char* dir = std::getenv(kOutputDirEnv)) {
                path = std::string(dir) + "/" + command + "." +
                       (cfg.format == "json" ? "json" : "csv");
            }
        }
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw rqlab::ValidationError("cannot open output path: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

json to_json(const rqlab::SweepRecord& row) {
    return json{{"alpha", row.alpha},
                {"lambda1", row.lambda1},
                {"value", row.value},
                {"kind", row.kind == rqlab::LevelKind::Mu ? "mu" : "nu"},
                {"norm_q", row.normQ},
                {"norm_r", row.normR},
                {"grad_p", row.gradP},
                {"energy", row.energy},
                {"fiber2", row.fiber2},
                {"iterations", row.iterations},
                {"residual", row.residual},
                {"converged", row.converged}};
}

json to_json(const rqlab::Report& rep) {
    return json{{"check", rep.check},
                {"passed", rep.passed},
                {"details", rep.details},
                {"worstViolation", rep.worstViolation}};
}

json to_json(const rqlab::PropertyReport& rep) {
    return json{{"name", rep.name},
                {"passed", rep.passed},
                {"samples", rep.samples},
                {"worstError", rep.worstError},
                {"context", rep.context}};
}

void write_rows(const rqlab::Config& cfg, const std::vector<rqlab::SweepRecord>& rows,
                std::ostream& os) {
    if (cfg.format == "json") {
        json out;
        out["config"] = rqlab::config_echo(cfg);
        out["rows"] = json::array();
        for (const auto& row : rows) out["rows"].push_back(to_json(row));
        os << out.dump(2) << "\n";
        return;
    }
    os << "# " << rqlab::config_echo(cfg) << "\n";
    os << rqlab::csv_header() << "\n";
    for (const auto& row : rows) os << rqlab::csv_row(row) << "\n";
}

int write_reports(const rqlab::Config& cfg, const std::vector<rqlab::Report>& reps,
                  const std::vector<rqlab::PropertyReport>& props, std::ostream& os) {
    json out;
    out["config"] = rqlab::config_echo(cfg);
    out["reports"] = json::array();
    bool allPassed = true;
    for (const auto& r : reps) {
        out["reports"].push_back(to_json(r));
        allPassed = allPassed && r.passed;
    }
    for (const auto& r : props) {
        out["reports"].push_back(to_json(r));
        allPassed = allPassed && r.passed;
    }
    os << out.dump(2) << "\n";
    return allPassed ? 0 : 4;
}

int cmd_solve(const CliArgs& args) {
    rqlab::Config cfg = load_config(args);
    const rqlab::Domain dom = rqlab::domain_from(cfg);
    rqlab::AlphaParams ap{cfg.triple, cfg.alpha};
    std::vector<rqlab::SweepRecord> rows;
    bool allConverged = true;
    if (cfg.opts.multistart > 1) {
        for (const auto& res : rqlab::multistart_spectrum(ap, dom, cfg.opts)) {
            rows.push_back(rqlab::make_sweep_record(
                rqlab::translation_record(res.point.u, ap), res));
            allConverged = allConverged && res.converged;
        }
    } else {
        const rqlab::SolveResult res = rqlab::minimize_ground_state(ap, dom, cfg.opts);
        rows.push_back(rqlab::make_sweep_record(
            rqlab::translation_record(res.point.u, ap), res));
        allConverged = res.converged;
    }
    Output out(cfg, "solve");
    write_rows(cfg, rows, out.stream());
    return allConverged ? 0 : 3;
}

int cmd_sweep(const CliArgs& args) {
    rqlab::Config cfg = load_config(args);
    rqlab::SweepConfig sc;
    sc.triple = cfg.triple;
    sc.alphaGrid = rqlab::alpha_grid_from(cfg);
    sc.warmStart = cfg.warmStart;
    sc.domain = rqlab::domain_from(cfg);
    sc.opts = cfg.opts;
    const auto rows = rqlab::sweep_alpha(sc);
    Output out(cfg, "sweep");
    write_rows(cfg, rows, out.stream());
    for (const auto& row : rows)
        if (!row.converged) return 3;
    return 0;
}

int cmd_verify(const CliArgs& args) {
    rqlab::Config cfg = load_config(args);
    const rqlab::Domain dom = rqlab::domain_from(cfg);
    std::vector<rqlab::PropertyReport> props =
        rqlab::run_identity_suite(cfg.triple, dom, cfg.opts.seed, 100);
    props.push_back(rqlab::gradient_fd_check(cfg.triple, dom, cfg.opts.seed + 1, 20));
    Output out(cfg, "verify");
    return write_reports(cfg, {}, props, out.stream());
}

int cmd_genus(const CliArgs& args) {
    rqlab::Config cfg = load_config(args);
    const rqlab::Domain dom = rqlab::domain_from(cfg);
    rqlab::AlphaParams ap{cfg.triple, cfg.alpha};
    const double lam1 = rqlab::minimize_ground_state(ap, dom, cfg.opts).point.lambda;
    const double Lx = dom.bx - dom.ax;
    json out;
    out["config"] = rqlab::config_echo(cfg);
    out["lambda1"] = lam1;
    out["bounds"] = json::array();
    bool ok = true;
    for (int k = 1; k <= args.k; ++k) {
        const double width =
            args.bumpWidth > 0.0 ? args.bumpWidth : 0.95 * Lx / k;
        const double bound = rqlab::genus_upper_bound(k, ap, dom, width, cfg.opts);
        out["bounds"].push_back(json{{"k", k}, {"bound", bound}, {"width", width}});
        ok = ok && bound >= lam1 * (1.0 - 1e-9);
    }
    Output o(cfg, "genus");
    o.stream() << out.dump(2) << "\n";
    return ok ? 0 : 4;
}

int cmd_degenerate(const CliArgs& args) {
    rqlab::Config cfg = load_config(args);
    const rqlab::Domain dom = rqlab::domain_from(cfg);
    const rqlab::TranslationRecord tr =
        rqlab::find_degenerate(cfg.triple, dom, cfg.opts);
    rqlab::SweepRecord row;
    row.alpha = tr.alpha;
    row.lambda1 = tr.lambda;
    row.value = tr.value;
    row.kind = tr.kind;
    row.normQ = tr.normQ;
    row.normR = tr.normR;
    row.gradP = tr.gradP;
    row.energy = tr.energy;
    row.fiber2 = tr.fiber2;
    row.converged = true;
    Output out(cfg, "degenerate");
    write_rows(cfg, {row}, out.stream());
    return 0;
}

int cmd_scale_check(const CliArgs& args) {
    rqlab::Config cfg = load_config(args);
    const rqlab::Domain dom = rqlab::domain_from(cfg);
    rqlab::AlphaParams ap{cfg.triple, cfg.alpha};
    const rqlab::Report rep =
        rqlab::scaling_check(ap, dom, args.tFactors, cfg.opts);
    Output out(cfg, "scale-check");
    return write_reports(cfg, {rep}, {}, out.stream());
}

int cmd_domain_check(const CliArgs& args) {
    rqlab::Config cfg = load_config(args);
    const rqlab::Domain outer = rqlab::domain_from(cfg);
    const double f = args.shrink;
    if (!(f > 0.0 && f <= 1.0))
        throw rqlab::ValidationError("--shrink must be in (0,1]");
    const double cx = 0.5 * (outer.ax + outer.bx), lx = (outer.bx - outer.ax) * f;
    rqlab::Domain inner =
        outer.kind == rqlab::DomainKind::Interval
            ? rqlab::make_interval(cx - lx / 2.0, cx + lx / 2.0, outer.cells)
            : rqlab::make_rectangle(cx - lx / 2.0, cx + lx / 2.0,
                                    0.5 * (outer.ay + outer.by) -
                                        (outer.by - outer.ay) * f / 2.0,
                                    0.5 * (outer.ay + outer.by) +
                                        (outer.by - outer.ay) * f / 2.0,
                                    outer.cells);
    rqlab::AlphaParams ap{cfg.triple, cfg.alpha};
    const rqlab::Report rep =
        rqlab::domain_monotonicity_check(ap, inner, outer, cfg.opts);
    Output out(cfg, "domain-check");
    return write_reports(cfg, {rep}, {}, out.stream());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"critical points and levels of the generalized Rayleigh quotient"};
    app.require_subcommand(1);
    CliArgs args;

    auto addCommon = [&](CLI::App* sub) {
        sub->add_option("-c,--config", args.configPath, "INI config file")->required();
        sub->add_option("-o,--output", args.outputPath, "output path (overrides config)");
        sub->add_option("-f,--format", args.format, "csv or json (overrides config)")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--alpha", args.alpha, "alpha (overrides config)")
            ->each([&](const std::string&) { args.alphaSet = true; });
        sub->add_option("--seed", args.seed, "RNG seed (overrides config)")
            ->each([&](const std::string&) { args.seedSet = true; });
    };

    CLI::App* solve = app.add_subcommand("solve", "one ground-state solve");
    addCommon(solve);
    CLI::App* sweep = app.add_subcommand("sweep", "alpha sweep");
    addCommon(sweep);
    CLI::App* verify = app.add_subcommand("verify", "identity and gradient checks");
    addCommon(verify);
    CLI::App* genus = app.add_subcommand("genus", "bump-construction level bounds");
    addCommon(genus);
    genus->add_option("--k", args.k, "largest k to bound (default 2)")
        ->check(CLI::Range(1, 3));
    genus->add_option("--bump-width", args.bumpWidth, "bump width (default auto)");
    CLI::App* degen = app.add_subcommand("degenerate", "fiber-degenerate ground state");
    addCommon(degen);
    CLI::App* scale = app.add_subcommand("scale-check", "dilation law check");
    addCommon(scale);
    scale->add_option("--t-factors", args.tFactors, "dilation factors");
    CLI::App* domc = app.add_subcommand("domain-check", "domain monotonicity check");
    addCommon(domc);
    domc->add_option("--shrink", args.shrink, "inner domain relative size (default 0.5)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(args);
        if (sweep->parsed()) return cmd_sweep(args);
        if (verify->parsed()) return cmd_verify(args);
        if (genus->parsed()) return cmd_genus(args);
        if (degen->parsed()) return cmd_degenerate(args);
        if (scale->parsed()) return cmd_scale_check(args);
        if (domc->parsed()) return cmd_domain_check(args);
    } catch (const rqlab::ParseError& e) {
        std::cerr << "config parse error: " << e.what() << "\n";
        return 2;
    } catch (const rqlab::ValidationError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const rqlab::InvalidExponents& e) {
        std::cerr << "invalid exponents: " << e.what() << "\n";
        return 2;
    } catch (const rqlab::InvalidAlpha& e) {
        std::cerr << "invalid alpha: " << e.what() << "\n";
        return 2;
    } catch (const rqlab::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const rqlab::NotConverged& e) {
        std::cerr << "solver blow-up: " << e.what() << "\n";
        return 3;
    } catch (const rqlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
