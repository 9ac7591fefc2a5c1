// idemfs: compute, check and export invariant idempotent *-measures of
// iterated function systems.
//
//   idemfs check  <config>
//   idemfs solve  <config> [--tol X] [--max-iter N] [--levels M] [--prefix P]
//   idemfs oracle <config> --depth N
//   idemfs export <in> --format csv|pgm|json --out <path>
//
// Exit codes: 0 pass, 1 validation failure, 2 parse/format error,
// 3 I/O failure, 4 resource budget exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "idemfs/config.hpp"
#include "idemfs/density_io.hpp"
#include "idemfs/errors.hpp"
#include "idemfs/ifs.hpp"
#include "idemfs/kernels.hpp"
#include "idemfs/oracle.hpp"
#include "idemfs/space.hpp"

namespace {

using nlohmann::json;
using namespace idemfs;

enum Exit { ok = 0, validation = 1, parse = 2, io = 3, resource = 4 };

constexpr unsigned long long axiom_seed = 20240601;

struct Overrides {
    std::optional<double> tol;
    std::optional<std::size_t> max_iter;
    std::optional<std::size_t> levels;
    std::optional<std::string> prefix;

    void apply(RunConfig& c) const {
        if (tol) {
            if (!(*tol > 0.0)) throw ParseError("--tol must be positive");
            c.solver.tol = *tol;
        }
        if (max_iter) {
            if (*max_iter == 0) throw ParseError("--max-iter must be at least 1");
            c.solver.max_iter = *max_iter;
        }
        if (levels) {
            if (*levels == 0) throw ParseError("--levels must be at least 1");
            c.solver.level_resolution = *levels;
        }
        if (prefix) c.output.prefix = *prefix;
    }
};

json report_json(const SolveReport& r) {
    return {{"iterations", r.iterations},
            {"finalResidual", r.final_residual},
            {"aprioriBound", r.apriori_bound},
            {"stoppedBy", to_string(r.stopped_by)},
            {"wallTime", r.wall_seconds},
            {"contraction", r.contraction},
            {"diameter", r.diameter},
            {"spacing", r.spacing},
            {"levelResolution", r.level_resolution},
            {"snapSlack", r.snap_slack},
            {"rngSeed", nullptr}};
}

int cmd_check(const std::string& path, const Overrides& ov) {
    RunConfig cfg = load_config(path);
    ov.apply(cfg);
    IFSSystem sys = build_system(cfg);
    build_seed(cfg, sys);
    AxiomReport axioms = check_axioms(cfg.tnorm, 1000, axiom_seed);
    if (axioms.failures > 0) {
        throw ValidationError(ValidationError::Kind::tnorm_axiom,
                              "t-norm axiom error: " + axioms.first_failure);
    }
    validate_metric(sys.space(), axiom_seed);
    json out = {{"status", "pass"},
                {"points", sys.space().size()},
                {"diameter", sys.space().diameter()},
                {"spacing", sys.space().spacing()},
                {"maps", sys.maps().size()},
                {"contraction", sys.contraction()},
                {"tnorm", cfg.tnorm.name()},
                {"axiomTriples", axioms.triples},
                {"axiomSeed", axiom_seed},
                {"kernels", kernels::active().name}};
    std::cout << out.dump(2) << '\n';
    return ok;
}

int cmd_solve(const std::string& path, const Overrides& ov) {
    RunConfig cfg = load_config(path);
    ov.apply(cfg);
    IFSSystem sys = build_system(cfg);
    StarMeasure seed = build_seed(cfg, sys);
    SolveOptions opts{cfg.solver.tol, cfg.solver.max_iter, cfg.solver.level_resolution};
    SolveResult result = solve(sys, seed, opts);

    const DensityTable table = to_table(result.measure.density());
    const std::string prefix = cfg.output.prefix;
    auto wants = [&](const char* f) {
        return std::find(cfg.output.formats.begin(), cfg.output.formats.end(), f) !=
               cfg.output.formats.end();
    };
    if (auto parent = std::filesystem::path(prefix).parent_path(); !parent.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(parent, ec);
    }
    // The CSV is always written; PGM by request or for 2-D grids.
    write_density(prefix + ".csv", table, DensityFormat::csv);
    if (wants("pgm") || sys.space().dimension() == 2) {
        write_density(prefix + ".pgm", table, DensityFormat::pgm);
    }
    if (wants("json")) write_density(prefix + ".json", table, DensityFormat::json);

    json rep = report_json(result.report);
    rep["seed"] = cfg.solver.seed;
    rep["tol"] = cfg.solver.tol;
    std::ofstream rf(prefix + ".report.json");
    if (!(rf << rep.dump(2) << '\n')) throw IoError("cannot write " + prefix + ".report.json");
    std::cout << rep.dump(2) << '\n';
    return ok;
}

int cmd_oracle(const std::string& path, std::size_t depth, const Overrides& ov) {
    RunConfig cfg = load_config(path);
    ov.apply(cfg);
    oracle::word_count(cfg.maps.size(), depth);  // budget first, before any work
    IFSSystem sys = build_system(cfg);
    StarMeasure seed = build_seed(cfg, sys);

    StarMeasure expanded = oracle::word_expansion(sys, seed, depth);
    StarMeasure iterated = seed;
    for (std::size_t i = 0; i < depth; ++i) iterated = psi(sys, iterated);

    double discrepancy = 0.0;
    for (std::size_t i = 0; i < sys.space().size(); ++i) {
        discrepancy = std::max(discrepancy, std::abs(expanded[i] - iterated[i]));
    }
    const double c = sys.contraction();
    const double h = sys.space().spacing();
    const double tolerance =
        h * (1.0 - std::pow(c, static_cast<double>(depth))) / (2.0 * (1.0 - c));
    const bool pass = discrepancy <= tolerance;
    json out = {{"depth", depth},
                {"words", oracle::word_count(cfg.maps.size(), depth)},
                {"maxDiscrepancy", discrepancy},
                {"tolerance", tolerance},
                {"pass", pass},
                {"hypographDistance",
                 hypograph_distance(expanded.density(), iterated.density(),
                                    LevelGrid(cfg.solver.level_resolution))}};
    std::cout << out.dump(2) << '\n';
    return pass ? ok : validation;
}

int cmd_export(const std::string& in, const std::string& format, const std::string& out,
               const std::optional<std::string>& from) {
    DensityFormat target = parse_format(format);
    DensityFormat source = from ? parse_format(*from) : format_from_path(in);
    DensityTable t = read_density(in, source);
    write_density(out, t, target);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariant idempotent *-measures of iterated function systems"};
    app.require_subcommand(1);

    Overrides ov;
    std::string config_path;
    auto add_overrides = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "Run configuration (JSON)")->required();
        sub->add_option("--tol", ov.tol, "Stopping tolerance");
        sub->add_option("--max-iter", ov.max_iter, "Iteration cap");
        sub->add_option("--levels", ov.levels, "Level-grid resolution m");
    };

    auto* check = app.add_subcommand("check", "Validate a configuration");
    add_overrides(check);
    auto* solve_cmd = app.add_subcommand("solve", "Compute the invariant measure");
    add_overrides(solve_cmd);
    solve_cmd->add_option("--prefix", ov.prefix, "Output path prefix");
    auto* oracle_cmd = app.add_subcommand("oracle", "Cross-check psi against word expansion");
    add_overrides(oracle_cmd);
    std::size_t depth = 0;
    oracle_cmd->add_option("--depth", depth, "Word length")->required();

    auto* export_cmd = app.add_subcommand("export", "Convert a density file");
    std::string in_path, format, out_path;
    std::optional<std::string> from;
    export_cmd->add_option("in", in_path, "Input density file")->required();
    export_cmd->add_option("--format", format, "csv|pgm|json")->required();
    export_cmd->add_option("--out", out_path, "Output path")->required();
    export_cmd->add_option("--from", from, "Input format (default: by extension)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return parse;
    }

    try {
        if (*check) return cmd_check(config_path, ov);
        if (*solve_cmd) return cmd_solve(config_path, ov);
        if (*oracle_cmd) return cmd_oracle(config_path, depth, ov);
        if (*export_cmd) return cmd_export(in_path, format, out_path, from);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return parse;
    } catch (const ValidationError& e) {
        std::cerr << e.what() << '\n';
        return validation;
    } catch (const DomainError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return validation;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return io;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return resource;
    }
    return parse;
}
