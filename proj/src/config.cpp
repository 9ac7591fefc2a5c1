#include "idemfs/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "idemfs/errors.hpp"

namespace idemfs {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
    throw ParseError("field '" + field + "': " + msg);
}

void only_keys(const json& obj, const std::string& field, std::set<std::string> allowed) {
    if (!obj.is_object()) fail(field, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            fail(field.empty() ? it.key() : field + "." + it.key(), "unknown field");
        }
    }
}

const json& required(const json& obj, const std::string& parent, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(parent.empty() ? key : parent + "." + key, "missing");
    return *it;
}

double number(const json& v, const std::string& field) {
    if (!v.is_number()) fail(field, "expected a number");
    return v.get<double>();
}

std::size_t count(const json& v, const std::string& field) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        fail(field, "expected a nonnegative integer");
    }
    return v.get<std::size_t>();
}

std::vector<double> numbers(const json& v, const std::string& field) {
    if (!v.is_array()) fail(field, "expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(number(v[i], field + "[" + std::to_string(i) + "]"));
    }
    return out;
}

SpaceConfig parse_space(const json& j) {
    only_keys(j, "space", {"kind", "counts", "bounds"});
    SpaceConfig s;
    const json& kind = required(j, "space", "kind");
    if (!kind.is_string()) fail("space.kind", "expected a string");
    s.kind = kind.get<std::string>();
    const std::size_t dims = s.kind == "grid1d" ? 1 : s.kind == "grid2d" ? 2 : 0;
    if (dims == 0) fail("space.kind", "expected \"grid1d\" or \"grid2d\"");

    const json& counts = required(j, "space", "counts");
    if (!counts.is_array() || counts.size() != dims) {
        fail("space.counts", "expected " + std::to_string(dims) + " point counts");
    }
    for (std::size_t i = 0; i < dims; ++i) {
        std::string f = "space.counts[" + std::to_string(i) + "]";
        std::size_t c = count(counts[i], f);
        if (c < 2) fail(f, "need at least 2 points per axis");
        s.counts.push_back(c);
    }
    const json& bounds = required(j, "space", "bounds");
    if (!bounds.is_array() || bounds.size() != dims) {
        fail("space.bounds", "expected " + std::to_string(dims) + " [lo, hi] pairs");
    }
    for (std::size_t i = 0; i < dims; ++i) {
        std::string f = "space.bounds[" + std::to_string(i) + "]";
        auto b = numbers(bounds[i], f);
        if (b.size() != 2 || !(b[0] < b[1])) fail(f, "expected [lo, hi] with lo < hi");
        s.bounds.push_back({b[0], b[1]});
    }
    return s;
}

TNorm parse_tnorm(const json& j) {
    try {
        if (j.is_string()) return TNorm::parse(j.get<std::string>());
        only_keys(j, "tnorm", {"family", "parameter"});
        const json& fam = required(j, "tnorm", "family");
        if (!fam.is_string()) fail("tnorm.family", "expected a string");
        std::string name = fam.get<std::string>();
        if (name == "hamacher") {
            return TNorm::hamacher(number(required(j, "tnorm", "parameter"), "tnorm.parameter"));
        }
        if (j.contains("parameter")) number(j["parameter"], "tnorm.parameter");
        return TNorm::parse(name);
    } catch (const DomainError& e) {
        fail("tnorm", e.what());
    }
}

MapSpec parse_map(const json& j, std::size_t dims, const std::string& field) {
    only_keys(j, field, {"affine", "tabulated"});
    if (j.size() != 1) fail(field, "expected exactly one of \"affine\" or \"tabulated\"");
    if (j.contains("affine")) {
        const std::string f = field + ".affine";
        const json& a = j["affine"];
        only_keys(a, f, {"matrix", "translation"});
        const json& m = required(a, f, "matrix");
        if (!m.is_array() || m.size() != dims) {
            fail(f + ".matrix", "expected " + std::to_string(dims) + " rows");
        }
        AffineSpec spec;
        for (std::size_t r = 0; r < dims; ++r) {
            auto row = numbers(m[r], f + ".matrix[" + std::to_string(r) + "]");
            if (row.size() != dims) {
                fail(f + ".matrix[" + std::to_string(r) + "]",
                     "expected " + std::to_string(dims) + " entries");
            }
            spec.matrix.insert(spec.matrix.end(), row.begin(), row.end());
        }
        spec.translation = numbers(required(a, f, "translation"), f + ".translation");
        if (spec.translation.size() != dims) {
            fail(f + ".translation", "expected " + std::to_string(dims) + " entries");
        }
        return spec;
    }
    const std::string f = field + ".tabulated";
    const json& t = j["tabulated"];
    only_keys(t, f, {"pairs"});
    const json& pairs = required(t, f, "pairs");
    if (!pairs.is_array()) fail(f + ".pairs", "expected an array");
    TabulatedSpec spec;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::string pf = f + ".pairs[" + std::to_string(i) + "]";
        if (!pairs[i].is_array() || pairs[i].size() != 2) fail(pf, "expected [from, to]");
        spec.pairs.emplace_back(count(pairs[i][0], pf + "[0]"), count(pairs[i][1], pf + "[1]"));
    }
    return spec;
}

SolverConfig parse_solver(const json& j) {
    only_keys(j, "solver", {"tol", "maxIter", "levelResolution", "seed"});
    SolverConfig s;
    if (j.contains("tol")) {
        s.tol = number(j["tol"], "solver.tol");
        if (!(s.tol > 0.0)) fail("solver.tol", "must be positive");
    }
    if (j.contains("maxIter")) {
        s.max_iter = count(j["maxIter"], "solver.maxIter");
        if (s.max_iter == 0) fail("solver.maxIter", "must be at least 1");
    }
    if (j.contains("levelResolution")) {
        s.level_resolution = count(j["levelResolution"], "solver.levelResolution");
        if (s.level_resolution == 0) fail("solver.levelResolution", "must be at least 1");
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_string()) fail("solver.seed", "expected a string");
        s.seed = j["seed"].get<std::string>();
        if (s.seed != "full") {
            if (!s.seed.starts_with("dirac:") || s.seed.size() == 6 ||
                s.seed.find_first_not_of("0123456789", 6) != std::string::npos) {
                fail("solver.seed", "expected \"full\" or \"dirac:<pointIndex>\"");
            }
        }
    }
    return s;
}

OutputConfig parse_output(const json& j) {
    only_keys(j, "output", {"formats", "prefix"});
    OutputConfig o;
    if (j.contains("formats")) {
        const json& f = j["formats"];
        if (!f.is_array()) fail("output.formats", "expected an array");
        o.formats.clear();
        for (std::size_t i = 0; i < f.size(); ++i) {
            std::string ff = "output.formats[" + std::to_string(i) + "]";
            if (!f[i].is_string()) fail(ff, "expected a string");
            std::string name = f[i].get<std::string>();
            if (name != "csv" && name != "pgm" && name != "json") {
                fail(ff, "expected one of csv, pgm, json");
            }
            o.formats.push_back(name);
        }
    }
    if (j.contains("prefix")) {
        if (!j["prefix"].is_string()) fail("output.prefix", "expected a string");
        o.prefix = j["prefix"].get<std::string>();
    }
    return o;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // e.byte is a 1-based offset; turn it into a line number.
        std::size_t line = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw ParseError("line " + std::to_string(line) + ": " + e.what());
    }
    only_keys(root, "", {"space", "tnorm", "maps", "weights", "solver", "output"});

    RunConfig cfg;
    cfg.space = parse_space(required(root, "", "space"));
    cfg.tnorm = parse_tnorm(required(root, "", "tnorm"));
    const json& maps = required(root, "", "maps");
    if (!maps.is_array() || maps.empty()) fail("maps", "expected a nonempty array");
    for (std::size_t i = 0; i < maps.size(); ++i) {
        cfg.maps.push_back(
            parse_map(maps[i], cfg.space.counts.size(), "maps[" + std::to_string(i) + "]"));
    }
    cfg.weights = numbers(required(root, "", "weights"), "weights");
    if (cfg.weights.size() != cfg.maps.size()) {
        fail("weights", "expected " + std::to_string(cfg.maps.size()) + " entries, one per map");
    }
    if (root.contains("solver")) cfg.solver = parse_solver(root["solver"]);
    if (root.contains("output")) cfg.output = parse_output(root["output"]);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

json to_json(const RunConfig& c) {
    json j;
    j["space"] = {{"kind", c.space.kind}, {"counts", c.space.counts}, {"bounds", c.space.bounds}};
    if (c.tnorm.family == TNorm::Family::hamacher) {
        j["tnorm"] = {{"family", "hamacher"}, {"parameter", c.tnorm.parameter}};
    } else {
        j["tnorm"] = {{"family", c.tnorm.name()}};
    }
    const std::size_t d = c.space.counts.size();
    j["maps"] = json::array();
    for (const auto& m : c.maps) {
        if (const auto* a = std::get_if<AffineSpec>(&m)) {
            json rows = json::array();
            for (std::size_t r = 0; r < d; ++r) {
                rows.push_back(std::vector<double>(a->matrix.begin() + r * d,
                                                   a->matrix.begin() + (r + 1) * d));
            }
            j["maps"].push_back({{"affine", {{"matrix", rows}, {"translation", a->translation}}}});
        } else {
            json pairs = json::array();
            for (auto [from, to] : std::get<TabulatedSpec>(m).pairs) pairs.push_back({from, to});
            j["maps"].push_back({{"tabulated", {{"pairs", pairs}}}});
        }
    }
    j["weights"] = c.weights;
    j["solver"] = {{"tol", c.solver.tol},
                   {"maxIter", c.solver.max_iter},
                   {"levelResolution", c.solver.level_resolution},
                   {"seed", c.solver.seed}};
    j["output"] = {{"formats", c.output.formats}, {"prefix", c.output.prefix}};
    return j;
}

SpacePtr build_space(const SpaceConfig& s) {
    if (s.kind == "grid1d") return grid_1d(s.counts.at(0), s.bounds.at(0)[0], s.bounds.at(0)[1]);
    return grid_2d(s.counts.at(0), s.counts.at(1),
                   {s.bounds.at(0)[0], s.bounds.at(0)[1], s.bounds.at(1)[0], s.bounds.at(1)[1]});
}

IFSSystem build_system(const RunConfig& c) {
    return IFSSystem::validate(build_space(c.space), c.maps, c.weights, c.tnorm);
}

StarMeasure build_seed(const RunConfig& c, const IFSSystem& system) {
    if (c.solver.seed == "full") return StarMeasure::full(system.space_ptr(), system.tnorm());
    std::size_t point = std::stoull(c.solver.seed.substr(6));
    if (point >= system.space().size()) {
        throw ParseError("field 'solver.seed': point " + std::to_string(point) + " out of range");
    }
    return StarMeasure::dirac(system.space_ptr(), system.tnorm(), point);
}

}  // namespace idemfs
