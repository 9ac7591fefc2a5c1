#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "idemfs/ifs.hpp"
#include "idemfs/tnorm.hpp"

namespace idemfs {

struct SpaceConfig {
    std::string kind = "grid1d";  // grid1d | grid2d
    std::vector<std::size_t> counts;
    std::vector<std::array<double, 2>> bounds;
    bool operator==(const SpaceConfig&) const = default;
};

struct SolverConfig {
    double tol = 1e-6;
    std::size_t max_iter = 10000;
    std::size_t level_resolution = 256;
    std::string seed = "full";  // full | dirac:<pointIndex>
    bool operator==(const SolverConfig&) const = default;
};

struct OutputConfig {
    std::vector<std::string> formats{"csv", "json"};
    std::string prefix = "idemfs_out";
    bool operator==(const OutputConfig&) const = default;
};

/// Everything a batch run needs, as read from one JSON document.
struct RunConfig {
    SpaceConfig space;
    TNorm tnorm;
    std::vector<MapSpec> maps;
    std::vector<double> weights;
    SolverConfig solver;
    OutputConfig output;
    bool operator==(const RunConfig&) const = default;
};

/// Throws ParseError naming the offending line or field.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& config);

SpacePtr build_space(const SpaceConfig& config);
/// Throws ValidationError when the system is not admissible.
IFSSystem build_system(const RunConfig& config);
StarMeasure build_seed(const RunConfig& config, const IFSSystem& system);

}  // namespace idemfs
