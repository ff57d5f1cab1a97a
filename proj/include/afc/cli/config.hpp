#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "afc/analysis/scenario.hpp"
#include "afc/analysis/sweep.hpp"

namespace afc::cli {

/// Where a value came from, for error messages ("file:line:col").
struct Location {
    std::string file;
    int line = 0;
    int column = 0;

    std::string str() const;
};

/// One documented config key. `section` is the YAML mapping it lives in.
struct KeySpec {
    std::string section;
    std::string key;
    std::string type;
    std::string doc;
    std::function<void(analysis::SweepSpec&, const YAML::Node&, const Location&)> apply;
    std::function<std::string(const analysis::SweepSpec&)> show;  ///< current value as YAML text

    std::string path() const { return section + "." + key; }
};

/// Every accepted key, in documentation order. Keys in section "sweep" are
/// accepted only in sweep files.
const std::vector<KeySpec>& schema();

/// Plain-text key reference used by --help.
std::string schema_help(bool include_sweep);

/// Loads a scenario file. A top-level `extends: <file>` is applied first,
/// resolved relative to the including file. Unknown sections or keys, bad
/// types and invalid values throw ConfigError with a location. Strength
/// rows off by more than 5% are normalized and reported in `warnings`.
analysis::ScenarioConfig load_scenario(const std::filesystem::path& path,
                                       std::vector<std::string>* warnings = nullptr);

/// Loads a sweep file: scenario sections plus a `sweep` section.
analysis::SweepSpec load_sweep(const std::filesystem::path& path,
                               std::vector<std::string>* warnings = nullptr);

/// Same as the file loaders but from text; `name` labels error locations.
analysis::SweepSpec parse_config_text(const std::string& text, const std::string& name,
                                      bool allow_sweep, std::vector<std::string>* warnings = nullptr);

/// Resolved config as YAML text, one line per schema key.
std::string dump_config(const analysis::SweepSpec& spec, bool include_sweep);

}  // namespace afc::cli
