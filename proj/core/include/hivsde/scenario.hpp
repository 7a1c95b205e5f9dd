#pragma once

// Scenario files: flat `key = value` lines grouped under section headers.
//
//   label = indonesia_persistence
//   [params]
//   lambda_recruit = 3409996.9876836329
//   ...
//   [noise]
//   sigma_1 = 0.05   ... sigma_5
//   [initial]
//   S_u = ...  S_a, I, C, A
//   [step]
//   dt = 0.01
//   t_end = 100
//   seed = 1
//   scheme = pptem
//   [ensemble]          (optional section; all keys required when present)
//   n_paths = 100
//   base_seed = 7
//   burn_in = 0
//
// '#' starts a comment. Values are plain decimals or scientific notation; no arithmetic.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "hivsde/ensemble.hpp"
#include "hivsde/integrators.hpp"
#include "hivsde/model.hpp"

namespace hivsde {

struct Scenario {
    std::string label;
    ModelParams params;
    NoiseIntensities noise;
    State x0;
    StepConfig step;
    std::optional<EnsembleConfig> ensemble;  ///< its `step` mirrors the scenario step

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws ParseError for malformed lines, unknown sections or keys, duplicates and bad
/// numbers; ValidationError (naming the key) for missing keys and broken invariants.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Writes a scenario that parse_scenario() reads back value-identically.
std::string serialize_scenario(const Scenario& s);

/// Strict parse of a full token as a double (decimal or scientific notation).
std::optional<double> parse_double(std::string_view token);

}  // namespace hivsde
