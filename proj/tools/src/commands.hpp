#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hivsde/scenario.hpp"

namespace hivsde::cli {

struct CommonOptions {
    std::filesystem::path scenario;
    std::filesystem::path out = "out";
    std::optional<std::uint64_t> seed;
    std::size_t workers = 0;
    // Overrides applied on top of the scenario file.
    std::optional<std::string> scheme;
    std::optional<double> dt;
    std::optional<double> t_end;
    std::optional<double> sigma;
    std::optional<std::size_t> paths;
    std::optional<double> burn_in;
};

/// Loads the scenario and applies every override. Throws on invalid results.
Scenario load(const CommonOptions& opts);

int cmd_report(const CommonOptions& opts);
int cmd_simulate(const CommonOptions& opts);
int cmd_ensemble(const CommonOptions& opts, std::size_t thin);
int cmd_histogram(const CommonOptions& opts, std::size_t bins);
int cmd_sweep(const CommonOptions& opts, const std::string& param, const std::vector<double>& values, std::size_t thin);

struct FitOptions {
    std::filesystem::path data;
    std::vector<std::string> free;  ///< name:lower:upper
    std::string target = "I+C+A";
    std::size_t max_iterations = 500;
};
int cmd_fit(const CommonOptions& opts, const FitOptions& fit);

}  // namespace hivsde::cli
