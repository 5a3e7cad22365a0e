#pragma once

#include "ridgecov/datasets.hpp"
#include "ridgecov/risk.hpp"
#include "ridgecov/scms.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ridgecov::cli {

inline constexpr const char* kVersion = "0.1.0";

struct GenOptions {
    SyntheticSpec spec;
    std::filesystem::path output_dir = ".";
};

struct RidgeOptions {
    std::filesystem::path input;
    std::vector<std::string> columns;
    double h = 0.0;
    ScmsConfig scms;
    std::filesystem::path output_dir = ".";
};

struct SelectOptions {
    std::filesystem::path input;
    std::vector<std::string> columns;
    /// Unset: 12 geometric points in [h_bar / 20, h_bar].
    std::optional<GridSpec> grid;
    SelectionOptions selection;
    ScmsConfig scms;
    std::uint64_t seed = 0;
    bool emit_ridge = false;
    std::filesystem::path output_dir = ".";
};

/// Linear radius grid for coverage diagrams; max unset means the Hausdorff distance.
struct RadiiSpec {
    double min = 0.0;
    std::optional<double> max;
    std::size_t count = 101;

    /// "count", "max:count" or "min:max:count".
    static RadiiSpec parse(const std::string& text);
};

struct CompareOptions {
    std::filesystem::path first;
    std::filesystem::path second;
    std::vector<std::string> columns;
    RadiiSpec radii;
    std::filesystem::path output_dir = ".";
};

// Each command writes its files into output_dir (created if missing) and
// reports diagnostics on `log`. Errors surface as exceptions.
void cmd_gen(const GenOptions& opts, std::ostream& log);
void cmd_ridge(const RidgeOptions& opts, std::ostream& log);
void cmd_select(const SelectOptions& opts, std::ostream& log);
void cmd_compare(const CompareOptions& opts, std::ostream& log);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& log);

}  // namespace ridgecov::cli
