#pragma once

#include "ridgecov/coverage.hpp"
#include "ridgecov/point_cloud.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ridgecov {

enum class SyntheticKind { Spiral, ThreeSpirals, Helix, NoisyCircle };

std::string to_string(SyntheticKind kind);
/// Throws InputError naming the valid kinds.
SyntheticKind parse_synthetic_kind(const std::string& text);

/// Generator parameters. Unset optionals take kind-specific defaults:
///   spiral, three_spirals: (a t cos t, a t sin t), t in [pi/2, 4pi], pitch a = 1
///   helix:                 (r cos t, r sin t, c t), t in [0, 6pi], radius r = 1, pitch c = 0.15
///   noisy_circle:          radius 2
/// noise_sigma defaults to 5% of the widest bounding-box side of the curve.
struct SyntheticSpec {
    SyntheticKind kind = SyntheticKind::NoisyCircle;
    std::size_t n = 1000;
    std::optional<double> noise_sigma;
    std::optional<double> radius;
    std::optional<double> pitch;
    std::uint64_t seed = 0;
};

struct SyntheticData {
    PointCloud sample;
    /// Noise-free curve mesh, uniformly spaced in arc length.
    Manifold truth;
    double noise_sigma = 0.0;
};

/// Mesh points per generated curve.
inline constexpr std::size_t kTruthMeshPerCurve = 1000;

SyntheticData generate(const SyntheticSpec& spec);

struct CsvPoints {
    PointCloud cloud;
    std::vector<std::string> header;  // names of the selected columns; empty when the file had none
    std::size_t rejected_rows = 0;
};

/// Reads numeric columns from a comma-separated file. A first row with any
/// non-numeric field is taken as the header. Rows with missing, malformed or
/// non-finite values are skipped and counted.
CsvPoints load_csv(const std::filesystem::path& path, const std::vector<std::string>& columns = {});
CsvPoints parse_csv(std::istream& in, const std::vector<std::string>& columns = {});

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// Header x1..xd (or the given names) followed by one row per point.
void write_csv(std::ostream& out, const PointCloud& cloud, const std::vector<std::string>& header = {});
void write_csv(const std::filesystem::path& path, const PointCloud& cloud, const std::vector<std::string>& header = {});

std::vector<std::string> coordinate_names(std::size_t d);

}  // namespace ridgecov
