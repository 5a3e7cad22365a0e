#include "ridgecov/datasets.hpp"

#include "ridgecov/errors.hpp"
#include "ridgecov/random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

namespace ridgecov {

namespace {

constexpr double kPi = std::numbers::pi;

using Curve = std::function<Vector(double)>;

struct CurvePiece {
    Curve at;
    double t0, t1;
};

// Inverts the arc-length map of a curve through a dense piecewise-linear table.
class ArcLength {
public:
    explicit ArcLength(const CurvePiece& c, std::size_t samples = 20000) : piece_(c) {
        t_.resize(samples + 1);
        s_.resize(samples + 1);
        Vector prev = c.at(c.t0);
        s_[0] = 0.0;
        t_[0] = c.t0;
        for (std::size_t i = 1; i <= samples; ++i) {
            t_[i] = c.t0 + (c.t1 - c.t0) * static_cast<double>(i) / static_cast<double>(samples);
            Vector cur = c.at(t_[i]);
            s_[i] = s_[i - 1] + (cur - prev).norm();
            prev = std::move(cur);
        }
    }

    double length() const { return s_.back(); }

    /// Point at arc length s in [0, length].
    Vector at(double s) const {
        const auto it = std::lower_bound(s_.begin(), s_.end(), s);
        if (it == s_.begin()) return piece_.at(t_.front());
        if (it == s_.end()) return piece_.at(t_.back());
        const std::size_t j = static_cast<std::size_t>(it - s_.begin());
        const double span = s_[j] - s_[j - 1];
        const double frac = span > 0.0 ? (s - s_[j - 1]) / span : 0.0;
        return piece_.at(t_[j - 1] + frac * (t_[j] - t_[j - 1]));
    }

private:
    CurvePiece piece_;
    std::vector<double> t_, s_;
};

Vector rotate2(const Vector& p, double angle) {
    Vector r(2);
    r << std::cos(angle) * p[0] - std::sin(angle) * p[1], std::sin(angle) * p[0] + std::cos(angle) * p[1];
    return r;
}

std::vector<CurvePiece> curves_for(const SyntheticSpec& spec) {
    switch (spec.kind) {
        case SyntheticKind::Spiral:
        case SyntheticKind::ThreeSpirals: {
            const double a = spec.pitch.value_or(1.0);
            if (!(a > 0.0)) throw InputError("spiral pitch must be positive");
            const int arms = spec.kind == SyntheticKind::Spiral ? 1 : 3;
            std::vector<CurvePiece> out;
            for (int arm = 0; arm < arms; ++arm) {
                const double angle = 2.0 * kPi * arm / 3.0;
                out.push_back({[a, angle](double t) {
                                   Vector p(2);
                                   p << a * t * std::cos(t), a * t * std::sin(t);
                                   return rotate2(p, angle);
                               },
                               kPi / 2.0, 4.0 * kPi});
            }
            return out;
        }
        case SyntheticKind::Helix: {
            const double r = spec.radius.value_or(1.0);
            const double c = spec.pitch.value_or(0.15);
            if (!(r > 0.0)) throw InputError("helix radius must be positive");
            return {{[r, c](double t) {
                         Vector p(3);
                         p << r * std::cos(t), r * std::sin(t), c * t;
                         return p;
                     },
                     0.0, 6.0 * kPi}};
        }
        case SyntheticKind::NoisyCircle: {
            const double r = spec.radius.value_or(2.0);
            if (!(r > 0.0)) throw InputError("circle radius must be positive");
            return {{[r](double t) {
                         Vector p(2);
                         p << r * std::cos(t), r * std::sin(t);
                         return p;
                     },
                     0.0, 2.0 * kPi}};
        }
    }
    throw InputError("unknown synthetic kind");
}

}  // namespace

std::string to_string(SyntheticKind kind) {
    switch (kind) {
        case SyntheticKind::Spiral: return "spiral";
        case SyntheticKind::ThreeSpirals: return "three_spirals";
        case SyntheticKind::Helix: return "helix";
        case SyntheticKind::NoisyCircle: return "noisy_circle";
    }
    return "?";
}

SyntheticKind parse_synthetic_kind(const std::string& text) {
    for (auto kind : {SyntheticKind::Spiral, SyntheticKind::ThreeSpirals, SyntheticKind::Helix,
                      SyntheticKind::NoisyCircle})
        if (text == to_string(kind)) return kind;
    throw InputError("unknown dataset kind '" + text + "'; valid kinds: spiral, three_spirals, helix, noisy_circle");
}

SyntheticData generate(const SyntheticSpec& spec) {
    if (spec.n < 1) throw InputError("synthetic sample size must be at least 1");
    if (spec.noise_sigma && (!(*spec.noise_sigma >= 0.0) || !std::isfinite(*spec.noise_sigma)))
        throw InputError("noise sigma must be finite and nonnegative");

    const auto pieces = curves_for(spec);
    std::vector<ArcLength> arcs;
    for (const auto& p : pieces) arcs.emplace_back(p);
    const std::size_t d = static_cast<std::size_t>(pieces.front().at(pieces.front().t0).size());

    Matrix mesh(static_cast<Eigen::Index>(arcs.size() * kTruthMeshPerCurve), static_cast<Eigen::Index>(d));
    for (std::size_t c = 0; c < arcs.size(); ++c) {
        for (std::size_t i = 0; i < kTruthMeshPerCurve; ++i) {
            const double s = arcs[c].length() * static_cast<double>(i) / static_cast<double>(kTruthMeshPerCurve - 1);
            mesh.row(static_cast<Eigen::Index>(c * kTruthMeshPerCurve + i)) = arcs[c].at(s).transpose();
        }
    }

    const double extent = (mesh.colwise().maxCoeff() - mesh.colwise().minCoeff()).maxCoeff();
    const double sigma = spec.noise_sigma.value_or(0.05 * extent);

    Rng rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, 1.0);
    Matrix sample(static_cast<Eigen::Index>(spec.n), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < spec.n; ++i) {
        const auto& arc = arcs[i % arcs.size()];
        Vector p = arc.at(unit(rng) * arc.length());
        for (std::size_t k = 0; k < d; ++k) p[k] += sigma * noise(rng);
        sample.row(static_cast<Eigen::Index>(i)) = p.transpose();
    }
    return {PointCloud(std::move(sample)), Manifold(PointCloud(std::move(mesh)), 1), sigma};
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

CsvPoints parse_csv(std::istream& in, const std::vector<std::string>& columns) {
    std::vector<std::vector<std::string>> rows;
    for (std::string line; std::getline(in, line);) {
        if (trim(line).empty()) continue;
        rows.push_back(split_fields(line));
    }
    if (rows.empty()) throw InputError("CSV input has no rows");

    std::vector<std::string> header;
    double scratch = 0.0;
    const bool has_header = std::any_of(rows.front().begin(), rows.front().end(),
                                        [&](const std::string& f) { return !parse_double(f, scratch); });
    if (has_header) {
        header = rows.front();
        rows.erase(rows.begin());
    }
    const std::size_t width = has_header ? header.size() : (rows.empty() ? 0 : rows.front().size());

    std::vector<std::size_t> picked;
    if (columns.empty()) {
        for (std::size_t k = 0; k < width; ++k) picked.push_back(k);
    } else {
        if (!has_header) throw InputError("columns were named but the CSV input has no header row");
        for (const auto& name : columns) {
            const auto it = std::find(header.begin(), header.end(), name);
            if (it == header.end()) throw InputError("column '" + name + "' not found in CSV header");
            picked.push_back(static_cast<std::size_t>(it - header.begin()));
        }
    }

    std::vector<double> values;
    std::size_t good = 0, rejected = 0;
    std::vector<double> row_values(picked.size());
    for (const auto& row : rows) {
        bool ok = row.size() == width;
        for (std::size_t j = 0; ok && j < picked.size(); ++j)
            ok = parse_double(row[picked[j]], row_values[j]) && std::isfinite(row_values[j]);
        if (!ok) {
            ++rejected;
            continue;
        }
        values.insert(values.end(), row_values.begin(), row_values.end());
        ++good;
    }
    if (good == 0 || picked.empty()) throw InputError("CSV input has no valid numeric rows");

    Matrix m(static_cast<Eigen::Index>(good), static_cast<Eigen::Index>(picked.size()));
    std::copy(values.begin(), values.end(), m.data());
    std::vector<std::string> names;
    if (has_header)
        for (auto k : picked) names.push_back(header[k]);
    return {PointCloud(std::move(m)), std::move(names), rejected};
}

CsvPoints load_csv(const std::filesystem::path& path, const std::vector<std::string>& columns) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open CSV file " + path.string());
    return parse_csv(in, columns);
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::vector<std::string> coordinate_names(std::size_t d) {
    std::vector<std::string> names;
    for (std::size_t k = 1; k <= d; ++k) names.push_back("x" + std::to_string(k));
    return names;
}

void write_csv(std::ostream& out, const PointCloud& cloud, const std::vector<std::string>& header) {
    const auto names = header.empty() ? coordinate_names(cloud.dim()) : header;
    if (names.size() != cloud.dim()) throw ContractError("CSV header width does not match the point dimension");
    for (std::size_t k = 0; k < names.size(); ++k) out << (k ? "," : "") << names[k];
    out << '\n';
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto r = cloud.row(i);
        for (std::size_t k = 0; k < r.size(); ++k) out << (k ? "," : "") << format_double(r[k]);
        out << '\n';
    }
}

void write_csv(const std::filesystem::path& path, const PointCloud& cloud, const std::vector<std::string>& header) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    write_csv(out, cloud, header);
    if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace ridgecov
