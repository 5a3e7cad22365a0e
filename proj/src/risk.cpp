#include "ridgecov/risk.hpp"

#include "ridgecov/errors.hpp"
#include "ridgecov/kde.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace ridgecov {

std::string to_string(RiskMethod method) { return method == RiskMethod::Split ? "split" : "bootstrap"; }
std::string to_string(Objective objective) { return objective == Objective::L1 ? "l1" : "l2"; }

RiskMethod parse_risk_method(const std::string& text) {
    if (text == "split") return RiskMethod::Split;
    if (text == "bootstrap") return RiskMethod::Bootstrap;
    throw InputError("method must be 'split' or 'bootstrap', got '" + text + "'");
}

Objective parse_objective(const std::string& text) {
    if (text == "l1" || text == "L1") return Objective::L1;
    if (text == "l2" || text == "L2") return Objective::L2;
    throw InputError("objective must be 'l1' or 'l2', got '" + text + "'");
}

bool RiskEstimate::failed() const { return std::isinf(risk1) || std::isinf(risk2); }

RiskEstimate failed_estimate(RiskMethod method, std::size_t replicates, double h) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {inf, inf, method, replicates, h};
}

LossPair oracle_loss(const RidgeSet& ridge, const Manifold& truth) {
    if (ridge.empty()) {
        constexpr double inf = std::numeric_limits<double>::infinity();
        return {inf, inf};
    }
    return loss_pair(Manifold(ridge), truth);
}

RiskEstimate risk_from_halves(const PointCloud& first, const PointCloud& second, double h, const ScmsConfig& cfg) {
    const RidgeSet r1 = extract_ridge(first, h, cfg);
    const RidgeSet r2 = extract_ridge(second, h, cfg);
    if (r1.empty() || r2.empty()) return failed_estimate(RiskMethod::Split, 1, h);
    const LossPair loss = loss_pair(Manifold(r1), Manifold(r2));
    return {loss.loss1, loss.loss2, RiskMethod::Split, 1, h};
}

RiskEstimate risk_split(const PointCloud& data, double h, const ScmsConfig& cfg, Rng& rng) {
    const std::size_t n = data.size();
    if (n < 4) throw InputError("data splitting needs at least 4 points");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);

    const std::size_t first_size = (n + 1) / 2;
    Matrix first(static_cast<Eigen::Index>(first_size), data.dim());
    Matrix second(static_cast<Eigen::Index>(n - first_size), data.dim());
    for (std::size_t i = 0; i < n; ++i) {
        const auto src = data.points().row(static_cast<Eigen::Index>(order[i]));
        if (i < first_size)
            first.row(static_cast<Eigen::Index>(i)) = src;
        else
            second.row(static_cast<Eigen::Index>(i - first_size)) = src;
    }
    return risk_from_halves(PointCloud(std::move(first)), PointCloud(std::move(second)), h, cfg);
}

namespace {

PointCloud bootstrap_draw(const PointCloud& data, double noise_h, const BootstrapHooks& hooks, Rng& rng) {
    if (!hooks.identity_resample) return KernelModel(data, noise_h).sample_smoothed(data.size(), rng);
    std::normal_distribution<double> noise(0.0, 1.0);
    Matrix out = data.points();
    for (Eigen::Index i = 0; i < out.rows(); ++i)
        for (Eigen::Index k = 0; k < out.cols(); ++k) out(i, k) += noise_h * noise(rng);
    return PointCloud(std::move(out));
}

// Sorting first makes the mean independent of replicate order, bit for bit.
double order_free_mean(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

}  // namespace

RiskEstimate risk_bootstrap(const PointCloud& data, double h, std::size_t replicates, const ScmsConfig& cfg, Rng& rng,
                            const BootstrapHooks& hooks) {
    if (data.size() < 2) throw InputError("smoothed bootstrap needs at least 2 points");
    if (replicates < 1) throw InputError("smoothed bootstrap needs at least one replicate");
    const double noise_h = hooks.noise_bandwidth.value_or(h);

    std::vector<std::uint64_t> seeds(replicates);
    for (auto& s : seeds) s = child_seed(rng);

    const RidgeSet base = extract_ridge(data, h, cfg);
    if (base.empty()) return failed_estimate(RiskMethod::Bootstrap, replicates, h);
    const Manifold base_set(base);

    std::vector<double> l1, l2;
    for (const auto seed : seeds) {
        Rng local(seed);
        const RidgeSet star = extract_ridge(bootstrap_draw(data, noise_h, hooks, local), h, cfg);
        if (star.empty()) return failed_estimate(RiskMethod::Bootstrap, replicates, h);
        const LossPair loss = loss_pair(base_set, Manifold(star));
        l1.push_back(loss.loss1);
        l2.push_back(loss.loss2);
    }
    return {order_free_mean(l1), order_free_mean(l2), RiskMethod::Bootstrap, replicates, h};
}

GridSpec GridSpec::parse(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    auto bad = [&] {
        return InputError("grid must look like 'min:max:count:geom|lin', got '" + text + "'");
    };
    if (parts.size() != 4) throw bad();
    GridSpec spec;
    auto parse_num = [&](const std::string& s, auto& out) {
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec != std::errc() || ptr != s.data() + s.size()) throw bad();
    };
    parse_num(parts[0], spec.min);
    parse_num(parts[1], spec.max);
    parse_num(parts[2], spec.count);
    if (parts[3] == "geom")
        spec.geometric = true;
    else if (parts[3] == "lin")
        spec.geometric = false;
    else
        throw bad();
    if (!(spec.min > 0.0) || !(spec.max >= spec.min) || !std::isfinite(spec.max) || spec.count < 1) throw bad();
    if (spec.count > 1 && spec.max == spec.min) throw bad();
    return spec;
}

std::vector<double> GridSpec::values() const {
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = min;
        return out;
    }
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        out[i] = geometric ? min * std::pow(max / min, t) : min + t * (max - min);
    }
    out.front() = min;
    out.back() = max;
    return out;
}

std::string GridSpec::to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << min << ':' << max << ':' << count << ':' << (geometric ? "geom" : "lin");
    return os.str();
}

std::vector<double> default_bandwidth_grid(double h_bar) { return GridSpec{h_bar / 20.0, h_bar, 12, true}.values(); }

std::size_t argmin_entry(const std::vector<RiskEstimate>& entries, Objective objective) {
    if (entries.empty()) throw ContractError("argmin of an empty risk curve");
    std::size_t best = 0;
    for (std::size_t i = 1; i < entries.size(); ++i) {
        const double v = entries[i].value(objective);
        const double b = entries[best].value(objective);
        if (v < b || (v == b && entries[i].h < entries[best].h)) best = i;
    }
    return best;
}

RiskCurve select_bandwidth(const PointCloud& data, std::vector<double> grid, const SelectionOptions& options,
                           const ScmsConfig& cfg, Rng& rng) {
    if (grid.empty()) throw InputError("bandwidth grid is empty");
    for (double h : grid)
        if (!(h > 0.0) || !std::isfinite(h)) throw InputError("bandwidth grid values must be positive and finite");
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    RiskCurve curve;
    curve.h_bar = normal_reference_bandwidth(data);
    curve.objective = options.objective;
    curve.method = options.method;
    curve.stream_seed = child_seed(rng);

    std::vector<double> kept;
    for (double h : grid) (h <= curve.h_bar ? kept : curve.dropped).push_back(h);
    if (kept.empty()) {
        std::ostringstream os;
        os.precision(6);
        os << "every grid bandwidth exceeds the normal reference bandwidth h_bar = " << curve.h_bar;
        throw InputError(os.str());
    }

    for (double h : kept) {
        Rng stream(curve.stream_seed);
        curve.entries.push_back(options.method == RiskMethod::Split
                                    ? risk_split(data, h, cfg, stream)
                                    : risk_bootstrap(data, h, options.replicates, cfg, stream));
    }
    curve.h_star = curve.entries[argmin_entry(curve.entries, options.objective)].h;
    return curve;
}

}  // namespace ridgecov
