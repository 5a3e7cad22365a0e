// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers as
// arguments to run a subset, e.g. `acceptance 1 4`.

#include "ridgecov/coverage.hpp"
#include "ridgecov/datasets.hpp"
#include "ridgecov/kde.hpp"
#include "ridgecov/risk.hpp"
#include "ridgecov/scms.hpp"
#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace ridgecov;
using namespace ridgecov::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, int precision = 4) {
    std::ostringstream os;
    os.precision(precision);
    os << v;
    return os.str();
}

std::string join(const std::vector<double>& v, int precision = 3) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + fmt(v[i], precision);
    return out;
}

// Every risk estimate and loss pair produced during the run, for the Jensen check.
struct JensenLog {
    std::size_t checked = 0;
    std::size_t skipped_infinite = 0;
    std::size_t violations = 0;
    double worst = -INFINITY;

    void add(double first, double second) {
        if (std::isinf(first) || std::isinf(second)) {
            ++skipped_infinite;
            return;
        }
        ++checked;
        const double gap = first * first - second;
        worst = std::max(worst, gap);
        if (gap > 1e-12) ++violations;
    }
    void add(const LossPair& l) { add(l.loss1, l.loss2); }
    void add(const RiskEstimate& e) { add(e.risk1, e.risk2); }
};

JensenLog jensen;

ScmsConfig default_scms() { return ScmsConfig{}; }

SyntheticData noisy_circle(std::size_t n, std::uint64_t seed) {
    SyntheticSpec spec;
    spec.kind = SyntheticKind::NoisyCircle;
    spec.n = n;
    spec.radius = 2.0;
    spec.noise_sigma = 0.2;
    spec.seed = seed;
    return generate(spec);
}

// 1. Analytic derivatives against central differences.
Outcome derivatives() {
    Rng rng(20240601);
    std::uniform_real_distribution<double> bw(0.3, 1.5);
    std::uniform_int_distribution<int> size(5, 80);
    double worst_g = 0.0, worst_h = 0.0;
    int failures = 0;
    const int pairs = 200;
    for (int rep = 0; rep < pairs; ++rep) {
        const std::size_t d = 1 + rep % 3;
        const double h = bw(rng);
        const KernelModel model(PointCloud(random_matrix(static_cast<std::size_t>(size(rng)), d, rng)), h);
        const Vector x = random_vector(d, rng, 1.2);
        const double step = h * 1e-4;
        const double p = model.density(x);

        const Vector g = model.gradient(x);
        const Vector g_fd = fd_gradient([&](const Vector& y) { return model.density(y); }, x, step);
        const double rel_g = (g - g_fd).norm() / std::max(g.norm(), p / h);

        const Eigen::MatrixXd hess = model.hessian(x);
        const Eigen::MatrixXd h_fd = fd_jacobian([&](const Vector& y) { return model.gradient(y); }, x, step);
        const double rel_h = (hess - h_fd).norm() / std::max(hess.norm(), p / (h * h));

        worst_g = std::max(worst_g, rel_g);
        worst_h = std::max(worst_h, rel_h);
        failures += (rel_g > 1e-6) + (rel_h > 1e-5);
    }
    return {failures == 0, std::to_string(pairs) + " pairs, worst relative error gradient " + fmt(worst_g, 3) +
                               " (limit 1e-6), Hessian " + fmt(worst_h, 3) + " (limit 1e-5)"};
}

// 2. Coverage samples bounded by Hausdorff, monotone CDFs reaching 1.
Outcome lemma_bounds() {
    Rng rng(77);
    std::uniform_int_distribution<int> size(1, 1500);
    std::uniform_real_distribution<double> scale(0.2, 3.0);
    std::size_t samples = 0, bad = 0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t d = 1 + t % 3;
        Matrix ma = random_matrix(static_cast<std::size_t>(size(rng)), d, rng, scale(rng));
        const Matrix mb = random_matrix(static_cast<std::size_t>(size(rng)), d, rng, scale(rng));
        if (t % 5 == 0) ma.row(0) = mb.row(0);
        const Manifold a{PointCloud(ma)}, b{PointCloud(mb)};
        const double haus = hausdorff(a, b);
        for (double w : coverage_samples(a, b, rng)) {
            ++samples;
            bad += !(w >= 0.0 && w <= haus);
        }
        for (double w : coverage_samples(b, a, rng)) {
            ++samples;
            bad += !(w >= 0.0 && w <= haus);
        }
        std::vector<double> radii = linear_radii(1.25 * haus + 1e-9, 60);
        radii.push_back(radii.back() + 1.0);
        const CoverageDiagram diag = coverage_cdf(a, b, radii);
        for (std::size_t i = 0; i < radii.size(); ++i) {
            if (i > 0) bad += diag.cdf_12[i] < diag.cdf_12[i - 1] || diag.cdf_21[i] < diag.cdf_21[i - 1];
            if (radii[i] >= haus) bad += diag.cdf_12[i] != 1.0 || diag.cdf_21[i] != 1.0;
        }
        jensen.add(loss_pair(a, b));
    }
    return {bad == 0, "50 manifold pairs, " + std::to_string(samples) + " coverage samples, " + std::to_string(bad) +
                          " violations"};
}

// 4. Ridge accuracy on the noisy circle.
Outcome circle_ridge() {
    const SyntheticData data = noisy_circle(2000, 0);
    const RidgeSet ridge = extract_ridge(data.sample, 0.25, default_scms());
    if (ridge.empty()) return {false, "empty ridge"};
    const Manifold est(ridge);
    const double haus = hausdorff(est, data.truth);
    jensen.add(loss_pair(est, data.truth));
    return {haus < 0.15, "Hausdorff " + fmt(haus) + " (limit 0.15), " + std::to_string(ridge.size()) +
                             " ridge points"};
}

// Median of three for interior points; endpoints kept.
std::vector<double> median3(const std::vector<double>& v) {
    std::vector<double> out = v;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        double w[3] = {v[i - 1], v[i], v[i + 1]};
        std::sort(w, w + 3);
        out[i] = w[1];
    }
    return out;
}

// Interior local minima, counting a flat run once.
std::size_t interior_minima(const std::vector<double>& s) {
    std::size_t count = 0;
    for (std::size_t a = 1; a + 1 < s.size();) {
        std::size_t b = a;
        while (b + 1 < s.size() && s[b + 1] == s[a]) ++b;
        if (b + 1 < s.size() && s[a - 1] > s[a] && s[b + 1] > s[b]) ++count;
        a = b + 1;
    }
    return count;
}

struct UShape {
    bool pass = false;
    std::string detail;
};

UShape u_shape(const std::string& name, const SyntheticData& data) {
    SelectionOptions opts;
    Rng rng(101);
    const double h_bar = normal_reference_bandwidth(data.sample);
    const RiskCurve curve = select_bandwidth(data.sample, default_bandwidth_grid(h_bar), opts, default_scms(), rng);
    std::vector<double> risk, hs;
    for (const auto& e : curve.entries) {
        jensen.add(e);
        risk.push_back(e.risk1);
        hs.push_back(e.h);
    }
    const auto s = median3(risk);
    const double lo = *std::min_element(s.begin(), s.end());
    const std::size_t minima = interior_minima(s);
    const bool ends = s.front() >= 2.0 * lo && s.back() >= 2.0 * lo;
    const bool pass = minima == 1 && ends && risk.size() == 12;
    return {pass, name + ": " + std::to_string(minima) + " interior minima, ends/min " + fmt(s.front() / lo, 3) + ", " +
                      fmt(s.back() / lo, 3) + " (need 1 and >= 2); h " + join(hs) + "; risk1 " + join(risk)};
}

// 5. Split-risk U-shape on the spiral and the noisy circle.
Outcome split_u_shape() {
    SyntheticSpec spiral;
    spiral.kind = SyntheticKind::Spiral;
    spiral.n = 1000;
    const UShape a = u_shape("spiral", generate(spiral));
    const UShape b = u_shape("noisy_circle", noisy_circle(2000, 0));
    return {a.pass && b.pass, a.detail + " | " + b.detail};
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

// 6. Bootstrap risk tracks the oracle loss.
Outcome bootstrap_consistency() {
    const SyntheticData data = noisy_circle(1000, 0);
    const double h_bar = normal_reference_bandwidth(data.sample);
    const std::vector<double> grid = GridSpec{h_bar / 20.0, h_bar, 10, true}.values();
    SelectionOptions opts;
    opts.method = RiskMethod::Bootstrap;
    opts.replicates = 10;
    Rng rng(202);
    const RiskCurve curve = select_bandwidth(data.sample, grid, opts, default_scms(), rng);

    std::vector<double> boot, oracle;
    for (const auto& e : curve.entries) {
        jensen.add(e);
        boot.push_back(e.risk1);
        const LossPair l = oracle_loss(extract_ridge(data.sample, e.h, default_scms()), data.truth);
        jensen.add(l);
        oracle.push_back(l.loss1);
    }
    const bool finite = std::all_of(boot.begin(), boot.end(), [](double v) { return std::isfinite(v); }) &&
                        std::all_of(oracle.begin(), oracle.end(), [](double v) { return std::isfinite(v); });
    const double r = finite ? pearson(boot, oracle) : NAN;
    const auto ib = std::min_element(boot.begin(), boot.end()) - boot.begin();
    const auto io = std::min_element(oracle.begin(), oracle.end()) - oracle.begin();
    const bool argmin_ok = std::abs(ib - io) <= 1;
    return {finite && r >= 0.9 && argmin_ok,
            "Pearson " + fmt(r, 3) + " (need >= 0.9), argmin steps apart " + std::to_string(std::abs(ib - io)) +
                " (need <= 1); h " + join(grid) + "; bootstrap " + join(boot) + "; oracle " + join(oracle)};
}

// 7. Oracle loss shrinks with n at a fixed small bandwidth.
Outcome variance_regime() {
    const std::vector<std::size_t> sizes = {1000, 2000, 4000};
    std::vector<double> means;
    for (const std::size_t n : sizes) {
        double sum = 0.0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const SyntheticData data = noisy_circle(n, seed);
            const LossPair l = oracle_loss(extract_ridge(data.sample, 0.15, default_scms()), data.truth);
            jensen.add(l);
            sum += l.loss1;
        }
        means.push_back(sum / 20.0);
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < means.size(); ++i) decreasing = decreasing && means[i] < means[i - 1];
    return {decreasing, "mean oracle loss1 at n = 1000, 2000, 4000: " + join(means, 5)};
}

// 8. Coverage of the helix cloud by its curve versus its axis.
Outcome helix_coverage() {
    SyntheticSpec spec;
    spec.kind = SyntheticKind::Helix;
    spec.n = 1000;
    const SyntheticData helix = generate(spec);
    const Matrix& curve = helix.truth.mesh().points();
    const double z_lo = curve.col(2).minCoeff(), z_hi = curve.col(2).maxCoeff();
    Matrix axis = Matrix::Zero(1000, 3);
    for (Eigen::Index i = 0; i < axis.rows(); ++i) axis(i, 2) = z_lo + (z_hi - z_lo) * static_cast<double>(i) / 999.0;
    const Manifold sample(helix.sample), line{PointCloud(axis)};

    const double r_max = std::max(hausdorff(sample, helix.truth), hausdorff(sample, line));
    const auto radii = linear_radii(r_max, 101);
    const auto on_curve = coverage_cdf(sample, helix.truth, radii);
    const auto on_line = coverage_cdf(sample, line, radii);
    jensen.add(loss_pair(sample, helix.truth));
    jensen.add(loss_pair(sample, line));
    std::size_t below = 0, strict = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        below += on_curve.cdf_12[i] < on_line.cdf_12[i];
        strict += on_curve.cdf_12[i] > on_line.cdf_12[i];
    }
    return {below == 0 && 2 * strict >= radii.size(),
            std::to_string(radii.size()) + " radii, curve CDF below line CDF at " + std::to_string(below) +
                ", strictly above at " + std::to_string(strict)};
}

// 9. CLI outputs are bit-identical across repeats and thread counts.
Outcome cli_determinism() {
    const fs::path root = fs::temp_directory_path() / "ridgecov_acceptance_cli";
    fs::remove_all(root);
    fs::create_directories(root);
    auto run = [&](const std::string& args) {
        const std::string cmd = std::string(RIDGECOV_CLI_PATH) + " " + args + " > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) && WEXITSTATUS(status) == 0;
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    // Each command runs three times: twice serially, once with 4 threads.
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"gen", "gen --kind three_spirals --n 600 --seed 11"},
        {"ridge", "ridge --input " + (root / "gen_a/samples.csv").string() + " --h 0.6"},
        {"select_split", "select --input " + (root / "gen_a/samples.csv").string() +
                             " --grid 0.4:1.2:4:geom --seed 5 --emit-ridge"},
        {"select_bootstrap", "select --input " + (root / "gen_a/samples.csv").string() +
                                 " --grid 0.5:1.0:3:geom --method bootstrap --replicates 3 --objective l2 --seed 5"},
        {"compare", "compare --input " + (root / "ridge_a/ridge.csv").string() + " " +
                        (root / "gen_a/truth.csv").string() + " --columns x1,x2"},
    };
    std::size_t files = 0, mismatched = 0, failed_runs = 0;
    for (const auto& [name, args] : commands) {
        const std::string threads = name == "gen" || name == "compare" ? "" : " --threads ";
        const std::vector<std::pair<std::string, std::string>> variants = {
            {"a", threads.empty() ? "" : threads + "1"},
            {"b", threads.empty() ? "" : threads + "1"},
            {"c", threads.empty() ? "" : threads + "4"}};
        for (const auto& [tag, extra] : variants)
            failed_runs += !run(args + extra + " --output-dir " + (root / (name + "_" + tag)).string());
        for (const auto& entry : fs::directory_iterator(root / (name + "_a"))) {
            const std::string ref = slurp(entry.path());
            for (const char* tag : {"_b", "_c"}) {
                ++files;
                mismatched += slurp(root / (name + tag) / entry.path().filename()) != ref;
            }
        }
    }
    fs::remove_all(root);
    return {failed_runs == 0 && mismatched == 0 && files > 0,
            std::to_string(commands.size()) + " commands, " + std::to_string(files) + " file comparisons, " +
                std::to_string(mismatched) + " mismatches, " + std::to_string(failed_runs) + " failed runs"};
}

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;  // 0 = no limit
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
    auto selected = [&](int id) { return wanted.empty() || wanted.count(id) > 0; };

    const std::vector<Criterion> criteria = {
        {1, "derivative correctness", 10, derivatives},
        {2, "coverage bounded by Hausdorff", 10, lemma_bounds},
        {4, "circle ridge accuracy", 60, circle_ridge},
        {5, "split risk U-shape", 300, split_u_shape},
        {6, "bootstrap risk tracks oracle loss", 600, bootstrap_consistency},
        {7, "oracle loss falls with n", 600, variance_regime},
        {8, "helix coverage dominance", 10, helix_coverage},
        {9, "CLI determinism", 0, cli_determinism},
    };

    std::map<int, std::string> lines;
    bool all = true;
    for (const auto& c : criteria) {
        if (!selected(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
        const bool pass = o.pass && in_time;
        all = all && pass;
        std::string timing = fmt(secs, 3) + " s";
        if (c.limit_seconds > 0) timing += " of " + fmt(c.limit_seconds, 4) + " s";
        lines[c.id] = std::string(pass ? "PASS" : "FAIL") + " criterion " + std::to_string(c.id) + " (" + c.name +
                      "): " + o.detail + " [" + timing + (in_time ? "" : ", too slow") + "]";
        std::cerr << lines[c.id] << '\n';
    }

    if (selected(3)) {
        const bool pass = jensen.checked > 0 && jensen.violations == 0;
        all = all && pass;
        lines[3] = std::string(pass ? "PASS" : "FAIL") + " criterion 3 (Jensen on every estimate): " +
                   std::to_string(jensen.checked) + " finite estimates, " + std::to_string(jensen.violations) +
                   " violations, worst risk1^2 - risk2 = " + fmt(jensen.worst, 3) + ", " +
                   std::to_string(jensen.skipped_infinite) + " infinite sentinels skipped";
    }

    std::cout << "\n";
    for (const auto& [id, line] : lines) std::cout << line << '\n';
    return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
