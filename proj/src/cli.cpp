#include "ridgecov/cli.hpp"

#include "ridgecov/coverage.hpp"
#include "ridgecov/errors.hpp"
#include "ridgecov/kde.hpp"
#include "ridgecov/serialize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ridgecov::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    return out;
}

void write_json(const fs::path& path, const json& doc) {
    auto out = open_output(path);
    out << doc.dump(2) << '\n';
}

json run_header(const std::string& command) {
    return {{"tool", "ridgecov"}, {"version", kVersion}, {"command", command}};
}

void prepare_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError("cannot create output directory " + dir.string() + ": " + ec.message());
}

CsvPoints read_points(const fs::path& path, const std::vector<std::string>& columns, std::ostream& log) {
    auto pts = load_csv(path, columns);
    if (pts.rejected_rows > 0)
        log << "warning: " << path.string() << ": skipped " << pts.rejected_rows << " malformed row(s)\n";
    return pts;
}

void emit_ridge(const RidgeSet& ridge, const CsvPoints& pts, const json& meta, const fs::path& dir, std::ostream& log) {
    if (ridge.empty()) log << "warning: ridge set is empty at h = " << ridge.bandwidth << '\n';
    auto out = open_output(dir / "ridge.csv");
    write_ridge_csv(out, ridge, pts.cloud.dim(), pts.header);
    write_json(dir / "ridge.json", meta);
}

}  // namespace

RadiiSpec RadiiSpec::parse(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    auto bad = [&] { return InputError("radii must look like 'count', 'max:count' or 'min:max:count', got '" + text + "'"); };
    auto num = [&](const std::string& s, auto& out) {
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec != std::errc() || ptr != s.data() + s.size()) throw bad();
    };
    RadiiSpec spec;
    double max = 0.0;
    switch (parts.size()) {
        case 1: num(parts[0], spec.count); break;
        case 2: num(parts[0], max); num(parts[1], spec.count); spec.max = max; break;
        case 3: num(parts[0], spec.min); num(parts[1], max); num(parts[2], spec.count); spec.max = max; break;
        default: throw bad();
    }
    if (spec.count < 2 || !(spec.min >= 0.0) || (spec.max && !(*spec.max > spec.min))) throw bad();
    return spec;
}

void cmd_gen(const GenOptions& opts, std::ostream& log) {
    const SyntheticData data = generate(opts.spec);
    prepare_dir(opts.output_dir);
    write_csv(opts.output_dir / "samples.csv", data.sample);
    write_csv(opts.output_dir / "truth.csv", data.truth.mesh());

    json meta = run_header("gen");
    meta["config"] = {{"kind", to_string(opts.spec.kind)},
                      {"n", opts.spec.n},
                      {"noise_sigma", data.noise_sigma},
                      {"radius", opts.spec.radius ? json(*opts.spec.radius) : json(nullptr)},
                      {"pitch", opts.spec.pitch ? json(*opts.spec.pitch) : json(nullptr)},
                      {"seed", opts.spec.seed}};
    meta["outputs"] = {{"samples", "samples.csv"}, {"truth", "truth.csv"}, {"truth_points", data.truth.size()}};
    write_json(opts.output_dir / "gen.json", meta);
    log << "gen: wrote " << data.sample.size() << " samples and " << data.truth.size() << " truth mesh points\n";
}

void cmd_ridge(const RidgeOptions& opts, std::ostream& log) {
    if (!(opts.h > 0.0) || !std::isfinite(opts.h)) throw InputError("--h must be a positive bandwidth");
    opts.scms.validate();
    const auto pts = read_points(opts.input, opts.columns, log);
    const RidgeSet ridge = extract_ridge(pts.cloud, opts.h, opts.scms);
    prepare_dir(opts.output_dir);

    json meta = run_header("ridge");
    meta["config"] = {{"input", opts.input.string()}, {"columns", opts.columns}, {"h", opts.h}, {"scms", to_json(opts.scms)}};
    meta["ridge"] = ridge_summary_json(ridge);
    emit_ridge(ridge, pts, meta, opts.output_dir, log);
    log << "ridge: " << ridge.size() << " ridge points from " << ridge.diagnostics.mesh_size << " mesh points\n";
}

void cmd_select(const SelectOptions& opts, std::ostream& log) {
    opts.scms.validate();
    const auto pts = read_points(opts.input, opts.columns, log);
    const double h_bar = normal_reference_bandwidth(pts.cloud);
    const auto grid = opts.grid ? opts.grid->values() : default_bandwidth_grid(h_bar);

    Rng rng(opts.seed);
    const RiskCurve curve = select_bandwidth(pts.cloud, grid, opts.selection, opts.scms, rng);
    for (double h : curve.dropped) log << "note: grid bandwidth " << h << " exceeds h_bar = " << h_bar << ", skipped\n";
    prepare_dir(opts.output_dir);
    {
        auto out = open_output(opts.output_dir / "risk_curve.csv");
        write_risk_csv(out, curve);
    }

    json config = {{"input", opts.input.string()},
                   {"columns", opts.columns},
                   {"grid", opts.grid ? opts.grid->to_string() : "default"},
                   {"method", to_string(opts.selection.method)},
                   {"objective", to_string(opts.selection.objective)},
                   {"replicates", opts.selection.replicates},
                   {"seed", opts.seed},
                   {"scms", to_json(opts.scms)},
                   {"emit_ridge", opts.emit_ridge}};
    json meta = run_header("select");
    meta["config"] = config;
    meta["result"] = to_json(curve);
    write_json(opts.output_dir / "select.json", meta);
    log << "select: h_star = " << curve.h_star << " (h_bar = " << curve.h_bar << ")\n";

    if (opts.emit_ridge) {
        const RidgeSet ridge = extract_ridge(pts.cloud, curve.h_star, opts.scms);
        json rmeta = run_header("select");
        rmeta["config"] = config;
        rmeta["config"]["h"] = curve.h_star;
        rmeta["ridge"] = ridge_summary_json(ridge);
        emit_ridge(ridge, pts, rmeta, opts.output_dir, log);
    }
}

void cmd_compare(const CompareOptions& opts, std::ostream& log) {
    const Manifold a(read_points(opts.first, opts.columns, log).cloud);
    const Manifold b(read_points(opts.second, opts.columns, log).cloud);
    const double haus = hausdorff(a, b);
    const LossPair loss = loss_pair(a, b);

    double max_r = opts.radii.max.value_or(haus);
    if (!(max_r > opts.radii.min)) max_r = opts.radii.min + 1.0;  // identical sets: Hausdorff is 0
    std::vector<double> radii(opts.radii.count);
    for (std::size_t i = 0; i < radii.size(); ++i)
        radii[i] = opts.radii.min + (max_r - opts.radii.min) * static_cast<double>(i) /
                                        static_cast<double>(radii.size() - 1);
    radii.back() = max_r;
    const CoverageDiagram diagram = coverage_cdf(a, b, radii);

    prepare_dir(opts.output_dir);
    {
        auto out = open_output(opts.output_dir / "coverage.csv");
        write_coverage_csv(out, diagram);
    }
    json meta = run_header("compare");
    meta["config"] = {{"first", opts.first.string()},
                      {"second", opts.second.string()},
                      {"columns", opts.columns},
                      {"radii_min", opts.radii.min},
                      {"radii_max", max_r},
                      {"radii_count", opts.radii.count}};
    meta["result"] = {{"loss1", loss.loss1}, {"loss2", loss.loss2}, {"hausdorff", haus},
                      {"first_points", a.size()}, {"second_points", b.size()}};
    write_json(opts.output_dir / "compare.json", meta);
    log << "compare: loss1 = " << loss.loss1 << ", loss2 = " << loss.loss2 << ", hausdorff = " << haus << '\n';
}

namespace {

void add_scms_flags(CLI::App& cmd, ScmsConfig& cfg, std::string& mesh_text, std::string& subspace_text) {
    cmd.add_option("--tolerance", cfg.tolerance, "Convergence tolerance on the SCMS step, in units of h")
        ->capture_default_str();
    cmd.add_option("--max-iters", cfg.max_iterations, "Maximum SCMS iterations per mesh point")->capture_default_str();
    cmd.add_option("--mesh", mesh_text, "Mesh: data | grid:<points per axis>")->capture_default_str();
    cmd.add_option("--subspace", subspace_text, "Step subspace from the Hessian of: log-density | density")
        ->capture_default_str();
    cmd.add_option("--threshold-frac", cfg.density_threshold_fraction,
                   "Drop ridge points below this fraction of the maximal density")
        ->capture_default_str();
    cmd.add_option("--threads", cfg.threads, "Worker threads (0 = all cores); does not change results")
        ->capture_default_str();
}

std::vector<std::string> split_columns(const std::string& text) {
    std::vector<std::string> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    for (std::string c; std::getline(ss, c, ',');) out.push_back(c);
    return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& log) {
    CLI::App app{"Density ridge estimation with coverage-risk bandwidth selection", "ridgecov"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    // Options go under a section per command, e.g. [ridge] h = 0.3. Command-line flags win.
    app.set_config("--config", "", "TOML/INI config file with [gen], [ridge], [select] or [compare] sections");
    // Lets "ridgecov ridge --config file" reach the app-level option.
    app.fallthrough();

    // gen
    GenOptions gen;
    std::string gen_kind, gen_out = ".";
    double gen_noise = -1.0, gen_radius = 0.0, gen_pitch = 0.0;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic sample and its ground-truth curve");
    gen_cmd->add_option("--kind", gen_kind, "spiral | three_spirals | helix | noisy_circle")->required();
    gen_cmd->add_option("--n", gen.spec.n, "Sample size")->capture_default_str();
    auto* noise_opt = gen_cmd->add_option("--noise", gen_noise, "Gaussian noise sigma (default: 5% of curve extent)");
    auto* radius_opt = gen_cmd->add_option("--radius", gen_radius, "Circle or helix radius");
    auto* pitch_opt = gen_cmd->add_option("--pitch", gen_pitch, "Spiral growth a or helix rise c");
    gen_cmd->add_option("--seed", gen.spec.seed, "Random seed")->capture_default_str();
    gen_cmd->add_option("--output-dir", gen_out, "Output directory")->capture_default_str();

    // ridge
    RidgeOptions ridge;
    std::string ridge_input, ridge_cols, ridge_mesh = "data", ridge_subspace = "log-density", ridge_out = ".";
    auto* ridge_cmd = app.add_subcommand("ridge", "Extract the density ridge at a fixed bandwidth");
    // -h would clash with --h, so this subcommand only answers to --help.
    ridge_cmd->set_help_flag("--help", "Print this help message and exit");
    ridge_cmd->add_option("--input", ridge_input, "Input CSV")->required();
    ridge_cmd->add_option("--h", ridge.h, "Bandwidth")->required();
    ridge_cmd->add_option("--columns", ridge_cols, "Comma-separated column names");
    ridge_cmd->add_option("--output-dir", ridge_out, "Output directory")->capture_default_str();
    add_scms_flags(*ridge_cmd, ridge.scms, ridge_mesh, ridge_subspace);

    // select
    SelectOptions select;
    std::string sel_input, sel_cols, sel_grid, sel_method = "split", sel_objective = "l1", sel_mesh = "data",
                                                sel_subspace = "log-density",
                                                sel_out = ".";
    auto* sel_cmd = app.add_subcommand("select", "Choose h by minimizing the estimated coverage risk");
    sel_cmd->add_option("--input", sel_input, "Input CSV")->required();
    sel_cmd->add_option("--columns", sel_cols, "Comma-separated column names");
    sel_cmd->add_option("--grid", sel_grid, "min:max:count:geom|lin (default: 12 geometric points up to h_bar)");
    sel_cmd->add_option("--method", sel_method, "split | bootstrap")->capture_default_str();
    sel_cmd->add_option("--replicates", select.selection.replicates, "Bootstrap replicates")->capture_default_str();
    sel_cmd->add_option("--objective", sel_objective, "l1 | l2")->capture_default_str();
    sel_cmd->add_option("--seed", select.seed, "Random seed")->capture_default_str();
    sel_cmd->add_flag("--emit-ridge", select.emit_ridge, "Also write the ridge at the selected bandwidth");
    sel_cmd->add_option("--output-dir", sel_out, "Output directory")->capture_default_str();
    add_scms_flags(*sel_cmd, select.scms, sel_mesh, sel_subspace);

    // compare
    CompareOptions cmp;
    std::vector<std::string> cmp_inputs;
    std::string cmp_cols, cmp_radii, cmp_out = ".";
    auto* cmp_cmd = app.add_subcommand("compare", "Coverage diagram, losses and Hausdorff distance of two point sets");
    cmp_cmd->add_option("--input", cmp_inputs, "Two CSV files (first, second)")->required()->expected(2);
    cmp_cmd->add_option("--columns", cmp_cols, "Comma-separated column names");
    cmp_cmd->add_option("--radii", cmp_radii, "count | max:count | min:max:count (default: 101 up to Hausdorff)");
    cmp_cmd->add_option("--output-dir", cmp_out, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        const int code = app.exit(e, out, err);
        std::cout << out.str();
        log << err.str();
        return code;
    }

    try {
        if (gen_cmd->parsed()) {
            gen.spec.kind = parse_synthetic_kind(gen_kind);
            if (noise_opt->count() > 0) gen.spec.noise_sigma = gen_noise;
            if (radius_opt->count() > 0) gen.spec.radius = gen_radius;
            if (pitch_opt->count() > 0) gen.spec.pitch = gen_pitch;
            gen.output_dir = gen_out;
            cmd_gen(gen, log);
        } else if (ridge_cmd->parsed()) {
            ridge.input = ridge_input;
            ridge.columns = split_columns(ridge_cols);
            ridge.scms.mesh = Mesh::parse(ridge_mesh);
            ridge.scms.subspace = parse_subspace(ridge_subspace);
            ridge.output_dir = ridge_out;
            cmd_ridge(ridge, log);
        } else if (sel_cmd->parsed()) {
            select.input = sel_input;
            select.columns = split_columns(sel_cols);
            if (!sel_grid.empty()) select.grid = GridSpec::parse(sel_grid);
            select.selection.method = parse_risk_method(sel_method);
            select.selection.objective = parse_objective(sel_objective);
            select.scms.mesh = Mesh::parse(sel_mesh);
            select.scms.subspace = parse_subspace(sel_subspace);
            select.output_dir = sel_out;
            cmd_select(select, log);
        } else if (cmp_cmd->parsed()) {
            cmp.first = cmp_inputs.at(0);
            cmp.second = cmp_inputs.at(1);
            cmp.columns = split_columns(cmp_cols);
            if (!cmp_radii.empty()) cmp.radii = RadiiSpec::parse(cmp_radii);
            cmp.output_dir = cmp_out;
            cmd_compare(cmp, log);
        }
    } catch (const InputError& e) {
        log << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace ridgecov::cli
