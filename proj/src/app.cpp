#include "juliacheb/app.hpp"

#include "juliacheb/config.hpp"
#include "juliacheb/io.hpp"
#include "juliacheb/widom.hpp"

#include <Eigen/Core>

#include <chrono>
#include <functional>
#include <map>
#include <ostream>

namespace juliacheb {

namespace {

constexpr const char* kVersion = "0.1.0";

// Collects every file a run writes so the manifest can list them.
class OutputDir {
public:
    explicit OutputDir(std::filesystem::path root) : root_(std::move(root)) {}

    void write(const std::string& name, const std::string& content) {
        write_text(root_ / name, content);
        files_.push_back(name);
    }
    void write(const std::string& name, const json& doc) { write(name, doc.dump(2) + "\n"); }

    const std::filesystem::path& root() const { return root_; }
    const std::vector<std::string>& files() const { return files_; }

private:
    std::filesystem::path root_;
    std::vector<std::string> files_;
};

struct Context {
    RunConfig config;
    std::string config_fingerprint;
    OutputDir& out;
    std::ostream& log;
};

// A failure raised after some outputs were written; carries the kind so the
// exit code still reflects the cause.
struct PartialFailure {
    ErrorKind kind;
    std::string message;
};

EscapeRadius radius_for(const Context& ctx, const PolynomialSequence& seq) {
    return escape_radius(seq, ctx.config.radius_margin);
}

PointCloud sample_for(const Context& ctx, const PolynomialSequence& seq, int depth,
                      std::size_t budget) {
    const SamplingStrategy strategy = ctx.config.sample_strategy == "tree"
                                          ? SamplingStrategy::FullTree
                                          : SamplingStrategy::Stochastic;
    return sample_julia(seq, depth, budget, radius_for(ctx, seq), ctx.config.seed, strategy,
                        solver_params(ctx.config).pullback);
}

void cmd_validate(Context& ctx) {
    const RunConfig& c = ctx.config;
    const PolynomialSequence seq = build_sequence(c, c.sequence.check_depth);
    const ValidationReport report = validate_regularity(seq, c.sequence.check_depth);
    json doc = to_json(report);
    doc["sequence"] = seq.description();
    ctx.out.write("validation.json", doc);
    ctx.log << (report.passed() ? "regularity: pass" : "regularity: fail") << "\n";
    if (!report.passed()) {
        std::string message = "declared regularity constants do not hold:";
        for (const auto& f : report.failures())
            message += "\n  " + f;
        throw PartialFailure{ErrorKind::Config, message};
    }
}

void cmd_radius(Context& ctx) {
    const PolynomialSequence seq = build_sequence(ctx.config);
    const EscapeRadius r = radius_for(ctx, seq);
    const auto& d = seq.declared();
    json doc = {{"A1", d.a1},
                {"A2", d.a2},
                {"margin", r.margin},
                {"radius", r.radius},
                {"inequalityHolds", escape_inequality_holds(d.a1, d.a2, r.radius)}};
    ctx.out.write("radius.json", doc);
    ctx.log << "R = " << format_real(r.radius) << "\n";
}

void cmd_sample(Context& ctx) {
    const RunConfig& c = ctx.config;
    const PolynomialSequence seq = build_sequence(c, c.sample_depth);
    const PointCloud cloud = sample_for(ctx, seq, c.sample_depth, c.sample_budget);
    ctx.out.write("cloud.csv", cloud_csv(cloud.points));
    ctx.out.write("cloud.provenance.json", to_json(cloud.provenance));
    ctx.log << cloud.points.size() << " points at depth " << c.sample_depth << "\n";
}

void cmd_cheb(Context& ctx) {
    const RunConfig& c = ctx.config;
    std::vector<cplx> points;
    json source;
    if (!c.cheb_input.empty()) {
        points = parse_cloud_csv(read_text(c.cheb_input));
        source = {{"input", c.cheb_input}};
    } else {
        const PolynomialSequence seq = build_sequence(c, c.sample_depth);
        PointCloud cloud = sample_for(ctx, seq, c.sample_depth, c.sample_budget);
        source = to_json(cloud.provenance);
        points = std::move(cloud.points);
    }
    const ChebyshevSolution sol = lawson_minimax(points, c.cheb_degree, lawson_options(c));
    json doc = to_json(sol);
    doc["sampleSize"] = points.size();
    doc["source"] = source;
    ctx.out.write("cheb.json", doc);
    ctx.log << "degree " << c.cheb_degree << " sup norm " << format_real(sol.sup_norm)
            << " certificate gap " << format_real(sol.certificate_gap) << "\n";
}

void write_tau(Context& ctx, const TauResult& result, const std::optional<Disk>& image) {
    std::string csv = "l,tau_re,tau_im,norm,cloud_size\n";
    for (const auto& e : result.trace)
        csv += std::to_string(e.l) + ',' + format_real(e.tau.real()) + ',' +
               format_real(e.tau.imag()) + ',' + format_real(e.norm) + ',' +
               std::to_string(e.cloud_size) + '\n';
    ctx.out.write("tau.csv", csv);
    json j = to_json(result);
    if (image)
        j["imageShortcut"] = {{"center", to_json(image->center)}, {"radius", image->radius}};
    ctx.out.write("tau.json", j);
}

void cmd_tau(Context& ctx) {
    const RunConfig& c = ctx.config;
    const SolverParams params = solver_params(c);
    const int l_max = c.tau_l_max ? c.tau_l_max : c.m + c.tau_span;
    const PolynomialSequence seq = build_sequence(c, std::max(l_max, c.m + c.depth_offset));
    // Comparison only: the Chebyshev disk of F_m(J) / rho_m on a deep sample.
    std::optional<Disk> image;
    if (c.tau_image_shortcut) {
        const PointCloud deep = sample_for(ctx, seq, c.m + c.depth_offset, c.solver_budget);
        image = tau_by_image(seq, c.m, deep.points);
    }
    try {
        const TauResult result = tau_sequence(seq, c.m, l_max, radius_for(ctx, seq), params);
        write_tau(ctx, result, image);
        ctx.log << "tau_" << c.m << " = " << format_real(result.tau.real()) << " + "
                << format_real(result.tau.imag()) << "i (settled at l = " << result.converged_at
                << ")\n";
    } catch (const TauNoConvergence& e) {
        write_tau(ctx, e.result(), image);
        throw PartialFailure{e.kind(), e.what()};
    }
}

void cmd_verify(Context& ctx) {
    const RunConfig& c = ctx.config;
    const SolverParams params = solver_params(c);
    const int need = std::max({c.verify_depth, c.m + c.depth_offset, c.m + c.tau_span});
    const PolynomialSequence seq = build_sequence(c, need);
    const PointCloud cloud = sample_for(ctx, seq, c.verify_depth, c.verify_budget);
    const VerificationReport report = verify_structural(seq, c.m, cloud, params);
    ctx.out.write("verify.json", to_json(report));
    ctx.log << "degree " << report.degree << ": coefficient deviation "
            << format_real(report.coeff_deviation) << ", norm gap " << format_real(report.norm_gap)
            << "\n";
}

void cmd_widom(Context& ctx) {
    const RunConfig& c = ctx.config;
    const SolverParams params = solver_params(c);
    const int need = std::max({c.sample_depth, c.widom_m_max + c.depth_offset,
                               c.widom_m_max + c.tau_span});
    const PolynomialSequence seq = build_sequence(c, need);

    WidomReport report;
    report.preset = c.sequence.preset;
    report.seed = c.seed;
    json general = json::array();
    try {
        for (int m = 1; m <= c.widom_m_max; ++m) {
            report.rows.push_back(widom_factor(seq, m, params));
            report.depths.push_back(m + params.depth_offset);
            report.budgets.push_back(params.budget);
        }
        if (!c.widom_degrees.empty()) {
            const PointCloud cloud = sample_for(ctx, seq, c.sample_depth, c.sample_budget);
            const double cap = capacity(seq);
            for (int n : c.widom_degrees)
                general.push_back(
                    {{"n", n}, {"widom", widom_general(cloud.points, cap, n, params.lawson)}});
        }
    } catch (const Error& e) {
        report.failure = e.what();
        report.failure_kind = e.kind();
    }
    summarize_growth(report);
    json doc = to_json(report, ctx.config_fingerprint);
    doc["general"] = general;
    ctx.out.write("widom.csv", widom_csv(report.rows));
    ctx.out.write("widom.json", doc);
    ctx.log << report.rows.size() << " rows\n";
    if (report.failure)
        throw PartialFailure{*report.failure_kind, *report.failure};
}

void cmd_conjecture(Context& ctx) {
    const RunConfig& c = ctx.config;
    ConjectureParams params;
    params.solver = solver_params(c);
    params.min_budget = c.conjecture_min_budget;
    params.per_degree = c.conjecture_per_degree;
    params.budget_scale = c.conjecture_budget_scale;
    const auto preset = parse_preset(c.conjecture_preset);
    if (!preset)
        throw ConfigError("unknown conjecture preset '" + c.conjecture_preset + "'");
    const WidomReport report = conjecture_run(*preset, c.conjecture_m_max, params);
    ctx.out.write("conjecture.csv", widom_csv(report.rows));
    ctx.out.write("conjecture.json", to_json(report, ctx.config_fingerprint));
    for (const auto& row : report.rows)
        ctx.log << "m = " << row.m << "  W = " << format_real(row.widom) << "\n";
    if (report.failure)
        throw PartialFailure{*report.failure_kind, *report.failure};
}

void cmd_distances(Context& ctx) {
    const RunConfig& c = ctx.config;
    const int need = std::max({c.sample_depth, c.distances_k_max, c.distances_bounded_depth});
    const PolynomialSequence seq = build_sequence(c, need);
    const EscapeRadius radius = radius_for(ctx, seq);
    const PointCloud cloud = sample_for(ctx, seq, c.sample_depth, c.sample_budget);
    GridSpec grid;
    grid.resolution = c.distances_resolution;
    grid.bounded_depth = c.distances_bounded_depth;
    const auto kloud = filled_set_sample(seq, radius, grid, cloud.points, c.threads);
    const DistanceProfile profile =
        distance_profile(seq, radius, c.distances_k_max, grid, kloud, c.threads);
    std::string csv = "k,a_k\n";
    for (std::size_t k = 0; k < profile.values.size(); ++k)
        csv += std::to_string(k + 1) + ',' + format_real(profile.values[k]) + '\n';
    ctx.out.write("distances.csv", csv);
    json doc = to_json(profile);
    doc["radius"] = radius.radius;
    doc["sample"] = to_json(cloud.provenance);
    ctx.out.write("distances.json", doc);
    ctx.log << "a_1 = " << format_real(profile.values.front())
            << ", a_k = " << format_real(profile.values.back()) << "\n";
}

using Command = void (*)(Context&);

const std::map<std::string, Command>& commands() {
    static const std::map<std::string, Command> table = {
        {"validate", cmd_validate}, {"radius", cmd_radius},         {"sample", cmd_sample},
        {"cheb", cmd_cheb},         {"tau", cmd_tau},               {"verify", cmd_verify},
        {"widom", cmd_widom},       {"conjecture", cmd_conjecture}, {"distances", cmd_distances},
    };
    return table;
}

json error_record(ErrorKind kind, const std::string& message, int code) {
    return {{"error", to_string(kind)}, {"message", message}, {"exitCode", code}};
}

} // namespace

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::InvalidArgument:
    case ErrorKind::NoAdmissibleRadius:
        return kExitConfig;
    case ErrorKind::NonConvergence:
    case ErrorKind::SolverStalled:
    case ErrorKind::TauNoConvergence:
        return kExitNonConvergence;
    case ErrorKind::Io:
        return kExitIo;
    default:
        return kExitOther;
    }
}

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names = {"validate", "radius", "sample",
                                                   "cheb",     "tau",    "verify",
                                                   "widom",    "conjecture", "distances"};
    return names;
}

int run_subcommand(const std::string& name, const RunOptions& options, std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    const auto command = commands().find(name);

    RunConfig config;
    std::optional<ErrorKind> failure;
    std::string message;
    std::string config_text;
    std::filesystem::path root = options.out_dir.value_or("out");

    ParseOptions parse;
    parse.seed_override = options.seed;
    // validate reports broken constants itself instead of refusing the config.
    parse.check_regularity = name != "validate";
    try {
        if (command == commands().end())
            throw ConfigError("unknown subcommand '" + name + "'");
        config = parse_config(options.config_text, parse);
        if (options.threads)
            config.threads = *options.threads;
        if (options.out_dir)
            config.out_dir = options.out_dir->string();
        root = config.out_dir;
        config_text = emit_config(config);
    } catch (const Error& e) {
        failure = e.kind();
        message = e.what();
    }

    OutputDir out(root);
    const std::string config_fingerprint = fingerprint(config_text);
    if (!failure) {
        try {
            out.write("config.txt", config_text);
            Context ctx{config, config_fingerprint, out, log};
            command->second(ctx);
        } catch (const PartialFailure& e) {
            failure = e.kind;
            message = e.message;
        } catch (const Error& e) {
            failure = e.kind();
            message = e.what();
        } catch (const std::exception& e) {
            // Not a library error; reported with the generic exit code.
            message = std::string("unexpected failure: ") + e.what();
        }
    }

    int code = kExitOk;
    if (failure) {
        code = exit_code_for(*failure);
        log << "error (" << to_string(*failure) << "): " << message << "\n";
    } else if (!message.empty()) {
        code = kExitOther;
        log << "error: " << message << "\n";
    }

    try {
        if (code != kExitOk)
            out.write("error.json", failure ? error_record(*failure, message, code)
                                            : json{{"error", "Internal"},
                                                   {"message", message},
                                                   {"exitCode", code}});
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::vector<std::string> files = out.files();
        files.push_back("manifest.json");
        json manifest = {
            {"subcommand", name},
            {"configFingerprint", config_fingerprint},
            {"seed", config.seed},
            {"versions",
             {{"juliacheb", kVersion},
              {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                            std::to_string(EIGEN_MAJOR_VERSION) + "." +
                            std::to_string(EIGEN_MINOR_VERSION)},
              {"compiler", __VERSION__}}},
            {"files", files},
            {"exitCode", code},
            {"wallTimeSeconds", seconds}};
        write_text(out.root() / "manifest.json", manifest.dump(2) + "\n");
    } catch (const Error& e) {
        log << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        if (code == kExitOk)
            code = exit_code_for(e.kind());
    }
    return code;
}

} // namespace juliacheb
