// Command-line front end. Usage:
//   juliacheb <subcommand> --config run.cfg [--out dir] [--seed n] [--threads n]

#include "juliacheb/app.hpp"
#include "juliacheb/io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

int main(int argc, char** argv) {
    using namespace juliacheb;

    CLI::App app{"Chebyshev polynomials and Widom factors of polynomial Julia sets"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    const std::map<std::string, std::string> help = {
        {"validate", "check the declared regularity constants"},
        {"radius", "compute the escape radius"},
        {"sample", "sample the Julia set by backward iteration"},
        {"cheb", "minimax Chebyshev polynomial of a point cloud"},
        {"tau", "trace the shift tau_l over successive levels"},
        {"verify", "compare the structural and minimax polynomials"},
        {"widom", "Widom factors of the configured sequence"},
        {"conjecture", "Widom growth for z^2 + 1/4 and its perturbation"},
        {"distances", "distance profile between filled sets"},
    };
    for (const auto& name : subcommands()) {
        auto* sub = app.add_subcommand(name, help.count(name) ? help.at(name) : "");
        sub->add_option("--config", config_path, "configuration file")->required();
        sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
        sub->add_option("--seed", seed, "seed (overrides the config)");
        sub->add_option("--threads", threads, "worker threads, 0 for all cores");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    CLI::App* sub = app.get_subcommands().front();
    RunOptions options;
    try {
        options.config_text = read_text(config_path);
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return kExitIo;
    }
    if (sub->count("--out"))
        options.out_dir = out_dir;
    if (sub->count("--seed"))
        options.seed = seed;
    if (sub->count("--threads"))
        options.threads = threads;
    return run_subcommand(sub->get_name(), options, std::cerr);
}
