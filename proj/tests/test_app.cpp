#include "juliacheb/app.hpp"
#include "juliacheb/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

using namespace juliacheb;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "juliacheb_app_test" / name;
    fs::remove_all(dir);
    return dir;
}

int run(const std::string& sub, const std::string& config, const fs::path& out) {
    RunOptions opts;
    opts.config_text = config;
    opts.out_dir = out;
    std::ostringstream log;
    return run_subcommand(sub, opts, log);
}

json load(const fs::path& p) {
    return json::parse(read_text(p));
}

const std::string kZ2 = "seed = 1\nsequence.preset = periodic\nsequence.maps = [[0, 0, 1]]\n"
                        "m = 2\nverify.depth = 18\nverify.budget = 2000\nsolver.budget = 2000\n"
                        "solver.depth_offset = 20\n";

} // namespace

TEST_CASE("exit code mapping") {
    CHECK(exit_code_for(ErrorKind::Config) == 2);
    CHECK(exit_code_for(ErrorKind::InvalidArgument) == 2);
    CHECK(exit_code_for(ErrorKind::NonConvergence) == 3);
    CHECK(exit_code_for(ErrorKind::SolverStalled) == 3);
    CHECK(exit_code_for(ErrorKind::TauNoConvergence) == 3);
    CHECK(exit_code_for(ErrorKind::Io) == 4);
    CHECK(exit_code_for(ErrorKind::RankDeficient) == 5);
}

TEST_CASE("verify on z^2 writes a report and a manifest") {
    const auto out = scratch("verify");
    REQUIRE(run("verify", kZ2, out) == 0);
    const auto report = load(out / "verify.json");
    CHECK(report["coeffDeviation"].get<double>() < 1e-8);
    CHECK(report["degree"] == 4);

    const auto manifest = load(out / "manifest.json");
    CHECK(manifest["subcommand"] == "verify");
    CHECK(manifest["exitCode"] == 0);
    CHECK(manifest["configFingerprint"] == fingerprint(read_text(out / "config.txt")));
    std::set<std::string> listed;
    for (const auto& f : manifest["files"])
        listed.insert(f.get<std::string>());
    std::set<std::string> present;
    for (const auto& e : fs::directory_iterator(out))
        present.insert(e.path().filename().string());
    CHECK(listed == present);
}

TEST_CASE("repeated runs give byte-identical outputs") {
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"sample", "seed = 9\nsequence.preset = quadratic_random\nsequence.bound = 0.2\n"
                   "sample.depth = 12\nsample.budget = 500\n"},
        {"conjecture", "seed = 9\nconjecture.preset = perturbed\nconjecture.m_max = 3\n"
                       "conjecture.min_budget = 2000\nsolver.depth_offset = 16\n"},
    };
    for (const auto& [sub, body] : runs) {
        const auto out = scratch(sub + "_repeat");
        REQUIRE(run(sub, body, out) == 0);
        std::map<std::string, std::string> first;
        for (const auto& e : fs::directory_iterator(out))
            first[e.path().filename().string()] = read_text(e.path());
        REQUIRE(run(sub, body, out) == 0);
        for (const auto& [name, text] : first)
            if (name != "manifest.json")
                CHECK(read_text(out / name) == text);
    }
}

TEST_CASE("sample of z^2 - 2 lies near [-2, 2]") {
    const auto out = scratch("sample");
    REQUIRE(run("sample", "seed = 2\nsequence.c = -2\nregularity.A2 = 2\nsample.depth = 20\n", out) == 0);
    const auto pts = parse_cloud_csv(read_text(out / "cloud.csv"));
    CHECK(pts.size() == 10000);
    for (const auto& z : pts) {
        CHECK(std::abs(z.imag()) < 1e-3);
        CHECK(std::abs(z.real()) < 2.0 + 1e-3);
    }
    CHECK(load(out / "cloud.provenance.json")["depth"] == 20);
}

TEST_CASE("conjecture writes one row per level") {
    const auto out = scratch("conjecture");
    REQUIRE(run("conjecture", "seed = 3\nconjecture.min_budget = 2000\nsolver.depth_offset = 16\n", out) == 0);
    const auto report = load(out / "conjecture.json");
    CHECK(report["rows"].size() == 6);
    CHECK(report["complete"] == true);
    CHECK(report["config"]["preset"] == "autonomous");
}

TEST_CASE("configuration errors exit 2 with an error record") {
    const auto out = scratch("bad");
    CHECK(run("radius", "seed = 1\neps_schedule = 3\n", out) == 2);
    const auto err = load(out / "error.json");
    CHECK(err["exitCode"] == 2);
    CHECK(err["message"].get<std::string>().find("eps_schedule") != std::string::npos);
    CHECK(load(out / "manifest.json")["exitCode"] == 2);
    CHECK(run("nonsense", "seed = 1\n", scratch("nonsense")) != 0);
}

TEST_CASE("tau non-convergence exits 3 and keeps the trace") {
    const auto out = scratch("tau");
    // A single level leaves no pair of successive shifts to compare.
    const std::string cfg = "seed = 4\nsequence.preset = periodic\nsequence.maps = [[0.1, 0.3, 1]]\n"
                            "m = 1\ntau.l_max = 2\nsolver.budget = 500\n";
    CHECK(run("tau", cfg, out) == 3);
    CHECK(fs::exists(out / "tau.csv"));
    CHECK(load(out / "tau.json")["converged"] == false);
    CHECK(load(out / "error.json")["exitCode"] == 3);
}

TEST_CASE("image shortcut is reported only on request") {
    const std::string base = "seed = 3\nsequence.preset = periodic\nsequence.maps = [[0, -2, 1]]\n"
                             "solver.budget = 1000\nsolver.depth_offset = 16\n";
    const auto plain = scratch("tau_plain");
    REQUIRE(run("tau", base, plain) == 0);
    CHECK_FALSE(load(plain / "tau.json").contains("imageShortcut"));
    const auto with = scratch("tau_image");
    REQUIRE(run("tau", base + "tau.image_shortcut = true\n", with) == 0);
    const auto j = load(with / "tau.json");
    REQUIRE(j.contains("imageShortcut"));
    CHECK(std::abs(complex_from_json(j["imageShortcut"]["center"]) - 1.0) < 1e-3);
}

TEST_CASE("command-line binary") {
    const char* cli = std::getenv("JULIACHEB_CLI");
    if (cli == nullptr)
        return;
    const auto dir = scratch("cli");
    fs::create_directories(dir);
    write_text(dir / "run.cfg", "seed = 5\nsequence.c = 0.1\n");
    const std::string base = std::string("\"") + cli + "\" radius --config \"" + (dir / "run.cfg").string() +
                             "\" --out \"" + (dir / "out").string() + "\" 2>/dev/null";
    CHECK(std::system(base.c_str()) == 0);
    CHECK(fs::exists(dir / "out" / "radius.json"));
    const std::string missing = std::string("\"") + cli + "\" radius --config \"" +
                                (dir / "absent.cfg").string() + "\" 2>/dev/null";
    const int status = std::system(missing.c_str());
    CHECK(WEXITSTATUS(status) == 4);
}
