#include "juliacheb/io.hpp"

#include "juliacheb/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace juliacheb {

std::string format_real(double x) {
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json to_json(cplx z) {
    return json::array({z.real(), z.imag()});
}

cplx complex_from_json(const json& j) {
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw InvalidArgument("expected a number or [re, im], got " + j.dump());
}

std::string cloud_csv(std::span<const cplx> points) {
    std::string out = "re,im\n";
    out.reserve(points.size() * 48);
    for (const auto& z : points) {
        out += format_real(z.real());
        out += ',';
        out += format_real(z.imag());
        out += '\n';
    }
    return out;
}

std::vector<cplx> parse_cloud_csv(const std::string& text) {
    std::vector<cplx> points;
    std::istringstream in(text);
    std::string line;
    for (int number = 1; std::getline(in, line); ++number) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || (number == 1 && line == "re,im"))
            continue;
        const auto comma = line.find(',');
        try {
            if (comma == std::string::npos)
                throw std::invalid_argument("missing comma");
            const double re = std::stod(line.substr(0, comma));
            const double im = std::stod(line.substr(comma + 1));
            points.emplace_back(re, im);
        } catch (const std::exception&) {
            throw IoError("cloud CSV line " + std::to_string(number) + ": cannot parse '" + line + "'");
        }
    }
    return points;
}

json to_json(const Provenance& p) {
    return {{"depth", p.depth},
            {"seed", p.seed},
            {"strategy", p.strategy},
            {"sequence", p.sequence},
            {"resampled", p.resampled}};
}

namespace {
json constants_json(const RegularityConstants& c) {
    return {{"A1", c.a1}, {"A2", c.a2}, {"A3", c.a3}};
}
} // namespace

json to_json(const ValidationReport& r) {
    json failures = json::array();
    for (const auto& f : r.failures())
        failures.push_back(f);
    return {{"upToDepth", r.up_to},
            {"declared", constants_json(r.declared)},
            {"realized", constants_json(r.realized)},
            {"condition1", r.leading_bound_ok},
            {"condition2", r.coefficient_ratio_ok},
            {"condition3", r.growth_bound_ok},
            {"passed", r.passed()},
            {"failures", failures}};
}

json to_json(const TauResult& r) {
    json trace = json::array();
    for (const auto& e : r.trace)
        trace.push_back({{"l", e.l},
                         {"tau", to_json(e.tau)},
                         {"norm", e.norm},
                         {"cloudSize", e.cloud_size}});
    return {{"tau", to_json(r.tau)},
            {"converged", r.converged},
            {"convergedAt", r.converged_at},
            {"trace", trace}};
}

json coefficients_json(const Polynomial& p) {
    json out = json::array();
    for (const auto& c : p.coeffs())
        out.push_back(to_json(c));
    return out;
}

json to_json(const VerificationReport& r) {
    return {{"degree", r.degree},
            {"m", r.m},
            {"tau", to_json(r.tau)},
            {"structuralNorm", r.structural_norm},
            {"minimaxNorm", r.minimax_norm},
            {"coeffDeviation", r.coeff_deviation},
            {"normGap", r.norm_gap},
            {"sampleSize", r.sample_size},
            {"depth", r.depth},
            {"seed", r.seed},
            {"structuralDeepNorm", r.structural_deep_norm},
            {"optimalityOk", r.optimality_ok},
            {"certificateGap", r.certificate_gap},
            {"structural", coefficients_json(r.structural)},
            {"minimax", coefficients_json(r.minimax)}};
}

json to_json(const ChebyshevSolution& s) {
    json out = {{"degree", s.degree},
                {"coefficients", coefficients_json(s.monic)},
                {"supNorm", s.sup_norm},
                {"extremalCount", s.extremal_count},
                {"lowerBound", s.lower_bound},
                {"certificateGap", s.certificate_gap},
                {"iterations", s.iterations},
                {"converged", s.converged}};
    if (s.tau)
        out["tau"] = to_json(*s.tau);
    return out;
}

json to_json(const DistanceProfile& d) {
    return {{"a", d.values}, {"cell", d.cell}, {"cellDiagonal", d.cell_diagonal()},
            {"kloudSize", d.kloud_size}};
}

json to_json(const CapacityResult& c) {
    return {{"capacity", c.capacity}, {"terms", c.terms}, {"tailBound", c.tail_bound}};
}

json to_json(const WidomRow& r) {
    return {{"m", r.m},
            {"degree", r.degree},
            {"tau", to_json(r.tau)},
            {"norm", r.norm},
            {"capacity", r.capacity},
            {"widom", r.widom}};
}

json to_json(const WidomReport& r, const std::string& config_fingerprint) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back(to_json(row));
    json out = {{"config",
                 {{"fingerprint", config_fingerprint},
                  {"preset", r.preset},
                  {"seed", r.seed},
                  {"depths", r.depths},
                  {"budgets", r.budgets}}},
                {"rows", rows},
                {"ratios", r.ratios},
                {"loglogSlope", r.loglog_slope},
                {"complete", !r.failure.has_value()}};
    if (r.failure)
        out["failure"] = *r.failure;
    return out;
}

std::string fingerprint(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    out.close();
    if (!out)
        throw IoError("failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace juliacheb
