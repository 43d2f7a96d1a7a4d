#include "juliacheb/config.hpp"

#include "juliacheb/errors.hpp"
#include "juliacheb/io.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace juliacheb {
namespace {

struct Field {
    std::string key;
    std::function<void(RunConfig&, const json&)> set; // throws std::string on a bad value
    std::function<std::optional<json>(const RunConfig&)> get;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Drops a '#' comment that is not inside a double-quoted string.
std::string strip_comment(const std::string& s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"' && (i == 0 || s[i - 1] != '\\'))
            quoted = !quoted;
        else if (s[i] == '#' && !quoted)
            return s.substr(0, i);
    }
    return s;
}

double as_real(const json& v) {
    if (!v.is_number())
        throw std::string("expected a number");
    return v.get<double>();
}

long long as_integer(const json& v) {
    if (v.is_number_integer())
        return v.get<long long>();
    if (v.is_number_unsigned())
        return static_cast<long long>(v.get<unsigned long long>());
    throw std::string("expected an integer");
}

template <class Access>
Field real_field(std::string key, Access access, double lo, double hi, bool open_lo = false) {
    return {key,
            [=](RunConfig& c, const json& v) {
                const double x = as_real(v);
                if (!(open_lo ? x > lo : x >= lo) || !(x <= hi))
                    throw std::string("value ") + format_real(x) + " outside " +
                        (open_lo ? "(" : "[") + format_real(lo) + ", " + format_real(hi) + "]";
                access(c) = x;
            },
            [=](const RunConfig& c) -> std::optional<json> {
                return json(access(c));
            }};
}

template <class T, class Access>
Field integer_field(std::string key, Access access, long long lo, long long hi) {
    return {key,
            [=](RunConfig& c, const json& v) {
                const long long x = as_integer(v);
                if (x < lo || x > hi)
                    throw "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]";
                access(c) = static_cast<T>(x);
            },
            [=](const RunConfig& c) -> std::optional<json> {
                return json(access(c));
            }};
}

template <class Access>
Field bool_field(std::string key, Access access) {
    return {key,
            [=](RunConfig& c, const json& v) {
                if (!v.is_boolean())
                    throw std::string("expected true or false");
                access(c) = v.get<bool>();
            },
            [=](const RunConfig& c) -> std::optional<json> {
                return json(access(c));
            }};
}

template <class Access>
Field choice_field(std::string key, Access access, std::set<std::string> allowed) {
    return {key,
            [=](RunConfig& c, const json& v) {
                if (!v.is_string())
                    throw std::string("expected a name");
                const auto s = v.get<std::string>();
                if (!allowed.empty() && !allowed.count(s)) {
                    std::string list;
                    for (const auto& a : allowed)
                        list += (list.empty() ? "" : ", ") + a;
                    throw "unknown value '" + s + "' (expected one of " + list + ")";
                }
                access(c) = s;
            },
            [=](const RunConfig& c) -> std::optional<json> {
                const auto& s = access(c);
                if (allowed.empty() && s.empty())
                    return std::nullopt;
                return json(s);
            }};
}

template <class Access>
Field optional_real_field(std::string key, Access access, double lo) {
    return {key,
            [=](RunConfig& c, const json& v) {
                const double x = as_real(v);
                if (!(x >= lo))
                    throw "value " + format_real(x) + " below " + format_real(lo);
                access(c) = x;
            },
            [=](const RunConfig& c) -> std::optional<json> {
                const auto& x = access(c);
                return x ? std::optional<json>(json(*x)) : std::nullopt;
            }};
}

cplx parse_complex(const json& v) {
    try {
        return complex_from_json(v);
    } catch (const Error&) {
        throw std::string("expected a number or [re, im]");
    }
}

std::vector<Field> make_fields() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<Field> f;
    f.push_back({"seed",
                 [](RunConfig& c, const json& v) {
                     if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
                         throw std::string("expected a nonnegative integer");
                     c.seed = v.get<std::uint64_t>();
                 },
                 [](const RunConfig& c) -> std::optional<json> { return json(c.seed); }});
    f.push_back(integer_field<unsigned>("threads", [](auto& c) -> auto& { return c.threads; }, 0, 4096));
    f.push_back(choice_field("output.dir", [](auto& c) -> auto& { return c.out_dir; }, {}));

    f.push_back(choice_field("sequence.preset", [](auto& c) -> auto& { return c.sequence.preset; },
                             {"quadratic", "quadratic_perturbed", "quadratic_random", "periodic"}));
    f.push_back({"sequence.c",
                 [](RunConfig& c, const json& v) { c.sequence.c = parse_complex(v); },
                 [](const RunConfig& c) -> std::optional<json> { return to_json(c.sequence.c); }});
    f.push_back(real_field("sequence.bound", [](auto& c) -> auto& { return c.sequence.bound; }, 0.0, 1e6));
    f.push_back({"sequence.seed",
                 [](RunConfig& c, const json& v) {
                     if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
                         throw std::string("expected a nonnegative integer");
                     c.sequence.seed = v.get<std::uint64_t>();
                 },
                 [](const RunConfig& c) -> std::optional<json> {
                     return c.sequence.seed ? std::optional<json>(json(*c.sequence.seed)) : std::nullopt;
                 }});
    f.push_back({"sequence.maps",
                 [](RunConfig& c, const json& v) {
                     if (!v.is_array() || v.empty())
                         throw std::string("expected a nonempty list of coefficient lists");
                     std::vector<std::vector<cplx>> maps;
                     for (const auto& p : v) {
                         if (!p.is_array() || p.size() < 3)
                             throw std::string("each map needs at least 3 coefficients (degree >= 2)");
                         std::vector<cplx> coeffs;
                         for (const auto& a : p)
                             coeffs.push_back(parse_complex(a));
                         if (coeffs.back() == cplx{})
                             throw std::string("leading coefficient must be nonzero");
                         maps.push_back(std::move(coeffs));
                     }
                     c.sequence.maps = std::move(maps);
                 },
                 [](const RunConfig& c) -> std::optional<json> {
                     if (c.sequence.maps.empty())
                         return std::nullopt;
                     json out = json::array();
                     for (const auto& p : c.sequence.maps) {
                         json coeffs = json::array();
                         for (const auto& a : p)
                             coeffs.push_back(to_json(a));
                         out.push_back(coeffs);
                     }
                     return out;
                 }});
    f.push_back(integer_field<int>("sequence.max_depth", [](auto& c) -> auto& { return c.sequence.max_depth; }, 1, 4096));
    f.push_back(optional_real_field("regularity.A1", [](auto& c) -> auto& { return c.sequence.a1; }, 0.0));
    f.push_back(optional_real_field("regularity.A2", [](auto& c) -> auto& { return c.sequence.a2; }, 0.0));
    f.push_back(optional_real_field("regularity.A3", [](auto& c) -> auto& { return c.sequence.a3; }, 0.0));
    f.push_back(integer_field<int>("regularity.check_depth", [](auto& c) -> auto& { return c.sequence.check_depth; }, 1, 4096));

    f.push_back(real_field("radius.margin", [](auto& c) -> auto& { return c.radius_margin; }, 1.0, 100.0));

    f.push_back(integer_field<int>("sample.depth", [](auto& c) -> auto& { return c.sample_depth; }, 1, 4096));
    f.push_back(integer_field<std::size_t>("sample.budget", [](auto& c) -> auto& { return c.sample_budget; }, 1, 1LL << 32));
    f.push_back(choice_field("sample.strategy", [](auto& c) -> auto& { return c.sample_strategy; }, {"stochastic", "tree"}));

    f.push_back(integer_field<int>("cheb.degree", [](auto& c) -> auto& { return c.cheb_degree; }, 1, 4096));
    f.push_back(choice_field("cheb.input", [](auto& c) -> auto& { return c.cheb_input; }, {}));

    f.push_back(integer_field<int>("m", [](auto& c) -> auto& { return c.m; }, 1, 24));
    f.push_back(integer_field<int>("tau.l_max", [](auto& c) -> auto& { return c.tau_l_max; }, 0, 4096));
    f.push_back(bool_field("tau.image_shortcut", [](auto& c) -> auto& { return c.tau_image_shortcut; }));

    f.push_back(integer_field<int>("verify.depth", [](auto& c) -> auto& { return c.verify_depth; }, 1, 4096));
    f.push_back(integer_field<std::size_t>("verify.budget", [](auto& c) -> auto& { return c.verify_budget; }, 1, 1LL << 32));

    f.push_back(integer_field<int>("widom.m_max", [](auto& c) -> auto& { return c.widom_m_max; }, 1, 24));
    f.push_back({"widom.degrees",
                 [](RunConfig& c, const json& v) {
                     if (!v.is_array())
                         throw std::string("expected a list of degrees");
                     std::vector<int> degrees;
                     for (const auto& d : v) {
                         const long long n = as_integer(d);
                         if (n < 1 || n > 4096)
                             throw "degree " + std::to_string(n) + " outside [1, 4096]";
                         degrees.push_back(static_cast<int>(n));
                     }
                     c.widom_degrees = std::move(degrees);
                 },
                 [](const RunConfig& c) -> std::optional<json> { return json(c.widom_degrees); }});

    f.push_back(choice_field("conjecture.preset", [](auto& c) -> auto& { return c.conjecture_preset; }, {"autonomous", "perturbed"}));
    f.push_back(integer_field<int>("conjecture.m_max", [](auto& c) -> auto& { return c.conjecture_m_max; }, 2, 20));
    f.push_back(real_field("conjecture.budget_scale", [](auto& c) -> auto& { return c.conjecture_budget_scale; }, 0.0, 1e3, true));
    f.push_back(integer_field<std::size_t>("conjecture.min_budget", [](auto& c) -> auto& { return c.conjecture_min_budget; }, 1, 1LL << 32));
    f.push_back(integer_field<std::size_t>("conjecture.per_degree", [](auto& c) -> auto& { return c.conjecture_per_degree; }, 0, 1 << 20));

    f.push_back(integer_field<int>("distances.k_max", [](auto& c) -> auto& { return c.distances_k_max; }, 2, 4096));
    f.push_back(integer_field<int>("distances.resolution", [](auto& c) -> auto& { return c.distances_resolution; }, 2, 1 << 14));
    f.push_back(integer_field<int>("distances.bounded_depth", [](auto& c) -> auto& { return c.distances_bounded_depth; }, 1, 4096));

    f.push_back(integer_field<std::size_t>("solver.budget", [](auto& c) -> auto& { return c.solver_budget; }, 1, 1LL << 32));
    f.push_back(integer_field<int>("solver.depth_offset", [](auto& c) -> auto& { return c.depth_offset; }, 8, 1024));
    f.push_back(integer_field<int>("solver.tau_span", [](auto& c) -> auto& { return c.tau_span; }, 2, 1024));
    f.push_back(real_field("solver.tau_tolerance", [](auto& c) -> auto& { return c.tau_tolerance; }, 0.0, 1.0, true));
    f.push_back(integer_field<int>("solver.refine_candidates", [](auto& c) -> auto& { return c.refine_candidates; }, 0, 1 << 16));
    f.push_back(integer_field<int>("solver.refine_rounds", [](auto& c) -> auto& { return c.refine_rounds; }, 0, 64));
    f.push_back(real_field("roots.tolerance", [](auto& c) -> auto& { return c.root_tolerance; }, 0.0, 1e-2, true));
    f.push_back(integer_field<int>("roots.max_sweeps", [](auto& c) -> auto& { return c.root_max_sweeps; }, 1, 1 << 20));
    f.push_back(integer_field<int>("lawson.max_iterations", [](auto& c) -> auto& { return c.lawson_max_iterations; }, 1, 1 << 24));
    f.push_back(real_field("lawson.tolerance", [](auto& c) -> auto& { return c.lawson_tolerance; }, 0.0, 1.0, true));
    f.push_back(integer_field<int>("lawson.polish_after", [](auto& c) -> auto& { return c.lawson_polish_after; }, 1, 1 << 24));
    f.push_back(bool_field("lawson.polish", [](auto& c) -> auto& { return c.lawson_polish; }));
    f.push_back(real_field("lawson.polish_gap", [](auto& c) -> auto& { return c.lawson_polish_gap; }, 0.0, 1.0, true));
    f.push_back(real_field("lawson.stall_gap", [](auto& c) -> auto& { return c.lawson_stall_gap; }, 0.0, inf, true));
    return f;
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = make_fields();
    return table;
}

json parse_value(const std::string& raw) {
    try {
        return json::parse(raw);
    } catch (const json::parse_error&) {
        // Bare words are strings: `preset = quadratic`.
        return json(raw);
    }
}

} // namespace

RunConfig parse_config(const std::string& text, const ParseOptions& options) {
    std::map<std::string, const Field*> by_key;
    for (const auto& field : fields())
        by_key[field.key] = &field;

    RunConfig config;
    std::vector<std::string> errors;
    std::map<std::string, int> seen;
    std::istringstream in(text);
    std::string line;
    for (int number = 1; std::getline(in, line); ++number) {
        const std::string body = trim(strip_comment(line));
        if (body.empty())
            continue;
        const auto at = std::to_string(number);
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + at + ": expected 'key = value', got '" + body + "'");
            continue;
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string raw = trim(body.substr(eq + 1));
        const auto it = by_key.find(key);
        if (it == by_key.end()) {
            errors.push_back("line " + at + ": unknown key '" + key + "'");
            continue;
        }
        if (auto prev = seen.find(key); prev != seen.end()) {
            errors.push_back("line " + at + ": key '" + key + "' repeats line " +
                             std::to_string(prev->second));
            continue;
        }
        seen[key] = number;
        if (raw.empty()) {
            errors.push_back("line " + at + ": key '" + key + "' has no value");
            continue;
        }
        try {
            it->second->set(config, parse_value(raw));
        } catch (const std::string& message) {
            errors.push_back("line " + at + ": key '" + key + "': " + message);
        } catch (const json::exception& e) {
            errors.push_back("line " + at + ": key '" + key + "': " + e.what());
        }
    }

    if (options.seed_override)
        config.seed = *options.seed_override;
    else if (!seen.count("seed"))
        errors.push_back("key 'seed' is required");

    if (config.sequence.preset == "periodic" && config.sequence.maps.empty())
        errors.push_back("key 'sequence.maps' is required for the periodic preset");
    if (config.sequence.preset != "periodic" && !config.sequence.maps.empty())
        errors.push_back("key 'sequence.maps' applies only to the periodic preset");
    if (config.tau_l_max != 0 && config.tau_l_max <= config.m)
        errors.push_back("key 'tau.l_max' must exceed m");

    if (errors.empty() && options.check_regularity) {
        try {
            const PolynomialSequence seq = build_sequence(config);
            const ValidationReport report = validate_regularity(
                seq, std::min(config.sequence.check_depth, seq.max_depth()));
            for (const auto& failure : report.failures())
                errors.push_back("key 'regularity': " + failure);
        } catch (const Error& e) {
            errors.push_back(std::string("key 'sequence': ") + e.what());
        }
    }

    if (!errors.empty()) {
        std::string message = "invalid configuration:";
        for (const auto& e : errors)
            message += "\n  " + e;
        throw ConfigError(message);
    }
    return config;
}

std::string emit_config(const RunConfig& config) {
    std::string out;
    for (const auto& field : fields()) {
        const auto value = field.get(config);
        if (!value)
            continue;
        out += field.key + " = " + value->dump() + "\n";
    }
    return out;
}

PolynomialSequence build_sequence(const RunConfig& config, int min_depth) {
    const auto& s = config.sequence;
    const int depth = std::max(s.max_depth, min_depth);
    PolynomialSequence seq = [&] {
        if (s.preset == "quadratic")
            return PolynomialSequence::quadratic_constant(s.c, depth);
        if (s.preset == "quadratic_perturbed")
            return PolynomialSequence::quadratic_perturbed(s.c, depth);
        if (s.preset == "quadratic_random")
            return PolynomialSequence::quadratic_random(s.bound, s.seed.value_or(config.seed), depth);
        if (s.preset == "periodic") {
            std::vector<Polynomial> polys;
            for (const auto& coeffs : s.maps)
                polys.emplace_back(coeffs);
            return PolynomialSequence::periodic(std::move(polys), depth);
        }
        throw ConfigError("unknown sequence preset '" + s.preset + "'");
    }();
    if (s.a1 || s.a2 || s.a3) {
        RegularityConstants declared = seq.declared();
        if (s.a1)
            declared.a1 = *s.a1;
        if (s.a2)
            declared.a2 = *s.a2;
        if (s.a3)
            declared.a3 = *s.a3;
        seq = seq.with_declared(declared);
    }
    return seq;
}

LawsonOptions lawson_options(const RunConfig& c) {
    LawsonOptions o;
    o.max_iterations = c.lawson_max_iterations;
    o.tolerance = c.lawson_tolerance;
    o.polish_after = c.lawson_polish_after;
    o.polish = c.lawson_polish;
    o.polish_gap = c.lawson_polish_gap;
    o.stall_gap = c.lawson_stall_gap;
    return o;
}

SolverParams solver_params(const RunConfig& c) {
    SolverParams p;
    p.radius_margin = c.radius_margin;
    p.budget = c.solver_budget;
    p.depth_offset = c.depth_offset;
    p.tau_span = c.tau_span;
    p.tau_tolerance = c.tau_tolerance;
    p.refine_candidates = c.refine_candidates;
    p.refine_rounds = c.refine_rounds;
    p.seed = c.seed;
    p.pullback.threads = c.threads;
    p.pullback.roots.tolerance = c.root_tolerance;
    p.pullback.roots.max_sweeps = c.root_max_sweeps;
    p.lawson = lawson_options(c);
    return p;
}

} // namespace juliacheb
