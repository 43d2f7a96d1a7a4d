#pragma once

#include "juliacheb/julia.hpp"
#include "juliacheb/structural.hpp"
#include "juliacheb/widom.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

namespace juliacheb {

using json = nlohmann::ordered_json;

/// Shortest-round-trip-safe decimal: 17 significant digits.
std::string format_real(double x);

json to_json(cplx z); ///< [re, im]
cplx complex_from_json(const json& j);

/// CSV with header re,im.
std::string cloud_csv(std::span<const cplx> points);
/// Inverse of cloud_csv; a header line is optional.
std::vector<cplx> parse_cloud_csv(const std::string& text);
json to_json(const Provenance& provenance);
json to_json(const ValidationReport& report);
json to_json(const TauResult& result);
json to_json(const VerificationReport& report);
json to_json(const ChebyshevSolution& solution);
json to_json(const DistanceProfile& profile);
json to_json(const CapacityResult& capacity);
json to_json(const WidomRow& row);
/// Rows, growth summary and the run fingerprint (preset, seed, depths, budgets).
json to_json(const WidomReport& report, const std::string& config_fingerprint);

/// Polynomial as a list of [re, im] coefficients, ascending powers.
json coefficients_json(const Polynomial& p);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fingerprint(const std::string& text);

void write_text(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

} // namespace juliacheb
