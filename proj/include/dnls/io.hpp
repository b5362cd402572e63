#pragma once

#include "dnls/continuation.hpp"
#include "dnls/semigroup.hpp"
#include "dnls/spectra.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace dnls {

/// Every file starts with this comment line.
std::string hash_line(const std::string& config_hash);

/// First-line config hash of a written file; empty when absent.
std::string read_config_hash(const std::filesystem::path& path);

/// Throws ConfigError unless every file carries the same config hash.
std::string require_single_hash(const std::vector<std::filesystem::path>& paths);

/// index_1,...,index_d,value
void write_field_csv(std::ostream& out, const Field& f, const std::string& config_hash);
/// The grid is taken from the index range; comment lines are skipped.
Field read_field_csv(std::istream& in, Boundary boundary = Boundary::zero_padding, std::string* config_hash = nullptr);

/// <stem>.csv plus the sidecar <stem>.meta (key = value).
void write_profile(const std::filesystem::path& csv_path, const WaveProfile& w, const std::string& config_hash);
WaveProfile read_profile(const std::filesystem::path& csv_path, std::string* config_hash = nullptr);

void write_curve_csv(std::ostream& out, const ContinuationCurve& c, const std::string& config_hash);
/// Columns share abscissae: e.g. lambda,h,c.
void write_scalar_csv(std::ostream& out, const std::string& xname, const std::vector<ScalarCurve>& columns,
                      const std::string& config_hash);
void write_spectrum_csv(std::ostream& out, const Spectrum& s, const std::string& config_hash);
void write_kernel_csv(std::ostream& out, const HeatKernel& k, const std::string& config_hash);

nlohmann::json report_json(const StabilityReport& r, const std::string& config_hash);
/// Flat key = value rendering of report_json (eigenvalues omitted; they go to the spectrum CSV).
std::string report_text(const StabilityReport& r, const std::string& config_hash);

/// %.17g
std::string format_number(double x);

}  // namespace dnls
