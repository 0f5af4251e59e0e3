#pragma once

// JSON and CSV formats.
//
//   Descriptor       {"name": string, "params": {key: number}}
//   SpectralMeasure  {"atoms": [{"loc": x, "mass": m}], "density": {"edges": [...], "values": [...]}}
//   GammaMeasure     same shape, plus optional "basis": "flat" | "s2" inside "density"
//   product measure  {"factors": [<SpectralMeasure>, ...]}
//   FrequencySample  {"seed": int, "total_mass": x, "freqs": [...], "phases": [...]}
//
// Matrices are header-free row-major CSV. Sampled profiles are CSV with columns
// t,value (a header line is written and optional on read). Numbers in CSV are
// written with 17 significant digits.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bochner/error.hpp"
#include "bochner/features.hpp"
#include "bochner/gram.hpp"
#include "bochner/product.hpp"
#include "bochner/spectral.hpp"
#include "json.hpp"

namespace bochner {

using Json = nlohmann::json;

void to_json(Json& j, const Descriptor& d);
void from_json(const Json& j, Descriptor& d);
void to_json(Json& j, const SpectralMeasure& mu);
void from_json(const Json& j, SpectralMeasure& mu);
void to_json(Json& j, const GammaMeasure& gamma);
void from_json(const Json& j, GammaMeasure& gamma);
void to_json(Json& j, const ProductSpectralMeasure& mu);
void from_json(const Json& j, ProductSpectralMeasure& mu);
void to_json(Json& j, const FrequencySample& s);
void from_json(const Json& j, FrequencySample& s);

Json verdict_json(const DefinitenessVerdict& v, const char* key);
Json rejection_json(const Rejection& r);

std::string format_number(double x);

Eigen::MatrixXd read_matrix_csv(std::istream& in);
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);

/// One number per line or comma-separated; blank lines ignored.
std::vector<double> read_values_csv(std::istream& in);

std::pair<std::vector<double>, std::vector<double>> read_profile_csv(std::istream& in);
void write_profile_csv(std::ostream& out, const std::vector<double>& t,
                       const std::vector<double>& values);

}  // namespace bochner
