#pragma once

#include "qpd/chaos_scalar.hpp"
#include "qpd/classifiers.hpp"
#include "qpd/dynamics.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string_view>

namespace qpd::io {

using Json = nlohmann::ordered_json;

/// System definition: {"name", "n", "A", "B", "lambda"}; "name" is optional.
/// Throws ParseError (with line and column) for malformed JSON and
/// SchemaError for missing, mistyped or inconsistent keys.
QPSystem parse_system(std::string_view text);
QPSystem load_system(const std::filesystem::path& path);

Json system_to_json(const QPSystem& sys);
Json matrix_to_json(const Matrix& m);
Json vector_to_json(const Vector& v);

/// Non-finite doubles are written as the strings "inf", "-inf" and "nan" so
/// that witnesses survive a round trip.
Json number_to_json(double x);
double number_from_json(const Json& j);

Json verdict_to_json(const TheoremVerdict& v);
TheoremVerdict verdict_from_json(const Json& j);

/// Header t,x_1,...,x_n; 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// Header rho,detected,detail.
void write_scan_csv(std::ostream& out, const chaos::ScanResult& scan);
Json scan_summary(const chaos::ScanResult& scan);

/// %.17g, the shortest fixed format that round-trips every double.
std::string format_double(double x);

/// Shortest decimal form that reads back to the same double.
std::string format_shortest(double x);

}  // namespace qpd::io
