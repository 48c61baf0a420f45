#pragma once

// Serialization: family descriptors and local bases as JSON, knot and
// control-point text files, round-trip-safe float formatting.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gbspline/builder.hpp"
#include "gbspline/families.hpp"

namespace gbs {

/// {"kind": "linear" | "trig" | "exp" | "generic", "omega": w}. Generic
/// families serialize their closed-form base ({"base": "trig"}) when they
/// have one and can only be read back in that case.
nlohmann::json family_to_json(const KnotFunctionFamily& family);
KnotFunctionFamily family_from_json(const nlohmann::json& j);

/// {"degree", "knots", "family", "polys", "genfunc", "scal", "deltas", "tol"}.
nlohmann::json basis_to_json(const LocalBasis& basis);
/// Validates shapes; throws ParseError.
LocalBasis basis_from_json(const nlohmann::json& j);

/// Top basis fields plus "ladder": [lower degrees, ascending].
nlohmann::json ladder_to_json(const BasisLadder& ladder);
BasisLadder ladder_from_json(const nlohmann::json& j);

/// Decimal floats separated by whitespace, newlines or commas; `#` starts a
/// comment running to the end of the line.
std::vector<double> parse_numbers(std::string_view text);

/// Reads `source` as a file when one exists at that path, otherwise parses it
/// as an inline list.
std::vector<double> read_knots(const std::string& source);

/// One point per line (or per `;` when inline), coordinates separated by
/// whitespace or commas.
std::vector<std::vector<double>> read_points(const std::string& source);

std::string read_text_file(const std::string& path);

/// 17 significant digits.
std::string format_double(double x);

}  // namespace gbs
