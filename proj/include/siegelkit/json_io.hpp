#pragma once

// JSON encodings of Siegel points and symplectic matrices, and parsers for
// the compact vector syntax used on the command line.
//
//   SiegelPoint:      {"g": int, "tau_re": [[...]], "tau_im": [[...]]}
//   SymplecticMatrix: {"A": [[...]], "B": [[...]], "C": [[...]], "D": [[...]]}
//
// Matrices are row-major arrays of IEEE doubles.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "siegelkit/siegel.hpp"
#include "siegelkit/theta.hpp"

namespace siegelkit {

nlohmann::json to_json(const SiegelPoint& tau);
SiegelPoint siegel_from_json(const nlohmann::json& j);
SiegelPoint load_siegel_file(const std::filesystem::path& path);

nlohmann::json to_json(const SymplecticMatrix& M);
SymplecticMatrix symplectic_from_json(const nlohmann::json& j);

/// "re,im;re,im;..." -> complex vector.
CVector parse_complex_vector(const std::string& text);
/// "a1,...,ag;b1,...,bg" -> characteristic. An empty string gives (0, 0).
ThetaCharacteristic parse_characteristic(const std::string& text, int g);

}  // namespace siegelkit
