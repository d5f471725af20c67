#include "siegelkit/json_io.hpp"

#include <fstream>
#include <cctype>
#include <sstream>
#include <vector>

namespace siegelkit {

namespace {

using nlohmann::json;

json matrix_to_json(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

RMatrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols, const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    throw Error(ErrorCode::InvalidArgument, std::string(what) + ": expected " + std::to_string(rows) + " rows");
  RMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw Error(ErrorCode::InvalidArgument, std::string(what) + ": ragged row");
    for (Eigen::Index k = 0; k < cols; ++k) {
      if (!row[k].is_number()) throw Error(ErrorCode::InvalidArgument, std::string(what) + ": non-numeric entry");
      m(i, k) = row[k].get<double>();
    }
  }
  return m;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse number '" + s + "'");
  }
  while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
  if (used != s.size()) throw Error(ErrorCode::InvalidArgument, "trailing characters in '" + s + "'");
  return v;
}

RVector parse_real_vector(const std::string& text) {
  const auto parts = split(text, ',');
  RVector v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_double(parts[i]);
  return v;
}

}  // namespace

json to_json(const SiegelPoint& tau) {
  return {{"g", tau.genus()},
          {"tau_re", matrix_to_json(tau.tau().real())},
          {"tau_im", matrix_to_json(tau.tau().imag())}};
}

SiegelPoint siegel_from_json(const json& j) {
  if (!j.is_object() || !j.contains("g") || !j.contains("tau_re") || !j.contains("tau_im"))
    throw Error(ErrorCode::InvalidArgument, "SiegelPoint JSON needs g, tau_re, tau_im");
  if (!j["g"].is_number_integer() || j["g"].get<int>() < 1)
    throw Error(ErrorCode::InvalidArgument, "g must be a positive integer");
  const int g = j["g"].get<int>();
  const RMatrix re = matrix_from_json(j["tau_re"], g, g, "tau_re");
  const RMatrix im = matrix_from_json(j["tau_im"], g, g, "tau_im");
  CMatrix tau(g, g);
  tau.real() = re;
  tau.imag() = im;
  return validate_siegel(tau);
}

SiegelPoint load_siegel_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, path.string() + ": " + e.what());
  }
  return siegel_from_json(j);
}

json to_json(const SymplecticMatrix& M) {
  return {{"A", matrix_to_json(M.A())},
          {"B", matrix_to_json(M.B())},
          {"C", matrix_to_json(M.C())},
          {"D", matrix_to_json(M.D())}};
}

SymplecticMatrix symplectic_from_json(const json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("B") || !j.contains("C") || !j.contains("D"))
    throw Error(ErrorCode::InvalidArgument, "SymplecticMatrix JSON needs A, B, C, D");
  const auto g = static_cast<Eigen::Index>(j["A"].size());
  return SymplecticMatrix::from_blocks(matrix_from_json(j["A"], g, g, "A"), matrix_from_json(j["B"], g, g, "B"),
                                       matrix_from_json(j["C"], g, g, "C"), matrix_from_json(j["D"], g, g, "D"));
}

CVector parse_complex_vector(const std::string& text) {
  const auto entries = split(text, ';');
  if (entries.empty()) throw Error(ErrorCode::InvalidArgument, "empty complex vector");
  CVector v(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto parts = split(entries[i], ',');
    if (parts.size() != 2) throw Error(ErrorCode::InvalidArgument, "complex entries are written 're,im'");
    v(static_cast<Eigen::Index>(i)) = cplx(parse_double(parts[0]), parse_double(parts[1]));
  }
  return v;
}

ThetaCharacteristic parse_characteristic(const std::string& text, int g) {
  if (text.empty()) return ThetaCharacteristic::zero(g);
  const auto halves = split(text, ';');
  if (halves.size() != 2) throw Error(ErrorCode::InvalidArgument, "characteristic is written 'a;b'");
  ThetaCharacteristic ch{parse_real_vector(halves[0]), parse_real_vector(halves[1])};
  if (ch.a.size() != g || ch.b.size() != g)
    throw Error(ErrorCode::DimensionMismatch, "characteristic vectors must have g entries");
  return ch;
}

}  // namespace siegelkit
