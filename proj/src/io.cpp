#include "gbspline/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace gbs {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

double as_double(const json& j, const char* what) {
  if (!j.is_number()) parse_fail(std::string(what) + " must be a number");
  return j.get<double>();
}

Pair as_pair(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) parse_fail(std::string(what) + " must be a pair");
  return {as_double(j[0], what), as_double(j[1], what)};
}

}  // namespace

json family_to_json(const KnotFunctionFamily& family) {
  json j;
  j["kind"] = std::string(to_string(family.kind()));
  if (family.kind() != FamilyKind::Linear) j["omega"] = family.omega();
  if (family.kind() == FamilyKind::Generic) {
    j["base"] = family.base();
    j["abs_tol"] = family.quadrature().abs_tol;
  }
  return j;
}

KnotFunctionFamily family_from_json(const json& j) {
  const auto kind = require(j, "kind");
  if (!kind.is_string()) parse_fail("family kind must be a string");
  const auto name = kind.get<std::string>();
  auto omega = [&] { return as_double(require(j, "omega"), "omega"); };
  if (name == "linear") return KnotFunctionFamily::linear();
  if (name == "trig") return KnotFunctionFamily::trig(omega());
  if (name == "exp") return KnotFunctionFamily::exp(omega());
  if (name == "generic") {
    const std::string base = j.value("base", std::string{});
    QuadratureConfig cfg;
    if (j.contains("abs_tol")) cfg.abs_tol = as_double(j.at("abs_tol"), "abs_tol");
    if (base == "linear") return KnotFunctionFamily::generic_from(KnotFunctionFamily::linear(), cfg);
    if (base == "trig") return KnotFunctionFamily::generic_from(KnotFunctionFamily::trig(omega()), cfg);
    if (base == "exp") return KnotFunctionFamily::generic_from(KnotFunctionFamily::exp(omega()), cfg);
    parse_fail("generic family without a closed-form base cannot be reconstructed");
  }
  parse_fail("unknown family kind \"" + name + "\"");
}

json basis_to_json(const LocalBasis& basis) {
  json polys = json::array();
  json genfunc = json::array();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    json prow = json::array();
    json grow = json::array();
    for (std::size_t k = 0; k < basis.polys.cols(); ++k) {
      prow.push_back(basis.polys(i, k).coeffs);
      const Pair& g = basis.genfunc(i, k);
      grow.push_back({g[0], g[1]});
    }
    polys.push_back(std::move(prow));
    genfunc.push_back(std::move(grow));
  }
  json scal = json::array();
  for (const auto& m : basis.scal) scal.push_back({{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}});

  json out;
  out["degree"] = basis.degree;
  out["knots"] = std::vector<double>(basis.knots.values().begin(), basis.knots.values().end());
  out["family"] = family_to_json(basis.family);
  out["polys"] = std::move(polys);
  out["genfunc"] = std::move(genfunc);
  out["scal"] = std::move(scal);
  out["deltas"] = basis.deltas;
  out["tol"] = basis.tol;
  return out;
}

LocalBasis basis_from_json(const json& j) {
  LocalBasis b;
  const auto& degree = require(j, "degree");
  if (!degree.is_number_integer() || degree.get<int>() < 1) parse_fail("degree must be an integer >= 1");
  b.degree = degree.get<int>();

  const auto& knots = require(j, "knots");
  if (!knots.is_array()) parse_fail("knots must be an array");
  std::vector<double> t;
  for (const auto& x : knots) t.push_back(as_double(x, "knot"));
  b.knots = KnotVector(std::move(t));
  b.family = family_from_json(require(j, "family"));
  b.tol = j.contains("tol") ? as_double(j.at("tol"), "tol") : kDefaultTol;

  const std::size_t n = b.knots.basis_count(b.degree);
  const auto slots = static_cast<std::size_t>(b.degree) + 1;
  const auto width = static_cast<std::size_t>(b.degree) - 1;
  if (n == 0) parse_fail("too few knots for the stated degree");

  const auto& polys = require(j, "polys");
  const auto& genfunc = require(j, "genfunc");
  if (!polys.is_array() || polys.size() != n || !genfunc.is_array() || genfunc.size() != n) {
    parse_fail("polys/genfunc must hold " + std::to_string(n) + " basis functions");
  }
  b.polys = Grid<LocalPoly>(n, slots);
  b.genfunc = Grid<Pair>(n, slots);
  for (std::size_t i = 0; i < n; ++i) {
    if (!polys[i].is_array() || polys[i].size() != slots || !genfunc[i].is_array() ||
        genfunc[i].size() != slots) {
      parse_fail("basis function " + std::to_string(i) + " needs " + std::to_string(slots) + " slots");
    }
    for (std::size_t k = 0; k < slots; ++k) {
      const auto& c = polys[i][k];
      if (!c.is_array() || c.size() != width) {
        parse_fail("polynomials need " + std::to_string(width) + " coefficients");
      }
      for (const auto& x : c) b.polys(i, k).coeffs.push_back(as_double(x, "coefficient"));
      b.genfunc(i, k) = as_pair(genfunc[i][k], "genfunc entry");
    }
  }

  if (j.contains("scal")) {
    const auto& scal = j.at("scal");
    if (!scal.is_array() || scal.size() != b.knots.interval_count()) parse_fail("scal needs one matrix per interval");
    for (const auto& m : scal) {
      if (!m.is_array() || m.size() != 2) parse_fail("scal entries must be 2x2");
      const Pair r0 = as_pair(m[0], "scal row");
      const Pair r1 = as_pair(m[1], "scal row");
      b.scal.push_back(Mat2{{r0[0], r0[1], r1[0], r1[1]}});
    }
  }
  if (j.contains("deltas")) {
    for (const auto& x : j.at("deltas")) b.deltas.push_back(as_double(x, "delta"));
    if (b.degree > 1 && b.deltas.size() != n + 1) parse_fail("deltas need n + 1 entries");
  }
  return b;
}

json ladder_to_json(const BasisLadder& ladder) {
  json out = basis_to_json(ladder.top());
  json lower = json::array();
  for (std::size_t k = 0; k + 1 < ladder.levels.size(); ++k) lower.push_back(basis_to_json(ladder.levels[k]));
  out["ladder"] = std::move(lower);
  return out;
}

BasisLadder ladder_from_json(const json& j) {
  BasisLadder ladder;
  if (j.contains("ladder")) {
    for (const auto& level : j.at("ladder")) ladder.levels.push_back(basis_from_json(level));
  }
  ladder.levels.push_back(basis_from_json(j));
  for (std::size_t k = 1; k < ladder.levels.size(); ++k) {
    if (ladder.levels[k].degree != ladder.levels[k - 1].degree + 1) {
      parse_fail("ladder degrees must ascend by one");
    }
  }
  return ladder;
}

std::vector<double> parse_numbers(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (c == '#') {
      while (pos < text.size() && text[pos] != '\n') ++pos;
      continue;
    }
    if (c == ',' || c == ';' || std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < text.size() && text[end] != ',' && text[end] != ';' && text[end] != '#' &&
           !std::isspace(static_cast<unsigned char>(text[end]))) {
      ++end;
    }
    const std::string token(text.substr(pos, end - pos));
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      parse_fail("not a number: \"" + token + "\"");
    }
    out.push_back(value);
    pos = end;
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<double> read_knots(const std::string& source) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(source, ec)) return parse_numbers(read_text_file(source));
  return parse_numbers(source);
}

std::vector<std::vector<double>> read_points(const std::string& source) {
  std::error_code ec;
  const bool is_file = std::filesystem::is_regular_file(source, ec);
  const std::string text = is_file ? read_text_file(source) : source;
  std::vector<std::vector<double>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of(is_file ? "\n" : ";\n", start);
    if (end == std::string::npos) end = text.size();
    auto row = parse_numbers(std::string_view(text).substr(start, end - start));
    if (!row.empty()) out.push_back(std::move(row));
    start = end + 1;
  }
  return out;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace gbs
