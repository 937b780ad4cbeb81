#pragma once

// JSON ingestion of domains, maps and points; CSV/JSON emission.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "invmetric/applications.hpp"

namespace invmetric::io {

using Json = nlohmann::json;

/// Shortest decimal form that round-trips a double (17 significant digits).
inline std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- parsing ---------------------------------------------------------------

inline const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw PreconditionError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline double to_real(const Json& j, const char* what) {
  if (!j.is_number()) throw PreconditionError(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw PreconditionError(std::string(what) + " must be finite");
  return v;
}

/// A complex number is a number (real) or a pair [x, y].
inline Complex to_complex(const Json& j, const char* what = "complex value") {
  if (j.is_number()) return {to_real(j, what), 0.0};
  if (j.is_array() && j.size() == 2) return {to_real(j[0], what), to_real(j[1], what)};
  throw PreconditionError(std::string(what) + " must be a number or an [x, y] pair");
}

inline std::vector<Complex> to_complex_list(const Json& j, const char* what) {
  if (!j.is_array()) throw PreconditionError(std::string(what) + " must be an array");
  std::vector<Complex> out;
  for (const auto& e : j) out.push_back(to_complex(e, what));
  return out;
}

inline std::vector<double> to_real_list(const Json& j, const char* what) {
  if (!j.is_array()) throw PreconditionError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& e : j) out.push_back(to_real(e, what));
  return out;
}

inline std::string to_string_field(const Json& j, const char* what) {
  if (!j.is_string()) throw PreconditionError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

/// {"type": "disc" | "halfplane" | "annulus" | "smooth", "r_inner": r,
///  "boundary": [[x, y], ...], "basepoint": [x, y]}. A smooth domain may give
///  "ellipse": {"a": a, "b": b, "samples": n} in place of "boundary".
inline Domain parse_domain(const Json& j) {
  const std::string type = to_string_field(require(j, "type"), "domain type");
  if (type == "disc") return Domain::unit_disc();
  if (type == "halfplane") return Domain::upper_half_plane();
  if (type == "annulus") return Domain::annulus(to_real(require(j, "r_inner"), "r_inner"));
  if (type == "smooth") {
    if (j.contains("ellipse")) {
      const Json& e = j.at("ellipse");
      const auto n = e.contains("samples") ? e.at("samples").get<std::size_t>() : std::size_t{512};
      return Domain::ellipse(to_real(require(e, "a"), "ellipse a"), to_real(require(e, "b"), "ellipse b"), n);
    }
    return Domain::smooth(to_complex_list(require(j, "boundary"), "boundary sample"),
                          to_complex(require(j, "basepoint"), "basepoint"));
  }
  throw PreconditionError("unknown domain type '" + type + "'");
}

/// {"type": "polynomial", "coefficients": [...]} | {"type": "blaschke", "zeros": [...], "phase": φ}
/// | {"type": "rational", "numerator": [...], "denominator": [...]} | {"type": "mobius", "a": z, "theta": θ}
/// | {"type": "affine", "scale": z, "offset": z} | {"type": "annulus_covering", "r_inner": r}
/// | {"type": "composition", "maps": [outermost, ..., innermost]}
inline HolomorphicMap parse_map(const Json& j) {
  const std::string type = to_string_field(require(j, "type"), "map type");
  if (type == "polynomial") return Polynomial{to_complex_list(require(j, "coefficients"), "coefficient")};
  if (type == "blaschke")
    return BlaschkeProduct{to_complex_list(require(j, "zeros"), "Blaschke zero"),
                           j.contains("phase") ? to_real(j.at("phase"), "phase") : 0.0};
  if (type == "rational")
    return RationalMap{to_complex_list(require(j, "numerator"), "numerator coefficient"),
                       to_complex_list(require(j, "denominator"), "denominator coefficient")};
  if (type == "mobius")
    return MobiusTransform(to_complex(require(j, "a"), "Mobius center"),
                           j.contains("theta") ? to_real(j.at("theta"), "theta") : 0.0);
  if (type == "affine")
    return AffineMap{j.contains("scale") ? to_complex(j.at("scale"), "scale") : Complex(1.0),
                     j.contains("offset") ? to_complex(j.at("offset"), "offset") : Complex(0.0)};
  if (type == "annulus_covering") return AnnulusCovering{to_real(require(j, "r_inner"), "r_inner")};
  if (type == "composition") {
    const Json& maps = require(j, "maps");
    if (!maps.is_array()) throw PreconditionError("composition maps must be an array");
    Composition c;
    for (const auto& m : maps) c.maps.push_back(parse_map(m));
    return c;
  }
  throw PreconditionError("unknown map type '" + type + "'");
}

inline MobiusTransform parse_mobius(const Json& j) {
  return MobiusTransform(to_complex(require(j, "a"), "Mobius center"),
                         j.contains("theta") ? to_real(j.at("theta"), "theta") : 0.0);
}

// ---- emission --------------------------------------------------------------

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

/// Fixed-column CSV table.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  CsvTable& row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size()) throw PreconditionError("CSV row width does not match the header");
    rows_.push_back(cells);
    return *this;
  }

  std::string str() const {
    std::ostringstream out;
    write_line(out, columns_);
    for (const auto& r : rows_) write_line(out, r);
    return out.str();
  }

  std::size_t size() const { return rows_.size(); }

 private:
  static void write_line(std::ostringstream& out, const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
    out << '\n';
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

inline CsvTable polyline_csv(const Curve& curve) {
  CsvTable t({"t", "x", "y"});
  const auto pts = curve.vertices();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double s = pts.size() > 1 ? static_cast<double>(k) / static_cast<double>(pts.size() - 1) : 0.0;
    t.row({fmt(s), fmt(pts[k].real()), fmt(pts[k].imag())});
  }
  return t;
}

inline Json polyline_json(const Curve& curve) {
  Json pts = Json::array();
  for (Complex p : curve.vertices()) pts.push_back(complex_json(p));
  return pts;
}

/// Writes via a temporary sibling and rename, so readers never see partial files.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw PreconditionError("cannot open output file " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw PreconditionError("failed writing output file " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace invmetric::io
