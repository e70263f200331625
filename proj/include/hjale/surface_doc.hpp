#pragma once

// JSON surface documents and machine-readable reports.
//
//   {
//     "genus": 0,
//     "model": "trivial-p1",                 // or "sections"
//     "points": ["[1:0]", "[0:1]"],          // base coordinates or labels
//     "weights": ["1/2", "1/2"],
//     "incidence": ["[1:0]", "[0:1]"],       // fiber coordinates or section ids
//     "sections": [{"id": "S1", "self_intersection": 0,
//                   "contains": [0], "disjoint_from": ["S2"]}],
//     "extra_points": ["[1:1]", {"base": "[2:1]", "fiber": "[1:2]"}]
//   }

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hjale/gluing.hpp"
#include "hjale/parabolic.hpp"

namespace hjale {

struct SurfaceDocument {
  ParabolicSurface surface;
  std::vector<ExtraPoint> extra_points;
};

class DocumentError : public std::runtime_error {
 public:
  DocumentError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(message), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Syntax errors carry the offending line and column; semantic errors carry
/// the line of the first occurrence of the offending key (0 if unknown).
SurfaceDocument parse_surface_document(std::string_view text);
SurfaceDocument load_surface_document(const std::string& path);

nlohmann::json to_json(const SurfaceDocument& doc);
std::string serialize_surface_document(const SurfaceDocument& doc);

/// True when both documents describe the same surface and extra points.
bool same_document(const SurfaceDocument& a, const SurfaceDocument& b);

nlohmann::json to_json(const StabilityVerdict& verdict, const ParabolicSurface& surface);
nlohmann::json to_json(const GluingReport& report);
nlohmann::json to_json(const PipelineReport& report);

std::vector<std::string> fraction_strings(const std::vector<Fraction>& values);

}  // namespace hjale
