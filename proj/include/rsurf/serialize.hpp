#pragma once

#include <string>

#include <json.hpp>

#include "rsurf/classify.hpp"
#include "rsurf/sections.hpp"

namespace rsurf {

/// 12 significant digits, lowercase exponent; the repository-wide text format.
std::string format_double(double v);

std::string section_to_csv(const SectionPointSet& set);
nlohmann::json section_to_json(const SectionPointSet& set);
std::string section_to_svg(const SectionPointSet& set, bool nn_edges);

/// Parse back the CSV point rows (used by the round-trip tests).
struct CsvPoint {
  double re = 0, im = 0;
  int multiplicity = 1;
  std::string provenance;
  std::string flags;
};
std::vector<CsvPoint> section_points_from_csv(const std::string& text);

nlohmann::json descriptor_to_json(const SurfaceDescriptor& desc);
nlohmann::json classification_to_json(const std::vector<SurfaceDescriptor>& table);
std::string classification_to_text(const std::vector<SurfaceDescriptor>& table);

std::string correspondence_to_csv(const CorrespondenceResult& res);
nlohmann::json correspondence_to_json(const CorrespondenceResult& res);

std::string rational_to_string(const Rat& r);
Rat rational_from_string(const std::string& s);

}  // namespace rsurf
