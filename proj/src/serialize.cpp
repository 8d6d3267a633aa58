#include "rsurf/serialize.hpp"

#include <cstdio>
#include <sstream>

namespace rsurf {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

std::string rational_to_string(const Rat& r) { return r.get_str(); }

Rat rational_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

namespace {

std::string flags_of(const SectionPoint& p) {
  std::string f;
  if (p.near_singular_vertex) f += "vertex";
  if (p.window_boundary) {
    if (!f.empty()) f += "|";
    f += "boundary";
  }
  return f;
}

}  // namespace

std::string section_to_csv(const SectionPointSet& set) {
  std::ostringstream os;
  if (set.warning_near_singular)
    os << "# warning: x within 1e-9 of a singular vertex image; multiplicities are "
          "ramification counts\n";
  os << "re,im,multiplicity,provenance,flags\n";
  for (const auto& p : set.points) {
    os << format_double(p.y.real()) << "," << format_double(p.y.imag()) << ","
       << p.multiplicity << "," << p.provenance << "," << flags_of(p) << "\n";
  }
  return os.str();
}

std::vector<CsvPoint> section_points_from_csv(const std::string& text) {
  std::vector<CsvPoint> out;
  std::istringstream is(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // column header
      continue;
    }
    CsvPoint p;
    std::istringstream ls(line);
    std::string field;
    std::getline(ls, field, ',');
    p.re = std::stod(field);
    std::getline(ls, field, ',');
    p.im = std::stod(field);
    std::getline(ls, field, ',');
    p.multiplicity = std::stoi(field);
    std::getline(ls, p.provenance, ',');
    std::getline(ls, p.flags, ',');
    out.push_back(std::move(p));
  }
  return out;
}

nlohmann::json section_to_json(const SectionPointSet& set) {
  nlohmann::json j;
  j["kind"] = set.kind == SectionKind::Analytic ? "analytic" : "flattened";
  j["surface"] = {set.params.n, set.params.p, set.params.q};
  j["x"] = {set.center_x.real(), set.center_x.imag()};
  j["radius"] = set.radius;
  j["warning_near_singular"] = set.warning_near_singular;
  j["density"] = empirical_density(set);
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : set.points) {
    nlohmann::json e;
    e["y"] = {p.y.real(), p.y.imag()};
    e["multiplicity"] = p.multiplicity;
    e["provenance"] = p.provenance;
    const std::string f = flags_of(p);
    if (!f.empty()) e["flags"] = f;
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  return j;
}

std::string section_to_svg(const SectionPointSet& set, bool nn_edges) {
  const double R = set.radius;
  const double size = 900.0;
  const double scale = size / (2.0 * R * 1.05);
  auto sx = [&](double v) { return size / 2 + v * scale; };
  auto sy = [&](double v) { return size / 2 - v * scale; };
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\""
     << size << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (nn_edges && set.points.size() > 1) {
    // nearest-neighbor linking as a visualization aid
    double min_nn = 1e300;
    for (size_t i = 0; i < set.points.size(); ++i) {
      double best = 1e300;
      for (size_t j = 0; j < set.points.size(); ++j) {
        if (i == j) continue;
        best = std::min(best, std::abs(set.points[i].y - set.points[j].y));
      }
      min_nn = std::min(min_nn, best);
    }
    const double limit = min_nn * 1.05;
    os << "<g stroke=\"#888\" stroke-width=\"0.6\">\n";
    for (size_t i = 0; i < set.points.size(); ++i)
      for (size_t j = i + 1; j < set.points.size(); ++j) {
        const Cplx a = set.points[i].y, b = set.points[j].y;
        if (std::abs(a - b) <= limit)
          os << "<line x1=\"" << sx(a.real()) << "\" y1=\"" << sy(a.imag()) << "\" x2=\""
             << sx(b.real()) << "\" y2=\"" << sy(b.imag()) << "\"/>\n";
      }
    os << "</g>\n";
  }

  const bool analytic = set.kind == SectionKind::Analytic;
  os << "<g " << (analytic ? "fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\""
                           : "fill=\"#9c1f1f\" stroke=\"none\"")
     << ">\n";
  for (const auto& p : set.points) {
    const double r = analytic ? 3.0 : 2.0;
    os << "<circle cx=\"" << sx(p.y.real()) << "\" cy=\"" << sy(p.y.imag()) << "\" r=\"" << r
       << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

namespace {

nlohmann::json gram_to_json(const RationalMatrix& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < g.rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < g.cols; ++j) row.push_back(rational_to_string(g.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json density_to_json(const DensityValue& d) {
  nlohmann::json j;
  j["float"] = d.value;
  if (d.rho_squared_rational) {
    j["sqrt"] = {rational_to_string(d.rho_squared_rational->get_num()),
                 rational_to_string(d.rho_squared_rational->get_den())};
  } else {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const Rat& c : d.exact.coeffs()) coeffs.push_back(rational_to_string(c));
    j["cyclotomic"] = {{"conductor", d.exact.conductor()}, {"coeffs", std::move(coeffs)}};
  }
  return j;
}

}  // namespace

nlohmann::json descriptor_to_json(const SurfaceDescriptor& desc) {
  nlohmann::json j;
  j["surface"] = {desc.params.n, desc.params.p, desc.params.q};
  j["quotient"] = desc.quotient.dihedral_tag;
  j["quotient_order"] = desc.quotient.order;
  j["lattice"] = to_string(desc.root_id.tag);
  j["genus"] = desc.genus_value;
  j["density"] = density_to_json(desc.density);
  j["class"] = desc.periodicity.cls == SectionClass::Periodic ? "periodic" : "quasiperiodic";
  j["rank_lambda_y"] = desc.periodicity.rank_lambda_y;
  j["half_turn_in_r"] = desc.half_turn_in_r;
  j["det_m"] = rational_to_string(desc.volume.det_m);
  j["volume"] = {{"float", desc.volume.volume},
                 {"sqrt", rational_to_string(desc.volume.det_m)}};
  j["gram"] = gram_to_json(gram_closed_form(desc.params, natural_basis_kind(desc.params)));
  j["gram_reduced"] = gram_to_json(desc.lattice.gram);
  return j;
}

nlohmann::json classification_to_json(const std::vector<SurfaceDescriptor>& table) {
  nlohmann::json j;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& d : table) rows.push_back(descriptor_to_json(d));
  j["surfaces"] = std::move(rows);
  return j;
}

std::string classification_to_text(const std::vector<SurfaceDescriptor>& table) {
  std::ostringstream os;
  os << "(n,p,q)    G/L   order  lattice  genus  density          class\n";
  for (const auto& d : table) {
    char line[160];
    std::snprintf(line, sizeof(line), "(%d,%d,%d)%*s %-5s %-6d %-8s %-6d %-16s %s\n",
                  d.params.n, d.params.p, d.params.q,
                  int(9 - std::to_string(d.params.n).size() - std::to_string(d.params.p).size() -
                      std::to_string(d.params.q).size() - 4),
                  "", d.quotient.dihedral_tag.c_str(), d.quotient.order,
                  to_string(d.root_id.tag).c_str(), d.genus_value,
                  format_double(d.density.value).c_str(),
                  d.periodicity.cls == SectionClass::Periodic ? "periodic" : "quasiperiodic");
    os << line;
  }
  return os.str();
}

std::string correspondence_to_csv(const CorrespondenceResult& res) {
  std::ostringstream os;
  os << "# pairs=" << res.pairs.size() << " max_distance=" << format_double(res.max_distance)
     << " mean_distance=" << format_double(res.mean_distance) << "\n";
  os << "re_analytic,im_analytic,re_model,im_model,distance,provenance\n";
  for (const auto& p : res.pairs) {
    os << format_double(p.y_analytic.real()) << "," << format_double(p.y_analytic.imag())
       << "," << format_double(p.y_model.real()) << "," << format_double(p.y_model.imag())
       << "," << format_double(p.distance) << "," << p.provenance << "\n";
  }
  return os.str();
}

nlohmann::json correspondence_to_json(const CorrespondenceResult& res) {
  nlohmann::json j;
  j["max_distance"] = res.max_distance;
  j["mean_distance"] = res.mean_distance;
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : res.pairs) {
    pairs.push_back({{"analytic", {p.y_analytic.real(), p.y_analytic.imag()}},
                     {"model", {p.y_model.real(), p.y_model.imag()}},
                     {"distance", p.distance},
                     {"provenance", p.provenance}});
  }
  j["pairs"] = std::move(pairs);
  return j;
}

}  // namespace rsurf
