#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "rsurf/classify.hpp"
#include "rsurf/scmap.hpp"
#include "rsurf/sections.hpp"
#include "rsurf/serialize.hpp"

namespace {

using namespace rsurf;

struct SurfaceOpt {
  int n = 0, p = 0, q = 0;
};

SurfaceParams parse_surface(const std::string& s) {
  int n, p, q;
  if (std::sscanf(s.c_str(), "%d,%d,%d", &n, &p, &q) != 3)
    throw CLI::ValidationError("--surface expects n,p,q");
  return SurfaceParams::make(n, p, q);
}

Cplx parse_point(const std::string& s) {
  double re, im;
  if (std::sscanf(s.c_str(), "%lf,%lf", &re, &im) != 2)
    throw CLI::ValidationError("--x expects re,im");
  return {re, im};
}

void write_out(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  os << content;
}

const SurfaceDescriptor& find_descriptor(const std::vector<SurfaceDescriptor>& table,
                                         const SurfaceParams& params) {
  for (const auto& d : table)
    if (d.params == params) return d;
  throw std::runtime_error("surface (" + std::to_string(params.n) + "," +
                           std::to_string(params.p) + "," + std::to_string(params.q) +
                           ") is not one of the seven discrete surfaces");
}

// Field-level comparison against the reference data; returns diff lines.
std::vector<std::string> diff_against_golden(const std::vector<SurfaceDescriptor>& table,
                                             const nlohmann::json& golden) {
  std::vector<std::string> diffs;
  const auto& rows = golden.at("surfaces");
  if (rows.size() != table.size()) {
    diffs.push_back("surface count: derived " + std::to_string(table.size()) + ", expected " +
                    std::to_string(rows.size()));
    return diffs;
  }
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& g = rows[i];
    const auto& d = table[i];
    const std::string tag = "(" + std::to_string(d.params.n) + "," + std::to_string(d.params.p) +
                            "," + std::to_string(d.params.q) + ")";
    auto mismatch = [&](const std::string& field, const std::string& got,
                        const std::string& want) {
      diffs.push_back(tag + " " + field + ": derived " + got + ", expected " + want);
    };
    if (d.params.n != g.at("n") || d.params.p != g.at("p") || d.params.q != g.at("q"))
      mismatch("triple", tag, "(" + std::to_string(g.at("n").get<int>()) + ",...)");
    if (d.quotient.dihedral_tag != g.at("quotient"))
      mismatch("quotient", d.quotient.dihedral_tag, g.at("quotient"));
    if (d.quotient.order != g.at("quotient_order"))
      mismatch("order", std::to_string(d.quotient.order),
               std::to_string(g.at("quotient_order").get<int>()));
    if (to_string(d.root_id.tag) != g.at("lattice"))
      mismatch("lattice", to_string(d.root_id.tag), g.at("lattice"));
    if (d.genus_value != g.at("genus"))
      mismatch("genus", std::to_string(d.genus_value), std::to_string(g.at("genus").get<int>()));
    const std::string cls =
        d.periodicity.cls == SectionClass::Periodic ? "periodic" : "quasiperiodic";
    if (cls != g.at("periodicity")) mismatch("periodicity", cls, g.at("periodicity"));
    if (d.half_turn_in_r != g.at("half_turn").get<bool>())
      mismatch("half_turn", d.half_turn_in_r ? "true" : "false",
               g.at("half_turn").get<bool>() ? "true" : "false");
    if (rational_to_string(d.volume.det_m) != g.at("det_m"))
      mismatch("det_m", rational_to_string(d.volume.det_m), g.at("det_m"));
    // Exact density: rho^2 = x + y*sqrt(5).
    {
      const Rat x = rational_from_string(g.at("rho_sq_x").get<std::string>());
      const Rat y = rational_from_string(g.at("rho_sq_y").get<std::string>());
      const int m = d.params.conductor();
      const CycNum rho2 = d.density.exact * d.density.exact;
      CycNum expect = CycNum::from_rational(m, x);
      if (y != 0) {
        auto sqrt5 = rational_sqrt_in_field(Rat(5), m);
        if (!sqrt5) {
          mismatch("density", "sqrt(5) unavailable in conductor " + std::to_string(m), "-");
          continue;
        }
        expect = expect + sqrt5->scaled(y);
      }
      if (!(rho2 == expect))
        mismatch("density^2", rho2.to_string(), expect.to_string());
    }
    // Closed-form Gram.
    const RationalMatrix gram = gram_closed_form(d.params, natural_basis_kind(d.params));
    const auto& gg = g.at("gram");
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        if (rational_to_string(gram.at(r, c)) != gg.at(r).at(c))
          mismatch("gram[" + std::to_string(r) + "][" + std::to_string(c) + "]",
                   rational_to_string(gram.at(r, c)), gg.at(r).at(c));
      }
  }
  return diffs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crystallographic Riemann surfaces from conformal maps of right triangles"};
  app.require_subcommand(1);

  std::string surface_str, x_str = "0.1234,0.0567", out_path, format = "csv";
  std::string golden_path = "data/table1.json";
  double radius = 30.0;
  double tol = 1e-10;
  bool nn_edges = false;

  auto add_common = [&](CLI::App* cmd, bool with_surface) {
    if (with_surface)
      cmd->add_option("--surface", surface_str, "surface triple n,p,q")->required();
    cmd->add_option("--x", x_str, "section parameter x as re,im");
    cmd->add_option("--radius", radius, "disk radius R in Y");
    cmd->add_option("--format", format, "output format: csv|json|svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    cmd->add_option("--out", out_path, "output path (default stdout)");
    cmd->add_option("--tol", tol, "map tolerance override");
    cmd->add_flag("--edges", nn_edges, "draw nearest-neighbor edges in SVG output");
  };

  CLI::App* c_classify = app.add_subcommand("classify", "derive the classification table");
  c_classify->add_option("--format", format, "output format: text|json")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  c_classify->add_option("--out", out_path, "output path (default stdout)");
  c_classify->add_option("--golden", golden_path, "reference table to verify against");

  CLI::App* c_section = app.add_subcommand("section", "analytic section A(x)");
  add_common(c_section, true);
  CLI::App* c_model = app.add_subcommand("modelset", "flattened model set");
  add_common(c_model, true);
  CLI::App* c_compare = app.add_subcommand("compare", "pair A(x) with the flattened set");
  add_common(c_compare, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(c_classify)) {
      auto table = classify_all();
      std::string content;
      if (format == "json")
        content = classification_to_json(table).dump(2) + "\n";
      else
        content = classification_to_text(table);
      write_out(out_path, content);

      std::ifstream golden_in(golden_path);
      if (!golden_in) {
        std::cerr << "golden file not found: " << golden_path << "\n";
        return 2;
      }
      nlohmann::json golden;
      golden_in >> golden;
      const auto diffs = diff_against_golden(table, golden);
      for (const auto& d : diffs) std::cerr << "MISMATCH " << d << "\n";
      return diffs.empty() ? 0 : 1;
    }

    const SurfaceParams params = parse_surface(surface_str);
    const Cplx x = parse_point(x_str);
    if (radius > 200.0) {
      std::cerr << "radius guardrail exceeded (R <= 200)\n";
      return 2;
    }
    const auto table = classify_all();
    const SurfaceDescriptor& desc = find_descriptor(table, params);

    if (app.got_subcommand(c_model)) {
      const SectionPointSet set = model_section(desc, x, radius);
      std::string content;
      if (format == "json")
        content = section_to_json(set).dump(2) + "\n";
      else if (format == "svg")
        content = section_to_svg(set, nn_edges);
      else
        content = section_to_csv(set);
      write_out(out_path, content);
      return 0;
    }

    SCMapContext ctx(params, tol);
    if (app.got_subcommand(c_section)) {
      const SectionPointSet set = analytic_section(desc, ctx, x, radius);
      std::string content;
      if (format == "json")
        content = section_to_json(set).dump(2) + "\n";
      else if (format == "svg")
        content = section_to_svg(set, nn_edges);
      else
        content = section_to_csv(set);
      write_out(out_path, content);
      return 0;
    }

    if (app.got_subcommand(c_compare)) {
      const CorrespondenceResult res = correspondence(desc, ctx, x, radius);
      std::string content = (format == "json") ? correspondence_to_json(res).dump(2) + "\n"
                                               : correspondence_to_csv(res);
      write_out(out_path, content);
      if (res.max_distance > 1.0 + 1e-9) {
        std::cerr << "correspondence distance bound violated: max = " << res.max_distance
                  << "\n";
        return 1;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
