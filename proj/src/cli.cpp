#include "latpack/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "latpack/catalog.hpp"
#include "latpack/error.hpp"
#include "latpack/exact.hpp"

namespace latpack {
namespace {

using Json = nlohmann::ordered_json;

double significant15(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

Json vec_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

Json counts_json(const SearchCounts& c) {
  Json j;
  j["selections_enumerated"] = c.selections_enumerated;
  j["pruned_by_G"] = c.pruned_by_G;
  j["pruned_by_S0"] = c.pruned_by_S0;
  j["rank_skipped"] = c.rank_skipped;
  j["subspaces_checked"] = c.subspaces_checked;
  j["pruned_by_symmetry"] = c.pruned_by_symmetry;
  j["case4_skipped"] = c.case4_skipped;
  j["deferred"] = c.deferred;
  return j;
}

Json report(const RunConfig& cfg, const PackingResult& r, double ms) {
  Json j;
  if (!cfg.solid.empty())
    j["solid"] = cfg.solid;
  else
    j["input"] = cfg.input;
  j["density"] = significant15(r.density);
  if (cfg.verify_exact) {
    j["exact_verified"] = r.exact_verified;
    j["density_exact"] = r.exact_density ? Json(*r.exact_density) : Json(nullptr);
  }
  j["critical_determinant"] = r.critical_determinant;
  Json basis = Json::array();
  for (int row = 0; row < 3; ++row) basis.push_back(Json::array({r.basis(row, 0), r.basis(row, 1), r.basis(row, 2)}));
  j["basis"] = basis;
  j["case"] = case_name(r.winning_case);
  Json cases = Json::array();
  for (SearchCase c : cfg.cases) cases.push_back(case_name(c));
  j["cases_searched"] = cases;
  j["partial_cases"] = r.partial_cases;
  j["facet_selection"] = r.selection;
  Json contacts = Json::array();
  for (const Vec3& v : r.contact_points) contacts.push_back(vec_json(v));
  j["contact_points"] = contacts;
  j["marginal"] = r.marginal;
  j["counts"] = counts_json(r.counts);
  j["runtime_ms"] = ms;
  return j;
}

std::vector<SearchCase> parse_cases(const std::vector<std::string>& names) {
  std::vector<SearchCase> out;
  for (const std::string& n : names) {
    const auto c = parse_case(n);
    if (!c) throw ParseError("unknown case '" + n + "' (expected I, II, III or IV)");
    out.push_back(*c);
  }
  return out;
}

}  // namespace

OffMesh packing_mesh(const Polytope& p, const Mat3& basis, int shells) {
  if (shells < 0) throw PreconditionViolated("shell radius must be non-negative");
  const OffMesh cell = to_mesh(p);
  OffMesh out;
  for (int a = -shells; a <= shells; ++a)
    for (int b = -shells; b <= shells; ++b)
      for (int c = -shells; c <= shells; ++c) {
        const Vec3 t = lattice_point(basis, {a, b, c});
        const int base = static_cast<int>(out.vertices.size());
        for (const Vec3& v : cell.vertices) out.vertices.push_back(v + t);
        for (const auto& f : cell.faces) {
          std::vector<int> g;
          for (int i : f) g.push_back(base + i);
          out.faces.push_back(std::move(g));
        }
      }
  return out;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.solid.empty() == cfg.input.empty()) {
    err << "error: give exactly one of --solid and --input\n";
    return 2;
  }
  if (cfg.shells < 0) {
    err << "error: --shells must be non-negative\n";
    return 2;
  }
  Polytope p;
  try {
    p = cfg.solid.empty() ? load_polytope(cfg.input) : make_solid(cfg.solid);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  SearchOptions opts;
  opts.cases = cfg.cases;
  opts.threads = cfg.threads;
  opts.parallel = cfg.threads != 1;
  opts.exhaustive_exclusions = cfg.exhaustive_exclusions;
  opts.verify_exact = cfg.verify_exact;
  if (cfg.verbose)
    opts.progress = [&err](const SearchProgress& s) {
      err << "case " << case_name(s.current_case) << ": " << s.first_slots_done << '/' << s.first_slots_total
          << " first slots, " << s.counts.selections_enumerated << " selections\n";
    };

  const auto t0 = std::chrono::steady_clock::now();
  PackingResult r;
  try {
    r = densest_packing(p, opts);
  } catch (const NoLatticeFound& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  if (r.partial_cases) {
    err << "warning: partial-cases: searched only";
    for (SearchCase c : cfg.cases) err << ' ' << case_name(c);
    err << "; the result is the best lattice under these cases, not necessarily the densest\n";
  }
  if (r.marginal) err << "warning: marginal: a lattice point lies inside P - P within the geometric tolerance\n";

  const std::string text = report(cfg, r, ms).dump(2) + "\n";
  if (cfg.output.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.output);
    if (!f) {
      err << "error: cannot write " << cfg.output << '\n';
      return 2;
    }
    f << text;
  }
  if (!cfg.emit_packing.empty()) {
    try {
      write_off_file(cfg.emit_packing, packing_mesh(p, r.basis, cfg.shells));
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
  }
  return 0;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Densest lattice packings of convex polytopes in R^3"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> cases;
  CLI::App* solve = app.add_subcommand("solve", "Find a densest packing lattice");
  auto* solid = solve->add_option("--solid", cfg.solid, "Catalog solid name (see `list`)");
  auto* input = solve->add_option("--input", cfg.input, "Polytope file: .off point set or H-rep text");
  solid->excludes(input);
  solve->add_option("--case", cases, "Restrict the search to cases I, II, III, IV")->delimiter(',');
  solve->add_option("--threads", cfg.threads, "Worker threads (0: all, 1: serial reference path)")->check(CLI::NonNegativeNumber);
  solve->add_option("--output", cfg.output, "Write the JSON report to this file");
  solve->add_option("--emit-packing", cfg.emit_packing, "Write the translates of P as an OFF file");
  solve->add_option("--shells", cfg.shells, "Lattice coefficient radius for --emit-packing");
  solve->add_flag("--exhaustive-exclusions", cfg.exhaustive_exclusions, "Scan all exclusion-point facet choices");
  solve->add_flag("--verify-exact", cfg.verify_exact, "Re-check the result in rational arithmetic");
  solve->add_flag("--verbose", cfg.verbose, "Progress on stderr");

  CLI::App* list = app.add_subcommand("list", "List catalog solids with reference densities");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  if (list->parsed()) {
    for (const std::string& n : solid_names()) {
      const ReferenceDensity d = reference_density(n);
      const auto f = reference_f_vector(n);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.10f", d.value);
      out << n << "  f=(" << f[0] << ',' << f[1] << ',' << f[2] << ")  " << buf << "  " << d.closed_form << '\n';
    }
    return 0;
  }
  if (!cases.empty()) {
    try {
      cfg.cases = parse_cases(cases);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
  }
  return run(cfg, out, err);
}

}  // namespace latpack
