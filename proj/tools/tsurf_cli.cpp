#include "tsurf/acceptance.hpp"
#include "tsurf/arith.hpp"
#include "tsurf/counting.hpp"
#include "tsurf/cover.hpp"
#include "tsurf/errors.hpp"
#include "tsurf/fiber.hpp"
#include "tsurf/geometry.hpp"
#include "tsurf/origami_io.hpp"
#include "tsurf/sl2z.hpp"
#include "tsurf/version.hpp"

#include <algorithm>
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

using json = nlohmann::ordered_json;
using namespace tsurf;

namespace {

struct Globals {
  std::string format = "json";
  int threads = 0;
  long long seed = 0;  // reserved
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void emit_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  auto line = [](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + csv_escape(cells[i]);
    return s;
  };
  std::cout << line(header) << "\n";
  for (const auto& r : rows) std::cout << line(r) << "\n";
}

void emit_text_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) w[i] = header[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      std::cout << (i ? "  " : "") << std::string(w[i] - cells[i].size(), ' ') << cells[i];
    std::cout << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

std::pair<long long, long long> parse_pair(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw DomainError("expected a pair 'x,y', got '" + s + "'");
  return {std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
}

std::pair<Rational, Rational> parse_branch(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw DomainError("expected a branch position 'p/n,q/n'");
  return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
}

json lattice_json(const Lattice2& l) {
  return {{"e1", {l.e1[0], l.e1[1]}}, {"e2", {l.e2[0], l.e2[1]}}, {"unit", to_string(l.unit)},
          {"covolume", to_string(l.covolume())}};
}

json chain_json(const BoundaryChain& c) {
  json segs = json::array();
  for (const auto& s : c.segments) segs.push_back({{"length", s.length}, {"from", s.from_vertex}, {"to", s.to_vertex}});
  return {{"vertices", c.vertices}, {"saddle_connections", segs}};
}

json origami_info(const Origami& o) {
  ConeData cd = singularities(o);
  json cones = json::array(), marked = json::array();
  for (const auto& c : cd.cones)
    cones.push_back({{"vertex", c.vertex_id}, {"angle_multiple", c.angle_multiple}, {"zero_order", c.zero_order},
                     {"label", c.label}});
  for (const auto& c : cd.marked) marked.push_back({{"vertex", c.vertex_id}, {"label", c.label}});
  json j{{"n_squares", o.n_squares()}, {"unit", to_string(o.unit_length())}, {"area", to_string(o.area())},
         {"connected", o.connected()}};
  if (!o.connected()) return j;
  j["genus"] = genus(o);
  j["zero_orders"] = cd.zero_orders();
  j["cones"] = cones;
  j["marked"] = marked;
  j["period_lattice"] = lattice_json(period_lattice(o));
  j["automorphisms"] = automorphism_count(o);
  return j;
}

void write_or_print(const Origami& o, const std::string& out) {
  if (out.empty()) std::cout << to_text(o);
  else write_origami_file(o, out);
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Square-tiled surfaces, torus covers and quadratic growth constants"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Globals g;
  app.add_option("--format", g.format, "Output format: json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--threads", g.threads, "OpenMP thread count (0 = runtime default)")->each([](const std::string& t) {
#ifdef _OPENMP
    if (int n = std::stoi(t); n > 0) omp_set_num_threads(n);
#endif
  });
  app.add_option("--seed", g.seed, "Reserved; every algorithm is deterministic");
  int status = 0;

  // arith table
  auto* arith = app.add_subcommand("arith", "Number-theoretic tables");
  auto* table = arith->add_subcommand("table", "Fiber invariants and closed-form constants per degree");
  arith->require_subcommand(1);
  int dmin = 2, dmax = 10;
  table->add_option("--dmin", dmin)->check(CLI::Range(2, 1000000));
  table->add_option("--dmax", dmax)->check(CLI::Range(2, 1000000));
  table->callback([&] {
    if (dmax < dmin) throw DomainError("--dmax must not be smaller than --dmin");
    std::vector<std::string> header{"degree", "cone_count", "degenerate_count", "square_count", "euler_char",
                                    "euler_char_quotient", "spin_parity", "c_cyl", "c_saddle", "c_dsym"};
    std::vector<std::vector<std::string>> rows;
    for (int d = dmin; d <= dmax; ++d) {
      FiberInvariants f = fiber_invariants(d);
      auto n = static_cast<u64>(d);
      rows.push_back({std::to_string(d), f.cone_count.str(), f.degenerate_count.str(), f.square_count.str(),
                      f.euler_char.str(), f.euler_char_quotient.str(), std::to_string(f.spin_parity),
                      to_string(sv_closed_form(SvKind::marked_torus_cylinders, n)),
                      to_string(sv_closed_form(SvKind::marked_torus_saddles, n)),
                      to_string(sv_closed_form(SvKind::d_symmetric_cylinders, n))});
    }
    if (g.format == "csv") return emit_csv(header, rows);
    if (g.format == "text") return emit_text_table(header, rows);
    json arr = json::array();
    for (const auto& r : rows) {
      json j;
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (i <= 6) j[header[i]] = std::stoll(r[i]);
        else j[header[i]] = r[i];
      }
      arr.push_back(j);
    }
    emit(arr);
  });

  // origami info
  auto* origami_cmd = app.add_subcommand("origami", "Inspect an origami file");
  origami_cmd->require_subcommand(1);
  auto* info = origami_cmd->add_subcommand("info", "Genus, cone data, period lattice, automorphisms");
  std::string file;
  info->add_option("file", file)->required();
  info->callback([&] {
    Origami o = read_origami_file(file);
    if (g.format == "text") std::cout << to_text(canonical_form(o));
    else emit(origami_info(o));
  });

  // orbit
  auto* orbit_cmd = app.add_subcommand("orbit", "SL(2,Z) orbit of an origami");
  std::size_t cap = 10'000'000;
  bool emit_edges = false, emit_elements = false;
  orbit_cmd->add_option("file", file)->required();
  orbit_cmd->add_option("--max", cap, "Abort beyond this many elements");
  orbit_cmd->add_flag("--emit-edges", emit_edges, "Include the T and S edges");
  orbit_cmd->add_flag("--emit-elements", emit_elements, "Include every element in text form");
  orbit_cmd->callback([&] {
    OrbitRecord rec = orbit(read_origami_file(file), {cap, true});
    json j{{"size", rec.elements.size()}, {"minus_id", rec.minus_id_in_stabilizer},
           {"stabilizer_index", rec.stabilizer_index()}};
    if (emit_elements) {
      json els = json::array();
      for (const auto& e : rec.elements) els.push_back(to_text(e));
      j["elements"] = els;
    }
    if (emit_edges) j["edges"] = {{"T", rec.t_edge}, {"S", rec.s_edge}};
    emit(j);
  });

  // cylinders
  auto* cyl_cmd = app.add_subcommand("cylinders", "Cylinder decomposition in a rational direction");
  std::string direction = "1,0";
  cyl_cmd->add_option("file", file)->required();
  cyl_cmd->add_option("--direction", direction, "Primitive direction p,q");
  cyl_cmd->callback([&] {
    auto [p, q] = parse_pair(direction);
    CylinderDecomposition cd = direction_cylinders(read_origami_file(file), p, q);
    json cyls = json::array();
    for (const auto& c : cd.cylinders)
      cyls.push_back({{"width", c.width}, {"height", c.height}, {"rows", c.rows}, {"top", chain_json(c.top)},
                      {"bottom", chain_json(c.bottom)}});
    emit({{"direction", {p, q}}, {"unit", to_string(cd.unit)}, {"scale_squared", to_string(cd.scale_squared())},
          {"widths", cd.widths()}, {"cylinders", cyls}});
  });

  // count
  auto* count_cmd = app.add_subcommand("count", "Direct counting of cylinders or saddle connections");
  std::string kind, tmax = "100", formula, labels = "1,2", engine = "parallel";
  int samples = 5;
  bool normalize_area = false;
  count_cmd->add_option("kind", kind)->required()->check(CLI::IsMember({"cylinders", "saddles"}));
  count_cmd->add_option("file", file)->required();
  count_cmd->add_option("--tmax", tmax, "Largest threshold (rational)");
  count_cmd->add_option("--samples", samples, "Thresholds tmax*j/k for j = 1..k")->check(CLI::Range(1, 1000));
  count_cmd->add_flag("--normalize-area", normalize_area, "Rescale constants to unit area");
  count_cmd->add_option("--formula", formula, "Expected constant p/q for the rel_err column");
  count_cmd->add_option("--labels", labels, "Saddle endpoint labels a,b");
  count_cmd->add_option("--engine", engine)->check(CLI::IsMember({"parallel", "reference"}));
  count_cmd->callback([&] {
    Origami o = read_origami_file(file);
    auto [la, lb] = parse_pair(labels);
    CountKind k = kind == "cylinders" ? CountKind::cylinders : CountKind::saddle_connections;
    SVReport rep = make_report(o, k, parse_rational(tmax), samples,
                               engine == "parallel" ? Engine::parallel : Engine::reference, static_cast<int>(la),
                               static_cast<int>(lb));
    const double scale = normalize_area ? to_double(o.area()) : 1.0;
    for (auto& s : rep.samples) s.normalized *= scale;
    if (!formula.empty()) attach_formula(rep, parse_rational(formula) * (normalize_area ? o.area() : Rational(1)));
    Estimate est = estimate_constant(rep);
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : rep.samples) {
      std::ostringstream n;
      n.precision(10);
      n << s.normalized;
      std::string f, e;
      if (rep.formula_value) {
        f = to_string(*rep.formula_value);
        std::ostringstream er;
        er.precision(6);
        er << s.normalized / to_double(*rep.formula_value) - 1;
        e = er.str();
      }
      rows.push_back({to_string(s.T), std::to_string(s.count), n.str(), f, e});
    }
    const std::vector<std::string> header{"T", "N", "normalized", "formula", "rel_err"};
    if (g.format == "csv") return emit_csv(header, rows);
    if (g.format == "text") {
      emit_text_table(header, rows);
      std::cout << "estimate " << est.value << " (spread " << est.spread << ")\n";
      return;
    }
    json arr = json::array();
    for (const auto& r : rows) arr.push_back({{"T", r[0]}, {"N", std::stoll(r[1])}, {"normalized", std::stod(r[2])},
                                              {"formula", r[3]}, {"rel_err", r[4]}});
    json j{{"kind", kind_name(k)}, {"samples", arr}, {"estimate", est.value}, {"spread", est.spread}};
    if (rep.relative_error) j["relative_error"] = *rep.relative_error;
    emit(j);
  });

  // cover
  auto* cover_cmd = app.add_subcommand("cover", "Torus covers branched over two points");
  cover_cmd->require_subcommand(1);
  auto* cbuild = cover_cmd->add_subcommand("build", "Build a cover as an origami");
  int degree = 3, a = 1, denominator = 2;
  std::string ckind = "s_av", branch = "1/2,1/2", hs, vs, c1s, out;
  bool cyclic = false;
  cbuild->add_option("--degree", degree)->check(CLI::Range(1, 64));
  cbuild->add_option("--kind", ckind)->check(CLI::IsMember({"s_av", "dsym", "generic"}));
  cbuild->add_option("--a", a);
  cbuild->add_option("--branch", branch, "Branch position p/n,q/n");
  cbuild->add_flag("--cyclic", cyclic, "Cyclic slit sum (same as --kind dsym)");
  cbuild->add_option("--horizontal", hs, "generic: right-neighbour monodromy h in cycle notation");
  cbuild->add_option("--vertical", vs, "generic: top-neighbour monodromy v in cycle notation");
  cbuild->add_option("--c1", c1s, "generic: monodromy around the moving point");
  cbuild->add_option("--out", out, "Write the origami here instead of stdout");
  cbuild->callback([&] {
    auto [th, tv] = parse_branch(branch);
    Origami o;
    if (ckind == "generic") {
      if (hs.empty() || vs.empty() || c1s.empty()) throw DomainError("generic covers need --horizontal, --vertical and --c1");
      o = build(CoverDatum::from(Perm::parse(hs, degree), Perm::parse(vs, degree), Perm::parse(c1s, degree), th, tv));
    } else {
      o = connected_sum(a, degree, th, tv, cyclic || ckind == "dsym");
    }
    if (g.format == "json") {
      json j = origami_info(o);
      j["text"] = to_text(o);
      if (!out.empty()) write_origami_file(o, out);
      return emit(j);
    }
    write_or_print(o, out);
  });
  auto* cdsym = cover_cmd->add_subcommand("dsym", "Cyclic covers with branch positions of a given denominator");
  cdsym->add_option("--degree", degree)->check(CLI::Range(1, 12));
  cdsym->add_option("--denominator", denominator)->check(CLI::Range(1, 12));
  cdsym->callback([&] {
    DsymReport r = dsym_enumerate(degree, denominator);
    json entries = json::array();
    for (const auto& e : r.entries)
      entries.push_back({{"t_h", to_string(e.t_h)}, {"t_v", to_string(e.t_v)}, {"p", e.p}, {"q", e.q},
                         {"degenerate", e.degenerate}, {"connected", e.connected}, {"zero_orders", e.zero_orders},
                         {"automorphisms", e.automorphisms}});
    emit({{"degree", r.degree}, {"denominator", r.denominator}, {"positions", r.positions},
          {"classes", r.entries.size()}, {"expected", r.expected}, {"connected", r.connected_count},
          {"injective", r.injective}, {"regular_push_action", r.regular_push_action}, {"sl2z_closed", r.sl2z_closed},
          {"entries", entries}});
  });

  // fiber
  auto* fiber_cmd = app.add_subcommand("fiber", "Modular fibers of genus-two torus covers");
  fiber_cmd->require_subcommand(1);
  auto* fbuild = fiber_cmd->add_subcommand("build", "Build the fiber as an origami");
  fbuild->add_option("--degree", degree)->check(CLI::Range(2, 8));
  fbuild->add_option("--out", out, "Write the origami here");
  fbuild->callback([&] {
    FiberSurface f = build_fiber_origami(degree);
    if (g.format == "text") return write_or_print(f.origami, out);
    if (!out.empty()) write_origami_file(f.origami, out);
    json j = origami_info(f.origami);
    json groups = json::array();
    for (const auto& c : fiber_cylinders(f))
      groups.push_back({{"width", c.width}, {"height", c.height}, {"surface_widths", c.surface_widths},
                        {"boundary_widths", c.boundary_widths}});
    json pts = json::array();
    for (const auto& p : classify_special_points(f))
      pts.push_back({{"vertex", p.vertex_id}, {"angle_multiple", p.angle_multiple},
                     {"kind", p.kind == FiberVertexKind::cone ? "cone" : "degenerate"}, {"m_plus", p.m_plus}});
    j["degree"] = degree;
    j["weighted_area"] = to_string(f.weighted_area);
    j["horizontal_cylinders"] = groups;
    j["special_points"] = pts;
    j["cylinder_constant"] = to_string(fiber_generic_constant(f));
    j["saddle_constant"] = fiber_saddle_constant(f).to_string();
    emit(j);
  });
  auto* fverify = fiber_cmd->add_subcommand("verify", "Structural invariant suite");
  fverify->add_option("--degree", degree)->check(CLI::Range(2, 8));
  fverify->callback([&] {
    json checks;
    bool all = true;
    for (const auto& c : verify_fiber(degree)) {
      checks[c.name] = {{"pass", c.pass}, {"detail", c.detail}};
      all = all && c.pass;
    }
    emit({{"degree", degree}, {"pass", all}, {"checks", checks}});
    if (!all) status = 1;
  });

  // accept
  auto* accept = app.add_subcommand("accept", "Run the acceptance suite");
  std::string scope = "all";
  bool slow = false;
  accept->add_option("--scope", scope)->check(CLI::IsMember({"arith", "marked_torus", "fiber", "dsym", "all"}));
  accept->add_flag("--slow", slow, "Include the degree 4 and 5 fiber builds");
  accept->callback([&] {
    AcceptanceOptions opts;
    opts.slow = slow;
    ReportBundle rep = run_acceptance(parse_scope(scope), opts);
    if (g.format == "text") {
      for (const auto& c : rep.checks)
        std::cout << c.id << " " << status_name(c.status) << " [" << c.anchor << "] " << c.detail << "\n";
    } else {
      json checks = json::array();
      for (const auto& c : rep.checks)
        checks.push_back({{"id", c.id}, {"anchor", c.anchor}, {"status", status_name(c.status)},
                          {"detail", c.detail}, {"seconds", c.seconds}});
      json inputs;
      for (const auto& [k, v] : rep.inputs) inputs[k] = v;
      emit({{"command", rep.command}, {"inputs", inputs}, {"checks", checks}, {"seconds", rep.seconds},
            {"version", rep.version}, {"pass", rep.ok()}});
    }
    if (!rep.ok()) status = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
