#include "solgeo/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "solgeo/error.hpp"
#include "solgeo/geodesics.hpp"
#include "solgeo/isoptic.hpp"
#include "solgeo/mesher.hpp"
#include "solgeo/translation_curves.hpp"
#include "solgeo/triangles.hpp"

namespace solgeo {

namespace {

using Json = nlohmann::ordered_json;

Json to_json(const SolPoint& p) { return Json::array({p.x, p.y, p.z}); }

Json to_json(const TriangleAngles& t) {
  return {{"omega1", t.omega1}, {"omega2", t.omega2}, {"omega3", t.omega3}, {"sum", t.sum}};
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

SolPoint parse_point(const std::string& text, const char* flag) {
  std::vector<double> c;
  std::stringstream ss(text);
  std::string item;
  bool ok = true;
  while (ok && std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      c.push_back(std::stod(item, &used));
      ok = used == item.size() && std::isfinite(c.back());
    } catch (const std::exception&) {
      ok = false;
    }
  }
  if (!ok || c.size() != 3) {
    throw SolError(ErrorCode::InvalidArgument,
                   std::string(flag) + " expects three comma-separated numbers x,y,z");
  }
  return {c[0], c[1], c[2]};
}

std::vector<double> linspace(double length, int samples) {
  std::vector<double> s(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) s[i] = i + 1 == samples ? length : length * i / (samples - 1);
  return s;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw SolError(ErrorCode::InvalidArgument, message);
}

// Writes to `path` when given, otherwise to `fallback`.
template <typename Writer>
void emit(const std::string& path, std::ostream& fallback, Writer&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw SolError(ErrorCode::InvalidArgument, "cannot open output file " + path);
  write(file);
  if (!file) throw SolError(ErrorCode::InvalidArgument, "failed writing " + path);
}

void print(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

struct CurveArgs {
  double angle1 = 0.0;
  double theta = 0.0;
  double length = 1.0;
  int samples = 101;
  bool integrate = false;
  std::string out;
};

struct DistanceArgs {
  std::string from;
  std::string to;
  std::string kind = "geodesic";
};

struct TriangleArgs {
  std::string a1, a2, a3;
  std::vector<double> table1, table2;
};

struct IsopticArgs {
  double a = 0.0, b = 0.0, c = 0.0;
  double alpha = std::numbers::pi / 2.0;
  double box = 5.0;
  int res = 96;
  std::string out;
  bool union_field = false;
};

struct ScanArgs {
  int n = 100;
  std::uint64_t seed = 1;
};

void run_geodesic(const CurveArgs& g, std::ostream& out) {
  require(g.samples >= 2, "--samples must be at least 2");
  const auto eval = g.integrate ? GeodesicArc::Evaluation::ForceIntegration
                                : GeodesicArc::Evaluation::ClosedFormWhereAvailable;
  const GeodesicArc arc(GeodesicInitial{g.angle1, g.theta}, g.length, eval);
  std::vector<std::vector<double>> rows;
  for (double s : linspace(g.length, g.samples)) {
    const SolPoint p = arc.point(s);
    rows.push_back({s, p.x, p.y, p.z});
  }
  emit(g.out, out, [&](std::ostream& os) { write_csv(os, {"s", "x", "y", "z"}, rows); });
}

void run_translation_curve(const CurveArgs& g, std::ostream& out) {
  require(g.samples >= 2, "--samples must be at least 2");
  require(g.length >= 0.0 && std::isfinite(g.length), "--length must be finite and >= 0");
  std::vector<std::vector<double>> rows;
  for (double t : linspace(g.length, g.samples)) {
    const SolPoint p = translation_point({g.angle1, g.theta, t});
    rows.push_back({t, p.x, p.y, p.z});
  }
  emit(g.out, out, [&](std::ostream& os) { write_csv(os, {"t", "x", "y", "z"}, rows); });
}

void run_distance(const DistanceArgs& d, std::ostream& out) {
  const SolPoint from = parse_point(d.from, "--from");
  const SolPoint to = parse_point(d.to, "--to");
  const SolPoint target = translate_to_origin(from, to);
  Json params{{"kind", d.kind}};
  double distance = 0.0;
  if (target != kOrigin) {
    if (d.kind == "geodesic") {
      const GeodesicArc arc = solve_geodesic_bvp(target);
      distance = arc.length();
      params["alpha"] = arc.initial().alpha;
      params["theta"] = arc.initial().theta;
      params["family"] = to_string(arc.family());
    } else {
      const DirectionParams t = invert_translation_point(target);
      distance = t.t;
      params["phi"] = t.phi;
      params["theta"] = t.theta;
    }
  }
  print(out, {{"distance", distance}, {"params", params}});
}

Json table_rows(double amax, TriangleAngles (*closed_form)(double)) {
  Json rows = Json::array();
  for (double a : kTableParameters) {
    if (a > amax) continue;
    Json row{{"a", a}};
    row.update(to_json(closed_form(a)));
    rows.push_back(row);
  }
  return rows;
}

void run_triangle(const TriangleArgs& t, bool table1, bool table2, std::ostream& out) {
  auto amax = [](const std::vector<double>& v) {
    return v.empty() ? kTableParameters.back() : v.front();
  };
  if (table1 || table2) {
    Json j = Json::object();
    if (table1) j["table1"] = table_rows(amax(t.table1), horizontal_isosceles_angles);
    if (table2) j["table2"] = table_rows(amax(t.table2), hyperbolic_like_angles);
    print(out, j);
    return;
  }
  require(!t.a1.empty() && !t.a2.empty() && !t.a3.empty(),
          "triangle needs --a1, --a2 and --a3 (or --table1/--table2)");
  const TriangleAngles w = geodesic_triangle_angles(
      parse_point(t.a1, "--a1"), parse_point(t.a2, "--a2"), parse_point(t.a3, "--a3"));
  print(out, to_json(w));
}

void run_pi_triangle(double a, std::ostream& out) {
  const PiSumTriangle r = find_pi_sum_triangle(a);
  Json vertices = Json::array();
  for (const auto& v : r.vertices) vertices.push_back(to_json(v));
  print(out, {{"t_E", r.t}, {"vertices", vertices}, {"angles", to_json(r.angles)}});
}

void run_isoptic(const IsopticArgs& i, std::ostream& out) {
  const IsopticSpec spec{i.a, i.b, i.c, i.alpha};
  spec.validate();
  require(i.box > 0.0 && std::isfinite(i.box), "--box must be a positive half-width");
  require(i.res >= 2, "--res must be at least 2");
  const SurfaceClassification cls = classify_surface(spec);
  Json j{{"classification", to_string(cls.kind)},
         {"thresholds",
          {{"positive", cls.threshold_pos},
           {"negative", cls.threshold_neg},
           {"positive_argmin", cls.argmin_pos},
           {"negative_argmin", cls.argmin_neg},
           {"printed_positive", optional_number(cls.printed_threshold_pos)},
           {"printed_negative", optional_number(cls.printed_threshold_neg)}}},
         {"cos_alpha", std::cos(spec.alpha)}};
  if (!i.out.empty()) {
    const IsopticFieldOptions fo{i.union_field};
    const TriMesh mesh = march([&](const SolPoint& p) { return isoptic_field_value(spec, p, fo); },
                               GridSpec::uniform(Box::cube(i.box), i.res));
    emit(i.out, out, [&](std::ostream& os) { write_obj(os, mesh); });
    j["mesh"] = {{"file", i.out},
                 {"vertices", mesh.vertices.size()},
                 {"triangles", mesh.triangles.size()},
                 {"euler_characteristic", euler_characteristic(mesh)},
                 {"closed", is_closed(mesh)}};
  }
  print(out, j);
}

void run_thaloid(const IsopticArgs& i, std::ostream& out) {
  const ThaloidSphereComparison r =
      thaloid_sphere_deviation(IsopticSpec{i.a, i.b, i.c, std::numbers::pi / 2.0});
  print(out, {{"R", r.radius}, {"max_deviation", r.max_deviation}});
}

void run_scan(const ScanArgs& s, std::ostream& out) {
  const HorizontalScanReport r = scan_horizontal_like(s.n, s.seed);
  Json counter = Json::array();
  for (const auto& t : r.counterexamples) {
    Json vs = Json::array();
    for (const auto& v : t.vertices) vs.push_back(to_json(v));
    counter.push_back({{"vertices", vs}, {"angles", to_json(t.angles)}});
  }
  Json iso = Json::array();
  for (const auto& c : r.isosceles) {
    iso.push_back({{"a", c.a}, {"closed_form", to_json(c.closed_form)}, {"general", to_json(c.general)}});
  }
  const bool any = r.evaluated > 0;
  print(out, {{"requested", r.requested},
              {"evaluated", r.evaluated},
              {"skipped", r.skipped},
              {"min_sum", any ? Json(r.min_sum) : Json(nullptr)},
              {"max_sum", any ? Json(r.max_sum) : Json(nullptr)},
              {"counterexamples", counter},
              {"isosceles", iso}});
}

int fail(std::ostream& err, const SolError& e, int code) {
  Json j{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
  if (const auto* b = dynamic_cast<const BvpDivergence*>(&e)) j["best_residual"] = b->best_residual();
  err << j.dump() << '\n';
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometry toolkit for Sol: geodesics, translation curves, triangles, isoptic surfaces",
               "solgeo"};
  app.require_subcommand(1);

  CurveArgs geo;
  auto* geodesic = app.add_subcommand("geodesic", "Sample a geodesic from the origin as CSV (s,x,y,z)");
  geodesic->add_option("--alpha", geo.angle1, "Azimuth of the initial direction")->required();
  geodesic->add_option("--theta", geo.theta, "Elevation of the initial direction")->required();
  geodesic->add_option("--length", geo.length, "Arc length")->required();
  geodesic->add_option("--samples", geo.samples, "Number of samples")->capture_default_str();
  geodesic->add_flag("--integrate", geo.integrate, "Integrate numerically even for closed-form families");
  geodesic->add_option("--out", geo.out, "CSV file (default: stdout)");

  CurveArgs tc;
  auto* translation = app.add_subcommand("translation-curve", "Sample a translation curve as CSV (t,x,y,z)");
  translation->add_option("--phi", tc.angle1, "Azimuth")->required();
  translation->add_option("--theta", tc.theta, "Elevation")->required();
  translation->add_option("--length", tc.length, "Curve length")->required();
  translation->add_option("--samples", tc.samples, "Number of samples")->capture_default_str();
  translation->add_option("--out", tc.out, "CSV file (default: stdout)");

  DistanceArgs dist;
  auto* distance = app.add_subcommand("distance", "Geodesic or translation distance between two points");
  distance->add_option("--from", dist.from, "x,y,z")->required();
  distance->add_option("--to", dist.to, "x,y,z")->required();
  distance->add_option("--kind", dist.kind, "geodesic|translation")
      ->check(CLI::IsMember({"geodesic", "translation"}))
      ->capture_default_str();

  TriangleArgs tri;
  auto* triangle = app.add_subcommand("triangle", "Interior angles of a geodesic triangle");
  triangle->add_option("--a1", tri.a1, "x,y,z");
  triangle->add_option("--a2", tri.a2, "x,y,z");
  triangle->add_option("--a3", tri.a3, "x,y,z");
  auto* t1 = triangle->add_option("--table1", tri.table1,
                                  "Emit the horizontal isosceles table up to a = amax (default 1000)")
                 ->expected(0, 1)
                 ->default_str("1000");
  auto* t2 = triangle->add_option("--table2", tri.table2,
                                  "Emit the hyperbolic-like table up to a = amax (default 1000)")
                 ->expected(0, 1)
                 ->default_str("1000");

  double pi_a = 1.0;
  auto* pi_triangle = app.add_subcommand("pi-triangle", "Triangle with interior angle sum pi");
  pi_triangle->add_option("--a", pi_a, "Size parameter")->capture_default_str();

  IsopticArgs iso;
  auto* isoptic = app.add_subcommand("isoptic", "Classify and mesh a translation-like isoptic surface");
  isoptic->add_option("--a", iso.a, "Endpoint x");
  isoptic->add_option("--b", iso.b, "Endpoint y");
  isoptic->add_option("--c", iso.c, "Endpoint z");
  isoptic->add_option("--alpha", iso.alpha, "Isoptic angle in (0, pi)")->required();
  isoptic->add_option("--box", iso.box, "Half-width of the meshing box")->capture_default_str();
  isoptic->add_option("--res", iso.res, "Grid cells per axis")->capture_default_str();
  isoptic->add_option("--out", iso.out, "OBJ file for the mesh");
  isoptic->add_flag("--union", iso.union_field, "Mesh the alpha and (pi - alpha) isoptics together");

  IsopticArgs th;
  auto* thaloid = app.add_subcommand("thaloid-vs-sphere", "Distance of the Thaloid from the translation sphere");
  thaloid->add_option("--a", th.a, "Endpoint x");
  thaloid->add_option("--b", th.b, "Endpoint y");
  thaloid->add_option("--c", th.c, "Endpoint z");

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan-horizontal", "Random triangles in the plane z = 0");
  scan_cmd->add_option("--n", scan.n, "Number of samples")->capture_default_str();
  scan_cmd->add_option("--seed", scan.seed, "Random seed")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (geodesic->parsed()) run_geodesic(geo, out);
    if (translation->parsed()) run_translation_curve(tc, out);
    if (distance->parsed()) run_distance(dist, out);
    if (triangle->parsed()) run_triangle(tri, t1->count() > 0, t2->count() > 0, out);
    if (pi_triangle->parsed()) run_pi_triangle(pi_a, out);
    if (isoptic->parsed()) run_isoptic(iso, out);
    if (thaloid->parsed()) run_thaloid(th, out);
    if (scan_cmd->parsed()) run_scan(scan, out);
  } catch (const SolError& e) {
    return fail(err, e, e.code() == ErrorCode::InvalidArgument ? kExitUsage : kExitNumerical);
  } catch (const std::exception& e) {
    err << Json{{"error", "internal"}, {"message", e.what()}}.dump() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace solgeo
