#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "soliton/curvature.hpp"
#include "soliton/curve.hpp"
#include "soliton/io.hpp"
#include "soliton/log.hpp"
#include "soliton/matrix_functions.hpp"
#include "soliton/polygon.hpp"
#include "soliton/svg.hpp"

using namespace soliton;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
  log_info("wrote " + path);
}

/// Row-major matrix flag: "a,b;c,d" with semicolon-separated rows.
Matrix parse_matrix_flag(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream row_stream(text);
  std::string row;
  while (std::getline(row_stream, row, ';')) {
    std::vector<double> entries;
    std::istringstream entry_stream(row);
    std::string entry;
    while (std::getline(entry_stream, entry, ',')) {
      try {
        std::size_t used = 0;
        entries.push_back(std::stod(entry, &used));
        if (used != entry.size()) throw std::invalid_argument(entry);
      } catch (const std::exception&) {
        throw ParseError(1, "bad matrix entry '" + entry + "'");
      }
    }
    rows.push_back(std::move(entries));
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw ParseError(1, "empty matrix flag");
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) {
      throw ParseError(1, "matrix flag must be square (rows separated by ';')");
    }
    for (int j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

Vector parse_vector_flag(const std::string& text) {
  std::vector<double> entries;
  std::istringstream entry_stream(text);
  std::string entry;
  while (std::getline(entry_stream, entry, ',')) {
    try {
      std::size_t used = 0;
      entries.push_back(std::stod(entry, &used));
      if (used != entry.size()) throw std::invalid_argument(entry);
    } catch (const std::exception&) {
      throw ParseError(1, "bad vector entry '" + entry + "'");
    }
  }
  if (entries.empty()) throw ParseError(1, "empty vector flag");
  Vector v(static_cast<int>(entries.size()));
  for (int i = 0; i < v.dim(); ++i) v[i] = entries[static_cast<std::size_t>(i)];
  return v;
}

void check_alpha_flag(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw AlphaOutOfRange("alpha must lie in (0,1)");
}

std::vector<std::pair<double, double>> polygon_points(const PolygonWindow& p) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(p.vertices.size() + 1);
  for (const Vector& v : p.vertices) pts.push_back(project2(v));
  if (p.topology == Topology::kCyclic) pts.push_back(project2(p.vertices.front()));
  return pts;
}

std::vector<std::pair<double, double>> curve_points(const SolitonSpec& spec, double t0, double t1,
                                                    int segments) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(segments) + 1);
  for (int i = 0; i <= segments; ++i) {
    const double t = t0 + (t1 - t0) * i / segments;
    pts.push_back(project2(curve_point(spec, t)));
  }
  return pts;
}

std::string svg_payload(const SvgBuilder& svg, bool reproducible) {
  if (reproducible) return svg.str();
  return "<!-- generated " + std::to_string(std::time(nullptr)) + " -->\n" + svg.str();
}

// ---------------------------------------------------------------------------
// Per-command configuration and runners.

struct EvolveConfig {
  std::string input;
  std::string output_prefix;
  std::string svg_path;
  double alpha = 0.5;
  bool alpha_set = false;
  int steps = 1;
  bool use_t_map = false;
  bool reproducible = true;
};

int run_evolve(const EvolveConfig& cfg) {
  const PolygonCsv parsed = parse_polygon_csv(read_file(cfg.input));
  const double alpha = cfg.alpha_set ? cfg.alpha : parsed.alpha;
  check_alpha_flag(alpha);
  if (cfg.steps < 1) throw Error("steps must be >= 1");

  SvgBuilder svg;
  if (!cfg.svg_path.empty()) svg.add_polyline(polygon_points(parsed.polygon), palette_color(0));

  PolygonWindow current = parsed.polygon;
  for (int i = 1; i <= cfg.steps; ++i) {
    current = cfg.use_t_map ? t_map(current) : midpoints_map(current, alpha);
    std::ostringstream name;
    name << cfg.output_prefix;
    name.fill('0');
    name.width(3);
    name << i;
    name << ".csv";
    write_file(name.str(), to_csv(current, alpha));
    std::cout << name.str() << '\n';
    if (!cfg.svg_path.empty()) {
      svg.add_polyline(polygon_points(current), palette_color(static_cast<std::size_t>(i)));
    }
  }
  if (!cfg.svg_path.empty()) write_file(cfg.svg_path, svg_payload(svg, cfg.reproducible));
  return 0;
}

struct SolitonPolygonConfig {
  std::string a_flag;
  std::string b_flag;
  std::string v_flag;
  std::string output;
  std::string svg_path;
  double alpha = 0.5;
  long jmin = -8;
  long jmax = 8;
  bool reproducible = true;
};

int run_soliton_polygon(const SolitonPolygonConfig& cfg) {
  check_alpha_flag(cfg.alpha);
  const AffineMap witness{parse_matrix_flag(cfg.a_flag), parse_vector_flag(cfg.b_flag)};
  const PolygonWindow x =
      soliton_polygon(witness, cfg.alpha, parse_vector_flag(cfg.v_flag), cfg.jmin, cfg.jmax);
  write_file(cfg.output, to_csv(x, cfg.alpha));
  if (!cfg.svg_path.empty()) {
    SvgBuilder svg;
    svg.add_polyline(polygon_points(x), palette_color(0));
    write_file(cfg.svg_path, svg_payload(svg, cfg.reproducible));
  }
  return 0;
}

struct SolitonCurveConfig {
  std::string spec_path;
  std::string b_flag;
  std::string d_flag;
  std::string v_flag;
  std::string output;
  std::string svg_path;
  std::string family_flag;
  double alpha = 0.5;
  double t0 = -2.0;
  double t1 = 2.0;
  int count = 129;
  bool overlay_polygon = false;
  bool reproducible = true;
};

SolitonSpec spec_from_flags(const std::string& spec_path, const std::string& b_flag,
                            const std::string& d_flag, const std::string& v_flag) {
  if (!spec_path.empty()) return parse_spec_json(read_file(spec_path));
  if (b_flag.empty() || d_flag.empty() || v_flag.empty()) {
    throw Error("either --spec or all of --B, --d, --v are required");
  }
  SolitonSpec spec{parse_matrix_flag(b_flag), parse_vector_flag(d_flag), parse_vector_flag(v_flag)};
  spec.validate();
  return spec;
}

int run_soliton_curve(const SolitonCurveConfig& cfg) {
  const SolitonSpec spec = spec_from_flags(cfg.spec_path, cfg.b_flag, cfg.d_flag, cfg.v_flag);
  if (cfg.count < 2) throw Error("count must be >= 2");
  const CurveSamples samples = sample(spec, cfg.t0, cfg.t1, cfg.count);
  write_file(cfg.output, to_csv(samples));

  if (!cfg.svg_path.empty()) {
    SvgBuilder svg;
    svg.add_path(curve_points(spec, cfg.t0, cfg.t1, 512), palette_color(0));
    std::size_t color = 1;
    if (cfg.overlay_polygon) {
      PolygonWindow poly;
      poly.jmin = static_cast<long>(std::ceil(cfg.t0));
      for (long j = poly.jmin; j <= static_cast<long>(std::floor(cfg.t1)); ++j) {
        poly.vertices.push_back(curve_point(spec, static_cast<double>(j)));
      }
      if (poly.vertices.size() >= 2) svg.add_polyline(polygon_points(poly), palette_color(color));
      ++color;
    }
    if (!cfg.family_flag.empty()) {
      check_alpha_flag(cfg.alpha);
      const Vector s_values = parse_vector_flag(cfg.family_flag);
      for (int i = 0; i < s_values.dim(); ++i) {
        const AffineMap member = family_map(spec, cfg.alpha, s_values[i]);
        std::vector<std::pair<double, double>> pts;
        pts.reserve(513);
        for (int k = 0; k <= 512; ++k) {
          const double t = cfg.t0 + (cfg.t1 - cfg.t0) * k / 512;
          pts.push_back(project2(member(curve_point(spec, t))));
        }
        svg.add_path(pts, palette_color(color++));
      }
    }
    write_file(cfg.svg_path, svg_payload(svg, cfg.reproducible));
  }
  return 0;
}

struct EmbedConfig {
  std::string a_flag;
  std::string b_flag;
  std::string v_flag;
  std::string output;
  double alpha = 0.5;
};

int run_embed(const EmbedConfig& cfg) {
  check_alpha_flag(cfg.alpha);
  const AffineMap witness{parse_matrix_flag(cfg.a_flag), parse_vector_flag(cfg.b_flag)};
  const SolitonSpec spec = embed_on_curve(witness, cfg.alpha, parse_vector_flag(cfg.v_flag));
  const std::string text = to_json(spec);
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    write_file(cfg.output, text);
  }
  return 0;
}

struct ClassifyConfig {
  std::string spec_path;
  std::string b_flag;
  std::string d_flag;
  std::string v_flag;
  std::string output;
};

int run_classify(const ClassifyConfig& cfg) {
  const SolitonSpec spec = spec_from_flags(cfg.spec_path, cfg.b_flag, cfg.d_flag, cfg.v_flag);
  const CurvatureReport report = classify(spec);
  const std::string text = to_json(report);
  if (!cfg.output.empty()) write_file(cfg.output, text);
  std::cout << "kind=" << to_string(report.kind)
            << " kga=" << (report.kga ? format_double(*report.kga) : "none")
            << " family=" << to_string(report.family_type) << '\n';
  return 0;
}

struct VerifyConfig {
  std::string input;
  std::string spec_path;
  std::string a_flag;
  std::string b_flag;
  double alpha = 0.5;
  bool alpha_set = false;
  double tolerance = 1e-8;
  double smin = -2.0, smax = 2.0, tmin = -2.0, tmax = 2.0;
  int count = 9;
};

int run_verify(const VerifyConfig& cfg) {
  double residual = 0.0;
  double scale = 1.0;
  if (!cfg.input.empty()) {
    if (cfg.a_flag.empty() || cfg.b_flag.empty()) {
      throw Error("polygon verification needs the witness --A and --b");
    }
    const PolygonCsv parsed = parse_polygon_csv(read_file(cfg.input));
    const double alpha = cfg.alpha_set ? cfg.alpha : parsed.alpha;
    check_alpha_flag(alpha);
    const AffineMap witness{parse_matrix_flag(cfg.a_flag), parse_vector_flag(cfg.b_flag)};
    const SolitonResidual r = verify_soliton(parsed.polygon, witness, alpha);
    residual = r.max_residual;
    scale = r.scale;
  } else if (!cfg.spec_path.empty()) {
    check_alpha_flag(cfg.alpha);
    const SolitonSpec spec = parse_spec_json(read_file(cfg.spec_path));
    const CurveResidual r =
        verify_curve_soliton(spec, cfg.alpha, uniform_grid(cfg.smin, cfg.smax, cfg.count),
                             uniform_grid(cfg.tmin, cfg.tmax, cfg.count));
    residual = r.max_residual;
    scale = r.scale;
  } else {
    throw Error("verify needs --input (polygon CSV) or --spec (spec JSON)");
  }
  const bool pass = residual <= cfg.tolerance;
  std::cout << "residual=" << format_double(residual) << " scale=" << format_double(scale)
            << " tolerance=" << format_double(cfg.tolerance)
            << " status=" << (pass ? "pass" : "fail") << '\n';
  return pass ? 0 : 1;
}

struct RenderConfig {
  std::vector<std::string> inputs;
  std::string output;
  bool reproducible = true;
};

int run_render(const RenderConfig& cfg) {
  SvgBuilder svg;
  std::size_t color = 0;
  for (const std::string& path : cfg.inputs) {
    const std::string text = read_file(path);
    const std::size_t start = text.find_first_not_of(" \t\r\n");
    if (start != std::string::npos && text.compare(start, 10, "# topology") == 0) {
      svg.add_polyline(polygon_points(parse_polygon_csv(text).polygon), palette_color(color++));
    } else {
      const CurveSamples samples = parse_samples_csv(text);
      std::vector<std::pair<double, double>> pts;
      pts.reserve(samples.points.size());
      for (const Vector& p : samples.points) pts.push_back(project2(p));
      svg.add_path(pts, palette_color(color++));
    }
  }
  if (svg.empty()) throw Error("nothing to render");
  write_file(cfg.output, svg_payload(svg, cfg.reproducible));
  return 0;
}

int dispatch_errors(const std::function<int()>& action) {
  try {
    return action();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const AlphaOutOfRange& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NoRealLog& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const NotInvertible& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const EigenvalueObstruction& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const DegenerateCurve& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const EmptyResult& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const OverflowError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const UndefinedCurvature& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solitons of the midpoint maps: evolution, construction, verification,"
               " classification and figure-style output"};
  app.require_subcommand(1);

  EvolveConfig evolve_cfg;
  CLI::App* evolve = app.add_subcommand("evolve", "Iterate the midpoint map (or T) on a polygon");
  evolve->add_option("--input", evolve_cfg.input, "polygon CSV")->required();
  evolve->add_option("--output-prefix", evolve_cfg.output_prefix, "prefix for iterate CSVs")
      ->required();
  auto* evolve_alpha = evolve->add_option("--alpha", evolve_cfg.alpha, "blend parameter in (0,1)");
  evolve->add_option("--steps", evolve_cfg.steps, "number of iterations")->default_val(1);
  evolve->add_flag("--t-map", evolve_cfg.use_t_map, "apply the three-point map T instead");
  evolve->add_option("--svg", evolve_cfg.svg_path, "overlay SVG of all iterates");
  evolve->add_flag("--reproducible,!--no-reproducible", evolve_cfg.reproducible,
                   "suppress volatile SVG comments (default on)");

  SolitonPolygonConfig sp_cfg;
  CLI::App* sp = app.add_subcommand("soliton-polygon", "Construct the soliton polygon of (A,b)");
  sp->add_option("--A", sp_cfg.a_flag, "linear part, row-major 'a,b;c,d'")->required();
  sp->add_option("--b", sp_cfg.b_flag, "translation 'x,y'")->required();
  sp->add_option("--v", sp_cfg.v_flag, "vertex x_0")->required();
  sp->add_option("--alpha", sp_cfg.alpha, "blend parameter")->default_val(0.5);
  sp->add_option("--jmin", sp_cfg.jmin)->default_val(-8);
  sp->add_option("--jmax", sp_cfg.jmax)->default_val(8);
  sp->add_option("--output", sp_cfg.output, "polygon CSV path")->required();
  sp->add_option("--svg", sp_cfg.svg_path, "SVG path");
  sp->add_flag("--reproducible,!--no-reproducible", sp_cfg.reproducible, "");

  SolitonCurveConfig sc_cfg;
  CLI::App* sc = app.add_subcommand("soliton-curve", "Sample and draw the orbit c(t) of a spec");
  sc->add_option("--spec", sc_cfg.spec_path, "spec JSON path");
  sc->add_option("--B", sc_cfg.b_flag, "generator matrix");
  sc->add_option("--d", sc_cfg.d_flag, "generator translation");
  sc->add_option("--v", sc_cfg.v_flag, "initial point c(0)");
  sc->add_option("--t0", sc_cfg.t0)->default_val(-2.0);
  sc->add_option("--t1", sc_cfg.t1)->default_val(2.0);
  sc->add_option("--count", sc_cfg.count, "sample count")->default_val(129);
  sc->add_option("--alpha", sc_cfg.alpha, "blend parameter for --family")->default_val(0.5);
  sc->add_option("--output", sc_cfg.output, "samples CSV path")->required();
  sc->add_option("--svg", sc_cfg.svg_path, "SVG path");
  sc->add_flag("--polygon", sc_cfg.overlay_polygon, "overlay the polygon c(j)");
  sc->add_option("--family", sc_cfg.family_flag, "comma list of s values for blended overlays");
  sc->add_flag("--reproducible,!--no-reproducible", sc_cfg.reproducible, "");

  EmbedConfig embed_cfg;
  CLI::App* embed = app.add_subcommand("embed", "Lift a polygon witness (A,b) to a curve spec");
  embed->add_option("--A", embed_cfg.a_flag)->required();
  embed->add_option("--b", embed_cfg.b_flag)->required();
  embed->add_option("--v", embed_cfg.v_flag)->required();
  embed->add_option("--alpha", embed_cfg.alpha)->default_val(0.5);
  embed->add_option("--output", embed_cfg.output, "spec JSON path (stdout when omitted)");

  ClassifyConfig classify_cfg;
  CLI::App* cls = app.add_subcommand("classify", "Planar curvature classification of a spec");
  cls->add_option("--spec", classify_cfg.spec_path, "spec JSON path");
  cls->add_option("--B", classify_cfg.b_flag);
  cls->add_option("--d", classify_cfg.d_flag);
  cls->add_option("--v", classify_cfg.v_flag);
  cls->add_option("--output", classify_cfg.output, "report JSON path");

  VerifyConfig verify_cfg;
  CLI::App* verify = app.add_subcommand("verify", "Check the soliton identity of a polygon or spec");
  verify->add_option("--input", verify_cfg.input, "polygon CSV");
  verify->add_option("--spec", verify_cfg.spec_path, "spec JSON");
  verify->add_option("--A", verify_cfg.a_flag, "witness linear part (polygon mode)");
  verify->add_option("--b", verify_cfg.b_flag, "witness translation (polygon mode)");
  auto* verify_alpha = verify->add_option("--alpha", verify_cfg.alpha);
  verify->add_option("--tolerance", verify_cfg.tolerance)->default_val(1e-8);
  verify->add_option("--smin", verify_cfg.smin)->default_val(-2.0);
  verify->add_option("--smax", verify_cfg.smax)->default_val(2.0);
  verify->add_option("--tmin", verify_cfg.tmin)->default_val(-2.0);
  verify->add_option("--tmax", verify_cfg.tmax)->default_val(2.0);
  verify->add_option("--count", verify_cfg.count, "grid points per axis")->default_val(9);

  RenderConfig render_cfg;
  CLI::App* render = app.add_subcommand("render", "Draw polygon/sample CSVs as one SVG");
  render->add_option("--input", render_cfg.inputs, "CSV inputs (repeatable)")->required();
  render->add_option("--output", render_cfg.output, "SVG path")->required();
  render->add_flag("--reproducible,!--no-reproducible", render_cfg.reproducible, "");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  evolve_cfg.alpha_set = evolve_alpha->count() > 0;
  verify_cfg.alpha_set = verify_alpha->count() > 0;

  if (app.got_subcommand(evolve)) return dispatch_errors([&] { return run_evolve(evolve_cfg); });
  if (app.got_subcommand(sp)) return dispatch_errors([&] { return run_soliton_polygon(sp_cfg); });
  if (app.got_subcommand(sc)) return dispatch_errors([&] { return run_soliton_curve(sc_cfg); });
  if (app.got_subcommand(embed)) return dispatch_errors([&] { return run_embed(embed_cfg); });
  if (app.got_subcommand(cls)) return dispatch_errors([&] { return run_classify(classify_cfg); });
  if (app.got_subcommand(verify)) return dispatch_errors([&] { return run_verify(verify_cfg); });
  if (app.got_subcommand(render)) return dispatch_errors([&] { return run_render(render_cfg); });
  return 2;
}
