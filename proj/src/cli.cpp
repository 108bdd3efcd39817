#include "curvelab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>

#include "CLI11.hpp"

#include "curvelab/json_io.hpp"

namespace curvelab::cli {

namespace {

struct Options {
  int genus = 0;
  int punctures = 5;
  int cap = 4;
  std::uint64_t seed = 1;
  int samples = 100;
  std::string R = "calibrate";
  std::string R2;
  std::string engine = "farey";
  std::string out;
  std::string dot;
  bool detail = false;

  // curves and coarse
  std::string a, b, c, about, slopes;
  int power = 1;
  std::int64_t q = 1, p = 1;
  std::string strategy = "basic";
  bool nonorientable = false;

  // farey and qm
  std::string u, v, g, w, x0, x, axis, elements, group = "psl2z", spec, generators;
  int edges = 4;
  std::optional<int> W;
  int search_cap = 200;
  int max_len = 10;
  int parabolic = 0;
  int word_length = 1;
  int halo = 2;

  // covers
  int degree = 2;
  std::string shifts, perms;
};

Json run_config(const Options& o, bool with_R) {
  Json j{{"surface", to_json(SurfaceSig{o.genus, o.punctures, true})},
         {"weight_cap", o.cap},
         {"seed", o.seed},
         {"samples", o.samples}};
  if (with_R) j["R"] = o.R2.empty() ? o.R : "R2=" + o.R2;
  return j;
}

TriangulationPtr surface_tri(const Options& o) { return make_standard({o.genus, o.punctures, true}); }

// R given as an integer, fraction or decimal; returns R^2.
Ratio parse_R_squared(const std::string& text) {
  Ratio r;
  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    r = Ratio::parse(text);
  } else {
    const std::string frac = text.substr(dot + 1);
    if (frac.size() > 6) throw InvalidInput("R has too many decimals: " + text);
    std::int64_t den = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
    r = Ratio::parse(text.substr(0, dot) + frac + "/" + std::to_string(den));
  }
  return Ratio::make(r.num * r.num, r.den * r.den);
}

std::pair<Ratio, Json> resolve_R2(const Options& o, const CoarseSpace& space) {
  if (!o.R2.empty()) return {Ratio::parse(o.R2), nullptr};
  if (o.R == "calibrate") {
    const auto rep = calibrate_R(space, o.samples, o.seed);
    return {rep.R2, to_json(rep)};
  }
  return {parse_R_squared(o.R), nullptr};
}

FareyQmSpec farey_spec(const Options& o) {
  if (!o.spec.empty()) {
    std::ifstream in(o.spec);
    if (!in) throw InvalidInput("cannot open qm spec " + o.spec);
    try {
      return qm_spec_from_json(Json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw InvalidInput(std::string("bad qm spec file: ") + e.what());
    }
  }
  const FareySlope x0 = FareySlope::parse(o.x0.empty() ? "0/1" : o.x0);
  std::vector<FareySlope> w;
  if (!o.w.empty()) {
    w = parse_slope_list(o.w);
  } else if (!o.axis.empty()) {
    w = axis_segment(parse_matrix(o.axis), x0, o.edges);
  } else {
    throw InvalidInput("give w as --w, --axis with --edges, or --spec");
  }
  return FareyQmSpec::make(std::move(w), o.W, x0, parse_translate_group(o.group), o.halo);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write " + path);
  f << text;
}

std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad config file: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("config file must hold a JSON object");
  std::vector<std::string> out;
  for (const auto& [key, value] : j.items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back("--" + key);
    } else if (value.is_string()) {
      out.insert(out.end(), {"--" + key, value.get<std::string>()});
    } else if (value.is_number() || value.is_array()) {
      out.insert(out.end(), {"--" + key, value.dump()});
    } else {
      throw InvalidInput("config value for '" + key + "' must be a string, number, array or boolean");
    }
  }
  return out;
}

Json error_json(const std::string& kind, const std::string& message) {
  return Json{{"error", kind}, {"message", message}};
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options o;
  std::function<Json()> action;

  CLI::App app{"Curve complex and Farey graph experiments", "curvelab"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeFirst);
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file of option defaults; flags override it");

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<Json()> fn) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->callback([&action, fn] { action = fn; });
    sub->add_option("--out", o.out, "write JSON here instead of stdout");
    return sub;
  };
  // Defaults differ per command, so they are applied once the command is seen.
  auto surface_opts = [&](CLI::App* s, int g, int n) {
    s->preparse_callback([&o, g, n](std::size_t) {
      o.genus = g;
      o.punctures = n;
    });
    s->add_option("--genus", o.genus, "genus of the surface");
    s->add_option("--punctures", o.punctures, "number of punctures");
  };
  auto campaign_opts = [&](CLI::App* s) {
    s->add_option("--weight-cap", o.cap, "maximum normal coordinate in the universe");
    s->add_option("--seed", o.seed, "random seed");
    s->add_option("--samples", o.samples, "number of samples");
  };

  // ------------------------------------------------------------- surface
  CLI::App* surface = app.add_subcommand("surface", "surface signatures and triangulations");
  surface->require_subcommand(1);
  {
    auto* s = leaf(surface, "classify", "classify the curve complex", [&] {
      const SurfaceSig sig{o.genus, o.punctures, !o.nonorientable};
      Json j = to_json(sig);
      j["class"] = std::string(to_string(classify(sig)));
      return j;
    });
    surface_opts(s, 0, 5);
    s->add_flag("--nonorientable", o.nonorientable, "genus counts crosscaps");
  }
  {
    auto* s = leaf(surface, "triangulate", "standard ideal triangulation", [&] {
      const auto tri = surface_tri(o);
      return Json{{"signature", to_json(tri->signature())},
                  {"triangles", tri->triangle_count()},
                  {"edges", tri->edge_count()},
                  {"gluing", tri->gluing_table()}};
    });
    surface_opts(s, 0, 5);
  }

  // --------------------------------------------------------------- curve
  CLI::App* curve = app.add_subcommand("curve", "curves in normal coordinates");
  curve->require_subcommand(1);
  {
    auto* s = leaf(curve, "intersect", "geometric intersection number", [&] {
      const auto tri = surface_tri(o);
      return Json{{"intersection", intersection_number(parse_curve(tri, o.a), parse_curve(tri, o.b))}};
    });
    surface_opts(s, 0, 5);
    s->add_option("--a", o.a, "curve: weights or p/q on the torus")->required();
    s->add_option("--b", o.b, "curve")->required();
  }
  {
    auto* s = leaf(curve, "twist", "Dehn twist of c about a curve", [&] {
      const auto tri = surface_tri(o);
      const NormalCurve r = twist(parse_curve(tri, o.about), o.power, parse_curve(tri, o.c));
      Json j{{"weights", to_json(r)}};
      if (tri->signature() == SurfaceSig{1, 1, true}) {
        const auto [sp, sq] = torus_slope_of(r);
        j["slope"] = FareySlope::make(sp, sq).str();
      }
      return j;
    });
    surface_opts(s, 0, 5);
    s->add_option("--about", o.about, "twisting curve")->required();
    s->add_option("--c", o.c, "curve to move")->required();
    s->add_option("--power", o.power, "twist exponent (positive = left)");
  }
  {
    auto* s = leaf(curve, "enumerate", "all curves with weights up to the cap", [&] {
      Json curves = Json::array();
      for (const auto& c : enumerate_curves(surface_tri(o), o.cap)) curves.push_back(to_json(c));
      return Json{{"weight_cap", o.cap}, {"count", curves.size()}, {"curves", std::move(curves)}};
    });
    surface_opts(s, 0, 5);
    s->add_option("--weight-cap", o.cap, "maximum normal coordinate");
  }
  {
    auto* s = leaf(curve, "filling", "whether two curves fill", [&] {
      const auto tri = surface_tri(o);
      return Json{{"filling", is_filling(parse_curve(tri, o.a), parse_curve(tri, o.b))}};
    });
    surface_opts(s, 0, 5);
    s->add_option("--a", o.a, "curve")->required();
    s->add_option("--b", o.b, "curve")->required();
  }

  // ------------------------------------------------------------------ cc
  CLI::App* cc = app.add_subcommand("cc", "curve complex distances and paths");
  cc->require_subcommand(1);
  {
    auto* s = leaf(cc, "distance", "distance inside a capped universe", [&] {
      const auto tri = surface_tri(o);
      const NormalCurve a = parse_curve(tri, o.a), b = parse_curve(tri, o.b);
      Json j;
      if (classify(tri->signature()) != ComplexClass::DiscreteComplex || intersection_number(a, b) <= 2)
        j["small_distance"] = to_string(small_distance(a, b));
      const ComplexUniverse uni(tri, o.cap);
      const auto d = bfs_distance(a, b, uni);
      j["distance"] = d ? Json(*d) : Json(nullptr);
      j["weight_cap"] = o.cap;
      j["universe"] = uni.size();
      return j;
    });
    surface_opts(s, 0, 5);
    s->add_option("--a", o.a, "curve")->required();
    s->add_option("--b", o.b, "curve")->required();
    s->add_option("--weight-cap", o.cap, "maximum normal coordinate in the universe");
  }
  {
    auto* s = leaf(cc, "path", "surgery path between two curves", [&] {
      const auto tri = surface_tri(o);
      const NormalCurve a = parse_curve(tri, o.a), b = parse_curve(tri, o.b);
      std::vector<std::int64_t> trace;
      const auto path = surgery_path(a, b, o.strategy == "log" ? SurgeryStrategy::Log : SurgeryStrategy::Basic, &trace);
      if (!o.dot.empty()) {
        std::vector<std::string> labels;
        for (const auto& c : path.vertices) labels.push_back(to_json(c).dump());
        write_text(o.dot, path_dot(labels));
      }
      return Json{{"intersection", intersection_number(a, b)},
                  {"strategy", o.strategy},
                  {"length", path.length()},
                  {"trace", trace},
                  {"path", to_json(path)}};
    });
    surface_opts(s, 0, 5);
    s->add_option("--a", o.a, "curve")->required();
    s->add_option("--b", o.b, "curve")->required();
    s->add_option("--strategy", o.strategy, "basic or log")->check(CLI::IsMember({"basic", "log"}));
    s->add_option("--dot", o.dot, "also write the path as Graphviz");
  }
  {
    auto* s = leaf(cc, "delta", "slim-triangle constant on sampled triangles", [&] {
      const ComplexUniverse uni(surface_tri(o), o.cap);
      Json j = to_json(probe_delta(uni, o.samples, o.seed));
      j["config"] = run_config(o, false);
      return j;
    });
    surface_opts(s, 0, 5);
    campaign_opts(s);
  }

  // --------------------------------------------------------------- farey
  auto qm_eval = [&] {
    if (o.engine == "normal") {
      const auto tri = surface_tri(o);
      const ComplexUniverse uni(tri, o.cap);
      std::vector<int> w;
      for (const auto& c : parse_curve_list(tri, o.w)) {
        const auto i = uni.index_of(c);
        if (!i) throw InvalidInput("w leaves the universe at this weight cap");
        w.push_back(*i);
      }
      std::vector<NormalCurve> gens;
      if (!o.generators.empty()) gens = parse_curve_list(tri, o.generators);
      if (w.empty()) throw InvalidInput("give w as --w c1;c2;...");
      int x0 = w.front();
      if (!o.x0.empty()) {
        const auto i = uni.index_of(parse_curve(tri, o.x0));
        if (!i) throw InvalidInput("x0 is not in the universe");
        x0 = *i;
      }
      const CurveQmEngine engine(uni, w, o.W, x0, gens, o.word_length);
      const auto v = engine.h(parse_twist_word(tri, o.g), o.search_cap);
      Json j{{"h", v.h}, {"approximate", true}};
      if (o.detail) {
        j["forward"] = to_json(v.forward);
        j["backward"] = to_json(v.backward);
        j["translates"] = engine.translate_count();
      }
      return j;
    }
    const FareyQmSpec spec = farey_spec(o);
    const HValue v = h_w(parse_matrix(o.g), spec, o.search_cap);
    Json j{{"h", v.h}};
    if (v.cap_exceeded()) j["cap_exceeded"] = true;
    if (o.detail) {
      j["spec"] = to_json(spec);
      j["forward"] = to_json(v.forward);
      j["backward"] = to_json(v.backward);
    }
    return j;
  };
  auto qm_opts = [&](CLI::App* s) {
    s->add_option("--w", o.w, "path w: slopes 0/1,1/1,... (farey) or curves c1;c2;... (normal)");
    s->add_option("--axis", o.axis, "take w on the axis of this matrix through x0");
    s->add_option("--edges", o.edges, "length of w when given by --axis");
    s->add_option("--W", o.W, "weight W with 0 < W < |w|; default ceil(|w|/2)");
    s->add_option("--x0", o.x0, "base vertex (default 0/1 on the Farey graph, w[0] otherwise)");
    s->add_option("--group", o.group, "translate group: psl2z, pgl2z or commutator")
        ->check(CLI::IsMember({"psl2z", "pgl2z", "commutator"}));
    s->add_option("--halo", o.halo, "extra triangle layers around the search ladder");
    s->add_option("--search-cap", o.search_cap, "maximum path length searched");
    s->add_option("--spec", o.spec, "qm spec JSON file");
  };

  CLI::App* farey = app.add_subcommand("farey", "the Farey graph");
  farey->require_subcommand(1);
  {
    auto* s = leaf(farey, "distance", "graph distance between two slopes", [&] {
      return Json{{"distance", farey_distance(FareySlope::parse(o.u), FareySlope::parse(o.v))}};
    });
    s->add_option("u", o.u, "slope p/q")->required();
    s->add_option("v", o.v, "slope p/q")->required();
  }
  {
    auto* s = leaf(farey, "path", "a geodesic between two slopes", [&] {
      const auto path = farey_geodesic(FareySlope::parse(o.u), FareySlope::parse(o.v));
      if (!o.dot.empty()) {
        std::vector<std::string> labels;
        for (const auto& v : path) labels.push_back(v.str());
        write_text(o.dot, path_dot(labels));
      }
      return Json{{"distance", static_cast<int>(path.size()) - 1}, {"path", to_json(path)}};
    });
    s->add_option("u", o.u, "slope p/q")->required();
    s->add_option("v", o.v, "slope p/q")->required();
    s->add_option("--dot", o.dot, "also write the path as Graphviz");
  }
  {
    auto* s = leaf(farey, "act", "image of a slope under a matrix", [&] {
      return Json{{"image", act(parse_matrix(o.g), FareySlope::parse(o.v)).str()}};
    });
    s->add_option("--g", o.g, "matrix [[a,b],[c,d]]")->required();
    s->add_option("v", o.v, "slope p/q")->required();
  }
  {
    auto* s = leaf(farey, "qm", "h_w(g) on the Farey graph", [&] {
      o.engine = "farey";
      return qm_eval();
    });
    qm_opts(s);
    s->add_option("--g", o.g, "matrix [[a,b],[c,d]]")->required();
    s->add_flag("--detail", o.detail, "include both discounted distances");
  }

  // -------------------------------------------------------------- coarse
  CLI::App* coarse = app.add_subcommand("coarse", "coarse midpoints, geodesics and centers");
  coarse->require_subcommand(1);
  auto coarse_opts = [&](CLI::App* s, bool pair) {
    surface_opts(s, 0, 5);
    campaign_opts(s);
    s->add_option("--R", o.R, "R as a number or 'calibrate'");
    s->add_option("--R2", o.R2, "R squared as an exact fraction; overrides --R");
    if (pair) {
      s->add_option("--a", o.a, "multicurve a (components separated by ';')")->required();
      s->add_option("--b", o.b, "multicurve b")->required();
    }
  };
  auto with_space = [&](const std::function<Json(const TriangulationPtr&, const CoarseSpace&)>& f) {
    return [&, f] {
      const auto tri = surface_tri(o);
      const ComplexUniverse uni(tri, o.cap);
      const CoarseSpace space(uni);
      return f(tri, space);
    };
  };
  {
    auto* s = leaf(coarse, "length", "l_ab(c) = I(a,c) + I(b,c)", with_space([&](const TriangulationPtr& tri, const CoarseSpace&) {
      const WeightedPair wp{FillingPair::make(parse_multicurve(tri, o.a), parse_multicurve(tri, o.b)), o.q, o.p};
      return Json{{"length", length(parse_multicurve(tri, o.c), wp)}, {"I", wp.intersection()}};
    }));
    coarse_opts(s, true);
    s->add_option("--c", o.c, "multicurve c")->required();
    s->add_option("--q", o.q, "weight on a");
    s->add_option("--p", o.p, "weight on b");
  }
  {
    auto* s = leaf(coarse, "mid", "Mid'(qa, pb) inside the universe", with_space([&](const TriangulationPtr& tri, const CoarseSpace& space) {
      const WeightedPair wp{FillingPair::make(parse_multicurve(tri, o.a), parse_multicurve(tri, o.b)), o.q, o.p};
      const auto [R2, calib] = resolve_R2(o, space);
      Json j{{"R2", R2.str()}, {"I", wp.intersection()}, {"mid", to_json(space.mid_prime(wp, R2), space.universe())}};
      if (!calib.is_null()) j["calibration"] = calib;
      j["config"] = run_config(o, true);
      return j;
    }));
    coarse_opts(s, true);
    s->add_option("--q", o.q, "weight on a");
    s->add_option("--p", o.p, "weight on b");
  }
  {
    auto* s = leaf(coarse, "lambda", "weighted midpoints along the coarse geodesic", with_space([&](const TriangulationPtr& tri, const CoarseSpace& space) {
      const auto fp = FillingPair::make(parse_multicurve(tri, o.a), parse_multicurve(tri, o.b));
      const auto [R2, calib] = resolve_R2(o, space);
      std::vector<Ratio> slopes;
      std::istringstream in(o.slopes);
      for (std::string part; std::getline(in, part, ',');)
        if (!part.empty()) slopes.push_back(Ratio::parse(part));
      Json pts = Json::array();
      for (const auto& [slope, set] : space.coarse_geodesic(fp, R2, slopes))
        pts.push_back(Json{{"slope", slope.str()}, {"mid", to_json(set, space.universe())}});
      Json j{{"R2", R2.str()}, {"I", fp.I}, {"lambda", std::move(pts)}};
      if (!calib.is_null()) j["calibration"] = calib;
      j["config"] = run_config(o, true);
      return j;
    }));
    coarse_opts(s, true);
    s->add_option("--slopes", o.slopes, "comma-separated p/q slopes")->required();
  }
  {
    auto* s = leaf(coarse, "center", "Center(a, b, c)", with_space([&](const TriangulationPtr& tri, const CoarseSpace& space) {
      const auto [R2, calib] = resolve_R2(o, space);
      const auto set = space.center(parse_multicurve(tri, o.a), parse_multicurve(tri, o.b), parse_multicurve(tri, o.c), R2);
      Json j{{"R2", R2.str()}, {"center", to_json(set, space.universe())}};
      if (!calib.is_null()) j["calibration"] = calib;
      j["config"] = run_config(o, true);
      return j;
    }));
    coarse_opts(s, true);
    s->add_option("--c", o.c, "multicurve c")->required();
  }
  {
    auto* s = leaf(coarse, "calibrate-r", "smallest R making Mid' nonempty on sampled pairs", with_space([&](const TriangulationPtr&, const CoarseSpace& space) {
      Json j = to_json(calibrate_R(space, o.samples, o.seed));
      j["config"] = run_config(o, false);
      return j;
    }));
    surface_opts(s, 0, 5);
    campaign_opts(s);
  }
  {
    auto* s = leaf(coarse, "axioms", "hyperbolicity-criterion axioms and lemma constants", with_space([&](const TriangulationPtr&, const CoarseSpace& space) {
      const auto [R2, calib] = resolve_R2(o, space);
      Json j = to_json(check_bowditch_axioms(space, R2, o.samples, o.seed));
      Json lemmas = Json::array();
      for (const auto& r : check_lemmas(space, R2, o.samples, o.seed)) lemmas.push_back(to_json(r));
      j["lemmas"] = std::move(lemmas);
      if (!calib.is_null()) j["calibration"] = calib;
      j["config"] = run_config(o, true);
      return j;
    }));
    coarse_opts(s, false);
  }

  // ------------------------------------------------------------------ qm
  CLI::App* qm = app.add_subcommand("qm", "counting quasimorphisms");
  qm->require_subcommand(1);
  {
    auto* s = leaf(qm, "eval", "h_w(g)", qm_eval);
    qm_opts(s);
    surface_opts(s, 0, 5);
    s->add_option("--engine", o.engine, "farey or normal")->check(CLI::IsMember({"farey", "normal"}));
    s->add_option("--g", o.g, "matrix (farey) or twist word c^k;... (normal)")->required();
    s->add_option("--generators", o.generators, "twist curves generating translates (normal)");
    s->add_option("--word-length", o.word_length, "twist word length for translates (normal)");
    s->add_option("--weight-cap", o.cap, "universe weight cap (normal)");
    s->add_flag("--detail", o.detail, "include both discounted distances");
  }
  {
    auto* s = leaf(qm, "defect", "sampled defect on positive words", [&] {
      const FareyQmSpec spec = farey_spec(o);
      Json j = to_json(defect_scan(spec, o.samples, o.max_len, o.search_cap, o.seed));
      j["spec"] = to_json(spec);
      return j;
    });
    qm_opts(s);
    s->add_option("--samples", o.samples, "number of pairs");
    s->add_option("--seed", o.seed, "random seed");
    s->add_option("--max-len", o.max_len, "maximum word length");
  }
  {
    auto* s = leaf(qm, "stabilizer", "|h_w| on elements fixing a vertex", [&] {
      const FareyQmSpec spec = farey_spec(o);
      const FareySlope x = FareySlope::parse(o.x);
      std::vector<IntMatrix> elems;
      std::istringstream in(o.elements);
      for (std::string part; std::getline(in, part, ';');)
        if (!part.empty()) elems.push_back(parse_matrix(part));
      // Parabolic powers at x: A T^n A^-1 with A sending 1/0 to x.
      const IntMatrix A = to_infinity(x).inverse();
      for (int n = -o.parabolic; n <= o.parabolic && o.parabolic > 0; ++n)
        elems.push_back(A * IntMatrix{1, n, 0, 1} * A.inverse());
      if (elems.empty()) throw InvalidInput("give --elements or --parabolic");
      Json j = to_json(stabilizer_probe(spec, x, elems, o.search_cap));
      j["x"] = x.str();
      j["spec"] = to_json(spec);
      return j;
    });
    qm_opts(s);
    s->add_option("--x", o.x, "fixed vertex")->required();
    s->add_option("--elements", o.elements, "matrices separated by ';'");
    s->add_option("--parabolic", o.parabolic, "add parabolic powers -N..N fixing x");
  }

  // --------------------------------------------------------------- cover
  CLI::App* cover = app.add_subcommand("cover", "finite covers and pullbacks");
  cover->require_subcommand(1);
  auto make_cover = [&] {
    const auto base = surface_tri(o);
    if (!o.spec.empty()) {
      std::ifstream in(o.spec);
      if (!in) throw InvalidInput("cannot open covering spec " + o.spec);
      try {
        return covering_from_json(base, Json::parse(in));
      } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("bad covering spec file: ") + e.what());
      }
    }
    if (!o.perms.empty()) {
      try {
        return CoveringSpec::make(base, o.degree, Json::parse(o.perms).get<std::vector<std::vector<int>>>());
      } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("bad --perms: ") + e.what());
      }
    }
    std::vector<int> shifts(base->edge_count(), 0);
    if (o.shifts.empty()) {
      shifts[0] = 1;
    } else {
      shifts.clear();
      std::istringstream in(o.shifts);
      for (std::string part; std::getline(in, part, ',');) {
        try {
          shifts.push_back(std::stoi(part));
        } catch (const std::logic_error&) {
          throw InvalidInput("bad shift '" + part + "'");
        }
      }
    }
    return CoveringSpec::cyclic(base, o.degree, shifts);
  };
  auto cover_opts = [&](CLI::App* s) {
    surface_opts(s, 1, 1);
    s->add_option("--degree", o.degree, "number of sheets");
    s->add_option("--shifts", o.shifts, "cyclic cover: sheet shift per base edge (default 1,0,...)");
    s->add_option("--perms", o.perms, "sheet permutation per base edge as JSON");
    s->add_option("--spec", o.spec, "covering spec JSON file");
  };
  {
    auto* s = leaf(cover, "pullback", "preimage of a curve", [&] {
      const CoveringSpec p = make_cover();
      const NormalCurve c = parse_curve(p.base(), o.c);
      std::int64_t base_mass = 0;
      for (auto x : c.weights()) base_mass += x;
      Json comps = Json::array();
      const MultiCurve pre = pullback(p, c);
      for (const auto& [comp, k] : pre.parts()) {
        std::int64_t m = 0;
        for (auto x : comp.weights()) m += x;
        comps.push_back(Json{{"weights", comp.weights()}, {"multiplicity", k}, {"degree", m / base_mass}});
      }
      return Json{{"cover", to_json(p)},
                  {"signature", to_json(p.cover()->signature())},
                  {"components", std::move(comps)}};
    });
    cover_opts(s);
    s->add_option("--c", o.c, "base curve")->required();
  }
  {
    auto* s = leaf(cover, "scaling", "I and l scale by the degree", [&] {
      const CoveringSpec p = make_cover();
      const auto fp = FillingPair::make(parse_multicurve(p.base(), o.a), parse_multicurve(p.base(), o.b));
      const auto r = scaling_check(p, fp, parse_multicurve(p.base(), o.c));
      Json j = to_json(r);
      if (o.detail) {
        j["degree"] = r.degree;
        j["base_intersection"] = r.base_intersection;
        j["cover_intersection"] = r.cover_intersection;
        j["base_length"] = r.base_length;
        j["cover_length"] = r.cover_length;
      }
      return j;
    });
    cover_opts(s);
    s->add_option("--a", o.a, "base multicurve a")->required();
    s->add_option("--b", o.b, "base multicurve b")->required();
    s->add_option("--c", o.c, "base multicurve c")->required();
    s->add_flag("--detail", o.detail, "include the raw numbers");
  }
  {
    auto* s = leaf(cover, "quasiconvex", "empirical quasi-convexity constant of the image", [&] {
      const CoveringSpec p = make_cover();
      Json j = to_json(quasiconvexity_probe(p, o.samples, o.cap, o.seed));
      j["cover"] = to_json(p);
      j["config"] = run_config(o, false);
      return j;
    });
    cover_opts(s);
    campaign_opts(s);
  }

  try {
    // Config values go last so that explicit flags, taken first, win.
    std::vector<std::string> args;
    for (std::size_t k = 0; k < raw_args.size(); ++k) {
      if (raw_args[k] == "--config" && k + 1 < raw_args.size()) {
        config_path = raw_args[++k];
      } else if (raw_args[k].rfind("--config=", 0) == 0) {
        config_path = raw_args[k].substr(9);
      } else {
        args.push_back(raw_args[k]);
      }
    }
    if (!config_path.empty()) {
      const auto extra = config_tokens(config_path);
      args.insert(args.end(), extra.begin(), extra.end());
    }
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) {
        app.exit(e, out, err);
        return 0;
      }
      err << error_json("usage", e.what()).dump() << "\n";
      return 2;
    }
    const Json result = action();
    const std::string text = result.dump() + "\n";
    if (o.out.empty()) out << text;
    else write_text(o.out, text);
    return 0;
  } catch (const EmptyAtThisR& e) {
    Json j = error_json("empty_at_this_R", e.what());
    j["best_R2"] = e.best.str();
    j["cap_saturated"] = e.cap_saturated;
    err << j.dump() << "\n";
    return 2;
  } catch (const NonFillingPair& e) {
    err << error_json("non_filling_pair", e.what()).dump() << "\n";
    return 2;
  } catch (const InvalidInput& e) {
    err << error_json("invalid_input", e.what()).dump() << "\n";
    return 2;
  } catch (const InvariantViolation& e) {
    err << error_json("invariant_violation", e.what()).dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << error_json("internal", e.what()).dump() << "\n";
    return 1;
  }
}

int main(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace curvelab::cli
