#include "coorbit/error.hpp"
#include "coorbit/experiments.hpp"

#include "CLI11.hpp"

#include <omp.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace coorbit;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out_dir;
  std::string format = "json";
};

Json parse_json_arg(const std::string& s, const char* what) {
  std::string text = s;
  if (!s.empty() && s.front() != '{' && std::filesystem::exists(s)) {
    std::ifstream is(s);
    std::stringstream ss;
    ss << is.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string(what) + ": " + e.what());
  }
}

GroupFamily parse_family(const std::string& s) {
  if (s == "similitude" || s == "diagonal" || s == "scalar") return family_from_json(Json{{"family", s}});
  return family_from_json(parse_json_arg(s, "--family"));
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw InvalidArgument("--ell: expected N or A..B");
  }
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string to_csv(const Json& j) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  std::string out = "key,value\n";
  for (const auto& [k, v] : rows) out += k + "," + v + "\n";
  return out;
}

void emit_text(const Globals& g, const std::string& name, const std::string& ext, const std::string& text) {
  if (g.out_dir.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::create_directories(g.out_dir);
  const std::string path = (std::filesystem::path(g.out_dir) / (name + "." + ext)).string();
  std::ofstream os(path);
  if (!os) throw FormatError("cannot write " + path);
  os << text;
  if (!os) throw FormatError("write failed: " + path);
}

void emit(const Globals& g, const std::string& name, const Json& report) {
  if (g.format == "csv") emit_text(g, name, "csv", to_csv(report));
  else emit_text(g, name, "json", dump_json(report) + "\n");
}

int finish(const Globals& g, const std::string& name, const ExperimentResult& r) {
  Json rep = r.report;
  rep["config"]["seed"] = g.seed;
  emit(g, name, rep);
  return r.pass ? kExitOk : r.code;
}

SampledField load_psi(const std::string& path, const GroupFamily& fam) {
  std::optional<GroupFamily> stored;
  SampledField psi = read_field(path, &stored);
  if (stored && !(*stored == fam)) throw FamilyMismatch("wavelet file belongs to " + stored->name());
  if (psi.domain != Domain::Frequency) throw InvalidArgument("wavelet file must hold frequency samples");
  return psi;
}

WaveletSpec wavelet_from_flags(const std::string& kind, int order, double sigma, double radius,
                               const std::vector<double>& center, const GroupFamily& fam) {
  WaveletSpec ws = default_bump(fam);
  if (kind == "moment") ws.kind = WaveletKind::Moment;
  else if (kind != "bump") throw InvalidArgument("--kind must be bump or moment");
  ws.order = order;
  ws.envelope_sigma = sigma;
  if (radius > 0.0) ws.radius = radius;
  if (center.size() == 2) ws.center = Vec2(center[0], center[1]);
  return ws;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous wavelet transforms and coorbit norms over planar dilation groups"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "seed for randomized test functions");
  app.add_option("--threads", g.threads, "OpenMP threads (0 keeps the default)")->check(CLI::NonNegativeNumber);
  app.add_option("--out-dir", g.out_dir, "write reports into this directory instead of stdout");
  app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"json", "csv"}));

  std::string family_s = R"({"family":"shearlet","c":0.5})";
  std::string weight_s = "{}";
  int n = 0;
  double xi_max = 0.0;
  bool cell_centered = false;
  auto add_family = [&](CLI::App* c) { c->add_option("--family", family_s, "family JSON, file, or name"); };
  auto add_grid = [&](CLI::App* c) {
    c->add_option("--n", n, "grid points per axis");
    c->add_option("--xi-max", xi_max, "frequency half-width");
    c->add_flag("--cell-centered", cell_centered, "half-cell offset grid");
  };
  auto grid_or = [&](FrequencyGrid def) {
    if (n > 0) def.n = n;
    if (xi_max > 0.0) def.xi_max = xi_max;
    if (cell_centered) def.cell_centered = true;
    def.validate();
    return def;
  };

  // orbit
  auto* orbit = app.add_subcommand("orbit", "orbit geometry on a grid or at given points");
  std::string orbit_mode = "eval";
  std::vector<std::string> orbit_points;
  orbit->add_option("mode", orbit_mode, "eval")->check(CLI::IsMember({"eval"}));
  add_family(orbit);
  add_grid(orbit);
  orbit->add_option("--xi", orbit_points, "points x,y (repeatable); default is the whole grid");

  // make-wavelet
  auto* mkw = app.add_subcommand("make-wavelet", "sample a bump or moment wavelet");
  std::string kind = "bump", out_path;
  int order = 1;
  double sigma = 1.0, radius = 0.0;
  std::vector<double> center;
  add_family(mkw);
  add_grid(mkw);
  mkw->add_option("--kind", kind)->check(CLI::IsMember({"bump", "moment"}));
  mkw->add_option("--order", order, "moment order")->check(CLI::NonNegativeNumber);
  mkw->add_option("--sigma", sigma, "Gaussian envelope width");
  mkw->add_option("--radius", radius, "bump radius");
  mkw->add_option("--center", center, "bump center x y")->expected(2);
  mkw->add_option("--out", out_path, "output field path")->required();

  // cwt
  auto* cwt = app.add_subcommand("cwt", "wavelet transform of a stored field");
  std::string cwt_mode = "analyze", f_path, psi_path, hgrid_path;
  cwt->add_option("mode", cwt_mode)->check(CLI::IsMember({"analyze"}));
  cwt->add_option("--f", f_path)->required();
  cwt->add_option("--psi", psi_path)->required();
  cwt->add_option("--hgrid", hgrid_path, "h-grid spec JSON (text or file)");
  cwt->add_option("--out", out_path)->required();
  add_family(cwt);

  // coorbit-norm
  auto* cnorm = app.add_subcommand("coorbit-norm", "weighted mixed norm of a stored transform");
  std::string cwt_path, p_s = "2", q_s = "2";
  double s_val = -1.0;
  cnorm->add_option("--cwt", cwt_path)->required();
  cnorm->add_option("--p", p_s);
  cnorm->add_option("--q", q_s);
  cnorm->add_option("--s", s_val, "polynomial weight exponent (overrides the weight JSON)");
  cnorm->add_option("--weight", weight_s, "weight JSON");

  // check-embeddedness
  auto* emb = app.add_subcommand("check-embeddedness", "temperate embeddedness verdicts");
  std::string ell_s = "0..16";
  int levels = 6;
  add_family(emb);
  emb->add_option("--s", s_val);
  emb->add_option("--q", q_s);
  emb->add_option("--weight", weight_s);
  emb->add_option("--ell", ell_s, "index range A..B");
  emb->add_option("--levels", levels);

  // verify-decay
  auto* dec = app.add_subcommand("verify-decay", "decay ratio spread over dilated and translated moment wavelets");
  int t_ord = 6, instances = 20;
  bool no_contrast = false;
  add_family(dec);
  add_grid(dec);
  dec->add_option("--psi", psi_path, "wavelet field (default: moment wavelet of order 2)");
  dec->add_option("--order", order, "moment order of the default wavelet");
  dec->add_option("--p", p_s);
  dec->add_option("--q", q_s);
  dec->add_option("--s", s_val);
  dec->add_option("--weight", weight_s, "weight JSON (default: w = 1)");
  dec->add_option("--t", t_ord);
  dec->add_option("--instances", instances);
  dec->add_flag("--no-contrast", no_contrast, "skip the Gaussian contrast run");

  // frame-test
  auto* fr = app.add_subcommand("frame-test", "sampling set, oscillation and frame reconstruction experiment");
  double a_ratio = 0.0, b_step = 0.0, beta = 0.0;
  int tests = 10, max_iter = 200;
  add_family(fr);
  add_grid(fr);
  fr->add_option("--psi", psi_path, "wavelet field (default: bump wavelet)");
  fr->add_option("--a-ratio", a_ratio);
  fr->add_option("--b-step", b_step);
  fr->add_option("--beta", beta);
  fr->add_option("--p", p_s);
  fr->add_option("--q", q_s);
  fr->add_option("--weight", weight_s);
  fr->add_option("--tests", tests);
  fr->add_option("--max-iter", max_iter);

  // calderon
  auto* cal = app.add_subcommand("calderon", "admissibility check");
  add_family(cal);
  add_grid(cal);
  cal->add_option("--psi", psi_path);
  cal->add_option("--kind", kind)->check(CLI::IsMember({"bump", "moment"}));
  cal->add_option("--order", order);
  cal->add_option("--sigma", sigma);
  cal->add_option("--hgrid", hgrid_path);
  cal->add_option("--tests", tests);

  // counterexample
  auto* ce = app.add_subcommand("counterexample", "scalar group counterexample");
  std::vector<int> sizes{128, 256, 512};
  std::vector<double> scales{0.5, 1.0};
  double r1 = 0.5, r2 = 2.0, ce_xi = 4.0;
  ce->add_option("--sizes", sizes)->delimiter(',');
  ce->add_option("--scales", scales)->delimiter(',');
  ce->add_option("--r1", r1);
  ce->add_option("--r2", r2);
  ce->add_option("--xi-max", ce_xi);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (g.threads > 0) omp_set_num_threads(g.threads);

  try {
    auto weight_with_s = [&](WeightSpec w) {
      if (s_val >= 0.0) w.s = s_val;
      w.validate();
      return w;
    };
    if (orbit->parsed()) {
      const GroupFamily fam = parse_family(family_s);
      std::vector<Vec2> pts;
      for (const auto& p : orbit_points) {
        double x, y;
        char comma;
        std::istringstream is(p);
        if (!(is >> x >> comma >> y) || comma != ',') throw InvalidArgument("--xi expects x,y");
        pts.emplace_back(x, y);
      }
      if (pts.empty()) {
        const FrequencyGrid grid = grid_or({64, 4.0, false});
        for (int i = 0; i < grid.n; ++i)
          for (int k = 0; k < grid.n; ++k) pts.push_back(grid.point(i, k));
      }
      std::ostringstream os;
      os.precision(17);
      os << "xi1,xi2,in_orbit,dist,A\n";
      for (const Vec2& p : pts) {
        const bool in = in_orbit(fam, p);
        os << p(0) << ',' << p(1) << ',' << int(in) << ',' << dist_complement(fam, p) << ','
           << (in ? aux_A(fam, p) : 0.0) << '\n';
      }
      emit_text(g, "orbit", "csv", os.str());
      return kExitOk;
    }
    if (mkw->parsed()) {
      const GroupFamily fam = parse_family(family_s);
      const WaveletSpec ws = wavelet_from_flags(kind, order, sigma, radius, center, fam);
      const FrequencyGrid grid = grid_or({256, 8.0, false});
      const SampledField psi = make_wavelet(fam, ws, grid);
      write_field(out_path, psi, fam);
      emit(g, "make-wavelet",
           {{"command", "make-wavelet"},
            {"config", {{"family", family_to_json(fam)}, {"wavelet", wavelet_spec_to_json(ws)}, {"grid", grid_to_json(grid)}, {"seed", g.seed}}},
            {"out", out_path},
            {"l2_norm", l2_norm(psi)},
            {"pass", true}});
      return kExitOk;
    }
    if (cwt->parsed()) {
      std::optional<GroupFamily> stored;
      const SampledField f = read_field(f_path);
      const SampledField psi = read_field(psi_path, &stored);
      const GroupFamily fam = cwt->count("--family") || !stored ? parse_family(family_s) : *stored;
      const HGridSpec hs = hgrid_path.empty() ? HGridSpec{} : hgrid_spec_from_json(parse_json_arg(hgrid_path, "--hgrid"));
      if (psi.domain != Domain::Frequency) throw InvalidArgument("wavelet file must hold frequency samples");
      const SampledField fhat = f.domain == Domain::Frequency ? f : to_frequency(f);
      const TransformArray T = analyze(fhat, psi, make_hgrid(fam, hs));
      write_transform(out_path, T);
      emit(g, "cwt",
           {{"command", "cwt analyze"},
            {"config", {{"family", family_to_json(fam)}, {"hgrid", hgrid_spec_to_json(hs)}, {"f", f_path}, {"psi", psi_path}, {"seed", g.seed}}},
            {"out", out_path},
            {"nodes", T.hgrid.size()},
            {"pass", true}});
      return kExitOk;
    }
    if (cnorm->parsed()) {
      const TransformArray T = read_transform(cwt_path);
      MixedNormParams P;
      P.p = exponent_from_json(Json::parse(p_s == "inf" ? "\"inf\"" : p_s));
      P.q = exponent_from_json(Json::parse(q_s == "inf" ? "\"inf\"" : q_s));
      P.weight = weight_with_s(weight_from_json(parse_json_arg(weight_s, "--weight")));
      P.validate();
      const double v = mixed_norm(T, P);
      emit(g, "coorbit-norm",
           {{"command", "coorbit-norm"},
            {"config", {{"cwt", cwt_path}, {"p", exponent_to_json(P.p)}, {"q", exponent_to_json(P.q)}, {"weight", weight_to_json(P.weight)}, {"seed", g.seed}}},
            {"family", family_to_json(T.hgrid.family)},
            {"mixed_norm", v},
            {"pass", true}});
      return kExitOk;
    }
    auto exponent = [](const std::string& s) { return s == "inf" ? double(INFINITY) : std::stod(s); };
    if (emb->parsed()) {
      EmbeddednessConfig cfg;
      cfg.family = parse_family(family_s);
      cfg.q = exponent(q_s);
      cfg.weight = weight_with_s(weight_from_json(parse_json_arg(weight_s, "--weight")));
      std::tie(cfg.ell_min, cfg.ell_max) = parse_range(ell_s);
      cfg.levels = levels;
      return finish(g, "check-embeddedness", run_embeddedness(cfg));
    }
    if (dec->parsed()) {
      DecayConfig cfg;
      cfg.family = parse_family(family_s);
      cfg.grid = grid_or(cfg.grid);
      cfg.wavelet.order = order;
      cfg.params.p = exponent(p_s);
      cfg.params.q = exponent(q_s);
      if (dec->count("--weight")) cfg.params.weight = weight_from_json(parse_json_arg(weight_s, "--weight"));
      cfg.params.weight = weight_with_s(cfg.params.weight);
      cfg.params.validate();
      cfg.t = t_ord;
      cfg.instances = instances;
      cfg.contrast = !no_contrast;
      cfg.seed = g.seed;
      if (!psi_path.empty()) {
        const SampledField psi = load_psi(psi_path, cfg.family);
        if (!psi.generator) throw InvalidArgument("verify-decay needs an analytic wavelet to translate and dilate; omit --psi");
        return finish(g, "verify-decay", run_decay_suite(cfg, &psi));
      }
      return finish(g, "verify-decay", run_decay_suite(cfg));
    }
    if (fr->parsed()) {
      FrameConfig cfg;
      cfg.family = parse_family(family_s);
      cfg.grid = grid_or(cfg.grid);
      if (a_ratio > 0.0) cfg.sampling.a_ratio = a_ratio;
      if (b_step > 0.0) cfg.sampling.b_step = b_step;
      if (beta > 0.0) cfg.sampling.beta = beta;
      cfg.p = exponent(p_s);
      cfg.q = exponent(q_s);
      cfg.weight = weight_with_s(weight_from_json(parse_json_arg(weight_s, "--weight")));
      cfg.tests = tests;
      cfg.max_iter = max_iter;
      cfg.seed = g.seed;
      if (!psi_path.empty()) {
        const SampledField psi = load_psi(psi_path, cfg.family);
        return finish(g, "frame-test", run_frame(cfg, &psi));
      }
      return finish(g, "frame-test", run_frame(cfg));
    }
    if (cal->parsed()) {
      CalderonConfig cfg;
      cfg.family = parse_family(family_s);
      cfg.grid = grid_or(cfg.grid);
      cfg.wavelet = wavelet_from_flags(kind, order, sigma, 0.0, {}, cfg.family);
      if (!hgrid_path.empty()) cfg.hgrid = hgrid_spec_from_json(parse_json_arg(hgrid_path, "--hgrid"));
      cfg.tests = tests;
      cfg.seed = g.seed;
      if (!psi_path.empty()) {
        const SampledField psi = load_psi(psi_path, cfg.family);
        return finish(g, "calderon", run_calderon(cfg, &psi));
      }
      return finish(g, "calderon", run_calderon(cfg));
    }
    if (ce->parsed()) {
      CounterexampleConfig cfg;
      cfg.sizes = sizes;
      cfg.scales = scales;
      cfg.r1 = r1;
      cfg.r2 = r2;
      cfg.xi_max = ce_xi;
      return finish(g, "counterexample", run_counterexample(cfg));
    }
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
