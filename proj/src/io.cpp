#include "coorbit/io.hpp"

#include "coorbit/error.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>

namespace coorbit {

namespace {

constexpr const char* kGridFormat = "coorbit-grid v1";
constexpr const char* kCwtFormat = "coorbit-cwt v1";

void reject_unknown(const Json& j, const std::set<std::string>& known, const char* what) {
  if (!j.is_object()) throw InvalidArgument(std::string(what) + ": expected a JSON object");
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw InvalidArgument(std::string(what) + ": unknown key '" + k + "'");
}

template <class T>
void maybe(const Json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void put_u64(std::ostream& os, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = char((v >> (8 * i)) & 0xff);
  os.write(b, 8);
}

std::uint64_t get_u64(const unsigned char* b) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

void write_values(const std::string& path, const std::vector<cplx>& values) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open " + path + " for writing");
  for (const cplx& c : values) {
    put_u64(os, std::bit_cast<std::uint64_t>(c.real()));
    put_u64(os, std::bit_cast<std::uint64_t>(c.imag()));
  }
  if (!os) throw FormatError("write failed: " + path);
}

std::vector<cplx> read_values(const std::string& path, std::size_t count) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path);
  std::vector<unsigned char> raw(count * 16);
  is.read(reinterpret_cast<char*>(raw.data()), std::streamsize(raw.size()));
  if (std::size_t(is.gcount()) != raw.size() || is.peek() != std::char_traits<char>::eof())
    throw FormatError(path + ": data size does not match the header");
  std::vector<cplx> v(count);
  for (std::size_t i = 0; i < count; ++i)
    v[i] = {std::bit_cast<double>(get_u64(&raw[16 * i])), std::bit_cast<double>(get_u64(&raw[16 * i + 8]))};
  return v;
}

Json read_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open " + path);
  try {
    return Json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot open " + path + " for writing");
  os << dump_json(j) << '\n';
  if (!os) throw FormatError("write failed: " + path);
}

} // namespace

Json family_to_json(const GroupFamily& family) {
  switch (family.tag) {
  case FamilyTag::Similitude: return {{"family", "similitude"}};
  case FamilyTag::Diagonal: return {{"family", "diagonal"}};
  case FamilyTag::Shearlet: return {{"family", "shearlet"}, {"c", family.aniso_c}};
  case FamilyTag::ScalarReducible: return {{"family", "scalar"}};
  }
  return {};
}

GroupFamily family_from_json(const Json& j) {
  reject_unknown(j, {"family", "c"}, "family");
  if (!j.contains("family") || !j["family"].is_string()) throw InvalidArgument("family: missing \"family\" name");
  const std::string name = j["family"];
  if (name == "shearlet") {
    if (!j.contains("c") || !j["c"].is_number()) throw InvalidArgument("family: shearlet needs a numeric \"c\"");
    return GroupFamily::shearlet(j["c"].get<double>());
  }
  if (j.contains("c")) throw InvalidArgument("family: \"c\" only applies to the shearlet group");
  if (name == "similitude") return GroupFamily::similitude();
  if (name == "diagonal") return GroupFamily::diagonal();
  if (name == "scalar") return GroupFamily::scalar();
  throw InvalidArgument("family: unknown name '" + name + "'");
}

Json grid_to_json(const FrequencyGrid& grid) {
  return {{"n", grid.n}, {"xi_max", grid.xi_max}, {"cell_centered", grid.cell_centered}};
}

FrequencyGrid grid_from_json(const Json& j) {
  reject_unknown(j, {"n", "xi_max", "cell_centered"}, "grid");
  FrequencyGrid g;
  maybe(j, "n", g.n);
  maybe(j, "xi_max", g.xi_max);
  maybe(j, "cell_centered", g.cell_centered);
  g.validate();
  return g;
}

Json exponent_to_json(double p) { return std::isfinite(p) ? Json(p) : Json("inf"); }

double exponent_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return INFINITY;
    throw InvalidArgument("exponent: expected a number or \"inf\"");
  }
  return j.get<double>();
}

Json weight_to_json(const WeightSpec& w) {
  Json j{{"s", w.s}, {"u", w.u}, {"t", w.t}, {"unit", w.unit}};
  if (w.shearlet_literature) {
    j["shearlet_literature"] = true;
    j["r1"] = w.r1;
    j["r2"] = w.r2;
  }
  return j;
}

WeightSpec weight_from_json(const Json& j) {
  reject_unknown(j, {"s", "u", "t", "unit", "shearlet_literature", "r1", "r2"}, "weight");
  WeightSpec w;
  maybe(j, "s", w.s);
  maybe(j, "u", w.u);
  maybe(j, "t", w.t);
  maybe(j, "unit", w.unit);
  maybe(j, "shearlet_literature", w.shearlet_literature);
  maybe(j, "r1", w.r1);
  maybe(j, "r2", w.r2);
  w.validate();
  return w;
}

Json hgrid_spec_to_json(const HGridSpec& s) {
  return {{"a_min", s.a_min}, {"a_max", s.a_max},         {"n_a", s.n_a},
          {"b_max", s.b_max}, {"n_b", s.n_b},             {"n_angle", s.n_angle},
          {"both_signs", s.both_signs}, {"literal_b", s.literal_b}};
}

HGridSpec hgrid_spec_from_json(const Json& j) {
  reject_unknown(j, {"a_min", "a_max", "n_a", "b_max", "n_b", "n_angle", "both_signs", "literal_b"}, "hgrid");
  HGridSpec s;
  maybe(j, "a_min", s.a_min);
  maybe(j, "a_max", s.a_max);
  maybe(j, "n_a", s.n_a);
  maybe(j, "b_max", s.b_max);
  maybe(j, "n_b", s.n_b);
  maybe(j, "n_angle", s.n_angle);
  maybe(j, "both_signs", s.both_signs);
  maybe(j, "literal_b", s.literal_b);
  return s;
}

Json wavelet_spec_to_json(const WaveletSpec& s) {
  return {{"kind", s.kind == WaveletKind::Bump ? "bump" : "moment"},
          {"center", {s.center(0), s.center(1)}},
          {"radius", s.radius},
          {"order", s.order},
          {"envelope_sigma", s.envelope_sigma}};
}

WaveletSpec wavelet_spec_from_json(const Json& j) {
  reject_unknown(j, {"kind", "center", "radius", "order", "envelope_sigma"}, "wavelet");
  WaveletSpec s;
  if (j.contains("kind")) {
    const std::string k = j["kind"];
    if (k == "bump") s.kind = WaveletKind::Bump;
    else if (k == "moment") s.kind = WaveletKind::Moment;
    else throw InvalidArgument("wavelet: kind must be \"bump\" or \"moment\"");
  }
  if (j.contains("center")) {
    const auto& c = j["center"];
    if (!c.is_array() || c.size() != 2) throw InvalidArgument("wavelet: center must be [x, y]");
    s.center = Vec2(c[0].get<double>(), c[1].get<double>());
  }
  maybe(j, "radius", s.radius);
  maybe(j, "order", s.order);
  maybe(j, "envelope_sigma", s.envelope_sigma);
  return s;
}

void write_field(const std::string& path, const SampledField& f, const std::optional<GroupFamily>& family) {
  Json h{{"format", kGridFormat},
         {"n", f.grid.n},
         {"xi_max", f.grid.xi_max},
         {"cell_centered", f.grid.cell_centered},
         {"domain_tag", f.domain == Domain::Frequency ? "frequency" : "space"}};
  h["family"] = family ? family_to_json(*family) : Json(nullptr);
  write_values(path, f.values);
  write_json(path + ".json", h);
}

SampledField read_field(const std::string& path, std::optional<GroupFamily>* family) {
  const Json h = read_json(path + ".json");
  try {
    if (h.at("format") != kGridFormat) throw FormatError(path + ": not a " + std::string(kGridFormat) + " file");
    FrequencyGrid g;
    g.n = h.at("n");
    g.xi_max = h.at("xi_max");
    g.cell_centered = h.value("cell_centered", false);
    g.validate();
    const std::string tag = h.at("domain_tag");
    if (tag != "frequency" && tag != "space") throw FormatError(path + ": bad domain_tag");
    SampledField f(g, tag == "frequency" ? Domain::Frequency : Domain::Space);
    f.values = read_values(path, std::size_t(g.n) * g.n);
    if (family) {
      if (h.contains("family") && !h["family"].is_null()) *family = family_from_json(h["family"]);
      else family->reset();
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ".json: " + e.what());
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(path + ".json: " + e.what());
  }
}

void write_transform(const std::string& path, const TransformArray& T) {
  Json nodes = Json::array();
  for (const auto& h : T.hgrid.nodes) nodes.push_back({h.a, h.b});
  Json h{{"format", kCwtFormat},
         {"grid", grid_to_json(T.grid)},
         {"family", family_to_json(T.hgrid.family)},
         {"hgrid_spec", hgrid_spec_to_json(T.hgrid.spec)},
         {"nodes", nodes},
         {"weights", T.hgrid.weights}};
  write_values(path, T.values);
  write_json(path + ".json", h);
}

TransformArray read_transform(const std::string& path) {
  const Json h = read_json(path + ".json");
  try {
    if (h.at("format") != kCwtFormat) throw FormatError(path + ": not a " + std::string(kCwtFormat) + " file");
    TransformArray T;
    T.grid = grid_from_json(h.at("grid"));
    const GroupFamily fam = family_from_json(h.at("family"));
    std::vector<DilationParams> nodes;
    for (const auto& n : h.at("nodes")) nodes.push_back({fam, n.at(0).get<double>(), n.at(1).get<double>()});
    T.hgrid = custom_hgrid(fam, nodes, h.at("weights").get<std::vector<double>>());
    if (h.contains("hgrid_spec")) T.hgrid.spec = hgrid_spec_from_json(h["hgrid_spec"]);
    T.values = read_values(path, T.hgrid.size() * T.slice_size());
    return T;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ".json: " + e.what());
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(path + ".json: " + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2); }

} // namespace coorbit
