#pragma once

#include "coorbit/cwt.hpp"
#include "coorbit/norms.hpp"
#include "coorbit/wavelet.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace coorbit {

using Json = nlohmann::ordered_json;

/// {"family": "shearlet", "c": 0.5}; names: similitude, diagonal, shearlet, scalar.
Json family_to_json(const GroupFamily& family);
GroupFamily family_from_json(const Json& j);

Json grid_to_json(const FrequencyGrid& grid);
FrequencyGrid grid_from_json(const Json& j);

/// Missing keys keep their defaults; unknown keys are rejected.
Json weight_to_json(const WeightSpec& w);
WeightSpec weight_from_json(const Json& j);

Json hgrid_spec_to_json(const HGridSpec& s);
HGridSpec hgrid_spec_from_json(const Json& j);

Json wavelet_spec_to_json(const WaveletSpec& s);
WaveletSpec wavelet_spec_from_json(const Json& j);

/// Infinite exponents are written as the string "inf".
Json exponent_to_json(double p);
double exponent_from_json(const Json& j);

/// "coorbit-grid v1": raw little-endian float64 (re, im) pairs, row-major, plus a JSON sidecar at path + ".json".
void write_field(const std::string& path, const SampledField& f, const std::optional<GroupFamily>& family = {});
SampledField read_field(const std::string& path, std::optional<GroupFamily>* family = nullptr);

/// "coorbit-cwt v1": slices in node order as raw data, header at path + ".json" with grid, family, nodes and weights.
void write_transform(const std::string& path, const TransformArray& T);
TransformArray read_transform(const std::string& path);

/// Two-space indent, insertion order kept.
std::string dump_json(const Json& j);

} // namespace coorbit
