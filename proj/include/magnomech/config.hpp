#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "magnomech/errors.hpp"
#include "magnomech/params.hpp"
#include "magnomech/presets.hpp"
#include "magnomech/sweep.hpp"
#include "magnomech/units.hpp"
#include "magnomech/version.hpp"

// Parameter documents are flat JSON objects. Frequencies are written as
// f = omega/2pi in Hz under "<name>_over_2pi_hz" keys; beta is in radians,
// temperature in kelvin, epsilon_l in 1/s exactly as it enters the drive term.
// Every frequency key also has an exact "<name>_rad_s" form. Keys that are
// absent keep the baseline working-point value.

namespace magnomech {

using json = nlohmann::json;

namespace config_detail {

struct FrequencyField {
  std::string_view key;
  double SystemParams::*member;
};

inline constexpr std::array<FrequencyField, 10> frequency_fields{{
    {"omega_n", &SystemParams::omega_n},
    {"omega_b", &SystemParams::omega_b},
    {"kappa_n", &SystemParams::kappa_n},
    {"kappa_m", &SystemParams::kappa_m},
    {"gamma_b", &SystemParams::gamma_b},
    {"coupling_J", &SystemParams::coupling_J},
    {"delta_n", &SystemParams::delta_n},
    {"delta_m_eff", &SystemParams::delta_m_eff},
    {"delta_B", &SystemParams::delta_B},
    {"chi", &SystemParams::chi},
}};

inline constexpr std::string_view hz_suffix = "_over_2pi_hz";
inline constexpr std::string_view raw_suffix = "_rad_s";

inline double as_number(const json& v, std::string_view key) {
  if (v.is_number()) return v.get<double>();
  throw ConfigError("'" + std::string(key) + "' must be a number");
}

inline EffectiveDrive& effective(SystemParams& p, std::string_view key) {
  if (auto* e = std::get_if<EffectiveDrive>(&p.drive)) return *e;
  throw ConfigError("'" + std::string(key) + "' requires drive = effective");
}

inline MicroscopicDrive& microscopic(SystemParams& p, std::string_view key) {
  if (auto* m = std::get_if<MicroscopicDrive>(&p.drive)) return *m;
  throw ConfigError("'" + std::string(key) + "' requires drive = microscopic");
}

}  // namespace config_detail

// Sets one parameter by its document key. Unknown keys are errors.
inline void set_param(SystemParams& p, std::string_view key, const json& value) {
  using namespace config_detail;
  if (key == "drive") {
    if (!value.is_string()) throw ConfigError("'drive' must be \"effective\" or \"microscopic\"");
    const auto mode = value.get<std::string>();
    if (mode == "effective") {
      if (!p.effective()) p.drive = EffectiveDrive{};
    } else if (mode == "microscopic") {
      if (!p.microscopic()) p.drive = MicroscopicDrive{0.0, 0.0, p.delta_m_eff};
    } else {
      throw ConfigError("unknown drive mode '" + mode + "'");
    }
    return;
  }
  for (const auto& f : frequency_fields) {
    if (!key.starts_with(f.key)) continue;
    const auto suffix = key.substr(f.key.size());
    if (suffix == hz_suffix) {
      p.*(f.member) = from_hz(as_number(value, key));
      return;
    }
    if (suffix == raw_suffix) {
      p.*(f.member) = as_number(value, key);
      return;
    }
  }
  if (key == "beta_rad") p.beta = as_number(value, key);
  else if (key == "coupling_G_rad_s") effective(p, key).coupling_G = as_number(value, key);
  else if (key == "g0_rad_s") {
    if (p.effective()) effective(p, key).g0 = as_number(value, key);
    else microscopic(p, key).g0 = as_number(value, key);
  } else if (key == "delta_m_bare_rad_s") microscopic(p, key).delta_m_bare = as_number(value, key);
  else if (key == "temperature_k") p.temperature = as_number(value, key);
  else if (key == "coupling_G_over_2pi_hz") effective(p, key).coupling_G = from_hz(as_number(value, key));
  else if (key == "g0_over_2pi_hz") {
    if (p.effective()) effective(p, key).g0 = from_hz(as_number(value, key));
    else microscopic(p, key).g0 = from_hz(as_number(value, key));
  } else if (key == "epsilon_l_per_s") microscopic(p, key).epsilon_l = as_number(value, key);
  else if (key == "delta_m_bare_over_2pi_hz") microscopic(p, key).delta_m_bare = from_hz(as_number(value, key));
  else throw ConfigError("unknown parameter '" + std::string(key) + "'");
}

// Applies every key of a flat document; "drive" is applied first so that
// drive-specific keys land on the right variant.
inline void apply_document(SystemParams& p, const json& doc) {
  if (!doc.is_object()) throw ConfigError("parameter document must be a JSON object");
  if (auto it = doc.find("drive"); it != doc.end()) set_param(p, "drive", *it);
  for (const auto& [key, value] : doc.items())
    if (key != "drive") set_param(p, key, value);
}

// Accepts either a bare parameter document or a metadata sidecar. From a
// sidecar the exact rad/s block is preferred over the /2pi Hz one.
inline SystemParams params_from_json(const json& doc, SystemParams base = baseline_params()) {
  if (doc.is_object() && doc.contains("params_rad_s") && doc.at("params_rad_s").is_object())
    apply_document(base, doc.at("params_rad_s"));
  else if (doc.is_object() && doc.contains("params") && doc.at("params").is_object())
    apply_document(base, doc.at("params"));
  else
    apply_document(base, doc);
  return base;
}

inline json params_to_json(const SystemParams& p) {
  using namespace config_detail;
  json j = json::object();
  for (const auto& f : frequency_fields) j[std::string(f.key) + std::string(hz_suffix)] = to_hz(p.*(f.member));
  j["beta_rad"] = p.beta;
  j["temperature_k"] = p.temperature;
  if (const auto* e = std::get_if<EffectiveDrive>(&p.drive)) {
    j["drive"] = "effective";
    j["coupling_G_over_2pi_hz"] = to_hz(e->coupling_G);
    j["g0_over_2pi_hz"] = to_hz(e->g0);
  } else {
    const auto& m = std::get<MicroscopicDrive>(p.drive);
    j["drive"] = "microscopic";
    j["g0_over_2pi_hz"] = to_hz(m.g0);
    j["epsilon_l_per_s"] = m.epsilon_l;
    j["delta_m_bare_over_2pi_hz"] = to_hz(m.delta_m_bare);
  }
  return j;
}

// Same parameters in the internal units (rad/s, rad, K, 1/s).
inline json params_to_json_raw(const SystemParams& p) {
  using namespace config_detail;
  json j = json::object();
  for (const auto& f : frequency_fields) j[std::string(f.key) + "_rad_s"] = p.*(f.member);
  j["beta_rad"] = p.beta;
  j["temperature_k"] = p.temperature;
  if (const auto* e = std::get_if<EffectiveDrive>(&p.drive)) {
    j["drive"] = "effective";
    j["coupling_G_rad_s"] = e->coupling_G;
    j["g0_rad_s"] = e->g0;
  } else {
    const auto& m = std::get<MicroscopicDrive>(p.drive);
    j["drive"] = "microscopic";
    j["g0_rad_s"] = m.g0;
    j["epsilon_l_per_s"] = m.epsilon_l;
    j["delta_m_bare_rad_s"] = m.delta_m_bare;
  }
  return j;
}

// "key=value" override. The value is parsed as JSON when possible, otherwise
// taken as a string (so drive=microscopic works unquoted).
inline void apply_override(SystemParams& p, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw ConfigError("override '" + std::string(assignment) + "' is not of the form key=value");
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  json value = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded()) value = text;
  set_param(p, key, value);
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw ConfigError("'" + path + "' is not valid JSON");
  return doc;
}

// ---------------------------------------------------------------------------
// Sweep documents

inline json axis_to_json(const Axis& a) {
  return json{{"parameter", a.parameter}, {"start", a.start}, {"stop", a.stop},
              {"count", a.count},         {"unit", resolved_unit(a)}, {"scale", a.scale}};
}

inline Axis axis_from_json(const json& j) {
  if (!j.is_object()) throw InvalidSpec("axis must be a JSON object");
  Axis a;
  try {
    a.parameter = j.at("parameter").get<std::string>();
    a.start = j.at("start").get<double>();
    a.stop = j.at("stop").get<double>();
    a.count = j.at("count").get<int>();
    a.unit = j.value("unit", std::string{});
    a.scale = j.value("scale", std::string{"linear"});
  } catch (const json::exception& e) {
    throw InvalidSpec(std::string("malformed axis: ") + e.what());
  }
  return a;
}

// Axis from "parameter:start:stop:count[:unit]".
inline Axis parse_axis(std::string_view text) {
  std::vector<std::string> parts;
  std::stringstream ss{std::string(text)};
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() < 4 || parts.size() > 5)
    throw InvalidSpec("axis '" + std::string(text) + "' must be parameter:start:stop:count[:unit]");
  Axis a;
  a.parameter = parts[0];
  try {
    std::size_t used = 0;
    a.start = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("start");
    a.stop = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("stop");
    a.count = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument("count");
  } catch (const std::exception&) {
    throw InvalidSpec("axis '" + std::string(text) + "' has non-numeric bounds or count");
  }
  if (parts.size() == 5) a.unit = parts[4];
  return a;
}

inline json sweep_to_json(const SweepSpec& s) {
  json j;
  j["axis1"] = axis_to_json(s.axis1);
  j["axis2"] = s.axis2 ? axis_to_json(*s.axis2) : json(nullptr);
  j["quantities"] = json::array();
  for (Quantity q : canonical_quantities(s.quantities)) j["quantities"].push_back(quantity_name(q));
  j["nonrecip_pairing"] = s.nonrecip_pairing;
  return j;
}

// Reads axes/quantities/pairing into `spec`; base parameters are untouched.
// Accepts a bare sweep document or a sidecar with a "sweep" member.
inline void sweep_from_json(SweepSpec& spec, const json& doc) {
  const json& j = (doc.is_object() && doc.contains("sweep")) ? doc.at("sweep") : doc;
  if (!j.is_object() || !j.contains("axis1")) throw InvalidSpec("sweep document needs axis1");
  spec.axis1 = axis_from_json(j.at("axis1"));
  spec.axis2.reset();
  if (j.contains("axis2") && !j.at("axis2").is_null()) spec.axis2 = axis_from_json(j.at("axis2"));
  spec.quantities.clear();
  if (j.contains("quantities")) {
    if (!j.at("quantities").is_array()) throw InvalidSpec("quantities must be an array");
    for (const auto& q : j.at("quantities")) {
      if (!q.is_string()) throw InvalidSpec("quantity names must be strings");
      spec.quantities.push_back(parse_quantity(q.get<std::string>()));
    }
  }
  spec.nonrecip_pairing = j.value("nonrecip_pairing", false);
}

// Provenance document written next to every sweep output.
inline json sidecar_json(const SweepSpec& spec, std::optional<std::string_view> preset,
                         std::string_view data_file) {
  json j;
  j["tool"] = "magnomech";
  j["version"] = version;
  j["preset"] = preset ? json(std::string(*preset)) : json(nullptr);
  j["data_file"] = std::string(data_file);
  j["params"] = params_to_json(spec.base);
  j["params_rad_s"] = params_to_json_raw(spec.base);
  j["sweep"] = sweep_to_json(spec);
  return j;
}

}  // namespace magnomech
