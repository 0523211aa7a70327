//
// Copyright 2026 The eopert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "eopert/config.h"

#include <array>
#include <cmath>
#include <istream>
#include <set>

#include "eopert/errors.h"
#include "eopert/text.h"

namespace eopert {
namespace {

using K = ScheduleKind;

// Fig. 1 panels, then the appendix tables in reading order (row-major,
// left panel before right panel).
constexpr std::array<Preset, 24> kPresets = {{
    {"fig1-top-left", 0.9, 0.8, 0.4, 0.1, K::kEqual},
    {"fig1-top-right", 0.9, 0.6, 0.7, 0.1, K::kHalves},
    {"fig1-bottom-left", 0.9, 0.6, 0.3, 0.8, K::kPowerHalving},
    {"fig1-bottom-right", 0.9, 0.5, 0.0, 0.4, K::kEqual},
    {"tableA3-row-1", 0.8, 0.9, 0.1, 0.0, K::kEqual},
    {"tableA3-row-2", 0.8, 0.9, 0.1, 0.0, K::kPowerHalving},
    {"tableA3-row-3", 0.8, 0.9, 0.1, 0.0, K::kHalves},
    {"tableA3-row-4", 0.8, 0.9, 0.1, 0.0, K::kCapped},
    {"tableA3-row-5", 0.9, 0.6, 0.7, 0.1, K::kEqual},
    {"tableA3-row-6", 0.9, 0.4, 0.1, 0.1, K::kPowerHalving},
    {"tableA3-row-7", 0.7, 0.9, 0.3, 0.0, K::kHalves},
    {"tableA3-row-8", 0.7, 0.9, 0.3, 0.0, K::kCapped},
    {"tableA3-row-9", 0.3, 0.8, 0.1, 0.2, K::kEqual},
    {"tableA3-row-10", 0.3, 0.8, 0.1, 0.2, K::kEqual},
    {"tableA3-row-11", 0.9, 0.6, 0.4, 0.1, K::kPowerHalving},
    {"tableA3-row-12", 0.9, 0.6, 0.4, 0.4, K::kPowerHalving},
    {"tableA3-row-13", 0.5, 0.8, 0.1, 0.4, K::kEqual},
    {"tableA3-row-14", 0.6, 0.8, 0.1, 0.4, K::kCapped},
    {"tableA4-row-1", 0.6, 0.55, 0.1, 0.3, K::kEqual},
    {"tableA4-row-2", 0.9, 0.6, 0.4, 0.1, K::kEqual},
    {"tableA4-row-3", 1.0, 0.8, 0.0, 0.1, K::kEqual},
    {"tableA4-row-4", 0.4, 0.95, 0.1, 0.15, K::kEqual},
    {"tableA4-row-5", 0.3, 0.7, 0.1, 0.5, K::kPowerHalving},
    {"tableA4-row-6", 0.35, 0.95, 0.1, 0.15, K::kHalves},
}};

double RequireDouble(std::string_view key, std::string_view text) {
  const auto v = ParseDouble(text);
  if (!v || !std::isfinite(*v)) {
    throw ConfigError("key '" + std::string(key) + "': not a number: '" +
                      std::string(text) + "'");
  }
  return *v;
}

}  // namespace

std::span<const Preset> AllPresets() { return kPresets; }

std::optional<Preset> FindPreset(std::string_view name) {
  for (const Preset& p : kPresets) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

std::vector<double> GridPoints(double start, double stop, double step) {
  if (!(step > 0.0)) throw ConfigError("grid step must be positive");
  if (!(start >= 0.0 && stop <= 1.0 && start <= stop)) {
    throw ConfigError("grid must satisfy 0 <= start <= stop <= 1");
  }
  const auto n =
      static_cast<long long>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> points;
  for (long long i = 0; i <= n; ++i) {
    points.push_back(std::min(start + static_cast<double>(i) * step, stop));
  }
  return points;
}

std::vector<double> ParseGrid(std::string_view text) {
  text = Trim(text);
  const auto range = SplitOn(text, ':');
  if (range.size() == 3) {
    return GridPoints(RequireDouble("grid", range[0]),
                      RequireDouble("grid", range[1]),
                      RequireDouble("grid", range[2]));
  }
  if (range.size() != 1) throw ConfigError("grid must be start:stop:step or a list");
  std::vector<double> points;
  for (std::string_view item : SplitOn(text, ',')) {
    const double v = RequireDouble("grid", item);
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("grid values must lie in [0,1]");
    points.push_back(v);
  }
  return points;
}

std::map<std::string, std::string> ParseKeyValues(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = Trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key(Trim(view.substr(0, eq)));
    const std::string value(Trim(view.substr(eq + 1)));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty key");
    }
    if (!kv.emplace(key, value).second) {
      throw ConfigError("config key '" + key + "' given twice");
    }
  }
  return kv;
}

SweepConfig BuildSweepConfig(const std::map<std::string, std::string>& kv) {
  static const std::set<std::string, std::less<>> kKnown = {
      "preset", "base",       "alpha1",    "beta1",     "alpha2",   "beta2",
      "schedule", "grid_start", "grid_stop", "grid_step", "output"};
  for (const auto& [key, value] : kv) {
    if (!kKnown.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  auto get = [&](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };

  SweepConfig cfg;
  bool have_rates[4] = {false, false, false, false};
  bool have_schedule = false;
  if (const auto* name = get("preset")) {
    const auto preset = FindPreset(*name);
    if (!preset) throw ConfigError("unknown preset '" + *name + "'");
    cfg.instance.alpha1 = preset->alpha1;
    cfg.instance.beta1 = preset->beta1;
    cfg.instance.alpha2 = preset->alpha2;
    cfg.instance.beta2 = preset->beta2;
    cfg.schedule = preset->schedule;
    std::fill(std::begin(have_rates), std::end(have_rates), true);
    have_schedule = true;
  }
  const std::array<std::pair<const char*, double*>, 4> rates = {{
      {"alpha1", &cfg.instance.alpha1},
      {"beta1", &cfg.instance.beta1},
      {"alpha2", &cfg.instance.alpha2},
      {"beta2", &cfg.instance.beta2},
  }};
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (const auto* v = get(rates[i].first)) {
      *rates[i].second = RequireDouble(rates[i].first, *v);
      have_rates[i] = true;
    }
    if (!have_rates[i]) {
      throw ConfigError(std::string("missing key '") + rates[i].first + "'");
    }
  }
  if (const auto* v = get("schedule")) {
    const auto kind = ParseScheduleKind(*v);
    if (!kind) throw ConfigError("unknown schedule '" + *v + "'");
    cfg.schedule = *kind;
    have_schedule = true;
  }
  if (!have_schedule) throw ConfigError("missing key 'schedule'");

  const auto* base = get("base");
  if (base == nullptr) {
    throw ConfigError("missing key 'base' (P[Y=y,A=a] are never implied)");
  }
  if (*base != "balanced") {
    const auto parts = SplitOn(*base, ',');
    if (parts.size() != 4) throw ConfigError("base needs four comma-separated values");
    for (std::size_t i = 0; i < 4; ++i) {
      cfg.instance.base[i] = RequireDouble("base", parts[i]);
    }
  }

  const auto* start = get("grid_start");
  const auto* stop = get("grid_stop");
  const auto* step = get("grid_step");
  if (start || stop || step) {
    if (!(start && stop && step)) {
      throw ConfigError("grid_start, grid_stop and grid_step go together");
    }
    cfg.grid = GridPoints(RequireDouble("grid_start", *start),
                          RequireDouble("grid_stop", *stop),
                          RequireDouble("grid_step", *step));
  }
  if (const auto* out = get("output")) cfg.output = *out;

  try {
    ValidateInstance(cfg.instance);
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid instance: ") + e.what());
  }
  return cfg;
}

}  // namespace eopert
