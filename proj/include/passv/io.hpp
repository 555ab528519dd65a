// Copyright 2026 The passv Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON and CSV forms of matrices, element lists, states, distributions and
// reports.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "passv/error.hpp"
#include "passv/fock_core.hpp"
#include "passv/fock_evolution.hpp"
#include "passv/fock_sampler.hpp"
#include "passv/interferometer.hpp"
#include "passv/passv_experiments.hpp"

namespace passv::io {

using json = nlohmann::ordered_json;

/// Shortest text that reads back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

// ---- matrices --------------------------------------------------------------

/// {"m": int, "kind": "unitary"|"orthogonal", "re": [[...]], "im": [[...]]};
/// "im" is omitted for real matrices.
inline json matrix_to_json(const LinearNetwork& net) {
  const int m = net.modes();
  json re = json::array();
  json im = json::array();
  for (int i = 0; i < m; ++i) {
    json rrow = json::array();
    json irow = json::array();
    for (int j = 0; j < m; ++j) {
      rrow.push_back(net(i, j).real() + 0.0);
      irow.push_back(net(i, j).imag() + 0.0);
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  json out = {{"m", m}, {"kind", net.is_real() ? "orthogonal" : "unitary"}, {"re", std::move(re)}};
  if (!net.is_real()) out["im"] = std::move(im);
  return out;
}

inline LinearNetwork matrix_from_json(const json& j) {
  try {
    const int m = j.at("m").get<int>();
    if (m < 1) throw InvalidDimension("matrix file has m < 1");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "unitary" && kind != "orthogonal") {
      throw ValidationError("matrix kind must be \"unitary\" or \"orthogonal\", got \"" + kind + "\"");
    }
    const auto& re = j.at("re");
    const bool has_im = j.contains("im");
    if (kind == "orthogonal" && has_im) {
      for (const auto& row : j.at("im")) {
        for (const auto& v : row) {
          if (v.get<double>() != 0.0) throw ValidationError("orthogonal matrix has non-zero imaginary part");
        }
      }
    }
    if (static_cast<int>(re.size()) != m) throw ValidationError("\"re\" does not have m rows");
    ComplexMatrix mat(m, m);
    for (int r = 0; r < m; ++r) {
      if (static_cast<int>(re[static_cast<std::size_t>(r)].size()) != m) {
        throw ValidationError("\"re\" row " + std::to_string(r) + " does not have m entries");
      }
      for (int c = 0; c < m; ++c) {
        double imv = 0.0;
        if (has_im) imv = j.at("im").at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c)).get<double>();
        mat(r, c) = Complex(re[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].get<double>(), imv);
      }
    }
    if (kind == "unitary") return LinearNetwork(std::move(mat), NetworkKind::kUnitary);
    const double det = mat.real().determinant();
    return LinearNetwork(std::move(mat), det > 0 ? NetworkKind::kSpecialOrthogonal : NetworkKind::kOrthogonal);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed matrix file: ") + e.what());
  }
}

// ---- element lists ---------------------------------------------------------

inline json elements_to_json(const std::vector<TwoModeElement>& elements) {
  json arr = json::array();
  for (const auto& e : elements) {
    arr.push_back({{"i", e.i}, {"j", e.j}, {"theta", e.theta + 0.0}, {"phi", e.phi + 0.0}});
  }
  return arr;
}

inline std::vector<TwoModeElement> elements_from_json(const json& arr) {
  try {
    std::vector<TwoModeElement> out;
    for (const auto& e : arr) {
      out.push_back({e.at("i").get<int>(), e.at("j").get<int>(), e.at("theta").get<double>(),
                     e.value("phi", 0.0)});
    }
    return out;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed element list: ") + e.what());
  }
}

// ---- states ----------------------------------------------------------------

/// Debug snapshot: {"m", "d", "loss", "amps": [[index tuple], re, im] ...}
/// listing entries with modulus above 1e-14.
inline json state_to_json(const TruncatedFockState& state) {
  json amps = json::array();
  std::vector<int> occ;
  const auto& a = state.amplitudes();
  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    if (std::abs(a[idx]) <= 1e-14) continue;
    state.decode(idx, occ);
    amps.push_back(json::array({occ, a[idx].real(), a[idx].imag()}));
  }
  return {{"m", state.modes()}, {"d", state.cutoff()}, {"loss", state.truncation_loss()}, {"amps", std::move(amps)}};
}

// ---- distributions ---------------------------------------------------------

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Header comment, then "key,probability[,count]" rows.
template <typename Key>
std::string distribution_to_csv(const OutputDistribution<Key>& dist, const json& config,
                                const std::vector<std::int64_t>* counts = nullptr) {
  std::ostringstream os;
  os << "# config: " << config.dump() << '\n';
  os << "# normalization_defect: " << format_double(dist.normalization_defect) << '\n';
  os << (counts ? "key,probability,count\n" : "key,probability\n");
  for (std::size_t k = 0; k < dist.size(); ++k) {
    os << csv_quote(to_string(dist.support[k].first)) << ',' << format_double(dist.support[k].second);
    if (counts) os << ',' << (*counts)[k];
    os << '\n';
  }
  return os.str();
}

template <typename Key>
json distribution_to_json(const OutputDistribution<Key>& dist, const std::vector<std::int64_t>* counts = nullptr) {
  json rows = json::array();
  for (std::size_t k = 0; k < dist.size(); ++k) {
    json row = {{"key", to_string(dist.support[k].first)}, {"probability", dist.support[k].second}};
    if (counts) row["count"] = (*counts)[k];
    rows.push_back(std::move(row));
  }
  return {{"normalization_defect", dist.normalization_defect}, {"support", std::move(rows)}};
}

// ---- reports ---------------------------------------------------------------

inline json report_to_json(const EquivalenceReport& rep) {
  json rows = json::array();
  for (const auto& row : rep.rows) {
    json r = {{"pattern", to_string(row.pattern)}};
    r["predicted"] = row.predicted ? json(*row.predicted) : json(nullptr);
    r["brute_force"] = row.brute_force;
    rows.push_back(std::move(r));
  }
  return {
      {"n", rep.n},
      {"m", rep.m},
      {"variant", to_string(rep.variant)},
      {"xi_list", rep.xi_list},
      {"seed", rep.seed},
      {"epsilon_tail", rep.epsilon_tail},
      {"cutoffs", rep.cutoffs},
      {"network", matrix_to_json(LinearNetwork(rep.network, NetworkKind::kSpecialOrthogonal))},
      {"max_deviation", rep.max_deviation},
      {"max_cross_xi_deviation", rep.max_cross_xi_deviation},
      {"tolerance", rep.tolerance},
      {"within_tolerance", rep.within_tolerance()},
      {"collision_sector_mass", rep.collision_sector_mass},
      {"predicted_collision_mass", rep.predicted_collision_mass},
      {"truncation_budget", rep.truncation_budget},
      {"rows", std::move(rows)},
  };
}

/// "pattern,predicted,p_xi0,p_xi1,..." with an empty predicted field for
/// patterns outside the collision-free sector.
inline std::string report_to_csv(const EquivalenceReport& rep, const json& config) {
  std::ostringstream os;
  os << "# config: " << config.dump() << '\n';
  os << "pattern,predicted";
  for (std::size_t x = 0; x < rep.xi_list.size(); ++x) os << ",p_xi" << x;
  os << '\n';
  for (const auto& row : rep.rows) {
    os << to_string(row.pattern) << ',';
    if (row.predicted) os << format_double(*row.predicted);
    for (double p : row.brute_force) os << ',' << format_double(p);
    os << '\n';
  }
  return os.str();
}

// ---- files -----------------------------------------------------------------

/// Writes via a temporary sibling and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + tmp.string() + " for writing");
    f << contents;
    if (!f.flush()) throw Error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open " + path.string());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

inline json read_json_file(const std::filesystem::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ValidationError("cannot parse " + path.string() + ": " + e.what());
  }
}

}  // namespace passv::io
