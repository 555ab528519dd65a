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

// Command-line front-end. Every artifact embeds the run configuration and
// is a pure function of the arguments, so repeated runs are byte-identical
// (except the timing column of bench-permanent).

#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "passv/error.hpp"
#include "passv/fock_core.hpp"
#include "passv/fock_evolution.hpp"
#include "passv/fock_sampler.hpp"
#include "passv/interferometer.hpp"
#include "passv/io.hpp"
#include "passv/passv_experiments.hpp"
#include "passv/permanent.hpp"

namespace passv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitSizeLimit = 2;

enum class LogLevel { kQuiet, kInfo, kDebug };

/// From PASSV_LOG; unset or unknown means info.
inline LogLevel log_level_from_env() {
  const char* v = std::getenv("PASSV_LOG");
  if (!v) return LogLevel::kInfo;
  const std::string s(v);
  if (s == "quiet") return LogLevel::kQuiet;
  if (s == "debug") return LogLevel::kDebug;
  return LogLevel::kInfo;
}

struct RunConfig {
  std::string subcommand;
  int n = 0;
  int m = 0;
  std::string input;  // explicit input configuration for sample-fock
  std::vector<double> xi;
  std::string variant = "added";
  std::optional<std::uint64_t> seed;
  std::int64_t shots = 0;
  std::optional<int> cutoff;
  double epsilon_tail = 1e-8;
  std::string matrix_path;
  std::string kind = "unitary";
  std::string format;
  std::string out;
  int n_min = 1;
  int n_max = 10;
  int repeats = 3;

  io::json to_json() const {
    io::json j = {{"subcommand", subcommand}};
    auto put_seed = [&] { j["seed"] = seed ? io::json(*seed) : io::json(nullptr); };
    if (subcommand == "sample-fock") {
      j["n"] = n;
      j["m"] = m;
      j["input"] = input;
      j["kind"] = kind;
      j["matrix"] = matrix_path;
      put_seed();
      j["shots"] = shots;
    } else if (subcommand == "sample-passv") {
      j["n"] = n;
      j["m"] = m;
      j["xi"] = xi;
      j["variant"] = variant;
      j["matrix"] = matrix_path;
      put_seed();
      j["cutoff"] = cutoff ? io::json(*cutoff) : io::json(nullptr);
      j["epsilon_tail"] = epsilon_tail;
    } else if (subcommand == "compare") {
      j["n"] = n;
      j["m"] = m;
      j["xi"] = xi;
      j["variant"] = variant;
      put_seed();
      j["epsilon_tail"] = epsilon_tail;
    } else if (subcommand == "decompose" || subcommand == "embed") {
      j["m"] = m;
      j["kind"] = kind;
      j["matrix"] = matrix_path;
      put_seed();
    } else if (subcommand == "bench-permanent") {
      j["n_min"] = n_min;
      j["n_max"] = n_max;
      j["repeats"] = repeats;
      put_seed();
    }
    j["format"] = format;
    j["out"] = out;
    return j;
  }
};

namespace detail {

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err), level_(log_level_from_env()) {}

  void info(const std::string& msg) const {
    if (level_ != LogLevel::kQuiet) err_ << "passv: " << msg << '\n';
  }
  void debug(const std::string& msg) const {
    if (level_ == LogLevel::kDebug) err_ << "passv[debug]: " << msg << '\n';
  }
  void warn(const std::string& msg) const {
    if (level_ != LogLevel::kQuiet) err_ << "passv: warning: " << msg << '\n';
  }

  void emit(const RunConfig& cfg, const std::string& text) const {
    if (cfg.out.empty()) {
      out_ << text;
    } else {
      io::write_file_atomic(cfg.out, text);
      info("wrote " + cfg.out);
    }
  }

  std::uint64_t require_seed(const RunConfig& cfg, const std::string& why) const {
    if (!cfg.seed) throw ValidationError("--seed is required " + why);
    return *cfg.seed;
  }

  /// Network from --matrix, or generated from (--kind, --m, --seed).
  LinearNetwork network(const RunConfig& cfg, bool kind_given) const {
    if (!cfg.matrix_path.empty()) {
      if (kind_given) warn("--matrix given; ignoring --kind generation settings");
      auto net = io::matrix_from_json(io::read_json_file(cfg.matrix_path));
      if (cfg.m != 0 && cfg.m != net.modes()) {
        throw ValidationError("--m " + std::to_string(cfg.m) + " does not match the " + std::to_string(net.modes()) +
                              "-mode matrix in " + cfg.matrix_path);
      }
      debug("loaded " + std::to_string(net.modes()) + "-mode matrix from " + cfg.matrix_path);
      return net;
    }
    if (cfg.m < 1) throw InvalidDimension("--m must be >= 1 when no --matrix is given");
    const auto seed = require_seed(cfg, "to generate a random matrix");
    if (cfg.kind == "unitary") return haar_unitary(cfg.m, seed);
    if (cfg.kind == "orthogonal") return haar_special_orthogonal(cfg.m, seed);
    throw ValidationError("--kind must be unitary or orthogonal");
  }

  static PhotonVariant variant(const RunConfig& cfg) {
    if (cfg.variant == "added") return PhotonVariant::kAdded;
    if (cfg.variant == "subtracted") return PhotonVariant::kSubtracted;
    throw ValidationError("--variant must be added or subtracted");
  }

  void sample_fock(RunConfig& cfg, bool kind_given) const {
    const auto net = network(cfg, kind_given);
    cfg.m = net.modes();
    ModeConfiguration input;
    if (!cfg.input.empty()) {
      input = parse_configuration(cfg.input);
      if (static_cast<int>(input.modes()) != cfg.m) throw ValidationError("--input length does not match m");
      cfg.n = input.total();
    } else {
      input = ModeConfiguration::leading_ones(cfg.n, cfg.m);
    }
    const auto dist = output_distribution(net, input);
    std::vector<std::int64_t> counts;
    if (cfg.shots > 0) {
      const auto seed = require_seed(cfg, "when --shots > 0");
      counts = tally(dist, draw_samples(dist, seed, cfg.shots));
    }
    const auto* c = cfg.shots > 0 ? &counts : nullptr;
    if (cfg.format == "json") {
      io::json j = {{"config", cfg.to_json()}, {"distribution", io::distribution_to_json(dist, c)}};
      emit(cfg, j.dump(2) + "\n");
    } else {
      emit(cfg, io::distribution_to_csv(dist, cfg.to_json(), c));
    }
  }

  void sample_passv(RunConfig& cfg) const {
    if (cfg.xi.size() != 1) throw ValidationError("sample-passv takes exactly one --xi value");
    // Generated networks are always real here; the parity identity needs it.
    if (cfg.matrix_path.empty()) cfg.kind = "orthogonal";
    const auto net = network(cfg, false);
    if (!net.is_real()) warn("network is not real; parity statistics will depend on xi");
    cfg.m = net.modes();
    const SqueezingParameter xi(cfg.xi[0]);
    const auto var = variant(cfg);
    const int d = cfg.cutoff ? *cfg.cutoff : recommended_cutoff(xi.r, cfg.n, cfg.epsilon_tail);
    debug("cutoff " + std::to_string(d));
    auto state = build_passv_input(cfg.n, cfg.m, xi, var, d);
    apply_network(state, reck_decompose(net));
    const auto dist = parity_distribution(state);
    if (cfg.format == "json") {
      io::json j = {{"config", cfg.to_json()},
                    {"cutoff", d},
                    {"truncation_loss", state.truncation_loss()},
                    {"distribution", io::distribution_to_json(dist)}};
      emit(cfg, j.dump(2) + "\n");
    } else {
      emit(cfg, io::distribution_to_csv(dist, cfg.to_json()));
    }
  }

  void compare(RunConfig& cfg) const {
    const auto seed = require_seed(cfg, "for compare");
    if (cfg.xi.empty()) cfg.xi = {0.0};
    const auto rep = run_equivalence_experiment(cfg.n, cfg.m, cfg.xi, variant(cfg), seed, cfg.epsilon_tail);
    info("max deviation " + io::format_double(rep.max_deviation) + " (tolerance " + io::format_double(rep.tolerance) +
         ")");
    if (!rep.within_tolerance()) warn("collision-free probabilities differ beyond tolerance");
    if (cfg.format == "csv") {
      emit(cfg, io::report_to_csv(rep, cfg.to_json()));
    } else {
      io::json j = io::report_to_json(rep);
      j["config"] = cfg.to_json();
      emit(cfg, j.dump(2) + "\n");
    }
  }

  void decompose(RunConfig& cfg, bool kind_given) const {
    const auto net = network(cfg, kind_given);
    cfg.m = net.modes();
    const auto d = reck_decompose(net);
    const double err = max_entry_error(reconstruct_matrix(d), net.matrix());
    io::json j = {{"config", cfg.to_json()},
                  {"m", d.modes},
                  {"elements", io::elements_to_json(d.elements)},
                  {"residual_phases", d.residual_phases},
                  {"reconstruction_error", err}};
    emit(cfg, j.dump(2) + "\n");
  }

  void embed(RunConfig& cfg) const {
    cfg.kind = "unitary";
    const auto u = network(cfg, false);
    cfg.m = u.modes();
    const auto r = embed_unitary_as_orthogonal(u);
    io::json j = io::matrix_to_json(r);
    j["config"] = cfg.to_json();
    emit(cfg, j.dump(2) + "\n");
  }

  void bench_permanent(RunConfig& cfg) const {
    const auto seed = require_seed(cfg, "for bench-permanent");
    if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) throw ValidationError("need 1 <= --n-min <= --n-max");
    if (cfg.n_max > kRyserPermanentMaxSize) {
      throw SizeLimitError("--n-max above " + std::to_string(kRyserPermanentMaxSize));
    }
    if (cfg.repeats < 1) throw ValidationError("--repeats must be >= 1");
    std::ostringstream os;
    os << "# config: " << cfg.to_json().dump() << '\n';
    os << "n,kernel,nanoseconds,checksum\n";
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
      const auto u = haar_unitary(n, seed + static_cast<std::uint64_t>(n));
      const ComplexMatrix a = u.matrix();
      auto time = [&](auto&& kernel) {
        std::int64_t best = -1;
        Complex value;
        for (int r = 0; r < cfg.repeats; ++r) {
          const auto t0 = std::chrono::steady_clock::now();
          value = kernel(a);
          const auto dt =
              std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
          if (best < 0 || dt < best) best = dt;
        }
        return std::pair{best, value};
      };
      auto row = [&](const char* name, std::pair<std::int64_t, Complex> res) {
        os << n << ',' << name << ',' << res.first << ',' << io::format_double(std::abs(res.second)) << '\n';
      };
      if (n <= kNaivePermanentMaxSize) row("naive", time([](const ComplexMatrix& x) { return permanent_naive(x); }));
      row("ryser", time([](const ComplexMatrix& x) { return permanent_ryser(x); }));
    }
    emit(cfg, os.str());
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  LogLevel level_;
};

inline std::vector<double> parse_xi_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw ValidationError("bad --xi value '" + tok + "'");
    }
    if (used != tok.size()) throw ValidationError("bad --xi value '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

/// Runs one command line. Returns 0 on success, 1 on validation errors and
/// usage errors, 2 when a size limit is hit.
inline int execute(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Fock-state and squeezed-state (parity) boson sampling simulator", "passv"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string xi_text;
  std::uint64_t seed = 0;

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out,-o", cfg.out, "Output file (written atomically); stdout if omitted");
  };
  auto add_seed = [&](CLI::App* sub) { return sub->add_option("--seed", seed, "64-bit generator seed"); };
  auto add_matrix = [&](CLI::App* sub) {
    sub->add_option("--matrix", cfg.matrix_path, "Matrix JSON file; takes precedence over --kind/--m/--seed");
  };

  auto* fock = app.add_subcommand("sample-fock", "Permanent-based output distribution (+ optional shots)");
  fock->add_option("--n", cfg.n, "Photons in the first n modes")->check(CLI::NonNegativeNumber);
  fock->add_option("--m", cfg.m, "Mode count")->check(CLI::NonNegativeNumber);
  fock->add_option("--input", cfg.input, "Explicit input configuration, e.g. 1,0,1");
  auto* fock_kind = fock->add_option("--kind", cfg.kind, "Generated matrix kind")
                        ->check(CLI::IsMember({"unitary", "orthogonal"}));
  add_matrix(fock);
  auto* fock_seed = add_seed(fock);
  fock->add_option("--shots", cfg.shots, "Samples to draw (needs --seed)")->check(CLI::NonNegativeNumber);
  fock->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  add_out(fock);

  auto* passv = app.add_subcommand("sample-passv", "Brute-force parity distribution of squeezed-state inputs");
  passv->add_option("--n", cfg.n, "Photon-added/subtracted modes")->required();
  passv->add_option("--m", cfg.m, "Mode count");
  passv->add_option("--xi", xi_text, "Squeezing magnitude r")->required();
  passv->add_option("--variant", cfg.variant, "added or subtracted")
      ->check(CLI::IsMember({"added", "subtracted"}));
  add_matrix(passv);
  auto* passv_seed = add_seed(passv);
  passv->add_option("--cutoff", cfg.cutoff, "Per-mode photon cutoff (default: from --eps-tail)");
  passv->add_option("--eps-tail", cfg.epsilon_tail, "Per-mode squeezed tail mass bound")
      ->check(CLI::PositiveNumber);
  passv->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  add_out(passv);

  auto* cmp = app.add_subcommand("compare", "Parity statistics vs permanent prediction across squeezing values");
  cmp->add_option("--n", cfg.n, "Photon-added/subtracted modes")->required();
  cmp->add_option("--m", cfg.m, "Mode count")->required();
  cmp->add_option("--xi", xi_text, "Comma-separated squeezing magnitudes, e.g. 0,0.3,0.6");
  cmp->add_option("--variant", cfg.variant, "added or subtracted")->check(CLI::IsMember({"added", "subtracted"}));
  auto* cmp_seed = add_seed(cmp);
  cmp->add_option("--eps-tail", cfg.epsilon_tail, "Per-mode squeezed tail mass bound")->check(CLI::PositiveNumber);
  cmp->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"csv", "json"}));
  add_out(cmp);

  auto* dec = app.add_subcommand("decompose", "Matrix -> two-mode element list with reconstruction error");
  dec->add_option("--m", cfg.m, "Mode count for a generated matrix");
  auto* dec_kind = dec->add_option("--kind", cfg.kind, "Generated matrix kind")
                       ->check(CLI::IsMember({"unitary", "orthogonal"}));
  add_matrix(dec);
  auto* dec_seed = add_seed(dec);
  add_out(dec);

  auto* emb = app.add_subcommand("embed", "Unitary m x m -> orthogonal 2m x 2m realification");
  emb->add_option("--m", cfg.m, "Mode count for a generated unitary");
  add_matrix(emb);
  auto* emb_seed = add_seed(emb);
  add_out(emb);

  auto* bench = app.add_subcommand("bench-permanent", "Time the permanent kernels (CSV)");
  bench->add_option("--n-min", cfg.n_min, "Smallest matrix size");
  bench->add_option("--n-max", cfg.n_max, "Largest matrix size");
  bench->add_option("--repeats", cfg.repeats, "Timing repetitions (best is kept)");
  auto* bench_seed = add_seed(bench);
  add_out(bench);

  // The default format depends on which subcommand runs.
  for (auto* sub : {fock, passv}) sub->preparse_callback([&](std::size_t) { cfg.format = "csv"; });
  for (auto* sub : {cmp, dec, emb}) sub->preparse_callback([&](std::size_t) { cfg.format = "json"; });
  bench->preparse_callback([&](std::size_t) { cfg.format = "csv"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  detail::Runner runner(out, err);
  try {
    if (!xi_text.empty()) cfg.xi = detail::parse_xi_list(xi_text);
    CLI::App* sub = app.get_subcommands().front();
    cfg.subcommand = sub->get_name();
    for (auto* opt : {fock_seed, passv_seed, cmp_seed, dec_seed, emb_seed, bench_seed}) {
      if (opt->count() > 0) cfg.seed = seed;
    }
    if (sub == fock) {
      runner.sample_fock(cfg, fock_kind->count() > 0);
    } else if (sub == passv) {
      runner.sample_passv(cfg);
    } else if (sub == cmp) {
      runner.compare(cfg);
    } else if (sub == dec) {
      runner.decompose(cfg, dec_kind->count() > 0);
    } else if (sub == emb) {
      runner.embed(cfg);
    } else if (sub == bench) {
      runner.bench_permanent(cfg);
    }
  } catch (const SizeLimitError& e) {
    err << "passv: size limit: " << e.what() << '\n';
    return kExitSizeLimit;
  } catch (const Error& e) {
    err << "passv: error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "passv: error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace passv::cli
