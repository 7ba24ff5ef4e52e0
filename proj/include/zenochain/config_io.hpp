#pragma once

// JSON experiment configs for the command-line front end. One file carries
// the chain parameters plus optional per-command blocks; unknown keys are
// rejected so typos fail loudly instead of silently running defaults.

#include <optional>
#include <string>
#include <vector>

#include "zenochain/protocol.hpp"

namespace zenochain {

struct GhzSpec {
  // "auto": decoherent evolution iff any rate is nonzero; "on"/"off" force it.
  std::string decoherence = "auto";
};

struct SweepSpec {
  std::vector<SweepAxis> axes;  // 1 or 2
  std::string observable = "fidelity";
};

struct PopulationsSpec {
  double t_final = 0.0;  // 0 means the GHZ pulse time
  std::string decoherence = "auto";
};

struct CompareEffSpec {};

struct EprSpec {
  int measured_atom = 0;  // 0 means the middle atom
};

struct ExperimentConfig {
  ChainConfig chain;
  int n_samples = 2001;
  double clustering_tol = 0.0;  // 0 means the default, 1e-8 * max(g, v)
  std::string output_path;      // optional; --out overrides

  std::optional<GhzSpec> ghz;
  std::optional<SweepSpec> sweep;
  std::optional<PopulationsSpec> populations;
  std::optional<CompareEffSpec> compare_eff;
  std::optional<EprSpec> epr;
};

// Parses and validates a config file. Defaults: v = g when absent,
// omega_1 = (sqrt(2)+1) * omega_n when absent (ratio then stays locked under
// sweeps of omega_n), rates 0. Throws ConfigError on malformed JSON, unknown
// keys, or invalid values.
ExperimentConfig load_experiment(const std::string& path);
ExperimentConfig parse_experiment(const std::string& json_text);

}  // namespace zenochain
