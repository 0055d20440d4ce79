#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hoed/hamiltonian.hpp"
#include "hoed/panel.hpp"
#include "hoed/phase_space.hpp"
#include "hoed/spectra.hpp"
#include "hoed/synthetic.hpp"

namespace hoed {

/// How per-entity results are pooled for the phase, wavelet and persistence stages.
enum class GroupBy { Region, Entity };

/// Which series feed the causal graph: the all-entity mean, one region mean, or one entity.
enum class CausalScope { Global, Region, Entity };

/// Everything one `hoed run` needs. See docs/config.md for the file format.
struct RunConfig {
  std::string base_directory;  ///< relative paths resolve against this

  std::optional<std::string> input_path;
  std::optional<SyntheticSpec> synthetic;
  PanelSchema schema;
  std::string x_variable = "gdp";
  std::string y_variable = "co2";
  bool log_inputs = true;

  std::vector<int> window_candidates{3, 5, 7, 10, 15};
  std::optional<int> window_override;
  double overfit_floor = kDefaultOverfitFloor;
  int min_segment_length = 10;

  std::optional<int> drift_window;  ///< tied to the selected window when absent

  bool ekc_enabled = true;
  int ekc_degree = 2;

  bool hamiltonian_enabled = true;
  Alpha alpha;
  std::optional<std::string> calibration_target;
  double stiffness = kDefaultStiffness;
  PowerScheme power_scheme = PowerScheme::Central;

  GroupBy group_by = GroupBy::Region;

  bool phase_enabled = true;
  Embedding embedding;
  bool standardize = true;
  double recurrence_radius = 0.5;

  bool wavelet_enabled = true;
  std::string wavelet_source = "policy_sensitivity";
  double omega0 = kDefaultOmega0;
  int voices_per_octave = kDefaultVoicesPerOctave;

  bool persistence_enabled = true;

  bool causality_enabled = true;
  std::vector<std::string> causal_variables{"power", "kei", "inertia", "smoothness", "drift", "shock", "H"};
  double causal_alpha = 0.05;
  int max_lag = 2;
  CausalScope causal_scope = CausalScope::Global;
  std::optional<std::string> causal_target;

  std::optional<std::string> region_map_path;  ///< built-in study grouping when absent

  std::string output_directory = "bundle";
  bool plots_enabled = true;

  std::string resolve(const std::string& path) const;
};

/// Parses INI text. Unknown sections or keys are config errors, as is giving both an input path and a
/// [synthetic] section (or neither).
RunConfig parse_run_config(std::string_view text, const std::string& base_directory = ".");
RunConfig load_run_config(const std::string& path);

/// Reads a [synthetic] section from INI text (the `hoed simulate --spec` file).
SyntheticSpec parse_synthetic_spec(std::string_view text);

/// Fully expanded, deterministic INI rendering of the effective configuration. The output directory
/// is left out so a bundle does not depend on where it was written.
std::string canonical_config(const RunConfig& config);

std::string to_string(GroupBy g);
std::string to_string(CausalScope s);

}  // namespace hoed
