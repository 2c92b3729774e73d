#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/io.hpp"

namespace cvtele::cli {

inline constexpr const char* kCommands[] = {"moments", "photon-stats", "compare", "optimize", "sweep", "transfer-surface"};
inline constexpr const char* kPresets[] = {"sqvac", "photon_subtracted", "photon_added", "optimal_coherent"};

struct RunConfig {
  std::string command;
  /// Descriptor string or state object.
  std::optional<json> input;
  std::vector<double> deltas;
  double theta = 0.0;
  std::vector<double> rs;
  double g = 1.0;
  int N = kDefaultPhotonCutoff;
  bool identity_channel = false;
  std::vector<std::string> kinds;
  std::vector<std::string> presets;
  double extent = 3.0;
  int points = 61;
  std::string format = "csv";
  std::optional<std::string> output;
  int jobs = 1;
  QuadratureConfig quadrature;
  DiffConfig diff;
  DerivativeSource source = DerivativeSource::closed_form;

  void validate() const;
  /// Everything that affects the numbers; output path and jobs are left out.
  json canonical() const;
};

/// Fields absent from `j` keep the values already in `cfg`.
void apply_json(RunConfig& cfg, const json& j);

/// Runs one command. Returns the exit status; on failure a JSON error record
/// goes to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Flag parsing in front of run(). `--config FILE` is read first and flags
/// override it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cvtele::cli
