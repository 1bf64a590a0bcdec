#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nodsbm/detect.hpp"
#include "nodsbm/dynamics.hpp"
#include "nodsbm/graphgen.hpp"

namespace nodsbm {

enum class Preset { UnequalSBM, SaturationSweep, SSBMPositive, SSBMNegative, MultiPairs, Custom };

std::string_view to_string(Preset preset);
Preset parse_preset(std::string_view name);

/// How `sizes` maps to community sizes.
enum class Layout {
  Ratio,      // sizes are n1; n2 = ceil(n2_ratio * n1)
  Symmetric,  // sizes are n; n1 = n2 = n / 2
};

enum class Mode {
  Single,  // one equilibrium per graph, no input
  Multi,   // Gaussian-input pairs, nested sample sizes m
};

struct ExperimentConfig {
  Preset preset = Preset::Custom;
  Mode mode = Mode::Single;
  Layout layout = Layout::Ratio;
  std::vector<int> sizes;
  double n2_ratio = 0.05;
  double ell11 = 0.0, ell12 = 0.0, ell22 = 0.0;
  int influence = 1;  // sign of gamma; |gamma| = 1 / Delta
  double d = 1.0;
  double alpha = 1.0;
  std::vector<double> u_offsets;  // u = u_bar + offset
  std::vector<Saturation> saturations{Saturation::TanH};
  int trials = 20;                 // graphs per size
  int pair_sets = 10;              // Multi: input sets per graph
  std::vector<double> m_fractions; // Multi: m = round(fraction * n)
  bool baseline = true;            // Multi: also run the covariance baseline
  bool diagnostics = false;        // concentration ratio and alignment per graph
  std::uint64_t base_seed = 20240501;
  std::string output_path;
  int workers = 0;  // 0: NODSBM_WORKERS, else hardware concurrency
  EquilibriumControls controls;

  /// Throws std::invalid_argument on an unusable configuration.
  void validate() const;
  std::vector<SbmParams> graph_points() const;
};

ExperimentConfig preset_config(Preset preset);

/// Applies one `key = value` setting; lists are comma separated.
void apply_setting(ExperimentConfig& config, const std::string& key,
                   const std::string& value);
/// Flat key-value text: `key = value` lines, `#` comments. A `preset` key,
/// if present, resets the config to that preset before later keys apply.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::string& path);

struct TrialRecord {
  std::string preset;
  long trial = 0;
  std::uint64_t seed = 0;
  int n = 0, n1 = 0, n2 = 0;
  double ell11 = 0.0, ell12 = 0.0, ell22 = 0.0;
  double delta = 0.0;   // max expected degree
  double gamma = 0.0;   // +-1/delta
  double u_bar = 0.0;
  double u_offset = 0.0;
  double u = 0.0;
  std::string saturation;
  std::string method;
  int m = 0;            // pairs used (0 for single equilibrium)
  double accuracy = 0.5;
  std::string status = "ok";
  bool connected = false;
  double residual = 0.0;
  std::optional<double> eigen_gap;
  std::optional<double> sigma_min;
  std::optional<double> concentration_ratio;
  std::optional<double> alignment;
};

/// Graph seed for (preset, graph point, trial index): base_seed xor a
/// stable hash, independent of which other points are in the sweep.
std::uint64_t trial_seed(const ExperimentConfig& config, const SbmParams& point,
                         long trial);

/// u_bar from the closed-form spectrum of E{A} and gamma = sign / Delta.
ModelParams model_for(const ExperimentConfig& config, const SbmParams& point,
                      double u_offset, Saturation saturation, double* u_bar = nullptr);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every (graph point, trial) job over a worker pool. The returned rows
/// are in job order and do not depend on the number of workers. Per-trial
/// failures become rows with a status code and accuracy 0.5.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& config,
                                        const ProgressFn& progress = {});

int default_worker_count();

const std::vector<std::string>& trial_record_header();
std::vector<std::string> to_fields(const TrialRecord& record);
TrialRecord from_fields(const std::vector<std::string>& fields);

/// Writes `# ...` provenance line (with timestamp), header and rows.
void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records,
                       const std::string& comment = {});
std::vector<TrialRecord> read_records_csv(std::istream& in);

struct SummaryRow {
  std::string preset;
  int n = 0, n1 = 0, n2 = 0;
  double ell11 = 0.0, ell12 = 0.0, ell22 = 0.0;
  double u_offset = 0.0;
  std::string saturation;
  std::string method;
  int m = 0;
  long count = 0;
  long failures = 0;  // status != ok
  double mean = 0.0;
  double stderr_ = 0.0;
};

/// Mean and standard error of accuracy per swept parameter combination, in
/// order of first appearance. Throws EmptyInput on no records.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace nodsbm
