#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "nodsbm/detect.hpp"
#include "nodsbm/dynamics.hpp"

namespace nodsbm {

/// Shortest decimal that parses back to exactly `value`.
std::string format_double(double value);
double parse_double(std::string_view text);

/// RFC-4180 field quoting.
std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);
/// Parses one record; returns false at end of input. Lines starting with
/// '#' are skipped.
bool read_csv_row(std::istream& in, std::vector<std::string>& fields);

/// Equilibrium table: an optional `# d=.. u=.. alpha=.. gamma=.. saturation=..`
/// comment, a header, then one row per equilibrium:
/// trial, converged, residual, x_0 .. x_{n-1}.
void write_model_comment(std::ostream& out, const ModelParams& params);
void write_equilibria_csv(std::ostream& out, const std::vector<Equilibrium>& rows,
                          const ModelParams* params = nullptr);

struct EquilibriumTable {
  std::vector<long> trial;
  std::vector<Equilibrium> rows;
  bool has_params = false;
  ModelParams params;
};
EquilibriumTable read_equilibria_csv(std::istream& in);

/// Inputs as rows: trial, b_0 .. b_{n-1}.
void write_inputs_csv(std::ostream& out, const Mat& inputs_by_column);
Mat read_inputs_csv(std::istream& in);

/// trial, method, accuracy, degenerate, center_1, center_2, lambda_1..3,
/// eigen_gap, sigma_min, labels.
void write_estimates_header(std::ostream& out);
void write_estimate_row(std::ostream& out, long trial, const CommunityEstimate& est,
                        double accuracy_or_nan);

}  // namespace nodsbm
