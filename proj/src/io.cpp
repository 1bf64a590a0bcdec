#include "nodsbm/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace nodsbm {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buf, end);
}

double parse_double(std::string_view text) {
  if (text == "nan" || text.empty()) return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("not a number: " + std::string(text));
  return v;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos)
    return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(fields[i]);
  }
  out << "\r\n";
}

bool read_csv_row(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  int c = in.peek();
  while (c == '#' || c == '\r' || c == '\n') {
    std::string skip;
    std::getline(in, skip);
    c = in.peek();
  }
  if (c == std::char_traits<char>::eof()) return false;

  std::string field;
  bool quoted = false;
  while (true) {
    c = in.get();
    if (c == std::char_traits<char>::eof()) {
      fields.push_back(field);
      return true;
    }
    const char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          field += '"';
          in.get();
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\r' || ch == '\n') {
      if (ch == '\r' && in.peek() == '\n') in.get();
      fields.push_back(std::move(field));
      return true;
    } else {
      field += ch;
    }
  }
}

void write_model_comment(std::ostream& out, const ModelParams& p) {
  out << "# d=" << format_double(p.d) << " u=" << format_double(p.u)
      << " alpha=" << format_double(p.alpha) << " gamma=" << format_double(p.gamma)
      << " saturation=" << to_string(p.saturation) << '\n';
}

void write_equilibria_csv(std::ostream& out, const std::vector<Equilibrium>& rows,
                          const ModelParams* params) {
  if (params) write_model_comment(out, *params);
  const Eigen::Index n = rows.empty() ? 0 : rows.front().state.size();
  std::vector<std::string> header{"trial", "converged", "residual"};
  for (Eigen::Index i = 0; i < n; ++i) header.push_back("x" + std::to_string(i));
  write_csv_row(out, header);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& eq = rows[k];
    if (eq.state.size() != n)
      throw LengthMismatch("write_equilibria_csv: ragged equilibria");
    std::vector<std::string> f{std::to_string(k), eq.converged ? "1" : "0",
                               format_double(eq.residual_inf)};
    for (Eigen::Index i = 0; i < n; ++i) f.push_back(format_double(eq.state(i)));
    write_csv_row(out, f);
  }
}

namespace {

bool parse_model_comment(const std::string& line, ModelParams& p) {
  std::istringstream ss(line.substr(1));
  std::string tok;
  int found = 0;
  while (ss >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "d") p.d = parse_double(val), ++found;
    else if (key == "u") p.u = parse_double(val), ++found;
    else if (key == "alpha") p.alpha = parse_double(val), ++found;
    else if (key == "gamma") p.gamma = parse_double(val), ++found;
    else if (key == "saturation") p.saturation = parse_saturation(val), ++found;
  }
  return found == 5;
}

}  // namespace

EquilibriumTable read_equilibria_csv(std::istream& in) {
  EquilibriumTable table;
  while (in.peek() == '#') {
    std::string line;
    std::getline(in, line);
    if (parse_model_comment(line, table.params)) table.has_params = true;
  }
  std::vector<std::string> f;
  if (!read_csv_row(in, f)) return table;  // header
  const std::size_t n = f.size() < 3 ? 0 : f.size() - 3;
  while (read_csv_row(in, f)) {
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != n + 3) throw std::invalid_argument("equilibria CSV: ragged row");
    Equilibrium eq;
    table.trial.push_back(std::stol(f[0]));
    eq.converged = f[1] == "1";
    eq.residual_inf = parse_double(f[2]);
    eq.state.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) eq.state(i) = parse_double(f[i + 3]);
    table.rows.push_back(std::move(eq));
  }
  return table;
}

void write_inputs_csv(std::ostream& out, const Mat& inputs) {
  std::vector<std::string> header{"trial"};
  for (Eigen::Index i = 0; i < inputs.rows(); ++i) header.push_back("b" + std::to_string(i));
  write_csv_row(out, header);
  for (Eigen::Index k = 0; k < inputs.cols(); ++k) {
    std::vector<std::string> f{std::to_string(k)};
    for (Eigen::Index i = 0; i < inputs.rows(); ++i) f.push_back(format_double(inputs(i, k)));
    write_csv_row(out, f);
  }
}

Mat read_inputs_csv(std::istream& in) {
  std::vector<std::string> f;
  if (!read_csv_row(in, f)) return Mat();
  const std::size_t n = f.size() - 1;
  std::vector<Vec> cols;
  while (read_csv_row(in, f)) {
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != n + 1) throw std::invalid_argument("inputs CSV: ragged row");
    Vec b(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) b(i) = parse_double(f[i + 1]);
    cols.push_back(std::move(b));
  }
  Mat out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(k) = cols[k];
  return out;
}

void write_estimates_header(std::ostream& out) {
  write_csv_row(out, {"trial", "method", "accuracy", "degenerate", "center_1",
                      "center_2", "lambda_1", "lambda_2", "lambda_3", "eigen_gap",
                      "sigma_min", "labels"});
}

void write_estimate_row(std::ostream& out, long trial, const CommunityEstimate& est,
                        double acc) {
  auto opt = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
  };
  std::vector<std::string> f{std::to_string(trial), std::string(to_string(est.method)),
                             std::isnan(acc) ? std::string() : format_double(acc),
                             est.degenerate ? "1" : "0"};
  f.push_back(est.centers ? format_double((*est.centers)[0]) : "");
  f.push_back(est.centers ? format_double((*est.centers)[1]) : "");
  for (int k = 0; k < 3; ++k) {
    const bool has = est.top_eigenvalues && est.top_eigenvalues->size() > k;
    f.push_back(has ? format_double((*est.top_eigenvalues)(k)) : "");
  }
  f.push_back(opt(est.eigen_gap));
  f.push_back(opt(est.sigma_min));
  std::string labels;
  labels.reserve(est.labels.size());
  for (int l : est.labels) labels += static_cast<char>('0' + l);
  f.push_back(labels);
  write_csv_row(out, f);
}

}  // namespace nodsbm
