#include "nodsbm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "nodsbm/io.hpp"
#include "nodsbm/rng.hpp"
#include "nodsbm/spectral.hpp"
#include "nodsbm/theory.hpp"

namespace nodsbm {

std::string_view to_string(Preset preset) {
  switch (preset) {
    case Preset::UnequalSBM: return "unequal_sbm";
    case Preset::SaturationSweep: return "saturation_sweep";
    case Preset::SSBMPositive: return "ssbm_positive";
    case Preset::SSBMNegative: return "ssbm_negative";
    case Preset::MultiPairs: return "multi_pairs";
    case Preset::Custom: return "custom";
  }
  return "unknown";
}

Preset parse_preset(std::string_view name) {
  for (auto p : {Preset::UnequalSBM, Preset::SaturationSweep, Preset::SSBMPositive,
                 Preset::SSBMNegative, Preset::MultiPairs, Preset::Custom})
    if (name == to_string(p)) return p;
  throw std::invalid_argument("unknown preset: " + std::string(name));
}

namespace {

const std::vector<Saturation> kAllSaturations{Saturation::TanH, Saturation::ErfScaled,
                                              Saturation::Algebraic2,
                                              Saturation::Algebraic1};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw std::invalid_argument("not a boolean: " + v);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (sizes.empty()) throw std::invalid_argument("sizes must be nonempty");
  if (u_offsets.empty()) throw std::invalid_argument("offsets must be nonempty");
  for (double o : u_offsets)
    if (!(o > 0.0)) throw std::invalid_argument("u offsets must be positive");
  if (saturations.empty()) throw std::invalid_argument("saturations must be nonempty");
  if (influence != 1 && influence != -1)
    throw std::invalid_argument("influence must be +1 or -1");
  if (mode == Mode::Multi) {
    if (pair_sets < 1) throw std::invalid_argument("pair_sets must be >= 1");
    if (m_fractions.empty()) throw std::invalid_argument("m_fractions must be nonempty");
    for (double f : m_fractions)
      if (!(f > 0.0 && f <= 1.0))
        throw std::invalid_argument("m_fractions must lie in (0, 1]");
  }
  if (!(n2_ratio > 0.0)) throw std::invalid_argument("n2_ratio must be positive");
  graph_points();  // validates sizes and probabilities
}

std::vector<SbmParams> ExperimentConfig::graph_points() const {
  std::vector<SbmParams> points;
  for (int s : sizes) {
    if (layout == Layout::Symmetric) {
      if (s < 2 || s % 2) throw std::invalid_argument("symmetric sizes must be even");
      points.push_back(SbmParams::make(s / 2, s / 2, ell11, ell12, ell22));
    } else {
      const int n2 = static_cast<int>(std::ceil(n2_ratio * s - 1e-9));
      points.push_back(SbmParams::make(s, std::max(1, n2), ell11, ell12, ell22));
    }
  }
  return points;
}

ExperimentConfig preset_config(Preset preset) {
  ExperimentConfig c;
  c.preset = preset;
  switch (preset) {
    case Preset::UnequalSBM:
      c.layout = Layout::Ratio;
      c.sizes = {100, 200, 300, 400, 500};
      c.ell11 = 0.05, c.ell12 = 0.1, c.ell22 = 0.5;
      c.u_offsets = {0.01, 0.02, 0.03, 0.04};
      break;
    case Preset::SaturationSweep:
      c.layout = Layout::Ratio;
      c.sizes = {100, 200, 300, 400, 500};
      c.ell11 = 0.05, c.ell12 = 0.1, c.ell22 = 0.5;
      c.u_offsets = {0.04};
      c.saturations = kAllSaturations;
      break;
    case Preset::SSBMPositive:
      c.layout = Layout::Symmetric;
      c.sizes = {200, 500, 1000};
      c.ell11 = c.ell22 = 0.3, c.ell12 = 0.05;
      c.u_offsets = {0.01, 0.02, 0.03, 0.04};
      break;
    case Preset::SSBMNegative:
      c.layout = Layout::Symmetric;
      c.sizes = {200, 500, 1000};
      c.ell11 = c.ell22 = 0.005, c.ell12 = 0.03;
      c.influence = -1;
      c.u_offsets = {0.01, 0.02, 0.03, 0.04};
      break;
    case Preset::MultiPairs:
      c.mode = Mode::Multi;
      c.layout = Layout::Symmetric;
      c.sizes = {20, 60, 100};
      c.ell11 = c.ell22 = 0.3, c.ell12 = 0.05;
      c.u_offsets = {0.01};
      c.trials = 10;
      c.pair_sets = 10;
      c.m_fractions = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
      break;
    case Preset::Custom:
      c.layout = Layout::Symmetric;
      c.sizes = {200};
      c.ell11 = c.ell22 = 0.3, c.ell12 = 0.05;
      c.u_offsets = {0.01};
      break;
  }
  return c;
}

void apply_setting(ExperimentConfig& c, const std::string& raw_key,
                   const std::string& raw_value) {
  const std::string key = trim(raw_key), v = trim(raw_value);
  auto doubles = [&] {
    std::vector<double> out;
    for (const auto& s : split_list(v)) out.push_back(parse_double(s));
    return out;
  };
  if (key == "preset") {
    const auto keep_output = c.output_path;
    c = preset_config(parse_preset(v));
    c.output_path = keep_output;
  } else if (key == "mode") {
    if (v == "single") c.mode = Mode::Single;
    else if (v == "multi") c.mode = Mode::Multi;
    else throw std::invalid_argument("mode must be single or multi");
  } else if (key == "layout") {
    if (v == "ratio") c.layout = Layout::Ratio;
    else if (v == "symmetric") c.layout = Layout::Symmetric;
    else throw std::invalid_argument("layout must be ratio or symmetric");
  } else if (key == "sizes") {
    c.sizes.clear();
    for (const auto& s : split_list(v)) c.sizes.push_back(std::stoi(s));
  } else if (key == "n2_ratio") {
    c.n2_ratio = parse_double(v);
  } else if (key == "ell11") {
    c.ell11 = parse_double(v);
  } else if (key == "ell12") {
    c.ell12 = parse_double(v);
  } else if (key == "ell22") {
    c.ell22 = parse_double(v);
  } else if (key == "ell_s") {
    c.ell11 = c.ell22 = parse_double(v);
  } else if (key == "ell_d") {
    c.ell12 = parse_double(v);
  } else if (key == "influence") {
    if (v == "positive" || v == "+1" || v == "1") c.influence = 1;
    else if (v == "negative" || v == "-1") c.influence = -1;
    else throw std::invalid_argument("influence must be positive or negative");
  } else if (key == "d") {
    c.d = parse_double(v);
  } else if (key == "alpha") {
    c.alpha = parse_double(v);
  } else if (key == "offsets") {
    c.u_offsets = doubles();
  } else if (key == "saturations") {
    c.saturations.clear();
    for (const auto& s : split_list(v)) {
      if (s == "all") c.saturations = kAllSaturations;
      else c.saturations.push_back(parse_saturation(s));
    }
  } else if (key == "trials") {
    c.trials = std::stoi(v);
  } else if (key == "pair_sets") {
    c.pair_sets = std::stoi(v);
  } else if (key == "m_fractions") {
    c.m_fractions = doubles();
  } else if (key == "baseline") {
    c.baseline = parse_bool(v);
  } else if (key == "diagnostics") {
    c.diagnostics = parse_bool(v);
  } else if (key == "base_seed") {
    c.base_seed = std::stoull(v);
  } else if (key == "output") {
    c.output_path = v;
  } else if (key == "workers") {
    c.workers = std::stoi(v);
  } else if (key == "rtol") {
    c.controls.ode.rtol = parse_double(v);
  } else if (key == "atol") {
    c.controls.ode.atol = parse_double(v);
  } else if (key == "steady_tol") {
    c.controls.ode.steady_tol = parse_double(v);
  } else if (key == "t_max") {
    c.controls.ode.t_max = parse_double(v);
  } else if (key == "newton_tol") {
    c.controls.newton_tol = parse_double(v);
  } else if (key == "stall_residual") {
    c.controls.ode.stall_residual = parse_double(v);
  } else if (key == "stall_steps") {
    c.controls.ode.stall_steps = std::stol(v);
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  return parse_config(in);
}

std::uint64_t trial_seed(const ExperimentConfig& config, const SbmParams& point,
                         long trial) {
  std::string key(to_string(config.preset));
  key += '|' + std::to_string(point.n1) + '|' + std::to_string(point.n2);
  for (double l : {point.ell(0, 0), point.ell(0, 1), point.ell(1, 1)})
    key += '|' + format_double(l);
  key += '|' + std::to_string(trial);
  return config.base_seed ^ fnv1a(key);
}

ModelParams model_for(const ExperimentConfig& config, const SbmParams& point,
                      double u_offset, Saturation saturation, double* u_bar) {
  ModelParams p;
  p.d = config.d;
  p.alpha = config.alpha;
  p.gamma = config.influence / max_expected_degree(point);
  p.saturation = saturation;
  const SpectrumBounds bounds = expected_adjacency_extremes(point);
  const double threshold = bifurcation_threshold(bounds.lambda_min, bounds.lambda_max, p);
  p.u = threshold + u_offset;
  if (u_bar) *u_bar = threshold;
  return p;
}

int default_worker_count() {
  if (const char* env = std::getenv("NODSBM_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct Job {
  SbmParams point;
  long graph_trial = 0;
  long pair_set = 0;  // Multi only
};

TrialRecord base_record(const ExperimentConfig& c, const SbmParams& point,
                        const ModelParams& p, double u_bar, double offset) {
  TrialRecord r;
  r.preset = std::string(to_string(c.preset));
  r.n = point.n();
  r.n1 = point.n1;
  r.n2 = point.n2;
  r.ell11 = point.ell(0, 0);
  r.ell12 = point.ell(0, 1);
  r.ell22 = point.ell(1, 1);
  r.delta = max_expected_degree(point);
  r.gamma = p.gamma;
  r.u_bar = u_bar;
  r.u_offset = offset;
  r.u = p.u;
  r.saturation = std::string(to_string(p.saturation));
  return r;
}

std::uint64_t variant_stream(std::string_view tag, Saturation s, double offset,
                             long extra = 0) {
  std::string key(tag);
  key += '|';
  key += to_string(s);
  key += '|' + format_double(offset) + '|' + std::to_string(extra);
  return fnv1a(key);
}

std::vector<TrialRecord> run_single_job(const ExperimentConfig& c, const Job& job) {
  std::vector<TrialRecord> out;
  const std::uint64_t seed = trial_seed(c, job.point, job.graph_trial);
  const Graph graph = sample_sbm(job.point, seed);
  const bool connected = is_connected(graph);
  const Labels truth = graph.labels();

  std::optional<double> conc;
  std::optional<EigenPairs> spectrum;
  if (c.diagnostics) {
    conc = concentration_ratio(graph, job.point);
    spectrum = sym_eig(graph.dense());
  }

  const Vec zero = Vec::Zero(graph.n);
  for (Saturation sat : c.saturations) {
    for (double offset : c.u_offsets) {
      double u_bar = 0.0;
      const ModelParams p = model_for(c, job.point, offset, sat, &u_bar);
      TrialRecord r = base_record(c, job.point, p, u_bar, offset);
      r.trial = job.graph_trial;
      r.seed = seed;
      r.method = std::string(to_string(DetectionMethod::SingleEquilibrium));
      r.connected = connected;
      r.concentration_ratio = conc;

      const CounterStream init(seed, variant_stream("init", sat, offset));
      Vec x0(graph.n);
      for (int i = 0; i < graph.n; ++i) x0(i) = (2.0 * init.uniform(i) - 1.0) * 1e-3;

      try {
        const Equilibrium eq = integrate_to_equilibrium(x0, p, graph, zero, c.controls);
        r.residual = eq.residual_inf;
        if (!eq.converged) {
          r.status = "nonconverged";
        } else {
          const CommunityEstimate est = detect_single(eq);
          r.accuracy = accuracy(truth, est.labels);
          if (est.degenerate) r.status = "degenerate";
          if (spectrum) r.alignment = alignment_check(eq, *spectrum, p);
        }
      } catch (const NeutralState&) {
        r.status = "neutral_state";
      } catch (const SingularJacobian&) {
        r.status = "singular_jacobian";
      } catch (const std::exception&) {
        r.status = "error";
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<TrialRecord> run_multi_job(const ExperimentConfig& c, const Job& job) {
  std::vector<TrialRecord> out;
  const std::uint64_t seed = trial_seed(c, job.point, job.graph_trial);
  const Graph graph = sample_sbm(job.point, seed);
  const bool connected = is_connected(graph);
  const Labels truth = graph.labels();
  const int n = graph.n;

  std::vector<int> ms;
  for (double f : c.m_fractions) ms.push_back(std::max(1, static_cast<int>(std::lround(f * n))));
  const int m_max = *std::max_element(ms.begin(), ms.end());
  const std::optional<double> conc =
      c.diagnostics ? std::optional<double>(concentration_ratio(graph, job.point))
                    : std::nullopt;

  for (Saturation sat : c.saturations) {
    for (double offset : c.u_offsets) {
      double u_bar = 0.0;
      const ModelParams p = model_for(c, job.point, offset, sat, &u_bar);
      const CounterStream inputs(seed, variant_stream("inputs", sat, offset, job.pair_set));

      PairSet full{Mat(n, m_max), Mat(n, m_max), p};
      double worst_residual = 0.0;
      int unconverged = 0;
      const Vec x0 = Vec::Zero(n);
      for (int k = 0; k < m_max; ++k) {
        Vec b(n);
        for (int i = 0; i < n; ++i)
          b(i) = inputs.normal(static_cast<std::uint64_t>(k) * n + i);
        const Equilibrium eq = integrate_to_equilibrium(x0, p, graph, b, c.controls);
        full.X.col(k) = eq.state;
        full.B.col(k) = b;
        worst_residual = std::max(worst_residual, eq.residual_inf);
        unconverged += !eq.converged;
      }

      const long trial = job.graph_trial * c.pair_sets + job.pair_set;
      for (int m : ms) {
        const PairSet pairs{full.X.leftCols(m), full.B.leftCols(m), p};
        std::vector<DetectionMethod> methods{DetectionMethod::MultiEquilibria};
        if (c.baseline && m >= 2) methods.push_back(DetectionMethod::CovarianceSpectral);
        for (auto method : methods) {
          TrialRecord r = base_record(c, job.point, p, u_bar, offset);
          r.trial = trial;
          r.seed = seed;
          r.method = std::string(to_string(method));
          r.m = m;
          r.connected = connected;
          r.residual = worst_residual;
          r.concentration_ratio = conc;
          if (unconverged) {
            r.status = "nonconverged";
            out.push_back(std::move(r));
            continue;
          }
          try {
            const CommunityEstimate est = method == DetectionMethod::MultiEquilibria
                                              ? detect_multi(pairs)
                                              : detect_covariance_baseline(pairs.X);
            r.accuracy = accuracy(truth, est.labels);
            r.eigen_gap = est.eigen_gap;
            r.sigma_min = est.sigma_min;
            if (est.degenerate) r.status = "degenerate";
          } catch (const DomainError&) {
            r.status = "domain_error";
            r.accuracy = 0.5;
          } catch (const std::exception&) {
            r.status = "error";
            r.accuracy = 0.5;
          }
          out.push_back(std::move(r));
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<TrialRecord> run_experiment(const ExperimentConfig& config,
                                        const ProgressFn& progress) {
  config.validate();
  std::vector<Job> jobs;
  for (const auto& point : config.graph_points()) {
    for (long t = 0; t < config.trials; ++t) {
      if (config.mode == Mode::Multi) {
        for (long p = 0; p < config.pair_sets; ++p) jobs.push_back({point, t, p});
      } else {
        jobs.push_back({point, t, 0});
      }
    }
  }

  std::vector<std::vector<TrialRecord>> results(jobs.size());
  std::atomic<std::size_t> next{0}, done{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      results[i] = config.mode == Mode::Multi ? run_multi_job(config, jobs[i])
                                              : run_single_job(config, jobs[i]);
      const std::size_t finished = ++done;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(finished, jobs.size());
      }
    }
  };
  const int workers = std::min<int>(config.workers > 0 ? config.workers : default_worker_count(),
                                    static_cast<int>(jobs.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  std::vector<TrialRecord> records;
  for (auto& chunk : results)
    for (auto& r : chunk) records.push_back(std::move(r));
  return records;
}

const std::vector<std::string>& trial_record_header() {
  static const std::vector<std::string> header{
      "preset", "trial", "seed", "n", "n1", "n2", "ell11", "ell12", "ell22",
      "delta", "gamma", "u_bar", "u_offset", "u", "saturation", "method", "m",
      "accuracy", "status", "connected", "residual", "eigen_gap", "sigma_min",
      "concentration_ratio", "alignment"};
  return header;
}

std::vector<std::string> to_fields(const TrialRecord& r) {
  auto opt = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
  };
  return {r.preset, std::to_string(r.trial), std::to_string(r.seed),
          std::to_string(r.n), std::to_string(r.n1), std::to_string(r.n2),
          format_double(r.ell11), format_double(r.ell12), format_double(r.ell22),
          format_double(r.delta), format_double(r.gamma), format_double(r.u_bar),
          format_double(r.u_offset), format_double(r.u), r.saturation, r.method,
          std::to_string(r.m), format_double(r.accuracy), r.status,
          r.connected ? "1" : "0", format_double(r.residual), opt(r.eigen_gap),
          opt(r.sigma_min), opt(r.concentration_ratio), opt(r.alignment)};
}

TrialRecord from_fields(const std::vector<std::string>& f) {
  if (f.size() != trial_record_header().size())
    throw std::invalid_argument("trial record: expected " +
                                std::to_string(trial_record_header().size()) +
                                " fields, got " + std::to_string(f.size()));
  auto opt = [](const std::string& s) {
    return s.empty() ? std::nullopt : std::optional<double>(parse_double(s));
  };
  TrialRecord r;
  r.preset = f[0];
  r.trial = std::stol(f[1]);
  r.seed = std::stoull(f[2]);
  r.n = std::stoi(f[3]);
  r.n1 = std::stoi(f[4]);
  r.n2 = std::stoi(f[5]);
  r.ell11 = parse_double(f[6]);
  r.ell12 = parse_double(f[7]);
  r.ell22 = parse_double(f[8]);
  r.delta = parse_double(f[9]);
  r.gamma = parse_double(f[10]);
  r.u_bar = parse_double(f[11]);
  r.u_offset = parse_double(f[12]);
  r.u = parse_double(f[13]);
  r.saturation = f[14];
  r.method = f[15];
  r.m = std::stoi(f[16]);
  r.accuracy = parse_double(f[17]);
  r.status = f[18];
  r.connected = f[19] == "1";
  r.residual = parse_double(f[20]);
  r.eigen_gap = opt(f[21]);
  r.sigma_min = opt(f[22]);
  r.concentration_ratio = opt(f[23]);
  r.alignment = opt(f[24]);
  return r;
}

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records,
                       const std::string& comment) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  out << "# nodsbm";
  if (!comment.empty()) out << ' ' << comment;
  out << " generated=" << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ") << '\n';
  write_csv_row(out, trial_record_header());
  for (const auto& r : records) write_csv_row(out, to_fields(r));
}

std::vector<TrialRecord> read_records_csv(std::istream& in) {
  std::vector<std::string> f;
  std::vector<TrialRecord> out;
  if (!read_csv_row(in, f)) return out;
  if (f != trial_record_header())
    throw std::invalid_argument("records CSV: unexpected header");
  while (read_csv_row(in, f)) {
    if (f.size() == 1 && f[0].empty()) continue;
    out.push_back(from_fields(f));
  }
  return out;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw EmptyInput("summarize: no records");
  std::vector<SummaryRow> rows;
  std::vector<std::vector<double>> values;
  std::map<std::string, std::size_t> index;
  for (const auto& r : records) {
    std::string key = r.preset + '|' + std::to_string(r.n) + '|' + std::to_string(r.n1) +
                      '|' + std::to_string(r.n2) + '|' + format_double(r.ell11) + '|' +
                      format_double(r.ell12) + '|' + format_double(r.ell22) + '|' +
                      format_double(r.u_offset) + '|' + r.saturation + '|' + r.method +
                      '|' + std::to_string(r.m);
    auto [it, inserted] = index.try_emplace(key, rows.size());
    if (inserted) {
      SummaryRow s;
      s.preset = r.preset;
      s.n = r.n, s.n1 = r.n1, s.n2 = r.n2;
      s.ell11 = r.ell11, s.ell12 = r.ell12, s.ell22 = r.ell22;
      s.u_offset = r.u_offset;
      s.saturation = r.saturation;
      s.method = r.method;
      s.m = r.m;
      rows.push_back(s);
      values.emplace_back();
    }
    values[it->second].push_back(r.accuracy);
    rows[it->second].failures += r.status != "ok";
  }
  for (std::size_t g = 0; g < rows.size(); ++g) {
    const auto& v = values[g];
    const double k = static_cast<double>(v.size());
    double mean = 0.0;
    for (double a : v) mean += a;
    mean /= k;
    double ss = 0.0;
    for (double a : v) ss += (a - mean) * (a - mean);
    rows[g].count = static_cast<long>(v.size());
    rows[g].mean = mean;
    rows[g].stderr_ = v.size() > 1 ? std::sqrt(ss / (k - 1.0)) / std::sqrt(k) : 0.0;
  }
  return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  write_csv_row(out, {"preset", "n", "n1", "n2", "ell11", "ell12", "ell22", "u_offset",
                      "saturation", "method", "m", "count", "failures", "mean_accuracy",
                      "stderr"});
  for (const auto& s : rows)
    write_csv_row(out, {s.preset, std::to_string(s.n), std::to_string(s.n1),
                        std::to_string(s.n2), format_double(s.ell11),
                        format_double(s.ell12), format_double(s.ell22),
                        format_double(s.u_offset), s.saturation, s.method,
                        std::to_string(s.m), std::to_string(s.count),
                        std::to_string(s.failures), format_double(s.mean),
                        format_double(s.stderr_)});
}

}  // namespace nodsbm
