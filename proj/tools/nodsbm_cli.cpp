// nodsbm command-line driver.
//
//   nodsbm sample-graph   --n1 500 --n2 25 --ell11 0.05 --ell12 0.1 --ell22 0.5 -o g.txt
//   nodsbm simulate       --graph g.txt --ell11 .. --u-offset 0.01 -o eq.csv
//   nodsbm detect-single  --equilibria eq.csv --n1 500
//   nodsbm detect-multi   --equilibria eq.csv --inputs b.csv --n1 50
//   nodsbm experiment     unequal_sbm --set trials=50 -o records.csv
//   nodsbm summarize      records.csv
//
// Model parameters for detect-multi default to the `# d=.. u=..` comment that
// simulate writes into the equilibria file.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "nodsbm/detect.hpp"
#include "nodsbm/dynamics.hpp"
#include "nodsbm/experiment.hpp"
#include "nodsbm/graphgen.hpp"
#include "nodsbm/io.hpp"
#include "nodsbm/rng.hpp"
#include "nodsbm/theory.hpp"

using namespace nodsbm;

namespace {

// Writes to `path`, or stdout when empty / "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  return in;
}

struct ModelFlags {
  std::optional<double> d, u, alpha, gamma;
  std::optional<std::string> saturation;

  void add(CLI::App* cmd) {
    cmd->add_option("--d", d, "damping (default 1)");
    cmd->add_option("--u", u, "attention");
    cmd->add_option("--alpha", alpha, "self weight (default 1)");
    cmd->add_option("--gamma", gamma, "influence weight");
    cmd->add_option("--saturation", saturation, "tanh | algebraic1 | algebraic2 | erf");
  }
  void apply(ModelParams& p) const {
    if (d) p.d = *d;
    if (u) p.u = *u;
    if (alpha) p.alpha = *alpha;
    if (gamma) p.gamma = *gamma;
    if (saturation) p.saturation = parse_saturation(*saturation);
  }
};

Labels truth_labels(int n, int n1) {
  Labels l(n);
  for (int i = 0; i < n; ++i) l[i] = i < n1 ? 1 : 2;
  return l;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community detection from equilibria of saturating opinion dynamics"};
  app.require_subcommand(1);

  // sample-graph
  auto* sample = app.add_subcommand("sample-graph", "sample a two-community SBM");
  int g_n1 = 100, g_n2 = 100;
  double g_l11 = 0.3, g_l12 = 0.05, g_l22 = 0.3;
  std::uint64_t g_seed = 1;
  std::string g_out;
  sample->add_option("--n1", g_n1, "community-1 size");
  sample->add_option("--n2", g_n2, "community-2 size");
  sample->add_option("--ell11", g_l11);
  sample->add_option("--ell12", g_l12);
  sample->add_option("--ell22", g_l22);
  sample->add_option("--seed", g_seed);
  sample->add_option("-o,--output", g_out, "edge list path (default stdout)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "integrate the model to equilibrium");
  std::string s_graph, s_out, s_inputs_out;
  std::optional<double> s_l11, s_l12, s_l22, s_offset;
  std::string s_influence = "positive";
  int s_pairs = 0;
  std::uint64_t s_seed = 1;
  ModelFlags s_model;
  sim->add_option("--graph", s_graph, "edge list")->required();
  sim->add_option("--ell11", s_l11, "SBM probabilities; set gamma = +-1/Delta and u_bar");
  sim->add_option("--ell12", s_l12);
  sim->add_option("--ell22", s_l22);
  sim->add_option("--influence", s_influence, "positive | negative (with --ell*)");
  sim->add_option("--u-offset", s_offset, "u = u_bar + offset (with --ell*)");
  sim->add_option("--pairs", s_pairs, "m Gaussian-input pairs from x0 = 0 (0: one "
                                     "unforced equilibrium from a small random state)");
  sim->add_option("--seed", s_seed);
  sim->add_option("-o,--output", s_out, "equilibria CSV (default stdout)");
  sim->add_option("--inputs-out", s_inputs_out, "inputs CSV for --pairs");
  s_model.add(sim);

  // detect-single
  auto* dsingle = app.add_subcommand("detect-single", "two-means on each equilibrium");
  std::string ds_eq, ds_out;
  std::optional<int> ds_n1;
  dsingle->add_option("--equilibria", ds_eq)->required();
  dsingle->add_option("--n1", ds_n1, "ground-truth community-1 size for accuracy");
  dsingle->add_option("-o,--output", ds_out);

  // detect-multi
  auto* dmulti = app.add_subcommand("detect-multi", "fixed-point inversion + spectral split");
  std::string dm_eq, dm_inputs, dm_out;
  std::optional<int> dm_n1;
  bool dm_baseline = false, dm_clamp = false;
  ModelFlags dm_model;
  dmulti->add_option("--equilibria", dm_eq)->required();
  dmulti->add_option("--inputs", dm_inputs)->required();
  dmulti->add_option("--n1", dm_n1);
  dmulti->add_flag("--baseline", dm_baseline, "also run the covariance baseline");
  dmulti->add_flag("--clamp", dm_clamp, "clamp out-of-range inversion arguments");
  dmulti->add_option("-o,--output", dm_out);
  dm_model.add(dmulti);

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a preset or config-file sweep");
  std::string e_what, e_out, e_summary;
  std::vector<std::string> e_sets;
  std::optional<int> e_workers;
  bool e_quiet = false;
  exp->add_option("preset_or_config", e_what,
                  "unequal_sbm | saturation_sweep | ssbm_positive | ssbm_negative | "
                  "multi_pairs | custom | path to key=value file")
      ->required();
  exp->add_option("--set", e_sets, "key=value override (repeatable)");
  exp->add_option("-o,--output", e_out, "records CSV (default: config 'output' or stdout)");
  exp->add_option("--summary", e_summary, "also write the summary table here");
  exp->add_option("--workers", e_workers, "worker threads (default NODSBM_WORKERS or cores)");
  exp->add_flag("-q,--quiet", e_quiet, "no progress on stderr");

  // summarize
  auto* summ = app.add_subcommand("summarize", "mean/stderr accuracy per parameter point");
  std::string su_in, su_out;
  summ->add_option("records", su_in)->required();
  summ->add_option("-o,--output", su_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) {
      const auto params = SbmParams::make(g_n1, g_n2, g_l11, g_l12, g_l22);
      const Graph g = sample_sbm(params, g_seed);
      Output out(g_out);
      write_edge_list(out.stream(), g);
      std::cerr << "n=" << g.n << " edges=" << g.edge_count()
                << " connected=" << (is_connected(g) ? "yes" : "no") << '\n';
    } else if (*sim) {
      auto in = open_input(s_graph);
      const Graph g = read_edge_list(in);
      ModelParams p;
      if (s_l11 || s_l12 || s_l22) {
        if (!(s_l11 && s_l12 && s_l22))
          throw std::invalid_argument("give all of --ell11 --ell12 --ell22");
        const auto sbm = SbmParams::make(g.n1, g.n - g.n1, *s_l11, *s_l12, *s_l22);
        ExperimentConfig c;
        c.influence = s_influence == "negative" ? -1 : 1;
        if (s_model.d) c.d = *s_model.d;
        if (s_model.alpha) c.alpha = *s_model.alpha;
        double u_bar = 0.0;
        p = model_for(c, sbm, s_offset.value_or(0.01), Saturation::TanH, &u_bar);
        std::cerr << "Delta=" << max_expected_degree(sbm) << " u_bar=" << u_bar << '\n';
      } else if (s_offset) {
        throw std::invalid_argument("--u-offset needs --ell11 --ell12 --ell22");
      }
      s_model.apply(p);
      p.validate();

      std::vector<Equilibrium> rows;
      Mat inputs(g.n, s_pairs);
      if (s_pairs > 0) {
        const CounterStream rng(s_seed, fnv1a("cli-inputs"));
        for (int k = 0; k < s_pairs; ++k) {
          for (int i = 0; i < g.n; ++i)
            inputs(i, k) = rng.normal(static_cast<std::uint64_t>(k) * g.n + i);
          rows.push_back(integrate_to_equilibrium(Vec::Zero(g.n), p, g, inputs.col(k)));
        }
      } else {
        const CounterStream rng(s_seed, fnv1a("cli-init"));
        Vec x0(g.n);
        for (int i = 0; i < g.n; ++i) x0(i) = (2.0 * rng.uniform(i) - 1.0) * 1e-3;
        rows.push_back(integrate_to_equilibrium(x0, p, g, Vec::Zero(g.n)));
      }
      Output out(s_out);
      write_equilibria_csv(out.stream(), rows, &p);
      if (s_pairs > 0) {
        if (s_inputs_out.empty())
          throw std::invalid_argument("--pairs needs --inputs-out");
        Output bout(s_inputs_out);
        write_inputs_csv(bout.stream(), inputs);
      }
    } else if (*dsingle) {
      auto in = open_input(ds_eq);
      const auto table = read_equilibria_csv(in);
      Output out(ds_out);
      write_estimates_header(out.stream());
      for (std::size_t k = 0; k < table.rows.size(); ++k) {
        const auto& eq = table.rows[k];
        try {
          const auto est = detect_single(eq);
          const double acc =
              ds_n1 ? accuracy(truth_labels(static_cast<int>(eq.state.size()), *ds_n1), est.labels)
                    : std::numeric_limits<double>::quiet_NaN();
          write_estimate_row(out.stream(), table.trial[k], est, acc);
        } catch (const std::exception& e) {
          std::cerr << "trial " << table.trial[k] << ": " << e.what() << '\n';
        }
      }
    } else if (*dmulti) {
      auto in = open_input(dm_eq);
      const auto table = read_equilibria_csv(in);
      auto bin = open_input(dm_inputs);
      const Mat b = read_inputs_csv(bin);
      if (table.rows.empty()) throw std::invalid_argument("no equilibria");
      const auto n = table.rows.front().state.size();
      PairSet pairs{Mat(n, table.rows.size()), b, table.params};
      for (std::size_t k = 0; k < table.rows.size(); ++k) pairs.X.col(k) = table.rows[k].state;
      if (!table.has_params && !(dm_model.u && dm_model.gamma))
        throw std::invalid_argument("model parameters missing: pass --u and --gamma");
      dm_model.apply(pairs.params);
      const auto policy = dm_clamp ? RangePolicy::Clamp : RangePolicy::Strict;
      Output out(dm_out);
      write_estimates_header(out.stream());
      auto acc_of = [&](const CommunityEstimate& est) {
        return dm_n1 ? accuracy(truth_labels(static_cast<int>(n), *dm_n1), est.labels)
                     : std::numeric_limits<double>::quiet_NaN();
      };
      const auto est = detect_multi(pairs, policy);
      write_estimate_row(out.stream(), 0, est, acc_of(est));
      if (dm_baseline) {
        const auto base = detect_covariance_baseline(pairs.X);
        write_estimate_row(out.stream(), 0, base, acc_of(base));
      }
    } else if (*exp) {
      ExperimentConfig config;
      if (e_what.find('/') == std::string::npos && e_what.find('.') == std::string::npos)
        config = preset_config(parse_preset(e_what));
      else
        config = load_config_file(e_what);
      for (const auto& kv : e_sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--set needs key=value");
        apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
      }
      if (e_workers) config.workers = *e_workers;
      if (!e_out.empty()) config.output_path = e_out;
      ProgressFn progress;
      if (!e_quiet)
        progress = [](std::size_t done, std::size_t total) {
          std::cerr << "\r" << done << "/" << total << " jobs" << std::flush;
          if (done == total) std::cerr << '\n';
        };
      const auto records = run_experiment(config, progress);
      Output out(config.output_path);
      write_records_csv(out.stream(), records,
                        "experiment preset=" + std::string(to_string(config.preset)));
      if (!e_summary.empty()) {
        Output sout(e_summary);
        write_summary_csv(sout.stream(), summarize(records));
      }
    } else if (*summ) {
      auto in = open_input(su_in);
      const auto records = read_records_csv(in);
      Output out(su_out);
      write_summary_csv(out.stream(), summarize(records));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
