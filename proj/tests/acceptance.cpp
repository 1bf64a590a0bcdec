// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "nodsbm/detect.hpp"
#include "nodsbm/experiment.hpp"
#include "nodsbm/spectral.hpp"
#include "nodsbm/theory.hpp"
#include "properties.hpp"

using namespace nodsbm;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

ExperimentConfig configure(Preset preset,
                           const std::vector<std::pair<std::string, std::string>>& settings) {
  auto c = preset_config(preset);
  for (const auto& [k, v] : settings) apply_setting(c, k, v);
  c.validate();
  return c;
}

// Mean accuracy keyed by an arbitrary projection of each row.
template <class Key>
std::map<Key, double> mean_by(const std::vector<TrialRecord>& rows,
                              const std::function<Key(const TrialRecord&)>& key,
                              const std::function<bool(const TrialRecord&)>& keep = {}) {
  std::map<Key, double> sum;
  std::map<Key, int> count;
  for (const auto& r : rows) {
    if (keep && !keep(r)) continue;
    sum[key(r)] += r.accuracy;
    ++count[key(r)];
  }
  for (auto& [k, v] : sum) v /= count[k];
  return sum;
}

int failures(const std::vector<TrialRecord>& rows) {
  int f = 0;
  for (const auto& r : rows) f += r.status != "ok";
  return f;
}

// Shared by criteria 1 and 2: n1 in {100, 300, 500}, offsets 0.01 and 0.04.
std::vector<TrialRecord> unequal_rows() {
  static const auto rows = run_experiment(configure(
      Preset::UnequalSBM, {{"sizes", "100,300,500"}, {"offsets", "0.01,0.04"}, {"trials", "20"}}));
  return rows;
}

Verdict criterion_1() {
  Verdict v;
  const auto rows = unequal_rows();
  const auto by_n = mean_by<int>(rows, [](const TrialRecord& r) { return r.n1; },
                                 [](const TrialRecord& r) { return r.u_offset == 0.01; });
  double previous = 0.0;
  for (const auto& [n1, mean] : by_n) {
    v.detail << " n1=" << n1 << ":" << fmt(mean);
    v.require(mean >= previous - 0.02, "nondecreasing at n1=" + std::to_string(n1));
    previous = mean;
  }
  v.require(by_n.at(500) >= 0.9, "accuracy at n1=500 >= 0.9");
  v.detail << " failed_rows=" << failures(rows);
  return v;
}

Verdict criterion_2() {
  Verdict v;
  const auto by_offset =
      mean_by<double>(unequal_rows(), [](const TrialRecord& r) { return r.u_offset; },
                      [](const TrialRecord& r) { return r.n1 == 500; });
  const double a = by_offset.at(0.01), b = by_offset.at(0.04);
  v.detail << " offset0.01:" << fmt(a) << " offset0.04:" << fmt(b);
  v.require(a >= b - 0.02, "offset 0.01 >= offset 0.04 - 0.02");
  return v;
}

Verdict criterion_3() {
  Verdict v;
  const auto rows = run_experiment(configure(
      Preset::SaturationSweep, {{"sizes", "500"}, {"offsets", "0.04"}, {"trials", "20"}}));
  const auto by_sat =
      mean_by<std::string>(rows, [](const TrialRecord& r) { return r.saturation; });
  for (const auto& [s, mean] : by_sat) v.detail << " " << s << ":" << fmt(mean);
  const double top = std::min(by_sat.at("tanh"), by_sat.at("erf"));
  const double mid = by_sat.at("algebraic2"), low = by_sat.at("algebraic1");
  v.require(top >= mid - 0.03, "tanh/erf >= algebraic2 - 0.03");
  v.require(mid >= low - 0.03, "algebraic2 >= algebraic1 - 0.03");
  v.detail << " failed_rows=" << failures(rows);
  return v;
}

Verdict criterion_4() {
  Verdict v;
  const auto rows = run_experiment(configure(
      Preset::SSBMPositive,
      {{"sizes", "200"}, {"offsets", "0.01,0.02,0.03,0.04"}, {"trials", "20"}}));
  double mean = 0.0;
  for (const auto& r : rows) mean += r.accuracy / rows.size();
  v.detail << " mean:" << fmt(mean) << " rows=" << rows.size()
           << " failed_rows=" << failures(rows);
  v.require(mean >= 0.5 && mean <= 0.65, "mean in [0.5, 0.65]");
  return v;
}

Verdict criterion_5() {
  Verdict v;
  const auto rows = run_experiment(configure(
      Preset::SSBMNegative, {{"sizes", "200,500,1000"}, {"offsets", "0.01"}, {"trials", "20"}}));
  const auto by_n = mean_by<int>(rows, [](const TrialRecord& r) { return r.n; });
  double previous = -1.0;
  for (const auto& [n, mean] : by_n) {
    v.detail << " n=" << n << ":" << fmt(mean);
    v.require(mean > previous, "increasing at n=" + std::to_string(n));
    previous = mean;
  }
  v.require(by_n.at(1000) >= 0.9, "accuracy at n=1000 >= 0.9");
  v.detail << " failed_rows=" << failures(rows);
  return v;
}

Verdict criterion_6() {
  Verdict v;
  const auto rows = run_experiment(
      configure(Preset::MultiPairs, {{"sizes", "100"}, {"m_fractions", "0.1,0.5,1"}}));
  const auto multi = mean_by<int>(rows, [](const TrialRecord& r) { return r.m; },
                                  [](const TrialRecord& r) { return r.method == "multi"; });
  const auto base = mean_by<int>(rows, [](const TrialRecord& r) { return r.m; },
                                 [](const TrialRecord& r) { return r.method == "covariance"; });
  double previous = 0.0;
  for (const auto& [m, mean] : multi) {
    v.detail << " m=" << m << ":" << fmt(mean) << "/cov:" << fmt(base.at(m));
    v.require(mean >= previous - 0.02, "nondecreasing at m=" + std::to_string(m));
    v.require(mean > base.at(m), "multi > covariance at m=" + std::to_string(m));
    v.require(base.at(m) < 0.65, "covariance < 0.65 at m=" + std::to_string(m));
    previous = mean;
  }
  v.require(multi.at(100) >= 0.9, "accuracy at m=100 >= 0.9");
  v.detail << " failed_rows=" << failures(rows);
  return v;
}

Verdict criterion_7() {
  Verdict v;
  const auto sbm = SbmParams::make(14, 12, 0.4, 0.15, 0.35);
  const auto ext = expected_adjacency_extremes(sbm);
  ModelParams p;
  p.gamma = 1.0 / max_expected_degree(sbm);
  p.u = bifurcation_threshold(ext.lambda_min, ext.lambda_max, p) + 0.01;
  int exact = 0, full_rank = 0, trials = 0;
  double worst = 0.0;
  std::uint64_t seed = 1;
  while (trials < 20) {
    const Graph g = sample_sbm(sbm, seed++);
    if (!is_connected(g)) continue;
    ++trials;
    const auto pairs = fixtures::gaussian_pairs(g, p, g.n, 4000 + seed);
    const Mat a_hat = estimate_adjacency(pairs.X, invert_pairs(pairs));
    exact += a_hat.array().round().matrix() == g.dense();
    const Vec s = singular_values(pairs.X);
    if (s(s.size() - 1) > 1e-8 * s(0)) {
      ++full_rank;
      worst = std::max(worst, (a_hat - g.dense()).cwiseAbs().maxCoeff());
    }
  }
  v.detail << " exact=" << exact << "/" << trials << " full_rank=" << full_rank
           << " max_err=" << worst;
  v.require(exact >= 0.95 * trials, ">= 95% exact after rounding");
  v.require(worst <= 1e-6, "max |A_hat - A| <= 1e-6 on full-rank trials");
  return v;
}

Verdict criterion_8() {
  Verdict v;
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> size(1, 120);
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  double worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const auto params = SbmParams::make(size(rng), size(rng), prob(rng), prob(rng), prob(rng));
    const auto s = expected_spectrum(params);
    const auto e = sym_eig(corrected_expected_matrix(params));
    worst = std::max(worst, std::fabs(s.lambda_max_bar - e.largest(0)));
    worst = std::max(worst, (e.values.array() - s.lambda_minus_bar).abs().minCoeff());
  }
  v.detail << " spectrum_err=" << worst;
  v.require(worst <= 1e-10, "closed forms within 1e-10");

  const auto ssbm = SbmParams::symmetric(300, 0.3, 0.05);
  int holds = 0;
  for (std::uint64_t s = 0; s < 50; ++s) holds += davis_kahan_check(sample_sbm(ssbm, 800 + s), ssbm).holds;
  v.detail << " davis_kahan=" << holds << "/50";
  v.require(holds == 50, "Davis-Kahan on 50/50");

  bool exact = true;
  for (int n : {2, 10, 200, 1000})
    for (double ls : {0.3, 0.005, 1.0})
      for (double ld : {0.05, 0.03, 0.0}) {
        const auto s = expected_spectrum(SbmParams::symmetric(n, ls, ld));
        exact = exact && s.lambda_max_bar == (ls + ld) * n / 2 &&
                s.lambda_minus_bar == (ls - ld) * n / 2;
      }
  v.require(exact, "SSBM closed forms exact");
  return v;
}

Verdict criterion_9() {
  Verdict v;
  const auto s = fixtures::alignment_setup();
  double prev_align = 2.0, prev_c = 0.0;
  bool first = true;
  for (double offset : {0.005, 0.01, 0.02, 0.04}) {
    const auto eq = fixtures::equilibrium_at(s, offset, 1);
    if (!eq.converged) {
      v.require(false, "converged at offset " + fmt(offset));
      continue;
    }
    const double a = alignment_check(eq, s.spectrum, s.params);
    const double c = std::fabs(c_of_u(eq, s.spectrum));
    v.detail << " offset" << offset << ":cos=" << fmt(a) << ",|c|=" << fmt(c);
    if (first) v.require(a >= 0.99, "cosine >= 0.99 at offset 0.005");
    v.require(a < prev_align, "cosine strictly decreasing");
    v.require(c > prev_c, "|c(u)| strictly decreasing toward the threshold");
    prev_align = a, prev_c = c, first = false;
  }
  return v;
}

Verdict criterion_10() {
  Verdict v;
  const std::vector<std::pair<std::string, std::function<props::Result()>>> suites{
      {"oddness", props::saturation_oddness},
      {"unit_slope", props::saturation_unit_slope},
      {"curvature", props::saturation_curvature_sign},
      {"round_trip_z20", [] { return props::saturation_round_trip(20.0); }},
      {"range_round_trip", props::saturation_range_round_trip},
      {"flip_invariance", [] { return props::accuracy_flip_invariance(2000); }},
      {"lower_bound", [] { return props::accuracy_lower_bound(2000); }},
      {"kmeans_brute_force", [] { return props::kmeans_brute_force(600); }},
      {"below_threshold", props::below_threshold_stability},
      {"above_same_sign", props::above_threshold_same_sign},
      {"above_mixed_sign", props::above_threshold_mixed_sign},
      {"csv_reproducibility", props::csv_reproducibility},
  };
  for (const auto& [name, run] : suites) {
    const auto r = run();
    v.detail << " " << name << (r.ok ? ":ok" : ":FAIL");
    if (!r.ok) v.require(false, name + ": " + r.detail);
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<std::function<Verdict()>> criteria{
      criterion_1, criterion_2, criterion_3, criterion_4,  criterion_5,
      criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i]();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " exception: " << e.what();
    }
    failed += !v.pass;
    std::printf("%s criterion %zu:%s\n", v.pass ? "PASS" : "FAIL", i + 1, v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
