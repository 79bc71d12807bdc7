/*
 * Copyright 2026 The RLBL Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "commands.h"
#include "oracles.h"
#include "rlbl/baselines.h"
#include "rlbl/evaluation.h"
#include "rlbl/ingestion.h"
#include "rlbl/scorers.h"
#include "rlbl/snapshot.h"
#include "rlbl/time_grid.h"
#include "rlbl/training.h"

namespace rlbl {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x, int precision = 4) {
  std::ostringstream os;
  os << std::setprecision(precision) << x;
  return os.str();
}

// Runs `body`, adds the wall-time limit to the verdict and prints one line.
bool criterion(int id, const char* title, double limit_seconds,
               const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(Clock::now() - start).count();
  const bool in_time = secs < limit_seconds;
  const bool pass = o.pass && in_time;
  std::cout << (pass ? "PASS" : "FAIL") << "  [" << id << "] " << title
            << ": " << o.detail << " (" << fmt(secs, 3) << " s, limit "
            << limit_seconds << " s)" << std::endl;
  return pass;
}

// --- 1: gradient oracle -----------------------------------------------------

Outcome gradient_oracle() {
  constexpr double kStep = 1e-5;
  constexpr double kTol = 1e-4;
  double worst = 0.0;
  size_t coords = 0;
  std::map<std::string, double> per_tensor;
  auto record = [&](const std::string& model, const oracle::FdErrors& e) {
    worst = std::max(worst, e.max());
    coords += e.coords;
    for (const auto& [name, err] : e.per_tensor) {
      double& slot = per_tensor[model + "." + name];
      slot = std::max(slot, err);
    }
  };
  for (auto [d, n] : {std::pair<size_t, size_t>{4, 2}, {8, 3}}) {
    for (uint64_t seed = 1; seed <= 3; ++seed) {
      std::mt19937_64 rng(seed);
      const UserSequence seq = oracle::random_sequence(0, 12, 9, 3, rng);
      TrainConfig cfg;
      cfg.negatives_per_positive = 2;
      for (size_t k : {size_t{1}, n, size_t{10}}) {
        TrainingInstance inst = make_instance(seq, k);
        const size_t pos = inst.positive;
        inst.negatives = {(pos + 1) % 9, (pos + 4) % 9};

        const RlblParams rl = oracle::random_rlbl(d, n, 1, 9, 3, seed);
        record("rlbl", oracle::fd_errors(rl, seq, inst, cfg, kStep));

        if (!oracle::all_differences_interior(seq, n, 3600.0)) {
          return {false, "fixture has a window difference on a bin boundary"};
        }
        const TaRlblParams ta =
            oracle::random_ta_rlbl(d, n, 1, 9, 3, 8, 3600.0, seed);
        record("ta-rlbl", oracle::fd_errors(ta, seq, inst, cfg, kStep));
      }
    }
  }
  std::string detail = "max rel error " + fmt(worst, 3) + " <= 1e-4 over " +
                       std::to_string(coords) + " coordinates;";
  for (const auto& [name, err] : per_tensor) {
    detail += " " + name + "=" + fmt(err, 2);
  }
  return {worst <= kTol, detail};
}

// --- 2: equivalence identities ----------------------------------------------

Outcome equivalences() {
  // (a) n = 1 and M_b = I is h_k = W h_{k-1} + C r_{v_k}, bit for bit.
  size_t mismatches = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    RlblParams p = oracle::random_rlbl(4, 1, 1, 6, 3, seed);
    for (Mat& m : p.core.M) m = Mat::Identity(4);
    std::mt19937_64 rng(seed);
    const UserSequence seq = oracle::random_sequence(0, 12, 6, 3, rng);
    const auto W = oracle::to_square(p.core.W);
    const auto C = oracle::to_square(p.C[0]);
    oracle::Dense h = oracle::to_dense(p.core.u0);
    for (size_t k = 1; k <= seq.size(); ++k) {
      h = oracle::add(
          oracle::mul(W, h),
          oracle::mul(C, oracle::to_dense(p.core.item_vecs[seq.event(k).item_id])));
      const Vec got = hidden_at(p, seq, k).h;
      for (size_t j = 0; j < 4; ++j) mismatches += got[j] != h[j];
    }
  }

  // (b) 1.6 h lies 0.6 of the way from the 1 h to the 2 h boundary.
  TimeBinGrid grid{3600.0, 4, {}};
  std::mt19937_64 rng(5);
  for (size_t i = 0; i <= grid.n_bins; ++i) {
    grid.boundary_mats.push_back(oracle::random_mat(5, rng, 2.0));
  }
  const Mat got = interp_matrix(grid, 1.6 * 3600.0);
  double interp_err = 0.0;
  for (size_t j = 0; j < 25; ++j) {
    const double want = 0.4 * grid.boundary_mats[1].values()[j] +
                        0.6 * grid.boundary_mats[2].values()[j];
    interp_err = std::max(interp_err, std::abs(got.values()[j] - want));
  }

  // (c) Boundaries return their own matrix exactly.
  bool boundaries_exact = true;
  for (size_t i = 0; i <= grid.n_bins; ++i) {
    boundaries_exact &= interp_matrix(grid, grid.boundary(i)) ==
                        grid.boundary_mats[i];
  }

  return {mismatches == 0 && interp_err <= 1e-12 && boundaries_exact,
          "(a) " + std::to_string(mismatches) +
              " bit mismatches over 100 instances; (b) 1.6 h error " +
              fmt(interp_err, 3) + " <= 1e-12; (c) boundaries exact: " +
              (boundaries_exact ? "yes" : "no")};
}

// --- 3: metric oracle -------------------------------------------------------

Outcome metric_oracle() {
  // 10^4 instances, 354 of them ranked inside the top 5: recall@5 = 0.0354.
  const std::vector<size_t> cutoffs{5};
  double f1_sum = 0.0, recall_sum = 0.0;
  const size_t total = 10000;
  for (size_t i = 0; i < total; ++i) {
    const InstanceMetrics m = instance_metrics(i < 354 ? 1 + i % 5 : 50, cutoffs);
    f1_sum += m.f1[0];
    recall_sum += m.recall[0];
  }
  const double recall = recall_sum / total;
  const double f1 = f1_sum / total;
  const bool f1_ok = std::abs(f1 - 0.0118) <= 5e-5;

  size_t rank_mismatches = 0;
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> size_dist(1, 60);
  std::uniform_int_distribution<int> value(0, 9);  // frequent ties
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<double> s(size_t(size_dist(rng)));
    for (double& x : s) x = value(rng);
    const size_t target = size_t(rng() % s.size());
    std::vector<size_t> order(s.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return s[a] > s[b]; });
    const size_t want =
        size_t(std::find(order.begin(), order.end(), target) - order.begin()) + 1;
    rank_mismatches += rank_of_target(s, target) != want;
  }
  return {f1_ok && rank_mismatches == 0,
          "recall@5 " + fmt(recall) + " gives F1@5 " + fmt(f1, 6) +
              " (target 0.0118 +- 5e-5); " + std::to_string(rank_mismatches) +
              " rank mismatches vs full sort over 10^4 vectors"};
}

// --- 4 and 5: learning on synthetic corpora ---------------------------------

SynthSpec acceptance_corpus(uint64_t seed) {
  SynthSpec s;
  s.n_users = 200;
  s.n_items = 200;
  s.n_behaviors = 3;
  s.min_len = s.max_len = 60;
  s.seed = seed;
  return s;
}

// lr 0.01 with backtracking, 100 negatives, clip 20, lambda 0.01, 30 epochs.
RankingReport train_rlbl(const Corpus& corpus, uint64_t seed, bool identity_m) {
  RlblParams p = init_rlbl(shape_of(corpus, 8, 3), seed + 100);
  TrainConfig cfg;
  cfg.learning_rate = 0.01;
  cfg.negatives_per_positive = 100;
  cfg.grad_clip_norm = 20.0;
  cfg.lambda = 0.01;
  cfg.epochs = 30;
  cfg.rng_seed = seed;
  if (identity_m) {
    for (Mat& m : p.core.M) m = Mat::Identity(8);
    cfg.freeze_behavior_mats = true;
  }
  Rng rng(cfg.rng_seed);
  for (size_t e = 0; e < cfg.epochs; ++e) sgd_epoch(p, corpus, cfg, rng);
  return evaluate(RlblScorer(p), corpus, EvalConfig{});
}

Outcome learning_works() {
  SynthSpec s = acceptance_corpus(1);
  s.markov_strength = 0.9;
  const Corpus corpus = build_corpus(generate_synthetic(s));
  const RankingReport rl = train_rlbl(corpus, 1, false);
  const double pop = evaluate(PopScorer(train_pop(corpus)), corpus, EvalConfig{})
                         .overall.map;

  SynthSpec cyc = acceptance_corpus(1);
  cyc.markov_strength = 1.0;
  cyc.cycle_period = 2;
  const Corpus cyc_corpus = build_corpus(generate_synthetic(cyc));
  const RankingReport cyc_rl = train_rlbl(cyc_corpus, 1, false);

  const double r1 = rl.overall.recall[0];
  const bool ok = r1 >= 0.5 && rl.overall.map >= 3.0 * pop &&
                  cyc_rl.overall.recall[0] >= 0.95;
  return {ok, "strength 0.9: R@1 " + fmt(r1) + " >= 0.5, MAP " +
                  fmt(rl.overall.map) + " >= 3 x POP " + fmt(pop) +
                  "; period-2 cycle: R@1 " + fmt(cyc_rl.overall.recall[0]) +
                  " >= 0.95"};
}

Outcome behavior_benefit() {
  bool ok = true;
  std::string detail;
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    SynthSpec s = acceptance_corpus(seed);
    s.behavior_flip_prob = {1.0, 0.0, 0.0};
    const Corpus corpus = build_corpus(generate_synthetic(s));
    const double learned = train_rlbl(corpus, seed, false).overall.map;
    const double identity = train_rlbl(corpus, seed, true).overall.map;
    ok &= learned >= 1.1 * identity;
    detail += (seed > 1 ? "; " : "") + std::string("seed ") +
              std::to_string(seed) + " MAP " + fmt(learned) + " vs identity " +
              fmt(identity) + " (x" + fmt(learned / identity, 3) + ")";
  }
  return {ok, detail + "; need >= x1.1 on every seed"};
}

// --- 6: determinism ---------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "rlbl_acceptance_determinism";
  fs::remove_all(root);
  std::ostringstream sink;
  bool ok = true;
  std::string detail;
  for (const char* kind : {"rlbl", "ta-rlbl"}) {
    std::string reports[2];
    std::string snaps[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path dir = root / (std::string(kind) + std::to_string(run));
      nlohmann::json j = {
          {"data", {{"synth", {{"n_users", 80}, {"n_items", 60},
                               {"min_len", 30}, {"max_len", 40}}}}},
          {"model", {{"kind", kind}}},
          {"train", {{"epochs", 4}, {"negatives", 20}, {"grad_clip_norm", 20.0},
                     {"learning_rate", 0.01}}},
          {"output_dir", dir.string()},
          {"seed", 3},
      };
      cli::cmd_train(cli::config_from_json(j), sink);
      cli::cmd_evaluate(cli::config_from_json(j),
                        (dir / cli::kSnapshotFile).string(), sink);
      snaps[run] = slurp(dir / cli::kSnapshotFile);
      reports[run] = slurp(dir / cli::kReportTableFile) +
                     slurp(dir / cli::kReportSummaryFile);
    }
    const bool same = !snaps[0].empty() && snaps[0] == snaps[1] &&
                      reports[0] == reports[1];
    ok &= same;
    detail += std::string(detail.empty() ? "" : "; ") + kind +
              ": snapshots (" + std::to_string(snaps[0].size()) +
              " bytes) and reports " + (same ? "identical" : "DIFFER");
  }
  fs::remove_all(root);
  return {ok, detail};
}

// --- 8: time-shift invariance -----------------------------------------------

Outcome time_shift() {
  SynthSpec s;
  s.n_users = 60;
  s.n_items = 40;
  s.min_len = 20;
  s.max_len = 40;
  s.gap_mean_seconds = 5400.0;
  std::vector<RawEvent> events = generate_synthetic(s);
  const Corpus base = build_corpus(events);
  for (RawEvent& e : events) e.timestamp += 123'456'789;
  const Corpus shifted = build_corpus(events);

  // Train a few epochs on the original timeline, and separately on the
  // shifted one from the same start.
  TaRlblParams p = init_ta_rlbl(shape_of(base, 6, 3), GridShape{3600.0, 24}, 9);
  TaRlblParams q = p;
  TrainConfig cfg;
  cfg.learning_rate = 0.01;
  cfg.negatives_per_positive = 10;
  cfg.grad_clip_norm = 20.0;
  Rng rp(4), rq(4);
  for (int e = 0; e < 2; ++e) {
    sgd_epoch(p, base, cfg, rp);
    sgd_epoch(q, shifted, cfg, rq);
  }
  const Vocabulary vocab = Vocabulary::Of(base);
  const bool same_training =
      serialize_snapshot({ModelKind::kTaRlbl, vocab, p}) ==
      serialize_snapshot({ModelKind::kTaRlbl, vocab, q});

  size_t state_mismatches = 0;
  for (size_t u = 0; u < base.n_users(); ++u) {
    const auto a = hidden_states(p, base.sequence(u), base.sequence(u).size());
    const auto b = hidden_states(p, shifted.sequence(u), shifted.sequence(u).size());
    for (size_t k = 0; k < a.size(); ++k) state_mismatches += !(a[k] == b[k]);
  }
  const bool same_report =
      report_table(evaluate(TaRlblScorer(p), base, EvalConfig{})) ==
      report_table(evaluate(TaRlblScorer(p), shifted, EvalConfig{}));
  return {state_mismatches == 0 && same_report && same_training,
          std::to_string(state_mismatches) +
              " hidden-state mismatches; reports " +
              (same_report ? "identical" : "DIFFER") +
              "; trained parameters " + (same_training ? "identical" : "DIFFER")};
}

}  // namespace
}  // namespace rlbl

int main() {
  using namespace rlbl;
  bool ok = true;
  ok &= criterion(1, "gradient oracle, RLBL and TA-RLBL at d=4 n=2 and d=8 n=3",
                  30, gradient_oracle);
  ok &= criterion(2, "equivalence identities", 5, equivalences);
  ok &= criterion(3, "metric oracle", 10, metric_oracle);
  ok &= criterion(4, "end-to-end learning on planted corpora", 600,
                  learning_works);
  ok &= criterion(5, "learned behavior matrices beat identity", 900,
                  behavior_benefit);
  ok &= criterion(6, "byte-identical snapshots and reports", 120, determinism);
  std::cout << "SKIP  [7] full-scale Movielens-1M run: not part of this suite, "
               "run tools/movielens_repro.sh"
            << std::endl;
  ok &= criterion(8, "time-shift invariance of TA-RLBL", 60, time_shift);
  std::cout << (ok ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << std::endl;
  return ok ? 0 : 1;
}
