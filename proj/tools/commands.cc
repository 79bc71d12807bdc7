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


#include "commands.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <numeric>

#include "rlbl/baselines.h"
#include "rlbl/ingestion.h"
#include "rlbl/scorers.h"
#include "rlbl/snapshot.h"

namespace rlbl::cli {
namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

fs::path prepare_output(const RunConfig& config) {
  const fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + dir.string() +
                  "': " + ec.message());
  }
  write_file(dir / kResolvedConfigFile, config_to_json(config).dump(2) + "\n");
  return dir;
}

std::unique_ptr<SequenceScorer> scorer_for(const ModelVariant& model) {
  return std::visit(
      [](const auto& m) -> std::unique_ptr<SequenceScorer> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, RlblParams>) {
          return std::make_unique<RlblScorer>(m);
        } else if constexpr (std::is_same_v<T, TaRlblParams>) {
          return std::make_unique<TaRlblScorer>(m);
        } else if constexpr (std::is_same_v<T, PopModel>) {
          return std::make_unique<PopScorer>(m);
        } else {
          return std::make_unique<MarkovScorer>(m);
        }
      },
      model);
}

std::optional<double> validation_map(const ModelVariant& model,
                                     const Corpus& corpus,
                                     const RunConfig& config) {
  EvalConfig eval = config.eval;
  eval.segment = Segment::kValidation;
  try {
    return evaluate(*scorer_for(model), corpus, eval).overall.map;
  } catch (const EmptyEval&) {
    return std::nullopt;
  }
}

std::string format_map(const std::optional<double>& map) {
  if (!map) return "nan";
  std::ostringstream os;
  os << std::setprecision(10) << *map;
  return os.str();
}

template <typename Params>
TrainOutcome train_recurrent(Params params, const Corpus& corpus,
                             const RunConfig& config, const fs::path& dir,
                             std::ostream& console) {
  TrainOutcome out;
  std::ostringstream log;
  log << epoch_log_header() << "\tvalid_map\n";

  ModelVariant best = params;
  out.best_valid_map = validation_map(best, corpus, config);
  console << "epoch 0 valid_map=" << format_map(out.best_valid_map) << '\n';

  Rng rng(config.train.rng_seed);
  size_t since_best = 0;
  for (size_t e = 1; e <= config.train.epochs; ++e) {
    EpochReport r = sgd_epoch(params, corpus, config.train, rng);
    r.epoch = e;
    const std::optional<double> map = validation_map(params, corpus, config);
    log << epoch_log_line(r) << '\t' << format_map(map) << '\n';
    console << "epoch " << e << " loss=" << r.mean_loss
            << " valid_map=" << format_map(map) << '\n';
    out.epochs_run = e;
    if (!map) {
      // Without validation targets there is nothing to select on.
      best = params;
      out.best_epoch = e;
      continue;
    }
    if (!out.best_valid_map || *map > *out.best_valid_map) {
      best = params;
      out.best_valid_map = map;
      out.best_epoch = e;
      since_best = 0;
    } else if (++since_best >= config.patience) {
      console << "early stop: no validation gain for " << config.patience
              << " epochs\n";
      break;
    }
  }
  write_file(dir / kEpochLogFile, log.str());
  const Snapshot snap{config.model.kind, Vocabulary::Of(corpus), std::move(best)};
  out.snapshot_path = (dir / kSnapshotFile).string();
  save_snapshot(out.snapshot_path, snap);
  return out;
}

Snapshot load_checked(const std::string& path, const Corpus& corpus) {
  Snapshot snap = load_snapshot(path);
  check_compatible(snap, corpus);
  return snap;
}

// Integer timestamps whose windowed differences never land on a bin
// boundary, so the interpolated model is differentiable at the check point.
bool differences_interior(const UserSequence& seq, size_t n, double width) {
  for (size_t k = 1; k <= seq.size(); ++k) {
    for (size_t i = 1; i < n && i < k; ++i) {
      const double diff =
          double(seq.event(k).timestamp - seq.event(k - i).timestamp);
      if (std::fmod(diff, width) == 0.0) return false;
    }
  }
  return true;
}

void print_check(const char* model, const GradCheckReport& r,
                 std::ostream& console) {
  console << std::setprecision(3);
  for (const TensorCheck& t : r.tensors) {
    console << model << '\t' << t.name << '\t' << t.coords_checked << '\t'
            << t.max_rel_error << '\n';
  }
  console << model << "\tmax_rel_error=" << r.max_rel_error << '\t'
          << (r.passed ? "PASS" : "FAIL") << '\n';
}

}  // namespace

TrainOutcome cmd_train(RunConfig config, std::ostream& console) {
  const Corpus corpus = load_corpus(config);
  const fs::path dir = prepare_output(config);
  console << "corpus: " << corpus.n_users() << " users, " << corpus.n_items()
          << " items, " << corpus.n_behaviors() << " behaviors, "
          << corpus.n_events() << " events\n";

  const ModelConfig& m = config.model;
  ModelShape shape = shape_of(corpus, m.d, m.n);
  shape.init_scale = m.init_scale;
  switch (m.kind) {
    case ModelKind::kRlbl:
      return train_recurrent(init_rlbl(shape, config.seed), corpus, config,
                             dir, console);
    case ModelKind::kLinearRnn:
      return train_recurrent(linear_rnn_as_rlbl(m.d, corpus, config.seed),
                             corpus, config, dir, console);
    case ModelKind::kTaRlbl:
      return train_recurrent(init_ta_rlbl(shape, m.grid, config.seed), corpus,
                             config, dir, console);
    case ModelKind::kPop:
    case ModelKind::kMarkov: {
      Snapshot snap{m.kind, Vocabulary::Of(corpus), {}};
      if (m.kind == ModelKind::kPop) {
        snap.model = train_pop(corpus);
      } else {
        snap.model = train_markov(corpus);
      }
      write_file(dir / kEpochLogFile,
                 epoch_log_header() + "\tvalid_map\n");
      TrainOutcome out;
      out.best_valid_map = validation_map(snap.model, corpus, config);
      out.snapshot_path = (dir / kSnapshotFile).string();
      save_snapshot(out.snapshot_path, snap);
      console << model_kind_name(m.kind)
              << " valid_map=" << format_map(out.best_valid_map) << '\n';
      return out;
    }
  }
  throw ConfigError("unsupported model kind");
}

RankingReport cmd_evaluate(RunConfig config, const std::string& snapshot_path,
                           std::ostream& console) {
  const Corpus corpus = load_corpus(config);
  const Snapshot snap = load_checked(snapshot_path, corpus);
  const RankingReport report =
      evaluate(*scorer_for(snap.model), corpus, config.eval);
  const fs::path dir = prepare_output(config);
  write_file(dir / kReportTableFile, report_table(report));
  write_file(dir / kReportSummaryFile, report_summary(report));
  console << report_summary(report);
  return report;
}

std::vector<Prediction> cmd_predict(RunConfig config,
                                    const PredictRequest& request,
                                    std::ostream& console) {
  const Corpus corpus = load_corpus(config);
  const Snapshot snap = load_checked(request.snapshot_path, corpus);
  const std::optional<size_t> user = corpus.find_user(request.user);
  if (!user) throw UserError("unknown user '" + request.user + "'");
  const std::optional<size_t> behavior = corpus.find_behavior(request.behavior);
  if (!behavior) {
    throw ConfigError("unknown behavior '" + request.behavior + "'");
  }

  UserSequence history = corpus.sequence(*user);
  if (request.query_time) {
    std::erase_if(history.events, [&](const Event& e) {
      return e.timestamp > *request.query_time;
    });
  }
  std::vector<double> scores;
  scorer_for(snap.model)->for_user(history)->scores(history.size(), *behavior,
                                                    scores);

  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), size_t{0});
  const size_t k = std::min(request.top_k, order.size());
  std::partial_sort(order.begin(), order.begin() + k, order.end(),
                    [&](size_t a, size_t b) {
                      return scores[a] != scores[b] ? scores[a] > scores[b]
                                                    : a < b;
                    });
  std::vector<Prediction> out;
  console << "rank\titem\tscore\n" << std::setprecision(10);
  for (size_t r = 0; r < k; ++r) {
    out.push_back({corpus.item_ids()[order[r]], scores[order[r]]});
    console << r + 1 << '\t' << out.back().item << '\t' << out.back().score
            << '\n';
  }
  return out;
}

bool cmd_gradcheck(uint64_t seed, bool inject_sign_error,
                   std::ostream& console) {
  const size_t d = 4, n = 2;
  const GridShape grid{3600.0, 168};
  SynthSpec spec;
  spec.n_users = 3;
  spec.n_items = 10;
  spec.n_behaviors = 3;
  spec.min_len = spec.max_len = 12;
  spec.seed = seed;
  Corpus corpus = build_corpus(generate_synthetic(spec));
  while (!differences_interior(corpus.sequence(0), n, grid.bin_width)) {
    ++spec.seed;
    corpus = build_corpus(generate_synthetic(spec));
  }
  const UserSequence& seq = corpus.sequence(0);
  TrainingInstance inst = make_instance(seq, seq.size() - 1);
  Rng rng(seed);
  for (int j = 0; j < 3; ++j) {
    inst.negatives.push_back(sample_negative(corpus.n_items(), inst.positive, rng));
  }
  TrainConfig train;
  train.negatives_per_positive = inst.negatives.size();
  GradCheckOptions options;
  options.seed = seed;
  if (inject_sign_error) {
    options.tamper = [](GradientBundle& g) { g.W = -1.0 * g.W; };
  }

  const ModelShape shape = shape_of(corpus, d, n);
  const GradCheckReport rlbl =
      gradient_check(init_rlbl(shape, seed), seq, inst, train, options);
  const GradCheckReport ta = gradient_check(init_ta_rlbl(shape, grid, seed),
                                            seq, inst, train, options);
  console << "model\ttensor\tcoords\tmax_rel_error\n";
  print_check("rlbl", rlbl, console);
  print_check("ta-rlbl", ta, console);
  return rlbl.passed && ta.passed;
}

size_t cmd_gen_synth(const RunConfig& config, const std::string& out_path,
                     std::ostream& console) {
  const std::vector<RawEvent> events = generate_synthetic(config.data.synth);
  const fs::path parent = fs::path(out_path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    fs::create_directories(parent, ec);
    if (ec) throw IoError("cannot create '" + parent.string() + "'");
  }
  write_generic(out_path, events, config.data.generic.delimiter,
                config.data.behavior_map);
  std::set<std::string> users, items;
  for (const RawEvent& e : events) {
    users.insert(e.user);
    items.insert(e.item);
  }
  console << "wrote " << events.size() << " events (" << users.size()
          << " users, " << items.size() << " items, "
          << config.data.synth.n_behaviors << " behaviors) to " << out_path
          << '\n';
  return events.size();
}

int exit_code_for(ErrorClass error_class) {
  switch (error_class) {
    case ErrorClass::kConfig: return kExitConfig;
    case ErrorClass::kIo: return kExitIo;
    case ErrorClass::kNumeric: return kExitNumeric;
    case ErrorClass::kData: return kExitData;
    case ErrorClass::kCheck: return kExitCheckFailed;
  }
  return kExitInternal;
}

}  // namespace rlbl::cli
