// cli/pipeline.cc

// Copyright 2026  Phonelearn Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "cli/pipeline.h"

#include <algorithm>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "abx/distance.h"
#include "abx/score.h"
#include "abx/task.h"
#include "corpus/alignment.h"
#include "corpus/chunks.h"
#include "corpus/manifest.h"
#include "corpus/pairs.h"
#include "corpus/wav.h"
#include "dpgmm/sampler.h"
#include "features/archive.h"
#include "features/deltas.h"
#include "features/mfcc.h"
#include "nnet/checkpoint.h"
#include "stats/zscore.h"
#include "util/csv.h"
#include "util/error.h"
#include "util/io.h"
#include "util/parallel.h"

namespace phonelearn {

using nlohmann::json;

const FeatureSequence& FeatureStore::Get(const std::string& utterance) const {
  auto it = sequences.find(utterance);
  if (it == sequences.end())
    throw DataError("no features for utterance '" + utterance + "'");
  return it->second;
}

namespace {

namespace fs = std::filesystem;

MfccConfig DefaultMfcc() { return MfccConfig{}; }

std::string MfccCacheKey(const MfccConfig& m, bool mean_normalize) {
  json j{{"n_mel_bins", m.n_mel_bins},
         {"n_cepstra", m.n_cepstra},
         {"pre_emphasis", m.pre_emphasis},
         {"window", m.window == WindowType::kPovey ? "povey" : "hamming"},
         {"energy_floor", m.energy_floor},
         {"sample_rate", m.sample_rate},
         {"frame_length", m.frame_length},
         {"frame_shift", m.frame_shift},
         {"low_freq", m.low_freq},
         {"high_freq", m.high_freq},
         {"deltas", true},
         {"mean_normalize", mean_normalize}};
  return j.dump();
}

fs::path ArchivePathFor(const ExperimentConfig& config,
                        const Manifest& manifest) {
  return config.output_dir / "features" /
         (manifest.language + "_" + manifest.subset + ".plfa");
}

void MeanNormalizePerSpeaker(const Manifest& manifest,
                             std::vector<FeatureSequence>* sequences) {
  std::map<std::string, std::string> speaker_of;
  for (const auto& u : manifest.utterances) speaker_of[u.id] = u.speaker;
  std::map<std::string, std::pair<Eigen::RowVectorXf, int64_t>> acc;
  for (const auto& seq : *sequences) {
    auto& [sum, count] = acc[speaker_of[seq.utterance]];
    if (count == 0) sum = Eigen::RowVectorXf::Zero(seq.Dim());
    sum += seq.frames.colwise().sum();
    count += seq.NumFrames();
  }
  for (auto& seq : *sequences) {
    const auto& [sum, count] = acc[speaker_of[seq.utterance]];
    seq.frames.rowwise() -= sum / static_cast<float>(count);
  }
}

}  // namespace

FeatureStore ComputeOrLoadFeatures(const ExperimentConfig& config,
                                   const fs::path& manifest_path,
                                   bool* recomputed) {
  if (recomputed) *recomputed = false;
  const Manifest manifest = LoadManifest(manifest_path);
  const fs::path archive = ArchivePathFor(config, manifest);
  const fs::path meta_path = archive.string() + ".meta.json";
  const std::string cache_key =
      MfccCacheKey(DefaultMfcc(), config.mean_normalize);

  // Audio hashes drive the cache; unreadable files are gathered first.
  std::vector<std::string> errors;
  json file_hashes = json::object();
  for (const auto& u : manifest.utterances) {
    try {
      file_hashes[u.id] = HashFile(u.audio_path);
    } catch (const std::exception& e) {
      errors.push_back(u.audio_path.string() + ": " + e.what());
    }
  }
  if (!errors.empty()) {
    std::string msg = "feature extraction failed for " +
                      std::to_string(errors.size()) + " file(s):";
    for (const auto& e : errors) msg += "\n  " + e;
    throw DataError(msg);
  }

  bool cache_ok = false;
  if (fs::exists(archive) && fs::exists(meta_path)) {
    try {
      json meta = json::parse(SlurpFile(meta_path));
      cache_ok = meta.value("cache_key", "") == cache_key &&
                 meta.value("files", json::object()) == file_hashes;
    } catch (const std::exception&) {
      cache_ok = false;
    }
  }

  std::vector<FeatureSequence> sequences;
  if (cache_ok) {
    sequences = ReadFeatureArchive(archive);
  } else {
    if (recomputed) *recomputed = true;
    sequences.resize(manifest.utterances.size());
    std::vector<std::string> wav_errors(manifest.utterances.size());
    ParallelForEach(manifest.utterances.size(), config.workers, [&](size_t i) {
      const auto& u = manifest.utterances[i];
      try {
        WavData wav = ReadWav(u.audio_path);
        MfccConfig mfcc = DefaultMfcc();
        mfcc.sample_rate = wav.sample_rate;
        FeatureSequence mfcc13 =
            ComputeMfcc(SamplesToDouble(wav.samples), mfcc, u.id);
        sequences[i] = AddDeltas(mfcc13);
      } catch (const std::exception& e) {
        wav_errors[i] = u.audio_path.string() + ": " + e.what();
      }
    });
    std::string msg;
    int n_bad = 0;
    for (const auto& e : wav_errors)
      if (!e.empty()) {
        ++n_bad;
        msg += "\n  " + e;
      }
    if (n_bad > 0)
      throw DataError("feature extraction failed for " +
                      std::to_string(n_bad) + " file(s):" + msg);
    if (config.mean_normalize) MeanNormalizePerSpeaker(manifest, &sequences);
    fs::create_directories(archive.parent_path());
    WriteFeatureArchive(archive, sequences);
    json meta{{"cache_key", cache_key}, {"files", file_hashes}};
    SpewFile(meta_path, meta.dump(2) + "\n");
  }

  FeatureStore store;
  for (auto& seq : sequences) {
    std::string id = seq.utterance;
    store.sequences.emplace(std::move(id), std::move(seq));
  }
  return store;
}

void RunFeaturesStage(const ExperimentConfig& config) {
  std::vector<fs::path> manifests;
  if (!config.native_train_manifest.empty())
    manifests.push_back(config.native_train_manifest);
  if (!config.nonnative_train_manifest.empty())
    manifests.push_back(config.nonnative_train_manifest);
  for (const auto& m : config.test_manifests) manifests.push_back(m);
  if (manifests.empty())
    throw UsageError("features: config names no manifests");
  for (const auto& m : manifests) {
    bool recomputed = false;
    ComputeOrLoadFeatures(config, m, &recomputed);
    std::cerr << "[features] " << m.string()
              << (recomputed ? ": computed" : ": cached") << "\n";
  }
}

namespace {

// All frames of a manifest as one D x N column matrix.
Eigen::MatrixXd GatherFramesColumns(const FeatureStore& store) {
  Eigen::Index total = 0, dim = 0;
  for (const auto& [_, seq] : store.sequences) {
    total += seq.NumFrames();
    dim = seq.Dim();
  }
  Eigen::MatrixXd out(dim, total);
  Eigen::Index at = 0;
  for (const auto& [_, seq] : store.sequences) {
    out.middleCols(at, seq.NumFrames()) =
        seq.frames.transpose().cast<double>();
    at += seq.NumFrames();
  }
  return out;
}

const fs::path& RoleManifest(const ExperimentConfig& config,
                             const std::string& role) {
  if (role == "native") {
    if (config.native_train_manifest.empty())
      throw UsageError("config: native_train_manifest is required");
    return config.native_train_manifest;
  }
  if (role == "nonnative") {
    if (config.nonnative_train_manifest.empty())
      throw UsageError("config: nonnative_train_manifest is required");
    return config.nonnative_train_manifest;
  }
  throw UsageError("train: role must be native or nonnative, got '" + role +
                   "'");
}

// DTW-aligned frame pairs of word tokens, as two aligned column matrices.
void BuildAlignedFramePairs(const FeatureStore& store,
                            const std::vector<TokenPair>& pairs, int workers,
                            Eigen::MatrixXf* x, Eigen::MatrixXf* y) {
  struct Aligned {
    Eigen::MatrixXf a, b;  // D x L
  };
  std::vector<Aligned> aligned(pairs.size());
  ParallelForEach(pairs.size(), workers, [&](size_t i) {
    const auto& p = pairs[i];
    const auto fa = store.Get(p.a.utterance).Slice(p.a.start, p.a.end);
    const auto fb = store.Get(p.b.utterance).Slice(p.b.start, p.b.end);
    const DtwAlignment al =
        DtwAlign(fa.cast<double>(), fb.cast<double>(),
                 FrameMetric::kAngularCosine);
    aligned[i].a.resize(fa.cols(), al.path.size());
    aligned[i].b.resize(fb.cols(), al.path.size());
    for (size_t k = 0; k < al.path.size(); ++k) {
      aligned[i].a.col(k) = fa.row(al.path[k].first).transpose();
      aligned[i].b.col(k) = fb.row(al.path[k].second).transpose();
    }
  });
  Eigen::Index total = 0;
  for (const auto& al : aligned) total += al.a.cols();
  if (total == 0) throw DataError("no aligned frame pairs");
  x->resize(aligned[0].a.rows(), total);
  y->resize(aligned[0].a.rows(), total);
  Eigen::Index at = 0;
  for (const auto& al : aligned) {
    x->middleCols(at, al.a.cols()) = al.a;
    y->middleCols(at, al.b.cols()) = al.b;
    at += al.a.cols();
  }
}

std::vector<Eigen::MatrixXf> ChunkFeatures(const FeatureStore& store,
                                           const std::vector<Chunk>& chunks) {
  std::vector<Eigen::MatrixXf> out;
  out.reserve(chunks.size());
  for (const auto& c : chunks)
    out.push_back(
        store.Get(c.utterance).Slice(c.start, c.end).transpose());
  return out;
}

void WriteTrainMetadata(const fs::path& path, const ExperimentConfig& config,
                        const std::string& role, const json& params) {
  json j{{"model", config.model},
         {"role", role},
         {"seed", config.seed},
         {"config_hash", config.ConfigHashHex()},
         {"params", params}};
  SpewFile(path, j.dump(2) + "\n");
}

}  // namespace

TrainOutput RunTrainStage(const ExperimentConfig& config,
                          const std::string& role) {
  const fs::path& manifest_path = RoleManifest(config, role);
  const Manifest manifest = LoadManifest(manifest_path);
  const FeatureStore store = ComputeOrLoadFeatures(config, manifest_path);
  const fs::path model_dir = config.output_dir / "models";
  fs::create_directories(model_dir);
  const std::string stem = config.model + "_" + role;
  TrainOutput out;
  out.checkpoint = model_dir / (stem + (config.model == "dpgmm"
                                            ? ".pldp"
                                            : ".plnn"));
  out.metadata = model_dir / (stem + ".meta.json");
  out.train_log = model_dir / (stem + "_train_log.csv");
  const uint64_t seed = DeriveSeed(config.seed, "train:" + role);

  if (config.model == "dpgmm") {
    std::cerr << "[train] dpgmm " << role
              << ": k0=" << config.dpgmm.k0
              << " iterations=" << config.dpgmm.iterations
              << " alpha=" << config.dpgmm.alpha << "\n";
    Eigen::MatrixXd frames = GatherFramesColumns(store);
    SweepOptions options;
    options.workers = config.workers;
    DpgmmHyper hyper = DpgmmHyper::FromData(frames, config.dpgmm.alpha);
    DpgmmTrainResult result =
        DpgmmTrain(frames, config.dpgmm.k0, config.dpgmm.iterations, hyper,
                   seed, options);
    SaveDpgmmModel(out.checkpoint, result.model);
    WriteTrainLogCsv(out.train_log, result.log);
    WriteTrainMetadata(out.metadata, config, role,
                       json{{"k0", config.dpgmm.k0},
                            {"iterations", config.dpgmm.iterations},
                            {"alpha", config.dpgmm.alpha},
                            {"n_frames", frames.cols()},
                            {"n_components", result.model.NumComponents()}});
    return out;
  }

  if (config.model == "ae" || config.model == "cae") {
    Eigen::MatrixXf frames = GatherFramesColumns(store).cast<float>();
    TrainSchedule schedule;
    schedule.optimizer = OptimizerKind::kAdadelta;
    schedule.adadelta_decay = config.ae.adadelta_decay;
    schedule.epochs = config.ae.epochs;
    schedule.batch_size = config.ae.batch_size;
    schedule.seed = seed;
    std::vector<TrainLogEntry> log;
    std::cerr << "[train] ae " << role << ": epochs=" << config.ae.epochs
              << " (per layer + fine-tune), adadelta decay "
              << config.ae.adadelta_decay << "\n";
    DenseNet<float> ae = AeTrain<float>(frames, schedule, &log);
    if (config.model == "cae") {
      if (manifest.word_alignment.empty())
        throw DataError("cae training needs a word alignment");
      auto words = LoadWordAlignments(manifest.word_alignment);
      auto pairs = MakeWordPairs(words, config.cae.max_pairs_per_type,
                                 DeriveSeed(seed, "pairs"));
      Eigen::MatrixXf x, y;
      BuildAlignedFramePairs(store, pairs, config.workers, &x, &y);
      std::cerr << "[train] cae " << role << ": epochs=" << config.cae.epochs
                << " on " << pairs.size() << " word pairs (" << x.cols()
                << " aligned frames)\n";
      DenseNet<float> cae =
          CaeTrain<float>(ae, x, y, config.cae.epochs, schedule, &log);
      SaveDenseNet(out.checkpoint, cae);
    } else {
      SaveDenseNet(out.checkpoint, ae);
    }
    WriteNnetTrainLogCsv(out.train_log, log);
    WriteTrainMetadata(out.metadata, config, role,
                       json{{"epochs", config.ae.epochs},
                            {"cae_epochs", config.cae.epochs},
                            {"batch_size", config.ae.batch_size},
                            {"adadelta_decay", config.ae.adadelta_decay},
                            {"n_frames", frames.cols()}});
    return out;
  }

  // ae-rnn / cae-rnn
  if (manifest.word_alignment.empty())
    throw DataError(config.model + " training needs a word alignment");
  auto words = LoadWordAlignments(manifest.word_alignment);
  auto chunks = SampleChunks(manifest, words, config.rnn.n_chunks,
                             DeriveSeed(seed, "chunks"));
  auto chunk_feats = ChunkFeatures(store, chunks);
  TrainSchedule schedule;
  schedule.optimizer = OptimizerKind::kAdam;
  schedule.adam_learning_rate = config.rnn.learning_rate;
  schedule.epochs = config.rnn.ae_epochs;
  schedule.batch_size = config.rnn.batch_size;
  schedule.seed = seed;
  std::vector<TrainLogEntry> log;
  std::cerr << "[train] ae-rnn " << role << ": epochs=" << config.rnn.ae_epochs
            << " adam lr=" << config.rnn.learning_rate << " on "
            << chunk_feats.size() << " chunks\n";
  RnnAutoencoder<float> ae_rnn = RnnAeTrain<float>(
      chunk_feats, schedule, &log, config.rnn.hidden, config.rnn.layers,
      config.rnn.embed_dim);
  if (config.model == "cae-rnn") {
    auto pairs = MakeWordPairs(words, config.rnn.max_pairs_per_type,
                               DeriveSeed(seed, "pairs"));
    std::vector<std::pair<Eigen::MatrixXf, Eigen::MatrixXf>> pair_feats;
    pair_feats.reserve(pairs.size());
    for (const auto& p : pairs) {
      pair_feats.emplace_back(
          store.Get(p.a.utterance).Slice(p.a.start, p.a.end).transpose(),
          store.Get(p.b.utterance).Slice(p.b.start, p.b.end).transpose());
    }
    std::cerr << "[train] cae-rnn " << role
              << ": epochs=" << config.rnn.cae_epochs << " on "
              << pair_feats.size() << " word pairs\n";
    RnnAutoencoder<float> cae_rnn = RnnCaeTrain<float>(
        ae_rnn, pair_feats, config.rnn.cae_epochs, schedule, &log);
    SaveRnnAutoencoder(out.checkpoint, cae_rnn);
  } else {
    SaveRnnAutoencoder(out.checkpoint, ae_rnn);
  }
  WriteNnetTrainLogCsv(out.train_log, log);
  WriteTrainMetadata(out.metadata, config, role,
                     json{{"hidden", config.rnn.hidden},
                          {"layers", config.rnn.layers},
                          {"embed_dim", config.rnn.embed_dim},
                          {"ae_epochs", config.rnn.ae_epochs},
                          {"cae_epochs", config.rnn.cae_epochs},
                          {"learning_rate", config.rnn.learning_rate},
                          {"n_chunks", static_cast<int>(chunk_feats.size())}});
  return out;
}

namespace {

struct LoadedModel {
  std::string kind;  // dpgmm | dense | rnn
  DpgmmModel dpgmm;
  DenseNet<float> dense;
  RnnAutoencoder<float> rnn;
};

LoadedModel LoadAnyModel(const std::string& model_name,
                         const fs::path& checkpoint) {
  LoadedModel m;
  if (model_name == "dpgmm") {
    m.kind = "dpgmm";
    m.dpgmm = LoadDpgmmModel(checkpoint);
  } else if (model_name == "ae" || model_name == "cae") {
    m.kind = "dense";
    m.dense = LoadDenseNet(checkpoint);
  } else {
    m.kind = "rnn";
    m.rnn = LoadRnnAutoencoder(checkpoint);
  }
  return m;
}

Representation RepresentSegment(const LoadedModel& model,
                                const Eigen::MatrixXf& frames /* T x D */) {
  if (model.kind == "dpgmm") {
    Posteriorgram pg =
        ComputePosteriorgram(model.dpgmm, frames.cast<double>());
    return Representation::FrameSequence(std::move(pg.rows),
                                         FrameMetric::kSymmetrizedKl);
  }
  if (model.kind == "dense") {
    Eigen::MatrixXf encoded = model.dense.Encode(frames.transpose());
    return Representation::FrameSequence(
        encoded.transpose().cast<double>(), FrameMetric::kAngularCosine);
  }
  Eigen::VectorXf embedding = model.rnn.Embed(frames.transpose());
  return Representation::Embedding(embedding.cast<double>());
}

}  // namespace

ContrastScore ScoreContrast(const ExperimentConfig& config,
                            const std::string& model_kind,
                            const fs::path& checkpoint,
                            const std::string& phone_a,
                            const std::string& phone_b) {
  if (config.test_manifests.empty())
    throw UsageError("abx: config names no test manifests");
  const LoadedModel model = LoadAnyModel(model_kind, checkpoint);
  ContrastScore score;
  score.metric = model.kind == "dpgmm"
                     ? FrameMetricName(FrameMetric::kSymmetrizedKl)
                     : FrameMetricName(FrameMetric::kAngularCosine);
  score.representation = model.kind == "rnn" ? "embedding" : "frames";

  for (const auto& manifest_path : config.test_manifests) {
    const Manifest manifest = LoadManifest(manifest_path);
    if (manifest.phone_alignment.empty())
      throw DataError("abx: test manifest misses a phone alignment");
    const FeatureStore store = ComputeOrLoadFeatures(config, manifest_path);
    auto table = LoadPhoneAlignments(manifest.phone_alignment);
    auto segments =
        ExtractPhoneSegments(table, phone_a, phone_b,
                             config.min_phone_duration);
    if (!config.context_prev.empty() || !config.context_next.empty()) {
      std::vector<PhoneSegment> filtered;
      for (const auto& s : segments)
        if ((config.context_prev.empty() || s.prev == config.context_prev) &&
            (config.context_next.empty() || s.next == config.context_next))
          filtered.push_back(s);
      segments = std::move(filtered);
    }
    if (segments.empty()) continue;

    TripletSet triplets = EnumerateTriplets(
        segments, phone_a, phone_b, config.abx_max_per_cell,
        DeriveSeed(config.seed, "abx:" + manifest.subset));
    if (triplets.untestable) continue;

    std::vector<Representation> reps(segments.size());
    ParallelForEach(segments.size(), config.workers, [&](size_t i) {
      const auto& s = segments[i];
      reps[i] = RepresentSegment(
          model, store.Get(s.utterance).Slice(s.start, s.end));
    });
    auto cells = AbxScore(segments, triplets.triplets, reps, manifest.subset,
                          config.workers);
    score.cells.insert(score.cells.end(), cells.begin(), cells.end());
    score.n_triplets += static_cast<int64_t>(triplets.triplets.size());
  }
  score.untestable = score.cells.empty();
  if (!score.untestable) score.aggregate = AggregateCells(score.cells);
  return score;
}

AbxReport RunAbxStage(const ExperimentConfig& config,
                      const fs::path& checkpoint,
                      const fs::path& report_path) {
  ContrastScore score = ScoreContrast(config, config.model, checkpoint,
                                      config.contrast_a, config.contrast_b);
  if (score.representation == "embedding")
    std::cerr << "[abx] embedding representation: distances are angular "
                 "cosine, DTW not used\n";
  else
    std::cerr << "[abx] frame representation: DTW with metric "
              << score.metric << "\n";
  if (score.untestable)
    std::cerr << "[abx] warning: contrast " << config.contrast_a << "-"
              << config.contrast_b
              << " is untestable on this data (no speaker+context cell)\n";

  AbxReport report;
  report.model = config.model;
  report.metric = score.metric;
  report.representation = score.representation;
  report.phone_a = std::min(config.contrast_a, config.contrast_b);
  report.phone_b = std::max(config.contrast_a, config.contrast_b);
  report.cells = score.cells;
  report.aggregate_error = score.aggregate;
  report.n_triplets = score.n_triplets;
  report.untestable = score.untestable;
  report.seed = config.seed;
  report.config_hash = config.ConfigHashHex();

  fs::create_directories(report_path.parent_path());
  WriteAbxReportJson(report_path, report);
  WriteCellsCsv(fs::path(report_path).replace_extension(".cells.csv"),
                report.cells);
  return report;
}

CompareOutcome RunCompareStage(const ExperimentConfig& config,
                               const fs::path& native_report,
                               const fs::path& nonnative_report,
                               const fs::path& out_path) {
  const AbxReport native = ReadAbxReportJson(native_report);
  const AbxReport nonnative = ReadAbxReportJson(nonnative_report);
  CompareOutcome outcome;
  outcome.test = NativeAdvantageTest(
      native.cells, nonnative.cells, config.n_permutations,
      DeriveSeed(config.seed, "compare"), config.workers);
  const bool significant = outcome.test.p_value < config.significance_alpha;
  if (!significant ||
      outcome.test.direction == AdvantageDirection::kNone) {
    outcome.verdict = "no-difference";
  } else if (outcome.test.direction == AdvantageDirection::kNativeBetter) {
    outcome.verdict = "infant-like";
  } else {
    outcome.verdict = "wrong-direction";
  }

  json j{{"statistic", outcome.test.observed},
         {"p_value", outcome.test.p_value},
         {"direction", AdvantageDirectionName(outcome.test.direction)},
         {"verdict", outcome.verdict},
         {"n_cells", outcome.test.n_cells},
         {"n_permutations", outcome.test.n_permutations},
         {"alpha", config.significance_alpha},
         {"seed", config.seed},
         {"config_hash", config.ConfigHashHex()},
         {"native_report", native_report.filename().string()},
         {"nonnative_report", nonnative_report.filename().string()}};
  fs::create_directories(out_path.parent_path());
  SpewFile(out_path, j.dump(2) + "\n");
  return outcome;
}

void RunTable3Stage(
    const ExperimentConfig& config, const fs::path& checkpoint_first,
    const fs::path& checkpoint_second,
    const std::vector<std::pair<std::string, std::string>>& contrasts,
    const fs::path& out_csv) {
  if (contrasts.size() < 2)
    throw UsageError("table3: need at least 2 contrasts");
  std::string first_kind = config.model;
  std::string second_kind = config.model;
  // Model kinds are read from the checkpoints themselves when they are
  // tensor containers; the dpgmm binary has its own magic.
  auto sniff = [](const fs::path& p, const std::string& fallback) {
    try {
      std::string t = PeekModelType(p);
      return t == "dense-ae" ? std::string("ae") : std::string("ae-rnn");
    } catch (const std::exception&) {
      return fallback;
    }
  };
  first_kind = sniff(checkpoint_first, "dpgmm");
  second_kind = sniff(checkpoint_second, "dpgmm");

  std::string language;
  if (!config.test_manifests.empty())
    language = LoadManifest(config.test_manifests.front()).language;

  std::map<Contrast, double> first_errors, second_errors;
  for (const auto& [a, b] : contrasts) {
    const Contrast c = MakeContrast(a, b);
    ContrastScore s1 =
        ScoreContrast(config, first_kind, checkpoint_first, c.first, c.second);
    ContrastScore s2 = ScoreContrast(config, second_kind, checkpoint_second,
                                     c.first, c.second);
    if (s1.untestable || s2.untestable) {
      std::cerr << "[table3] warning: contrast " << ContrastName(c)
                << " untestable; skipped\n";
      continue;
    }
    first_errors[c] = s1.aggregate;
    second_errors[c] = s2.aggregate;
  }
  if (first_errors.size() < 2)
    throw DataError("table3: fewer than 2 testable contrasts");

  const ZScoreTable t1 = ComputeZScoreTable(first_errors, "model1");
  const ZScoreTable t2 = ComputeZScoreTable(second_errors, "model2");
  auto diff = ModelDifference(t1, t2);

  CsvTable csv;
  csv.header = {"contrast", "language", "z_model1", "z_model2", "difference"};
  for (const auto& [contrast, d] : diff) {
    std::ostringstream z1, z2, dd;
    z1 << t1.rows.at(contrast).z;
    z2 << t2.rows.at(contrast).z;
    dd << d;
    csv.rows.push_back(
        {ContrastName(contrast), language, z1.str(), z2.str(), dd.str()});
  }
  fs::create_directories(out_csv.parent_path());
  WriteCsv(out_csv, csv);
}

}  // namespace phonelearn
