#include "bog/commands.hpp"

#include <chrono>
#include <json.hpp>
#include <set>
#include <sstream>

#include "bog/binary_io.hpp"
#include "bog/error.hpp"
#include "bog/parallel.hpp"
#include "bog/text.hpp"

namespace bog {

namespace fs = std::filesystem;

std::string cache_file_name(Split split, DescriptorKind d) {
  return "features_" + std::string(split_name(split)) + "_" + std::string(descriptor_name(d)) +
         ".bogf";
}

std::string model_file_name(DescriptorKind d, int frames_per_genre) {
  return "model_" + std::string(descriptor_name(d)) + "_N" + std::to_string(frames_per_genre) +
         ".bogm";
}

std::string bog_file_name(Split split, DescriptorKind d) {
  return "bog_" + std::string(split_name(split)) + "_" + std::string(descriptor_name(d)) + ".bogb";
}

namespace {

void note(std::ostream* log, const std::string& line) {
  if (log) *log << line << '\n';
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

RunConfig checked(const RunConfig& cfg) {
  RunConfig c = cfg;
  c.validate();
  c.train.jobs = c.jobs;
  return c;
}

ConfigHash feature_hash(const RunConfig& cfg) { return sha256(feature_canonical(cfg)); }

// Refuses a cache produced under another descriptor or feature configuration.
void check_cache(const FeatureCache& cache, const RunConfig& cfg, const fs::path& path) {
  const ConfigHash want = feature_hash(cfg);
  if (cache.descriptor != cfg.descriptor || cache.config_hash != want) {
    throw InvalidInput("feature cache " + path.string() + " holds " +
                       std::string(descriptor_name(cache.descriptor)) + " features with config hash " +
                       to_hex(cache.config_hash) + ", but the configuration asks for " +
                       std::string(descriptor_name(cfg.descriptor)) + " with hash " + to_hex(want));
  }
}

std::vector<LabeledFeature> labeled_pool(const DatasetManifest& manifest, const FeatureCache& cache,
                                         Split split) {
  std::vector<LabeledFeature> pool;
  for (const ManifestEntry* e : manifest.in_split(split)) {
    for (auto& f : cache.frames_of(e->video_id)) pool.push_back({std::move(f), e->genre});
  }
  return pool;
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

}  // namespace

// --- extract ----------------------------------------------------------------

ExtractResult cmd_extract(const ExtractOptions& opts) {
  const RunConfig cfg = checked(opts.config);
  const DatasetManifest manifest = load_manifest(opts.manifest);
  const ConfigHash hash = feature_hash(cfg);
  const auto dim = static_cast<std::uint32_t>(descriptor_length(cfg.descriptor, cfg.features));
  ensure_dir(opts.output_dir);
  write_text_atomic(opts.output_dir / "extract_config.ini", to_ini(cfg));

  ExtractResult result;
  const auto start = std::chrono::steady_clock::now();
  for (Split split : opts.splits) {
    const fs::path path = opts.output_dir / cache_file_name(split, cfg.descriptor);
    FeatureCache cache;
    const bool existed = fs::exists(path);
    if (existed) {
      cache = load_feature_cache(path);
      if (cache.dim != dim) {
        throw InvalidInput("feature cache " + path.string() + " has dimension " +
                           std::to_string(cache.dim) + ", expected " + std::to_string(dim));
      }
      check_cache(cache, cfg, path);
    } else {
      cache.descriptor = cfg.descriptor;
      cache.dim = dim;
      cache.config_hash = hash;
    }

    struct Job {
      std::string video_id;
      std::uint32_t frame = 0;
      fs::path file;
    };
    std::vector<Job> jobs;
    for (const ManifestEntry* e : manifest.in_split(split)) {
      const auto frames = list_frames(e->frame_dir);
      if (frames.empty()) note(opts.log, "warning: " + e->video_id + " has no frame images");
      for (std::size_t i = 0; i < frames.size(); ++i) {
        const auto idx = static_cast<std::uint32_t>(i);
        if (cache.entries.count(FrameKey{e->video_id, idx})) {
          ++result.skipped;
        } else {
          jobs.push_back({e->video_id, idx, frames[i]});
        }
      }
    }

    // Workers fill their own slot; the cache is only touched on this thread.
    std::vector<std::vector<double>> values(jobs.size());
    std::vector<std::string> failures(jobs.size());
    parallel_for(jobs.size(), cfg.jobs, [&](std::size_t i) {
      try {
        values[i] = extract(load_image(jobs[i].file), cfg.descriptor, cfg.features).values;
      } catch (const Error& e) {
        failures[i] = e.what();
      }
    });

    std::vector<FrameError> split_errors;
    std::size_t added = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (!failures[i].empty()) {
        split_errors.push_back({jobs[i].video_id, jobs[i].file, failures[i]});
        continue;
      }
      cache.insert(jobs[i].video_id, jobs[i].frame, std::move(values[i]));
      ++added;
    }
    if (added > 0 || !existed) save_feature_cache(cache, path);

    std::ostringstream errs;
    errs << "video_id,frame,message,config_hash\n";
    for (const auto& e : split_errors) {
      errs << e.video_id << ',' << e.frame.filename().string() << ',' << e.message << ','
           << to_hex(hash) << '\n';
    }
    write_text_atomic(opts.output_dir / ("extract_errors_" + std::string(split_name(split)) + "_" +
                                         std::string(descriptor_name(cfg.descriptor)) + ".csv"),
                      errs.str());
    note(opts.log, std::string(split_name(split)) + ": " + std::to_string(added) + " extracted, " +
                       std::to_string(cache.entries.size()) + " cached, " +
                       std::to_string(split_errors.size()) + " errors -> " + path.string());
    result.extracted += added;
    result.errors.insert(result.errors.end(), split_errors.begin(), split_errors.end());
    result.caches.push_back(path);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.frames_per_second = seconds > 0.0 ? static_cast<double>(result.extracted) / seconds : 0.0;
  std::ostringstream tp;
  tp << "throughput: " << result.extracted << " frames in " << seconds << " s ("
     << result.frames_per_second << " frames/s, " << cfg.jobs << " jobs)";
  note(opts.log, tp.str());
  return result;
}

// --- train ------------------------------------------------------------------

TrainOutcome cmd_train(const TrainOptions& opts) {
  const RunConfig cfg = checked(opts.config);
  const DatasetManifest manifest = load_manifest(opts.manifest, false);
  const FeatureCache cache = load_feature_cache(opts.cache);
  check_cache(cache, cfg, opts.cache);
  const auto pool = labeled_pool(manifest, cache, Split::Train);

  std::vector<LabeledFeature> test_pool;
  const bool with_test = cfg.evaluate_test_frames && !opts.test_cache.empty();
  if (with_test) {
    const FeatureCache test_cache = load_feature_cache(opts.test_cache);
    check_cache(test_cache, cfg, opts.test_cache);
    test_pool = labeled_pool(manifest, test_cache, Split::Test);
  }

  ensure_dir(opts.output_dir);
  write_text_atomic(opts.output_dir / "train_config.ini", to_ini(cfg));

  const std::vector<int> ns = opts.sweep ? cfg.sweep : std::vector<int>{cfg.train.frames_per_genre};
  const std::size_t G = manifest.genres.size();
  TrainOutcome out;
  std::ostringstream acc;
  acc << "frames_per_genre,train_frames,heldout_accuracy,test_accuracy,config_hash\n";
  for (int n : ns) {
    TrainConfig tc = cfg.train;
    tc.frames_per_genre = n;
    const TrainSplit split = sample_training_frames(pool, G, n, tc.seed);
    std::vector<LabeledFeature> subset;
    subset.reserve(split.train.size());
    for (std::size_t i : split.train) subset.push_back(pool[i]);

    TrainResult trained = train_with_report(subset, manifest.genres, tc);
    LinearModel& model = trained.model;
    model.feature_hash = cache.config_hash;
    model.config_hash = sha256(training_canonical(cfg, n));

    TrainRow row;
    row.frames_per_genre = n;
    row.train_frames = subset.size();
    row.warnings = split.warnings;
    if (!split.held_out.empty()) {
      std::vector<LabeledFeature> held;
      held.reserve(split.held_out.size());
      for (std::size_t i : split.held_out) held.push_back(pool[i]);
      row.heldout_accuracy = evaluate_accuracy(model, held);
    }
    if (with_test && !test_pool.empty()) row.test_accuracy = evaluate_accuracy(model, test_pool);
    row.model_path = opts.output_dir / model_file_name(cfg.descriptor, n);
    save_model(model, row.model_path);

    const std::string hex = to_hex(model.config_hash);
    std::ostringstream obj;
    obj << "genre,epoch,objective,config_hash\n";
    for (std::size_t g = 0; g < trained.objective.size(); ++g) {
      for (std::size_t e = 0; e < trained.objective[g].size(); ++e) {
        obj << manifest.genres.name(static_cast<GenreIndex>(g)) << ',' << e + 1 << ','
            << format_double(trained.objective[g][e]) << ',' << hex << '\n';
      }
    }
    write_text_atomic(opts.output_dir / ("objective_" + std::string(descriptor_name(cfg.descriptor)) +
                                         "_N" + std::to_string(n) + ".csv"),
                      obj.str());

    acc << n << ',' << row.train_frames << ',' << optional_number(row.heldout_accuracy) << ','
        << optional_number(row.test_accuracy) << ',' << hex << '\n';
    for (const auto& w : row.warnings) note(opts.log, "warning: " + w);
    note(opts.log, "N=" + std::to_string(n) + ": " + std::to_string(row.train_frames) +
                       " frames, held-out accuracy " + optional_number(row.heldout_accuracy) +
                       ", test accuracy " + optional_number(row.test_accuracy) + " -> " +
                       row.model_path.string());
    out.rows.push_back(std::move(row));
  }
  out.accuracy_csv = opts.output_dir / "accuracy.csv";
  write_text_atomic(out.accuracy_csv, acc.str());
  return out;
}

// --- encode -----------------------------------------------------------------

EncodeResult cmd_encode(const EncodeOptions& opts) {
  const RunConfig cfg = checked(opts.config);
  const LinearModel model = load_model(opts.model);
  const FeatureCache cache = load_feature_cache(opts.cache);
  if (model.descriptor != cache.descriptor || model.feature_hash != cache.config_hash) {
    throw InvalidInput("model " + opts.model.string() + " was trained on " +
                       std::string(descriptor_name(model.descriptor)) + " features with config hash " +
                       to_hex(model.feature_hash) + ", but cache " + opts.cache.string() + " holds " +
                       std::string(descriptor_name(cache.descriptor)) + " features with config hash " +
                       to_hex(cache.config_hash));
  }
  const DatasetManifest manifest = load_manifest(opts.manifest, false);

  std::vector<VideoRecord> videos;
  for (const ManifestEntry* e : manifest.in_split(opts.split)) {
    VideoRecord v;
    v.video_id = e->video_id;
    v.genre = model.genres.index_of(manifest.genres.name(e->genre));
    v.frame_features = cache.frames_of(e->video_id);
    videos.push_back(std::move(v));
  }
  EncodedCorpus encoded = encode_corpus(model, videos, cfg.jobs);

  EncodeResult result;
  result.bog.config_hash = sha256(to_hex(model.config_hash) + "\n" + to_hex(cache.config_hash) + "\n");
  result.bog.genre_names = model.genres.labels();
  result.bog.vectors = std::move(encoded.vectors);
  result.errors = std::move(encoded.errors);

  ensure_dir(opts.output_dir);
  write_text_atomic(opts.output_dir / "encode_config.ini", to_ini(cfg));
  result.path = opts.output_dir / bog_file_name(opts.split, model.descriptor);
  save_bog_file(result.bog, result.path);
  fs::path csv = result.path;
  csv.replace_extension(".csv");
  write_text_atomic(csv, bog_to_csv(result.bog));

  const std::string hex = to_hex(result.bog.config_hash);
  std::ostringstream errs;
  errs << "video_id,message,config_hash\n";
  for (const auto& e : result.errors) {
    errs << e.video_id << ',' << e.message << ',' << hex << '\n';
    note(opts.log, "error: " + e.video_id + ": " + e.message);
  }
  write_text_atomic(opts.output_dir / "encode_errors.csv", errs.str());
  note(opts.log, std::to_string(result.bog.vectors.size()) + " videos encoded into " +
                     std::to_string(result.bog.genre_names.size()) + "-bin BoG vectors, " +
                     std::to_string(result.errors.size()) + " errors -> " + result.path.string());
  return result;
}

// --- evaluate ---------------------------------------------------------------

namespace {

struct Evaluation {
  EvalReport report;
  std::vector<std::vector<RankedList>> runs;
};

Evaluation evaluate_bog(const BogFile& bog, const RunConfig& cfg) {
  const std::size_t G = bog.genre_names.size();
  const QueryPlan plan = build_query_plan(bog.vectors, G, cfg.query_fraction, cfg.replication_seeds,
                                          cfg.query_rounding);
  Evaluation ev;
  ev.runs = run_retrieval(plan, bog.vectors, cfg.jobs);
  const RelevanceJudge judge = RelevanceJudge::from_corpus(bog.vectors);
  ev.report = per_genre_report(ev.runs, judge, G, cfg.k, cfg.confidence_level);
  return ev;
}

std::map<std::string, GenreScore> per_class(const EvalReport& report,
                                            const std::vector<std::string>& names) {
  std::map<std::string, GenreScore> out;
  for (const auto& [g, s] : report.per_genre) out.emplace(names.at(g), s);
  return out;
}

void cross_check(const BogFile& bog, const DatasetManifest& manifest, EvalReport& report) {
  for (const auto& v : bog.vectors) {
    const ManifestEntry* e = manifest.find(v.video_id);
    if (!e) throw InvalidInput("BoG video '" + v.video_id + "' is not in the manifest");
    const std::string& expected = manifest.genres.name(e->genre);
    if (bog.genre_names.at(v.genre) != expected) {
      throw InvalidInput("BoG video '" + v.video_id + "' has genre '" + bog.genre_names[v.genre] +
                         "' but the manifest says '" + expected + "'");
    }
  }
  std::set<std::string> present;
  for (const auto& v : bog.vectors) present.insert(v.video_id);
  for (const ManifestEntry* e : manifest.in_split(Split::Test)) {
    if (!present.count(e->video_id)) {
      report.warnings.push_back("test video '" + e->video_id + "' is missing from the BoG file");
    }
  }
}

}  // namespace

EvaluateResult cmd_evaluate(const EvaluateOptions& opts) {
  const RunConfig cfg = checked(opts.config);
  const BogFile bog = load_bog_file(opts.bog);
  Evaluation ev = evaluate_bog(bog, cfg);
  if (!opts.manifest.empty()) cross_check(bog, load_manifest(opts.manifest, false), ev.report);

  EvaluateResult result;
  result.report = ev.report;
  result.config_hash = sha256(to_hex(bog.config_hash) + "\n" + evaluation_canonical(cfg));
  result.bog_bins = bog.genre_names.size();
  result.reduction = 1.0 - static_cast<double>(result.bog_bins) / static_cast<double>(cfg.reference_bins);
  const std::string hex = to_hex(result.config_hash);

  ensure_dir(opts.output_dir / "runs");
  write_text_atomic(opts.output_dir / "evaluate_config.ini", to_ini(cfg));

  auto j = nlohmann::ordered_json::parse(report_to_json(ev.report, bog.genre_names, hex));
  j["bog_hash"] = to_hex(bog.config_hash);
  j["query_fraction"] = cfg.query_fraction;
  j["replication_seeds"] = cfg.replication_seeds;
  // Every genre, including any catch-all "default" genre, is sampled alike.
  j["query_sampling"] = "per-genre, uniform across all genres (no special case for a default category)";
  j["compactness"] = {{"bog_bins", result.bog_bins},
                      {"reference_bins", cfg.reference_bins},
                      {"reduction", result.reduction}};
  write_text_atomic(opts.output_dir / "report.json", j.dump(2) + "\n");
  write_text_atomic(opts.output_dir / "report.csv", report_to_csv(ev.report, bog.genre_names, hex));

  std::ostringstream reps;
  reps << "replication,seed,map,p10,config_hash\n";
  for (std::size_t r = 0; r < ev.report.per_replication_map.size(); ++r) {
    reps << r << ',' << cfg.replication_seeds[r] << ',' << format_double(ev.report.per_replication_map[r])
         << ',' << format_double(ev.report.per_replication_p10[r]) << ',' << hex << '\n';
  }
  write_text_atomic(opts.output_dir / "per_replication.csv", reps.str());

  const std::string tag = "bog_" + hex.substr(0, 12);
  for (std::size_t r = 0; r < ev.runs.size(); ++r) {
    write_text_atomic(opts.output_dir / "runs" / ("rep_" + std::to_string(r) + ".trec"),
                      to_trec_run(ev.runs[r], tag));
  }
  for (const auto& w : ev.report.warnings) note(opts.log, "warning: " + w);

  if (!opts.compare.empty()) {
    const auto mine = per_class(ev.report, bog.genre_names);
    for (const auto& other_path : opts.compare) {
      const BogFile other = load_bog_file(other_path);
      const Evaluation other_ev = evaluate_bog(other, cfg);
      result.comparisons.push_back(compare_systems(mine, per_class(other_ev.report, other.genre_names),
                                                   opts.bog.stem().string(),
                                                   other_path.stem().string(), cfg.confidence_level));
    }
    write_text_atomic(opts.output_dir / "comparison.md",
                      comparisons_to_markdown(result.comparisons, cfg.confidence_level) +
                          "\nconfig_hash: " + hex + "\n");
  }

  std::ostringstream summary;
  summary << "MAP " << ev.report.map_mean << " +/- " << ev.report.map_ci.half_width() << ", P@"
          << cfg.k << ' ' << ev.report.p10_mean << " +/- " << ev.report.p10_ci.half_width() << " ("
          << ev.report.replication_count << " replications, " << result.bog_bins
          << "-bin BoG, " << result.reduction * 100.0 << "% smaller than " << cfg.reference_bins
          << " bins)";
  note(opts.log, summary.str());
  return result;
}

std::vector<SystemComparison> cmd_compare(const std::vector<NamedScores>& systems, double level,
                                          const fs::path& output) {
  if (systems.size() < 2) throw InvalidInput("compare needs at least two per-class score files");
  std::vector<std::map<std::string, GenreScore>> scores;
  for (const auto& s : systems) {
    const auto bytes = read_file(s.csv);
    try {
      scores.push_back(read_per_class_csv(
          std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size())));
    } catch (const FormatError& e) {
      throw FormatError(s.csv.string() + ": " + e.what());
    }
  }
  std::vector<SystemComparison> rows;
  for (std::size_t i = 1; i < systems.size(); ++i) {
    rows.push_back(compare_systems(scores[0], scores[i], systems[0].name, systems[i].name, level));
  }
  if (!output.empty()) {
    if (output.has_parent_path()) ensure_dir(output.parent_path());
    write_text_atomic(output, comparisons_to_markdown(rows, level));
  }
  return rows;
}

DatasetManifest cmd_synth(const SynthSpec& spec, const fs::path& output_dir, bool force,
                          unsigned jobs) {
  return write_synthetic_dataset(spec, output_dir, force, jobs);
}

}  // namespace bog
