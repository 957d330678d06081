// bogctl: command-line front end for the Bag-of-Genres pipeline.
//
// Exit codes: 0 success, 1 invalid input or configuration, 2 I/O or format
// error.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bog/commands.hpp"
#include "bog/error.hpp"

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> jobs;
  std::string output;
  std::string descriptor;
};

void add_common(CLI::App* cmd, Common& c, bool output_required = true) {
  cmd->add_option("--config", c.config, "INI configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "Override the training seed and derive replication seeds from it");
  cmd->add_option("--jobs", c.jobs, "Worker threads (0 = all cores)");
  auto* out = cmd->add_option("--output", c.output, "Output directory");
  if (output_required) out->required();
}

bog::RunConfig resolve(const Common& c) {
  bog::RunConfig cfg = c.config.empty() ? bog::RunConfig{} : bog::load_run_config(c.config);
  if (!c.descriptor.empty()) cfg.descriptor = bog::parse_descriptor(c.descriptor);
  if (c.seed) cfg.apply_seed(*c.seed);
  if (c.jobs) cfg.jobs = *c.jobs;
  cfg.train.jobs = cfg.jobs;
  cfg.validate();
  return cfg;
}

std::vector<bog::Split> parse_splits(const std::string& s) {
  if (s == "all") return {bog::Split::Train, bog::Split::Test};
  return {bog::parse_split(s)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bag-of-Genres video retrieval pipeline"};
  app.require_subcommand(1);

  Common common;

  // synth
  bog::SynthSpec spec;
  bool force = false;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic genre-coded frame dataset");
  add_common(synth, common);
  synth->add_option("--genres", spec.genres, "Number of genres")->capture_default_str();
  synth->add_option("--videos", spec.videos_per_genre, "Videos per genre")->capture_default_str();
  synth->add_option("--frames", spec.frames_per_video, "Frames per video")->capture_default_str();
  synth->add_option("--noise", spec.noise, "Noise level in [0,1]")->capture_default_str();
  synth->add_option("--width", spec.width, "Frame width")->capture_default_str();
  synth->add_option("--height", spec.height, "Frame height")->capture_default_str();
  synth->add_option("--train-fraction", spec.train_fraction, "Share of videos in the train split")
      ->capture_default_str();
  synth->add_flag("--force", force, "Replace an existing dataset in the output directory");

  // extract
  std::string manifest;
  std::string split = "all";
  auto* extract = app.add_subcommand("extract", "Extract frame descriptors into feature caches");
  add_common(extract, common);
  extract->add_option("--manifest", manifest, "Dataset manifest CSV")->required()->check(CLI::ExistingFile);
  extract->add_option("--descriptor", common.descriptor, "ACC, CCV, BIC, GCH, GFD or HWD");
  extract->add_option("--split", split, "train, test or all")->capture_default_str();

  // train
  std::string cache;
  std::string test_cache;
  bool sweep = false;
  std::optional<int> frames_per_genre;
  auto* train = app.add_subcommand("train", "Train the genre classifier (the genre dictionary)");
  add_common(train, common);
  train->add_option("--manifest", manifest, "Dataset manifest CSV")->required()->check(CLI::ExistingFile);
  train->add_option("--cache", cache, "Train-split feature cache")->required()->check(CLI::ExistingFile);
  train->add_option("--test-cache", test_cache, "Test-split feature cache for test accuracy");
  train->add_option("--descriptor", common.descriptor, "Descriptor the cache was built with");
  train->add_option("-N,--frames-per-genre", frames_per_genre, "Frames sampled per genre");
  train->add_flag("--sweep", sweep, "Train one model per [train] sweep value");

  // encode
  std::string model;
  std::string encode_split = "test";
  auto* encode = app.add_subcommand("encode", "Encode videos as Bag-of-Genres histograms");
  add_common(encode, common);
  encode->add_option("--manifest", manifest, "Dataset manifest CSV")->required()->check(CLI::ExistingFile);
  encode->add_option("--cache", cache, "Feature cache of the split")->required()->check(CLI::ExistingFile);
  encode->add_option("--model", model, "Trained model file")->required()->check(CLI::ExistingFile);
  encode->add_option("--split", encode_split, "train or test")->capture_default_str();

  // evaluate
  std::string bog_path;
  std::vector<std::string> compare_with;
  auto* evaluate = app.add_subcommand("evaluate", "Run replicated retrieval and score it");
  add_common(evaluate, common);
  evaluate->add_option("--bog", bog_path, "BoG file")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--manifest", manifest, "Manifest for cross-checking ids and genres")
      ->check(CLI::ExistingFile);
  evaluate->add_option("--compare", compare_with, "Other BoG files to compare against")
      ->check(CLI::ExistingFile);

  // compare
  std::vector<std::string> score_files;
  std::optional<double> level;
  auto* compare = app.add_subcommand(
      "compare", "Paired per-class comparison of score CSVs (first file against the rest)");
  compare->add_option("--config", common.config, "INI configuration file (confidence level)")
      ->check(CLI::ExistingFile);
  compare->add_option("--seed", common.seed, "Accepted for uniformity; unused");
  compare->add_option("--jobs", common.jobs, "Accepted for uniformity; unused");
  compare->add_option("--output", common.output, "Markdown output file")->required();
  compare->add_option("--level", level, "Confidence level (default from config, 0.99)");
  compare->add_option("scores", score_files, "Per-class CSVs as [name=]path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const fs::path out = common.output;
    if (synth->parsed()) {
      spec.seed = common.seed.value_or(0);
      const auto m = bog::cmd_synth(spec, out, force, common.jobs.value_or(1));
      std::cerr << "wrote " << m.videos.size() << " videos x " << spec.frames_per_video
                << " frames to " << out.string() << '\n';
    } else if (extract->parsed()) {
      bog::ExtractOptions o;
      o.manifest = manifest;
      o.config = resolve(common);
      o.output_dir = out;
      o.splits = parse_splits(split);
      o.log = &std::cerr;
      const auto r = bog::cmd_extract(o);
      for (const auto& e : r.errors) {
        std::cerr << "frame error: " << e.frame.string() << ": " << e.message << '\n';
      }
    } else if (train->parsed()) {
      bog::TrainOptions o;
      o.cache = cache;
      o.manifest = manifest;
      o.config = resolve(common);
      if (frames_per_genre) o.config.train.frames_per_genre = *frames_per_genre;
      o.config.validate();
      if (!test_cache.empty()) {
        o.test_cache = test_cache;
      } else {
        const fs::path sibling =
            fs::path(cache).parent_path() / bog::cache_file_name(bog::Split::Test, o.config.descriptor);
        if (fs::exists(sibling)) o.test_cache = sibling;
      }
      o.output_dir = out;
      o.sweep = sweep;
      o.log = &std::cerr;
      bog::cmd_train(o);
    } else if (encode->parsed()) {
      bog::EncodeOptions o;
      o.cache = cache;
      o.model = model;
      o.manifest = manifest;
      o.config = resolve(common);
      o.output_dir = out;
      o.split = bog::parse_split(encode_split);
      o.log = &std::cerr;
      bog::cmd_encode(o);
    } else if (evaluate->parsed()) {
      bog::EvaluateOptions o;
      o.bog = bog_path;
      o.manifest = manifest;
      o.config = resolve(common);
      o.output_dir = out;
      o.compare.assign(compare_with.begin(), compare_with.end());
      o.log = &std::cerr;
      bog::cmd_evaluate(o);
    } else if (compare->parsed()) {
      const bog::RunConfig cfg = common.config.empty() ? bog::RunConfig{} : bog::load_run_config(common.config);
      std::vector<bog::NamedScores> systems;
      for (const auto& arg : score_files) {
        const auto eq = arg.find('=');
        fs::path p = eq == std::string::npos ? arg : arg.substr(eq + 1);
        std::string name = eq == std::string::npos ? p.stem().string() : arg.substr(0, eq);
        systems.push_back({std::move(name), std::move(p)});
      }
      const auto rows = bog::cmd_compare(systems, level.value_or(cfg.confidence_level), out);
      std::cout << bog::comparisons_to_markdown(rows, level.value_or(cfg.confidence_level));
    }
  } catch (const bog::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const bog::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const bog::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
