#include "bog/run_config.hpp"

#include <openssl/evp.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <set>
#include <sstream>

#include "bog/binary_io.hpp"
#include "bog/error.hpp"
#include "bog/report.hpp"
#include "bog/text.hpp"

namespace bog {

namespace pt = boost::property_tree;

void RunConfig::validate() const {
  features.validate();
  train.validate();
  for (int n : sweep) {
    if (n < 1) throw ConfigError("sweep values must be >= 1");
  }
  if (!(query_fraction > 0.0 && query_fraction <= 1.0)) {
    throw ConfigError("query_fraction must be in (0,1]");
  }
  if (replication_seeds.empty()) throw ConfigError("replication_seeds must not be empty");
  if (k < 1) throw ConfigError("k must be >= 1");
  if (!(confidence_level > 0.0 && confidence_level < 1.0)) {
    throw ConfigError("confidence_level must be in (0,1)");
  }
  if (reference_bins < 1) throw ConfigError("reference_bins must be >= 1");
}

void RunConfig::apply_seed(std::uint64_t seed) {
  train.seed = seed;
  for (std::size_t r = 0; r < replication_seeds.size(); ++r) replication_seeds[r] = seed + r + 1;
}

namespace {

template <class T>
std::vector<T> parse_list(const std::string& text, const std::string& key) {
  std::vector<T> out;
  for (const auto& cell : split_csv_line(text)) {
    if (cell.empty()) continue;
    const auto v = parse_int(cell, key);
    if (v < 0) throw ConfigError(key + " entries must be non-negative");
    out.push_back(static_cast<T>(v));
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(values[i]);
  }
  return s;
}

std::string_view rounding_name(QueryRounding r) {
  switch (r) {
    case QueryRounding::Nearest: return "nearest";
    case QueryRounding::Floor: return "floor";
    case QueryRounding::Ceil: return "ceil";
  }
  return "nearest";
}

QueryRounding parse_rounding(const std::string& s) {
  if (s == "nearest") return QueryRounding::Nearest;
  if (s == "floor") return QueryRounding::Floor;
  if (s == "ceil") return QueryRounding::Ceil;
  throw ConfigError("query_rounding must be nearest, floor or ceil (got '" + s + "')");
}

bool parse_bool(const std::string& s, const std::string& key) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(key + " must be true or false");
}

// Reads `key` from the tree through `apply`, recording it as known.
class Section {
 public:
  Section(const pt::ptree& root, std::string name) : name_(std::move(name)) {
    if (auto child = root.get_child_optional(name_)) tree_ = &*child;
  }

  template <class Fn>
  void read(const std::string& key, Fn&& apply) {
    known_.insert(key);
    if (!tree_) return;
    if (auto v = tree_->get_optional<std::string>(key)) {
      try {
        apply(std::string(trim(*v)));
      } catch (const FormatError& e) {
        throw ConfigError("[" + name_ + "] " + key + ": " + e.what());
      }
    }
  }

  void reject_unknown() const {
    if (!tree_) return;
    for (const auto& [key, _] : *tree_) {
      if (!known_.count(key)) throw ConfigError("unknown key [" + name_ + "] " + key);
    }
  }

 private:
  std::string name_;
  const pt::ptree* tree_ = nullptr;
  std::set<std::string> known_;
};

int to_int(const std::string& s, const std::string& key) {
  return static_cast<int>(parse_int(s, key));
}

}  // namespace

RunConfig parse_run_config(std::string_view ini_text) {
  pt::ptree root;
  try {
    std::istringstream in{std::string(ini_text)};
    pt::ini_parser::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  for (const auto& [section, _] : root) {
    if (section != "features" && section != "train" && section != "evaluate" && section != "run") {
      throw ConfigError("unknown config section [" + section + "]");
    }
  }

  RunConfig cfg;
  auto& f = cfg.features;
  Section fs(root, "features");
  fs.read("descriptor", [&](const std::string& v) { cfg.descriptor = parse_descriptor(v); });
  fs.read("gch_bins_per_channel", [&](const std::string& v) { f.gch_bins_per_channel = to_int(v, "gch_bins_per_channel"); });
  fs.read("bic_bins_per_channel", [&](const std::string& v) { f.bic_bins_per_channel = to_int(v, "bic_bins_per_channel"); });
  fs.read("ccv_bins_per_channel", [&](const std::string& v) { f.ccv_bins_per_channel = to_int(v, "ccv_bins_per_channel"); });
  fs.read("ccv_tau_fraction", [&](const std::string& v) { f.ccv_tau_fraction = parse_double(v, "ccv_tau_fraction"); });
  fs.read("acc_distances", [&](const std::string& v) { f.acc_distances = parse_list<int>(v, "acc_distances"); });
  fs.read("acc_bins_per_channel", [&](const std::string& v) { f.acc_bins_per_channel = to_int(v, "acc_bins_per_channel"); });
  fs.read("gfd_radial", [&](const std::string& v) { f.gfd_radial = to_int(v, "gfd_radial"); });
  fs.read("gfd_angular", [&](const std::string& v) { f.gfd_angular = to_int(v, "gfd_angular"); });
  fs.read("gfd_resize", [&](const std::string& v) { f.gfd_resize = to_int(v, "gfd_resize"); });
  fs.read("gfd_polar_radii", [&](const std::string& v) { f.gfd_polar_radii = to_int(v, "gfd_polar_radii"); });
  fs.read("gfd_polar_angles", [&](const std::string& v) { f.gfd_polar_angles = to_int(v, "gfd_polar_angles"); });
  fs.read("hwd_levels", [&](const std::string& v) { f.hwd_levels = to_int(v, "hwd_levels"); });
  fs.read("hwd_resize", [&](const std::string& v) { f.hwd_resize = to_int(v, "hwd_resize"); });
  fs.reject_unknown();

  Section ts(root, "train");
  ts.read("C", [&](const std::string& v) { cfg.train.C = parse_double(v, "C"); });
  ts.read("epochs", [&](const std::string& v) { cfg.train.epochs = to_int(v, "epochs"); });
  ts.read("seed", [&](const std::string& v) {
    cfg.train.seed = static_cast<std::uint64_t>(parse_int(v, "seed"));
  });
  ts.read("frames_per_genre", [&](const std::string& v) { cfg.train.frames_per_genre = to_int(v, "frames_per_genre"); });
  ts.read("sweep", [&](const std::string& v) { cfg.sweep = parse_list<int>(v, "sweep"); });
  ts.read("evaluate_test_frames", [&](const std::string& v) { cfg.evaluate_test_frames = parse_bool(v, "evaluate_test_frames"); });
  ts.reject_unknown();

  Section es(root, "evaluate");
  es.read("query_fraction", [&](const std::string& v) { cfg.query_fraction = parse_double(v, "query_fraction"); });
  es.read("query_rounding", [&](const std::string& v) { cfg.query_rounding = parse_rounding(v); });
  es.read("replication_seeds", [&](const std::string& v) { cfg.replication_seeds = parse_list<std::uint64_t>(v, "replication_seeds"); });
  es.read("k", [&](const std::string& v) { cfg.k = static_cast<std::size_t>(to_int(v, "k")); });
  es.read("confidence_level", [&](const std::string& v) { cfg.confidence_level = parse_double(v, "confidence_level"); });
  es.read("reference_bins", [&](const std::string& v) { cfg.reference_bins = static_cast<std::size_t>(to_int(v, "reference_bins")); });
  es.reject_unknown();

  Section rs(root, "run");
  rs.read("jobs", [&](const std::string& v) { cfg.jobs = static_cast<unsigned>(to_int(v, "jobs")); });
  rs.reject_unknown();

  cfg.train.jobs = cfg.jobs;
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return parse_run_config(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::string feature_canonical(const RunConfig& cfg) {
  const auto& f = cfg.features;
  std::ostringstream os;
  os << "[features]\n"
     << "descriptor = " << descriptor_name(cfg.descriptor) << '\n'
     << "gch_bins_per_channel = " << f.gch_bins_per_channel << '\n'
     << "bic_bins_per_channel = " << f.bic_bins_per_channel << '\n'
     << "ccv_bins_per_channel = " << f.ccv_bins_per_channel << '\n'
     << "ccv_tau_fraction = " << format_double(f.ccv_tau_fraction) << '\n'
     << "acc_distances = " << join(f.acc_distances) << '\n'
     << "acc_bins_per_channel = " << f.acc_bins_per_channel << '\n'
     << "gfd_radial = " << f.gfd_radial << '\n'
     << "gfd_angular = " << f.gfd_angular << '\n'
     << "gfd_resize = " << f.gfd_resize << '\n'
     << "gfd_polar_radii = " << f.gfd_polar_radii << '\n'
     << "gfd_polar_angles = " << f.gfd_polar_angles << '\n'
     << "hwd_levels = " << f.hwd_levels << '\n'
     << "hwd_resize = " << f.hwd_resize << '\n';
  return os.str();
}

namespace {

std::string train_section(const RunConfig& cfg, int frames_per_genre, bool with_sweep) {
  std::ostringstream os;
  os << "[train]\n"
     << "C = " << format_double(cfg.train.C) << '\n'
     << "epochs = " << cfg.train.epochs << '\n'
     << "seed = " << cfg.train.seed << '\n'
     << "frames_per_genre = " << frames_per_genre << '\n';
  if (with_sweep) {
    os << "sweep = " << join(cfg.sweep) << '\n'
       << "evaluate_test_frames = " << (cfg.evaluate_test_frames ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace

std::string training_canonical(const RunConfig& cfg, int frames_per_genre) {
  return feature_canonical(cfg) + train_section(cfg, frames_per_genre, false);
}

std::string evaluation_canonical(const RunConfig& cfg) {
  std::ostringstream os;
  os << "[evaluate]\n"
     << "query_fraction = " << format_double(cfg.query_fraction) << '\n'
     << "query_rounding = " << rounding_name(cfg.query_rounding) << '\n'
     << "replication_seeds = " << join(cfg.replication_seeds) << '\n'
     << "k = " << cfg.k << '\n'
     << "confidence_level = " << format_double(cfg.confidence_level) << '\n'
     << "reference_bins = " << cfg.reference_bins << '\n';
  return os.str();
}

std::string to_ini(const RunConfig& cfg) {
  return feature_canonical(cfg) + train_section(cfg, cfg.train.frames_per_genre, true) +
         evaluation_canonical(cfg) + "[run]\njobs = " + std::to_string(cfg.jobs) + "\n";
}

ConfigHash sha256(std::string_view text) {
  ConfigHash out{};
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    throw Error("SHA-256 digest failed");
  }
  return out;
}

}  // namespace bog
