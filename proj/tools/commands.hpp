#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "netdist/error.hpp"
#include "netdist/lmnn.hpp"

namespace netdist::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitPrecondition = 2;

int exit_code_for(ErrorKind kind);

struct ManifestEntry {
  std::string graph_id;
  std::string path;
  std::string category;
};

/// CSV with header graph_id,path,category. Relative paths resolve against the
/// manifest's directory.
std::vector<ManifestEntry> read_manifest(const std::string& manifest_path);

struct ExtractArgs {
  std::string manifest;
  std::string out_csv;
  bool largest_component = false;
  std::size_t sample_sources = 1000;
  std::uint64_t seed = 0;
  int intervals = 4;
  double width_coefficient = 0.3;
  bool keep_going = false;
  unsigned threads = 0;
};

struct TrainArgs {
  std::string features_csv;
  std::string out_model;
  LmnnConfig lmnn;
};

struct DistArgs {
  std::string model;
  std::string features_csv;
  std::string graph_a;
  std::string graph_b;
  bool squared = false;
};

struct EvalArgs {
  std::string features_csv;
  std::string metric = "lmnn";
  std::string protocol = "loocv";
  std::vector<int> ks = {1, 3, 4};
  LmnnConfig lmnn;
  bool table = false;
  unsigned threads = 0;
};

struct GenArgs {
  std::string out_dir;
  std::optional<std::string> spec_json;
  std::uint64_t seed = 0;
  std::size_t per_class = 20;
  std::size_t min_nodes = 200;
  std::size_t max_nodes = 2000;
};

int cmd_extract(const ExtractArgs& args, std::ostream& err);
int cmd_train(const TrainArgs& args, std::ostream& out, std::ostream& err);
int cmd_dist(const DistArgs& args, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err);
int cmd_gen(const GenArgs& args, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace netdist::cli
