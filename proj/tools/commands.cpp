#include "commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <iomanip>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <thread>

#include "netdist/eval.hpp"
#include "netdist/feature_csv.hpp"
#include "netdist/features.hpp"
#include "netdist/generators.hpp"
#include "netdist/graph.hpp"
#include "netdist/model_io.hpp"

namespace netdist::cli {
namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

int report_error(std::ostream& err, const Error& e) {
  err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
  return exit_code_for(e.kind());
}

LabeledCorpus labeled_corpus_from(const FeatureTable& table) {
  for (const auto& row : table.rows) {
    if (!row.category) {
      throw Error(ErrorKind::kArgument,
                  "row '" + row.graph_id + "' has no category; training and evaluation need labels");
    }
  }
  return LabeledCorpus(table.rows, table.feature_names);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "write failure on '" + path + "'");
}

SyntheticCorpusSpec read_corpus_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open corpus spec '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
    SyntheticCorpusSpec spec;
    spec.seed = doc.value("seed", std::uint64_t{0});
    for (const auto& c : doc.at("classes")) {
      SyntheticClass sc;
      sc.label = c.at("label").get<std::string>();
      sc.generator = parse_generator(c.at("generator").get<std::string>());
      sc.count = c.at("count").get<std::size_t>();
      sc.min_nodes = c.at("min_nodes").get<std::size_t>();
      sc.max_nodes = c.at("max_nodes").get<std::size_t>();
      const auto params = c.value("params", nlohmann::json::object());
      sc.params.edge_probability = params.value("edge_probability", sc.params.edge_probability);
      sc.params.attachment = params.value("attachment", sc.params.attachment);
      sc.params.seed_clique = params.value("seed_clique", sc.params.seed_clique);
      sc.params.ring_degree = params.value("ring_degree", sc.params.ring_degree);
      sc.params.rewire_probability =
          params.value("rewire_probability", sc.params.rewire_probability);
      spec.classes.push_back(std::move(sc));
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, "corpus spec '" + path + "': " + e.what());
  }
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDegenerateInput:
    case ErrorKind::kInsufficientData:
    case ErrorKind::kInsufficientClassSize:
    case ErrorKind::kProtocol:
      return kExitPrecondition;
    default:
      return kExitInput;
  }
}

std::vector<ManifestEntry> read_manifest(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open manifest '" + manifest_path + "'");
  const fs::path base = fs::path(manifest_path).parent_path();
  std::vector<ManifestEntry> entries;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    auto fail = [&](const std::string& why) {
      return Error(ErrorKind::kParse, "manifest line " + std::to_string(line_no) + ": " + why);
    };
    if (!header) {
      if (fields != std::vector<std::string>{"graph_id", "path", "category"}) {
        throw fail("header must be graph_id,path,category");
      }
      header = true;
      continue;
    }
    if (fields.size() != 3) throw fail("expected 3 fields");
    if (fields[0].empty() || fields[1].empty()) throw fail("graph_id and path must be non-empty");
    if (!seen.insert(fields[0]).second) throw fail("duplicate graph_id '" + fields[0] + "'");
    fs::path p(fields[1]);
    if (p.is_relative()) p = base / p;
    entries.push_back({fields[0], p.string(), fields[2]});
  }
  if (!header) throw Error(ErrorKind::kEmptyInput, "manifest '" + manifest_path + "' is empty");
  return entries;
}

int cmd_extract(const ExtractArgs& args, std::ostream& err) {
  try {
    const PercentileConfig cfg{args.intervals, args.width_coefficient};
    const auto names = feature_names(cfg);
    const auto manifest = read_manifest(args.manifest);
    ExtractOptions options;
    options.sample_sources = args.sample_sources;
    options.seed = args.seed;
    options.threads = 1;

    struct Outcome {
      std::optional<FeatureVector> features;
      std::optional<Error> error;
      std::size_t nodes = 0;
      std::size_t edges = 0;
      double seconds = 0.0;
    };
    std::vector<Outcome> outcomes(manifest.size());
    auto work = [&](std::size_t i) {
      const auto& entry = manifest[i];
      const auto start = std::chrono::steady_clock::now();
      try {
        try {
          const Graph g =
              load_edge_list_file(entry.path, LoadOptions{args.largest_component});
          outcomes[i].nodes = g.node_count();
          outcomes[i].edges = g.edge_count();
          std::optional<std::string> category;
          if (!entry.category.empty()) category = entry.category;
          outcomes[i].features = extract_features(g, entry.graph_id, category, cfg, options);
        } catch (const Error& e) {
          // Feature errors name the graph already; loader errors do not.
          if (std::string_view(e.what()).starts_with("graph '")) throw;
          throw e.with_context("graph '" + entry.graph_id + "'");
        }
      } catch (const Error& e) {
        outcomes[i].error = e;
      }
      outcomes[i].seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    unsigned workers = args.threads != 0 ? args.threads : std::thread::hardware_concurrency();
    workers = std::clamp<unsigned>(workers, 1U,
                                   static_cast<unsigned>(std::max<std::size_t>(manifest.size(), 1)));
    if (workers == 1) {
      for (std::size_t i = 0; i < manifest.size(); ++i) work(i);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t i = w; i < manifest.size(); i += workers) work(i);
        });
      }
      for (auto& t : pool) t.join();
    }

    FeatureTable table;
    table.feature_names = names;
    std::size_t failures = 0;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
      const auto& o = outcomes[i];
      if (o.error) {
        ++failures;
        err << "extract " << manifest[i].graph_id << ": FAILED " << o.error->what() << '\n';
        continue;
      }
      err << "extract " << manifest[i].graph_id << ": nodes=" << o.nodes << " edges=" << o.edges
          << " time=" << std::fixed << std::setprecision(3) << o.seconds << "s\n"
          << std::defaultfloat;
      table.rows.push_back(*o.features);
    }
    if (failures > 0 && !args.keep_going) {
      const auto& first = *std::find_if(outcomes.begin(), outcomes.end(),
                                        [](const Outcome& o) { return o.error.has_value(); });
      return report_error(err, *first.error);
    }
    std::ostringstream csv;
    write_feature_csv(csv, table);
    write_text_file(args.out_csv, csv.str());
    if (failures > 0) {
      err << failures << " of " << manifest.size() << " graphs failed\n";
      return kExitInput;
    }
    return kExitOk;
  } catch (const Error& e) {
    return report_error(err, e);
  }
}

int cmd_train(const TrainArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const LabeledCorpus corpus = labeled_corpus_from(read_feature_csv_file(args.features_csv));
    const MetricModel model = train_lmnn(corpus, args.lmnn);
    std::ostringstream text;
    save_model(text, model);
    write_text_file(args.out_model, text.str());
    out << "iterations " << model.training_meta().iterations << '\n'
        << "final_loss " << format_real(model.training_meta().final_loss, 12) << '\n';
    return kExitOk;
  } catch (const Error& e) {
    return report_error(err, e);
  }
}

int cmd_dist(const DistArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const MetricModel model = load_model_file(args.model);
    const FeatureTable table = read_feature_csv_file(args.features_csv);
    if (table.feature_names != model.feature_names()) {
      throw Error(ErrorKind::kArgument, "feature csv columns do not match the model's features");
    }
    auto find = [&](const std::string& id) -> const FeatureVector& {
      for (const auto& row : table.rows) {
        if (row.graph_id == id) return row;
      }
      throw Error(ErrorKind::kArgument, "graph id '" + id + "' not found in " + args.features_csv);
    };
    const FeatureVector& a = find(args.graph_a);
    const FeatureVector& b = find(args.graph_b);
    const double value = args.squared ? squared_distance(model, a, b) : distance(model, a, b);
    out << format_real(value, 12) << '\n';
    return kExitOk;
  } catch (const Error& e) {
    return report_error(err, e);
  }
}

int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err) {
  try {
    Protocol protocol = Protocol::kLoocv;
    if (args.protocol == "class-removed") {
      protocol = Protocol::kClassRemoved;
    } else if (args.protocol != "loocv") {
      throw Error(ErrorKind::kArgument, "unknown protocol '" + args.protocol + "'");
    }
    Trainer trainer;
    if (args.metric == "lmnn") {
      trainer = lmnn_trainer(args.lmnn);
    } else if (args.metric == "euclidean") {
      trainer = euclidean_trainer();
    } else {
      throw Error(ErrorKind::kArgument, "unknown metric '" + args.metric + "'");
    }
    const LabeledCorpus corpus = labeled_corpus_from(read_feature_csv_file(args.features_csv));
    const EvalReport report =
        evaluate(protocol, corpus, args.ks, trainer, EvalOptions{args.threads});
    write_report(out, report, args.metric);
    if (args.table) {
      out << '\n';
      write_category_table(out, {{args.metric, report}});
    }
    return kExitOk;
  } catch (const Error& e) {
    return report_error(err, e);
  }
}

int cmd_gen(const GenArgs& args, std::ostream& err) {
  try {
    SyntheticCorpusSpec spec =
        args.spec_json ? read_corpus_spec(*args.spec_json)
                       : benchmark_corpus_spec(args.seed, args.per_class, args.min_nodes,
                                               args.max_nodes);
    if (!args.spec_json) spec.seed = args.seed;
    const auto graphs = generate_synthetic_corpus(spec);
    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    if (ec) throw Error(ErrorKind::kIo, "cannot create '" + args.out_dir + "': " + ec.message());
    std::ostringstream manifest;
    manifest << "graph_id,path,category\n";
    for (const auto& lg : graphs) {
      const std::string file = lg.graph_id + ".txt";
      std::ostringstream edges;
      edges << "# " << lg.graph_id << " nodes=" << lg.graph.node_count()
            << " edges=" << lg.graph.edge_count() << '\n';
      write_edge_list(edges, lg.graph);
      write_text_file((fs::path(args.out_dir) / file).string(), edges.str());
      manifest << lg.graph_id << ',' << file << ',' << lg.category << '\n';
    }
    write_text_file((fs::path(args.out_dir) / "manifest.csv").string(), manifest.str());
    err << "gen: wrote " << graphs.size() << " graphs to " << args.out_dir << '\n';
    return kExitOk;
  } catch (const Error& e) {
    return report_error(err, e);
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"netdist: topological network descriptors and learned network distances"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "netdist 0.1.0");

  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Seed for every random choice (path sampling, communities, generators)")
      ->default_val(0);

  ExtractArgs extract;
  auto* ex = app.add_subcommand("extract", "Compute feature vectors for every graph in a manifest");
  ex->add_option("manifest", extract.manifest, "Manifest CSV (graph_id,path,category)")->required();
  ex->add_option("out_csv", extract.out_csv, "Output feature CSV")->required();
  ex->add_flag("--largest-component", extract.largest_component,
               "Keep only the largest connected component of each graph");
  ex->add_option("--sample-sources", extract.sample_sources,
                 "BFS sources for path lengths; exact when the graph is no larger")
      ->default_val(1000)
      ->check(CLI::PositiveNumber);
  ex->add_option("-K,--intervals", extract.intervals, "Degree-distribution intervals")->default_val(4);
  ex->add_option("-p,--width", extract.width_coefficient, "Interval width in units of sigma")
      ->default_val(0.3);
  ex->add_flag("--keep-going", extract.keep_going, "Write successful rows even if some graphs fail");
  ex->add_option("--threads", extract.threads, "Worker threads (0 = all cores)")->default_val(0);

  auto add_lmnn = [](CLI::App* sub, LmnnConfig& cfg) {
    sub->add_option("--iterations", cfg.iterations, "Gradient steps")->default_val(cfg.iterations);
    sub->add_option("--target-neighbors", cfg.target_neighbors, "Same-class targets per point")
        ->default_val(cfg.target_neighbors);
    sub->add_option("--weight", cfg.push_pull_weight, "Push term weight in (0,1)")
        ->default_val(cfg.push_pull_weight);
    sub->add_option("--margin", cfg.margin, "Hinge margin")->default_val(cfg.margin);
  };

  TrainArgs train;
  auto* tr = app.add_subcommand("train", "Learn a metric from a labeled feature CSV");
  tr->add_option("features_csv", train.features_csv)->required();
  tr->add_option("out_model", train.out_model)->required();
  add_lmnn(tr, train.lmnn);

  DistArgs dist;
  auto* di = app.add_subcommand("dist", "Distance between two graphs of a feature CSV");
  di->add_option("model", dist.model)->required();
  di->add_option("features_csv", dist.features_csv)->required();
  di->add_option("graph_a", dist.graph_a)->required();
  di->add_option("graph_b", dist.graph_b)->required();
  di->add_flag("--squared", dist.squared, "Print the squared quadratic form instead of its root");

  EvalArgs eval;
  bool figure_ks = false;
  auto* ev = app.add_subcommand("eval", "kNN cross-validation of a metric on a labeled feature CSV");
  ev->add_option("features_csv", eval.features_csv)->required();
  ev->add_option("--metric", eval.metric)->check(CLI::IsMember({"lmnn", "euclidean"}))->default_val("lmnn");
  ev->add_option("--protocol", eval.protocol)
      ->check(CLI::IsMember({"loocv", "class-removed"}))
      ->default_val("loocv");
  ev->add_option("--ks", eval.ks, "Comma-separated k values")->delimiter(',')->default_str("1,3,4");
  ev->add_flag("--figure-ks", figure_ks, "Use k = 3,4,5 instead of the default set");
  ev->add_flag("--table", eval.table, "Append a per-category table");
  ev->add_option("--threads", eval.threads, "Worker threads (0 = all cores)")->default_val(0);
  add_lmnn(ev, eval.lmnn);

  GenArgs gen;
  std::string spec_path;
  auto* ge = app.add_subcommand("gen", "Write a synthetic ER/BA/WS corpus as edge lists plus manifest");
  ge->add_option("out_dir", gen.out_dir)->required();
  ge->add_option("--spec", spec_path, "JSON corpus spec; overrides the built-in three-class corpus");
  ge->add_option("--per-class", gen.per_class)->default_val(20);
  ge->add_option("--min-nodes", gen.min_nodes)->default_val(200);
  ge->add_option("--max-nodes", gen.max_nodes)->default_val(2000);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (*ex) {
    extract.seed = seed;
    return cmd_extract(extract, err);
  }
  if (*tr) return cmd_train(train, out, err);
  if (*di) return cmd_dist(dist, out, err);
  if (*ev) {
    if (figure_ks) eval.ks = kFigureKs;
    return cmd_eval(eval, out, err);
  }
  if (*ge) {
    gen.seed = seed;
    if (!spec_path.empty()) gen.spec_json = spec_path;
    return cmd_gen(gen, err);
  }
  return kExitInput;
}

}  // namespace netdist::cli
