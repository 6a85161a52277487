// Copyright 2026 The StormSift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// stormsift: operator command line for the scoring pipeline and query service.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "stormsift/common/error.hpp"
#include "stormsift/common/strings.hpp"
#include "stormsift/service/config.hpp"
#include "stormsift/service/map_provider.hpp"
#include "stormsift/service/pipeline.hpp"
#include "stormsift/service/scenario.hpp"
#include "stormsift/service/server.hpp"
#include "stormsift/service/snapshot.hpp"
#include "stormsift/text/scoring.hpp"
#include "stormsift/user/model.hpp"

namespace {

namespace fs = std::filesystem;
using namespace stormsift;
using namespace stormsift::service;

/// --config plus one flag per config key; flags win over the file.
class ConfigFlags {
 public:
  explicit ConfigFlags(CLI::App* app) {
    app->add_option("--config", path_, "key = value pipeline config file");
    for (const auto& key : config_keys()) {
      options_[key] = app->add_option("--" + key, values_[key], "overrides '" + key + "'");
    }
  }

  PipelineConfig resolve() const {
    PipelineConfig config = path_.empty() ? PipelineConfig{} : load_config(path_);
    const auto cwd = fs::current_path().string();
    for (const auto& [key, opt] : options_) {
      if (opt->count() > 0) apply_setting(config, key, values_.at(key), cwd);
    }
    config.validate();
    return config;
  }

 private:
  std::string path_;
  std::map<std::string, std::string> values_;
  std::map<std::string, CLI::Option*> options_;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    if (const auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
    file_.open(path);
    if (!file_) throw Error("output", "cannot write " + path);
  }

  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void make_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("output", "cannot create " + dir + ": " + ec.message());
}

std::string out_path(const std::string& dir, const char* name) { return (fs::path(dir) / name).string(); }

int exit_code(const std::string& stage) {
  static const std::map<std::string, int> codes = {
      {"config", 2}, {"ingest", 3}, {"geo", 4},      {"text", 5},     {"user", 6},   {"image", 7},
      {"fusion", 8}, {"score", 8},  {"snapshot", 9}, {"serve", 10},   {"map", 10},   {"query", 10},
  };
  const auto it = codes.find(stage);
  return it == codes.end() ? 1 : it->second;
}

ApiServer* g_server = nullptr;

void handle_signal(int) {
  if (g_server) g_server->stop();
}

void print_manifest_summary(const StoreSnapshot& snap) {
  const auto& m = snap.manifest();
  std::cerr << "snapshot v" << snap.version() << ": " << snap.size() << " tweets, "
            << m.get("fusion.passed").value_or("?") << " pass at " << m.get("fusion.thresholds").value_or("?")
            << ", hash " << m.hash << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"StormSift: hurricane tweet relevance scoring and filtering"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate-scenario", "write the synthetic hurricane scenario");
  std::string gen_out;
  ScenarioOptions gen_opts;
  std::uint64_t gen_pipeline_seed = 1;
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--seed", gen_opts.seed, "scenario seed");
  gen->add_option("--tweets", gen_opts.tweets, "number of tweets");
  gen->add_option("--pipeline-seed", gen_pipeline_seed, "seed written into scenario.conf");

  auto* ingest = app.add_subcommand("ingest", "parse and validate the input files");
  ConfigFlags ingest_cfg(ingest);
  std::string ingest_out;
  ingest->add_option("--out", ingest_out, "directory for accepted.ndjson and rejects.csv");

  auto* select = app.add_subcommand("select-geo", "rank the geospatial models and write the calibration");
  ConfigFlags select_cfg(select);
  std::string select_out = "geo_calibration.txt";
  std::string select_report;
  select->add_option("--out", select_out, "calibration file");
  select->add_option("--report", select_report, "candidate ranking report");

  auto* train_text = app.add_subcommand("train-text", "train per-segment embeddings and score tweet text");
  ConfigFlags text_cfg(train_text);
  std::string text_out;
  std::size_t text_neighbors = 10;
  train_text->add_option("--out", text_out, "output directory")->required();
  train_text->add_option("--neighbors", text_neighbors, "seed-term neighbors listed per segment");

  auto* train_user = app.add_subcommand("train-user", "grid-search and train the verified-user classifier");
  ConfigFlags user_cfg(train_user);
  std::string user_out;
  train_user->add_option("--out", user_out, "output directory")->required();

  auto* score_images = app.add_subcommand("score-images", "image score for every tweet");
  ConfigFlags image_cfg(score_images);
  std::string image_out;
  score_images->add_option("--out", image_out, "CSV file (stdout when omitted)");

  auto* score = app.add_subcommand("score", "score all tweets with a saved geo calibration");
  ConfigFlags score_cfg(score);
  std::string score_calibration = "geo_calibration.txt";
  std::string score_out;
  score->add_option("--geo-calibration", score_calibration, "output of select-geo");
  score->add_option("--out", score_out, "snapshot directory")->required();

  auto* run = app.add_subcommand("run", "ingest, select-geo and score in one pass");
  ConfigFlags run_cfg(run);
  std::string run_out;
  run->add_option("--out", run_out, "snapshot directory")->required();

  auto* filter = app.add_subcommand("filter", "apply thresholds to a snapshot");
  std::string filter_snapshot;
  std::string filter_out;
  std::optional<double> f_geo, f_text, f_user, f_image;
  filter->add_option("--snapshot", filter_snapshot, "snapshot directory")->required();
  filter->add_option("--geo", f_geo, "geo_min (snapshot default when omitted)");
  filter->add_option("--text", f_text, "text_min");
  filter->add_option("--user", f_user, "user_min");
  filter->add_option("--image", f_image, "image_min");
  filter->add_option("--out", filter_out, "NDJSON file (stdout when omitted)");

  auto* report = app.add_subcommand("report", "print the manifest or the per-axis pass-rate CDF");
  std::string report_snapshot;
  std::string report_out;
  bool report_cdf = false;
  report->add_option("--snapshot", report_snapshot, "snapshot directory")->required();
  report->add_flag("--cdf", report_cdf, "threshold,geo,text,user,image pass fractions");
  report->add_option("--out", report_out, "output file (stdout when omitted)");

  auto* serve = app.add_subcommand("serve", "serve the query API for a snapshot");
  std::string serve_snapshot;
  std::string serve_host;
  int serve_port = -1;
  std::string serve_tiles = "tiles";
  serve->add_option("--snapshot", serve_snapshot, "snapshot directory")->required();
  serve->add_option("--host", serve_host, "bind address (snapshot config when omitted)");
  serve->add_option("--port", serve_port, "bind port (snapshot config when omitted)");
  serve->add_option("--tiles", serve_tiles, "tile directory reported by the mock map provider");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const auto scenario = generate_scenario(gen_opts);
      write_scenario(scenario, gen_out, gen_pipeline_seed);
      std::cerr << "wrote " << scenario.tweets.size() << " tweets, " << scenario.sensors.size()
                << " sensor readings, " << scenario.track.size() << " track points to " << gen_out << '\n';
    } else if (ingest->parsed()) {
      const auto config = ingest_cfg.resolve();
      const auto result = ingest_inputs(config);
      std::cout << "tweets accepted " << result.tweets.accepted.size() << " rejected "
                << result.tweets.rejected.size() << "\nsensor readings " << result.sensors.size()
                << "\ntrack points " << result.track.size() << "\nlabel rows " << result.labels.size() << '\n';
      if (!ingest_out.empty()) {
        make_dir(ingest_out);
        std::string accepted;
        for (const auto& t : result.tweets.accepted) accepted += core::serialize_tweet(t) + '\n';
        std::string rejects = "record,reason,detail\n";
        for (const auto& r : result.tweets.rejected) {
          rejects += std::to_string(r.record) + ',' + core::reject_reason_name(r.reason) + ',' + r.detail + '\n';
        }
        write_file(out_path(ingest_out, "accepted.ndjson"), accepted, "output");
        write_file(out_path(ingest_out, "rejects.csv"), rejects, "output");
      }
    } else if (select->parsed()) {
      const auto config = select_cfg.resolve();
      const auto data = ingest_inputs(config);
      const auto selection = select_geo(data, compute_geo_features(data, config), config);
      geo::save_calibration(select_out, selection.calibration);
      const auto text = geo::format_selection_report(selection);
      if (!select_report.empty()) write_file(select_report, text, "output");
      std::cout << text;
    } else if (train_text->parsed()) {
      const auto config = text_cfg.resolve();
      const auto data = ingest_inputs(config);
      const auto stage = run_text(data, config);
      make_dir(text_out);
      std::string scores = "tweet_id,segment,raw,text_score\n";
      for (std::size_t i = 0; i < data.tweets.accepted.size(); ++i) {
        const auto segment = text::segment_of(stage.tokens[i].window, config.text.segment_hours);
        const auto& raw = stage.run.result.raw[i];
        scores += data.tweets.accepted[i].id + ',' + text::segment_label(segment, config.text.segment_hours) + ',' +
                  (raw ? format_exact(*raw) : std::string()) + ',' +
                  format_fixed(stage.run.result.scores[i], 2) + '\n';
      }
      write_file(out_path(text_out, "text_scores.csv"), scores, "output");
      write_file(out_path(text_out, "segments.csv"), format_text_segments(stage.calibration), "output");
      for (const auto& m : stage.run.models) {
        if (!m.table) continue;
        const auto label = text::segment_label(m.segment, config.text.segment_hours);
        std::ofstream out(out_path(text_out, ("neighbors_" + label + ".csv").c_str()));
        text::write_neighbors_csv(out, text::top_k_neighbors(config.text.seed_term, *m.table, text_neighbors));
      }
      std::cout << format_text_segments(stage.calibration);
    } else if (train_user->parsed()) {
      const auto config = user_cfg.resolve();
      const auto data = ingest_inputs(config);
      const auto stage = run_user(data, config);
      make_dir(user_out);
      {
        std::ofstream out(out_path(user_out, "user_model.txt"));
        user::save_model(out, stage.model);
      }
      {
        std::ofstream out(out_path(user_out, "grid.csv"));
        user::write_grid_csv(out, stage.grid);
      }
      if (config.user_kind != user::ModelKind::LogisticRegression) {
        std::string rows = "feature,importance\n";
        for (const auto& [name, value] : user::gini_importance(stage.model)) rows += name + ',' + format_fixed(value, 6) + '\n';
        write_file(out_path(user_out, "importance.csv"), rows, "output");
      }
      std::string scores = "user_id,verified,user_score\n";
      for (const auto& a : stage.authors) {
        scores += a.user_id + (a.verified ? ",true," : ",false,") + format_fixed(stage.scores.at(a.user_id), 2) + '\n';
      }
      write_file(out_path(user_out, "user_scores.csv"), scores, "output");
      const auto& best = stage.grid.best_cell();
      std::cout << "best " << user::describe_hyperparams(best.hyperparams) << " cv f1 "
                << format_fixed(best.report.mean.f1, 4) << " auroc " << format_fixed(best.report.mean.auroc, 4) << '\n';
    } else if (score_images->parsed()) {
      const auto config = image_cfg.resolve();
      const auto data = ingest_inputs(config);
      const auto stage = run_images(data, config);
      Output out(image_out);
      out.stream() << "tweet_id,media_id,image_score,flooding,windy,destruction\n";
      for (std::size_t i = 0; i < stage.results.size(); ++i) {
        const auto& r = stage.results[i];
        out.stream() << data.tweets.accepted[i].id << ',' << r.media_id.value_or("") << ','
                     << format_fixed(r.score, 2);
        if (r.tags) {
          out.stream() << ',' << format_fixed(r.tags->flood, 4) << ',' << format_fixed(r.tags->wind, 4) << ','
                       << format_fixed(r.tags->destruction, 4);
        } else {
          out.stream() << ",,,";
        }
        out.stream() << '\n';
      }
    } else if (score->parsed()) {
      const auto config = score_cfg.resolve();
      if (!fs::is_regular_file(score_calibration)) {
        throw Error("score", "geo calibration not found at " + score_calibration + "; run select-geo first");
      }
      const auto calibration = geo::load_calibration(score_calibration);
      const auto data = ingest_inputs(config);
      const auto snapshot = score_pipeline(data, calibration, config);
      save_snapshot(snapshot, score_out);
      print_manifest_summary(snapshot);
    } else if (run->parsed()) {
      const auto snapshot = run_pipeline(run_cfg.resolve());
      save_snapshot(snapshot, run_out);
      print_manifest_summary(snapshot);
    } else if (filter->parsed()) {
      const auto snapshot = load_snapshot(filter_snapshot);
      auto t = snapshot.config().thresholds;
      if (f_geo) t.geo_min = *f_geo;
      if (f_text) t.text_min = *f_text;
      if (f_user) t.user_min = *f_user;
      if (f_image) t.image_min = *f_image;
      t.validate();
      const auto passed = fusion::filter_stream(snapshot.tweets(), t);
      Output out(filter_out);
      fusion::write_scored_ndjson(out.stream(), passed);
      std::cerr << passed.size() << " of " << snapshot.size() << " tweets pass (" << format_exact(t.geo_min) << ","
                << format_exact(t.text_min) << "," << format_exact(t.user_min) << "," << format_exact(t.image_min)
                << ")\n";
    } else if (report->parsed()) {
      const auto snapshot = load_snapshot(report_snapshot);
      Output out(report_out);
      if (report_cdf) {
        const auto thresholds = fusion::default_cdf_thresholds();
        fusion::write_cdf_csv(out.stream(), snapshot.scores(), thresholds);
      } else {
        out.stream() << snapshot.manifest().format();
      }
    } else if (serve->parsed()) {
      SnapshotStore store;
      store.publish(std::make_shared<const StoreSnapshot>(load_snapshot(serve_snapshot)));
      const auto& cfg = store.current()->config();
      const std::string host = serve_host.empty() ? cfg.bind_host : serve_host;
      const int port = serve_port < 0 ? cfg.bind_port : serve_port;
      MockMapProvider maps(serve_tiles);
      ApiServer server(store, maps);
      g_server = &server;
      std::signal(SIGINT, handle_signal);
      std::signal(SIGTERM, handle_signal);
      std::cerr << "serving snapshot v" << store.current()->version() << " on " << host << ":" << port << '\n';
      server.run(host, port);
      g_server = nullptr;
    }
  } catch (const Error& e) {
    std::cerr << "stormsift: " << e.what() << '\n';
    return exit_code(e.stage());
  } catch (const std::exception& e) {
    std::cerr << "stormsift: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
