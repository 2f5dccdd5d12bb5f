#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <set>

#include "lipprint/config.hpp"
#include "lipprint/error.hpp"
#include "lipprint/evaluation.hpp"
#include "lipprint/features.hpp"
#include "lipprint/matching.hpp"
#include "lipprint/parallel.hpp"
#include "lipprint/store.hpp"
#include "lipprint/synth.hpp"

namespace lipprint::cli {

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitReject = 1;
constexpr int kExitError = 2;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Options {
  std::string mode = "fast";
  std::string config_path;
  std::string upper, lower, output, subject = "anonymous";
  std::string manifest, store, model;
  std::string role = "all";
  std::vector<std::string> templates;
  std::string roc_csv, gnuplot;
  std::string spec;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  std::string image, out_dir;
};

PipelineConfig effective_config(const Options& o, std::ostream& err) {
  PipelineConfig config;
  if (!o.config_path.empty()) config = load_pipeline_config(o.config_path);
  config.validate();
  err << "config: " << describe(config) << '\n';
  return config;
}

Feature extract_feature(const LipPrintPair& pair, MatchMode mode, const PipelineConfig& config) {
  if (mode == MatchMode::kFast) return extract_fast(pair, config);
  return extract_accurate(pair, config);
}

LipPrintPair load_pair(const fs::path& upper, const fs::path& lower, std::string subject) {
  return {load_image(upper), load_image(lower), std::move(subject)};
}

Template make_template(const LipPrintPair& pair, MatchMode mode, const PipelineConfig& config) {
  validate_subject_id(pair.subject_id);
  return {pair.subject_id, extract_feature(pair, mode, config),
          source_digest(pair.upper, pair.lower), current_timestamp()};
}

bool selected(const ManifestEntry& e, const std::string& role) {
  if (role == "all") return true;
  return (role == "train") == (e.role == SampleRole::kTrain);
}

/// Features for manifest entries: reuse enrolled templates from the store when
/// present and fresh, otherwise extract from the images.
std::vector<LabeledFeature> corpus_features(const CorpusManifest& manifest,
                                            const std::string& role, MatchMode mode,
                                            const PipelineConfig& config,
                                            const std::string& store) {
  std::vector<const ManifestEntry*> picked;
  for (const auto& e : manifest.entries) {
    if (selected(e, role)) picked.push_back(&e);
  }
  std::vector<LabeledFeature> out(picked.size());
  parallel_for(picked.size(), [&](std::size_t i) {
    const ManifestEntry& e = *picked[i];
    const LipPrintPair pair = load_pair(e.upper_path, e.lower_path, e.subject_id);
    std::optional<Feature> feature;
    if (!store.empty()) {
      const auto path =
          template_path(store, e.subject_id, source_digest(pair.upper, pair.lower), mode);
      if (fs::exists(path)) {
        Template t = load_template(path);
        if (t.subject_id != e.subject_id || t.mode() != mode) {
          throw Error(ErrorCode::kMalformedTemplate,
                      path.string() + " does not belong to this manifest entry");
        }
        feature = std::move(t.feature);
      }
    }
    if (!feature) feature = extract_feature(pair, mode, config);
    out[i] = {e.subject_id, std::move(*feature), e.upper_path.filename().string()};
  });
  return out;
}

int cmd_extract(const Options& o, std::ostream& out, std::ostream& err) {
  const MatchMode mode = parse_mode(o.mode);
  const PipelineConfig config = effective_config(o, err);
  const Template t = make_template(load_pair(o.upper, o.lower, o.subject), mode, config);
  if (o.output.empty()) {
    out << serialize_template(t);
  } else {
    write_template(t, o.output);
    out << o.output << '\n';
  }
  return kExitOk;
}

int cmd_enroll(const Options& o, std::ostream& out, std::ostream& err) {
  const MatchMode mode = parse_mode(o.mode);
  const PipelineConfig config = effective_config(o, err);
  const CorpusManifest manifest = CorpusManifest::load(o.manifest);
  std::vector<const ManifestEntry*> picked;
  for (const auto& e : manifest.entries) {
    if (selected(e, o.role)) picked.push_back(&e);
  }
  fs::create_directories(o.store);
  std::vector<fs::path> written(picked.size());
  parallel_for(picked.size(), [&](std::size_t i) {
    const ManifestEntry& e = *picked[i];
    written[i] = save_template(
        make_template(load_pair(e.upper_path, e.lower_path, e.subject_id), mode, config),
        o.store);
  });
  for (const auto& p : written) out << p.string() << '\n';
  err << "enrolled " << written.size() << " templates into " << o.store << '\n';
  return kExitOk;
}

int cmd_calibrate(const Options& o, std::ostream& out, std::ostream& err) {
  const MatchMode mode = parse_mode(o.mode);
  const PipelineConfig config = effective_config(o, err);
  const CorpusManifest manifest = CorpusManifest::load(o.manifest);
  const auto training = corpus_features(manifest, "train", mode, config, o.store);
  const ThresholdModel fresh = calibrate(training, mode);

  const fs::path model_path = o.model.empty() ? fs::path(o.store) / "model.txt" : fs::path(o.model);
  ThresholdModel model;
  if (fs::exists(model_path)) model = load_model(model_path);
  merge_calibration(model, fresh, mode);
  if (model_path.has_parent_path()) fs::create_directories(model_path.parent_path());
  save_model(model, model_path);

  out << "t_" << to_string(mode) << ": " << fmt17(fresh.threshold(mode)) << '\n';
  for (const auto& p : fresh.provenance) {
    out << "set_by: " << p.subject_id << " " << p.first_sample << " " << p.second_sample
        << '\n';
  }
  out << "model: " << model_path.string() << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream&) {
  if (o.templates.size() != 2) {
    throw Error(ErrorCode::kInvalidArgument, "verify needs exactly two --template options");
  }
  const Template a = load_template(o.templates[0]);
  const Template b = load_template(o.templates[1]);
  const ThresholdModel model = load_model(o.model);
  if (a.mode() != b.mode()) {
    throw Error(ErrorCode::kInvalidArgument, "templates were extracted in different modes");
  }
  const MatchDecision d = verify(a.feature, b.feature, model, a.mode());
  out << "mode: " << to_string(a.mode()) << '\n'
      << "distance: " << fmt17(d.distance) << '\n'
      << "threshold: " << fmt17(d.threshold) << '\n'
      << "decision: " << (d.accepted ? "accept" : "reject") << '\n';
  return d.accepted ? kExitOk : kExitReject;
}

int cmd_evaluate(const Options& o, std::ostream& out, std::ostream& err) {
  const MatchMode mode = parse_mode(o.mode);
  const PipelineConfig config = effective_config(o, err);
  const CorpusManifest manifest = CorpusManifest::load(o.manifest);
  std::set<std::string> subjects;
  for (const auto& e : manifest.entries) subjects.insert(e.subject_id);
  if (subjects.size() < 2) {
    throw Error(ErrorCode::kInsufficientData, "need ≥2 subjects to evaluate");
  }
  const ThresholdModel model = load_model(o.model);
  const auto corpus = corpus_features(manifest, "all", mode, config, o.store);
  const EvalReport report = evaluate(corpus, model, mode);
  write_report(out, report, mode);
  if (!o.roc_csv.empty()) {
    std::ofstream csv(o.roc_csv);
    if (!csv) throw Error(ErrorCode::kIo, "cannot write " + o.roc_csv);
    write_roc_csv(csv, report.roc);
  }
  if (!o.gnuplot.empty()) {
    std::ofstream dat(o.gnuplot);
    if (!dat) throw Error(ErrorCode::kIo, "cannot write " + o.gnuplot);
    write_roc_gnuplot(dat, report.roc);
  }
  return kExitOk;
}

int cmd_synth(const Options& o, std::ostream& out, std::ostream&) {
  if (o.outputs.size() != 2) {
    throw Error(ErrorCode::kInvalidArgument, "synth needs two -o paths (upper, lower)");
  }
  const SynthSpec spec = parse_synth_spec(KeyValueFile::load(o.spec));
  const LipPrintPair pair = generate_synthetic(spec, o.seed);
  save_pgm(pair.upper, o.outputs[0]);
  save_pgm(pair.lower, o.outputs[1]);
  out << o.outputs[0] << '\n' << o.outputs[1] << '\n';
  return kExitOk;
}

int cmd_edges(const Options& o, std::ostream& out, std::ostream& err) {
  const PipelineConfig config = effective_config(o, err);
  const GrayImage prepared = preprocess_lip(load_image(o.image), config);
  const DirectionalEdgeSets sets = detect_edges(prepared, config.edges);
  fs::create_directories(o.out_dir);
  const std::pair<const char*, const EdgeMap*> maps[] = {
      {"h", &sets.h}, {"v", &sets.v}, {"d1", &sets.d1}, {"d2", &sets.d2}, {"canny", &sets.canny}};
  for (const auto& [name, map] : maps) {
    const fs::path path = fs::path(o.out_dir) / (std::string(name) + ".pgm");
    save_pgm(edge_map_image(*map), path);
    out << path.string() << '\n';
  }
  const DirectionalCounts c = count_all(sets, config.min_component_px);
  out << "counts: H=" << c.h_sobel << " V=" << c.v_sobel << " D1=" << c.d1_sobel
      << " D2=" << c.d2_sobel << " n_canny=" << c.n_canny << '\n';
  return kExitOk;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lip-print feature extraction, verification and evaluation", "lipprint"};
  app.require_subcommand(1);
  Options o;

  const auto add_mode = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--mode", o.mode, "fast | accurate")
                    ->check(CLI::IsMember({"fast", "accurate"}));
    if (required) opt->required();
  };
  const auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "TOML-style pipeline config")
        ->check(CLI::ExistingFile);
  };

  auto* extract = app.add_subcommand("extract", "Extract a template from one print pair");
  add_mode(extract, true);
  add_config(extract);
  extract->add_option("--upper", o.upper)->required();
  extract->add_option("--lower", o.lower)->required();
  extract->add_option("--subject", o.subject, "subject id stored in the template");
  extract->add_option("-o,--output", o.output, "template file (default: stdout)");

  auto* enroll = app.add_subcommand("enroll", "Extract and store templates for a manifest");
  enroll->add_option("--manifest", o.manifest)->required();
  enroll->add_option("--store", o.store)->required();
  add_mode(enroll, true);
  add_config(enroll);
  enroll->add_option("--role", o.role, "all | train | test")
      ->check(CLI::IsMember({"all", "train", "test"}));

  auto* calib = app.add_subcommand("calibrate", "Set the acceptance threshold from training pairs");
  calib->add_option("--manifest", o.manifest)->required();
  calib->add_option("--store", o.store)->required();
  add_mode(calib, true);
  add_config(calib);
  calib->add_option("--model,-o", o.model, "model file (default: <store>/model.txt)");

  auto* verify_cmd = app.add_subcommand("verify", "Compare two templates");
  verify_cmd->add_option("--template", o.templates, "template file (give twice)")
      ->required()
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  verify_cmd->add_option("--model", o.model)->required();

  auto* eval = app.add_subcommand("evaluate", "FAR / FRR / efficiency over a manifest");
  eval->add_option("--manifest", o.manifest)->required();
  eval->add_option("--model", o.model)->required();
  add_mode(eval, true);
  add_config(eval);
  eval->add_option("--store", o.store, "reuse enrolled templates from this store");
  eval->add_option("--roc", o.roc_csv, "write ROC points as CSV");
  eval->add_option("--gnuplot", o.gnuplot, "write ROC points as gnuplot data");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic print pair");
  synth->add_option("--spec", o.spec, "groove spec file")->required()->check(CLI::ExistingFile);
  synth->add_option("--seed", o.seed)->required();
  synth->add_option("-o", o.outputs, "upper then lower PGM path")
      ->required()
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  auto* edges = app.add_subcommand("edges", "Dump the edge maps of one image as PGM");
  edges->add_option("--image", o.image)->required();
  edges->add_option("--out-dir", o.out_dir)->required();
  add_config(edges);

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitError;
  }

  try {
    if (*extract) return cmd_extract(o, out, err);
    if (*enroll) return cmd_enroll(o, out, err);
    if (*calib) return cmd_calibrate(o, out, err);
    if (*verify_cmd) return cmd_verify(o, out, err);
    if (*eval) return cmd_evaluate(o, out, err);
    if (*synth) return cmd_synth(o, out, err);
    if (*edges) return cmd_edges(o, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace lipprint::cli
