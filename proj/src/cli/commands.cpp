// Copyright 2026 The shadowkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>

#include "shadowkit/classifier.hpp"
#include "shadowkit/cli.hpp"
#include "shadowkit/error.hpp"
#include "shadowkit/predictor.hpp"
#include "shadowkit/random.hpp"

namespace shadowkit::cli {

namespace {

// Child streams of the root seed.
enum Stream : std::uint64_t {
  kPointStream = 1,
  kShadowStream = 2,
  kSplitStream = 3,
  kEmbeddingStream = 4,
  kBenchStateStream = 5,
  kBenchShadowStream = 6,
};

std::string join(const std::string& dir, const std::string& name) { return (std::filesystem::path(dir) / name).string(); }

std::string record_name(std::size_t index) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "record_%05zu", index);
  return buffer;
}

std::uint64_t root_seed(const Json& config) { return config.at("seed").get<std::uint64_t>(); }

std::vector<std::string> param_header(const std::string& prefix, std::size_t m) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < m; ++k) out.push_back(prefix + std::to_string(k));
  return out;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// records.csv: one row per record with its parameters and ground-state data.
void write_records(const std::string& path, const std::vector<DataRecord>& records, std::size_t m,
                   const std::vector<std::string>& split_of) {
  CsvTable table(concat(concat(concat({"record", "group", "split"}, param_header("x_", m)), param_header("p_", m)),
                        {"energy", "gap", "degenerate", "state_hash"}));
  for (const auto& r : records) {
    table.row().add_int(static_cast<long long>(r.index)).add(r.group).add(split_of.empty() ? "" : split_of[r.index]);
    for (double v : r.x) table.add(v);
    for (double v : r.physical) table.add(v);
    table.add(r.energy).add(r.gap).add_int(r.degenerate ? 1 : 0).add(r.state_hash);
  }
  table.write(path);
}

std::vector<simulator::LocalTerm> local_terms_of(const observables::ObservableSpec& o) {
  return observables::to_local_terms(o);
}

// Shared by classify and pca: labels, the standardized Gram matrix and the
// kernel PCA embedding with its unsupervised split.
struct EmbeddingRun {
  std::vector<DataRecord> records;
  std::vector<int> labels;
  kernels::GramMatrix gram;
  classifier::PCAEmbedding embedding;
  classifier::SplitResult split;
  double agreement = 0.0;
};

EmbeddingRun run_embedding(const Json& config) {
  const FamilyModel family(config.at("family"));
  const std::uint64_t root = root_seed(config);
  const Json& label_cfg = config.at("labels");
  const std::string source = label_cfg.at("source");

  DatasetOptions options;
  options.T = config.at("dataset").at("T").get<std::size_t>();
  options.reflection = source == "partial_reflection";
  options.interval_length = label_cfg.value("interval_length", std::size_t{4});
  std::vector<observables::ObservableSpec> label_observables;
  if (source == "rydberg_z2") {
    label_observables = {observables::order_param_z2(family.num_qubits()),
                         observables::order_param_z3(family.num_qubits())};
  } else if (source != "partial_reflection" && source != "group") {
    fail(ErrorCode::ConfigError, "labels.source must be partial_reflection, rydberg_z2 or group");
  }

  EmbeddingRun run;
  run.records = build_dataset(family, config.at("groups"), options, label_observables, root);

  std::vector<int> group_label;
  for (const auto& g : config.at("groups")) {
    const int label = g.value("label", 0);
    for (std::size_t c = 0; c < g.at("count").get<std::size_t>(); ++c) group_label.push_back(label);
  }
  for (const auto& r : run.records) {
    int label = 1;
    if (source == "partial_reflection") {
      label = r.reflection > 0.0 ? 1 : -1;
    } else if (source == "rydberg_z2") {
      label = observables::classify_rydberg_phase(r.truths[0], r.truths[1]) == observables::RydbergPhase::Z2Order ? 1
                                                                                                                 : -1;
    } else {
      label = group_label[r.index];
      if (label != 1 && label != -1) fail(ErrorCode::ConfigError, "group labels must be +1 or -1");
    }
    run.labels.push_back(label);
  }

  std::vector<shadows::ClassicalShadow> items;
  for (const auto& r : run.records) items.push_back(r.shadow);
  const kernels::KernelSpec kernel = kernels::kernel_spec_from_json(config.at("kernel"));
  run.gram = kernels::standardize(kernels::gram_matrix(items, kernel));

  const Json& pca = config.at("pca");
  const std::size_t components =
      std::min<std::size_t>(pca.at("components").get<std::size_t>(), run.records.size());
  run.embedding = classifier::kernel_pca(run.gram.entries, components, pca.at("center").get<bool>());
  run.split = classifier::unsupervised_split(run.embedding, pca.at("trials").get<std::size_t>(),
                                             derive_seed(root, kEmbeddingStream),
                                             pca.at("split_components").get<std::size_t>());
  run.agreement = classifier::agreement_up_to_sign(run.split.labels, run.labels);
  return run;
}

void write_embedding_outputs(const std::string& out, const EmbeddingRun& run) {
  const std::size_t k = run.embedding.num_components;
  CsvTable emb(concat({"record", "label", "split_label"}, param_header("pc_", k)));
  for (const auto& r : run.records) {
    emb.row().add_int(static_cast<long long>(r.index)).add_int(run.labels[r.index]).add_int(run.split.labels[r.index]);
    for (std::size_t c = 0; c < k; ++c) {
      emb.add(run.embedding.coordinates(static_cast<Eigen::Index>(r.index), static_cast<Eigen::Index>(c)));
    }
  }
  emb.write(join(out, "embeddings.csv"));

  CsvTable eig({"component", "eigenvalue"});
  for (Eigen::Index i = 0; i < run.embedding.eigenvalues.size(); ++i) {
    eig.row().add_int(i).add(run.embedding.eigenvalues[i]);
  }
  eig.write(join(out, "eigenvalues.csv"));
  kernels::write_gram(join(out, "gram.bin"), run.gram);
}

}  // namespace

// Dataset --------------------------------------------------------------------------------

std::vector<DataRecord> build_dataset(const FamilyModel& family, const Json& groups, const DatasetOptions& options,
                                      const std::vector<observables::ObservableSpec>& observables, std::uint64_t root) {
  const std::size_t m = family.num_params();
  std::vector<DataRecord> records;
  for (const auto& g : groups) {
    const Json box = g.value("box", Json::object());
    for (const auto& [name, value] : box.items()) {
      const bool known = std::any_of(family.axes().begin(), family.axes().end(),
                                     [&](const simulator::ParameterAxis& a) { return a.name == name; });
      if (!known) fail(ErrorCode::ConfigError, "group box names unknown axis '" + name + "'");
    }
    const std::string name = g.value("name", std::string("group"));
    for (std::size_t c = 0; c < g.at("count").get<std::size_t>(); ++c) {
      DataRecord r;
      r.index = records.size();
      r.group = name;
      CounterRng rng(derive_seed(root, kPointStream), r.index);
      for (std::size_t a = 0; a < m; ++a) {
        const auto& axis = family.axes()[a];
        double low = axis.low;
        double high = axis.high;
        if (box.contains(axis.name)) {
          const auto range = box.at(axis.name).get<std::vector<double>>();
          if (range.size() != 2 || range[0] > range[1]) {
            fail(ErrorCode::ConfigError, "group box for '" + axis.name + "' must be [low, high]");
          }
          low = range[0];
          high = range[1];
        }
        const double u = rng.uniform();
        const double p = low + u * (high - low);
        r.physical.push_back(p);
        r.x.push_back(std::clamp(axis.normalize(p), -1.0, 1.0));
      }
      records.push_back(std::move(r));
    }
  }

  std::vector<std::vector<simulator::LocalTerm>> terms;
  for (const auto& o : observables) terms.push_back(local_terms_of(o));

  parallel_for(records.size(), [&](std::size_t i) {
    DataRecord& r = records[i];
    simulator::HamiltonianSpec spec = family.from_physical(r.physical);
    const auto gs = simulator::ground_state(spec);
    r.energy = gs.energy;
    r.gap = gs.gap;
    r.degenerate = gs.degenerate;
    r.state_hash = simulator::state_hash(gs.state);
    const std::uint64_t shadow_seed = derive_seed(root, kShadowStream, r.index);
    if (gs.degenerate) {
      const auto mixture = simulator::ground_multiplet(spec);
      r.shadow = simulator::sample_shadow(mixture, options.T, shadow_seed);
      for (const auto& t : terms) r.truths.push_back(simulator::exact_expectation(mixture, t));
    } else {
      r.shadow = simulator::sample_shadow(gs.state, options.T, shadow_seed);
      for (const auto& t : terms) r.truths.push_back(simulator::exact_expectation(gs.state, t));
    }
    if (options.reflection) {
      const auto [i1, i2] = observables::central_intervals(gs.state.n, options.interval_length);
      r.reflection = observables::partial_reflection_invariant(gs.state, i1, i2);
    }
    if (options.keep_spec) r.spec = std::move(spec);
  });
  return records;
}

// generate -------------------------------------------------------------------------------

Json cmd_generate(const Json& config) {
  const std::string out = config.at("out");
  const FamilyModel family(config.at("family"));
  const auto observables = parse_observables(config.at("observables"), family.num_qubits());
  DatasetOptions options;
  options.T = config.at("dataset").at("T").get<std::size_t>();
  options.keep_spec = config.at("dataset").at("write_specs").get<bool>();
  const auto records = build_dataset(family, config.at("groups"), options, observables, root_seed(config));

  ensure_directory(join(out, "shadows"));
  if (options.keep_spec) ensure_directory(join(out, "specs"));
  CsvTable files({"record", "shadow_file", "spec_file", "num_qubits", "num_snapshots", "payload_bytes"});
  for (const auto& r : records) {
    const std::string shadow_file = join("shadows", record_name(r.index) + ".shdw");
    shadows::write_shadow_file(join(out, shadow_file), r.shadow);
    std::string spec_file;
    if (options.keep_spec) {
      spec_file = join("specs", record_name(r.index) + ".json");
      std::ofstream spec_out(join(out, spec_file), std::ios::binary);
      if (!spec_out) fail(ErrorCode::IoError, "cannot write '" + join(out, spec_file) + "'");
      spec_out << simulator::to_json(r.spec).dump(2) << '\n';
    }
    files.row()
        .add_int(static_cast<long long>(r.index))
        .add(shadow_file)
        .add(spec_file)
        .add_int(static_cast<long long>(r.shadow.num_qubits()))
        .add_int(static_cast<long long>(r.shadow.num_snapshots()))
        .add_int(static_cast<long long>(r.shadow.raw().size()));
  }
  files.write(join(out, "files.csv"));
  write_records(join(out, "records.csv"), records, family.num_params(), {});

  CsvTable truth({"record", "observable", "observable_id", "exact"});
  for (const auto& r : records) {
    for (std::size_t o = 0; o < observables.size(); ++o) {
      truth.row().add_int(static_cast<long long>(r.index)).add(observables[o].name).add(observables[o].id).add(r.truths[o]);
    }
  }
  truth.write(join(out, "truth.csv"));

  Json obs = Json::array();
  for (const auto& o : observables) obs.push_back(observables::to_json(o));
  const Json summary = {{"records", records.size()}, {"observables", obs}};
  write_sidecar(join(out, "generate.json"), "generate", config, summary);
  return summary;
}

// predict --------------------------------------------------------------------------------

Json cmd_predict(const Json& config) {
  const std::string out = config.at("out");
  const std::uint64_t root = root_seed(config);
  const FamilyModel family(config.at("family"));
  const auto observables = parse_observables(config.at("observables"), family.num_qubits());
  const Json& ds = config.at("dataset");
  const auto n_train = ds.at("N_train").get<std::size_t>();
  const auto n_val = ds.at("N_validation").get<std::size_t>();
  const auto n_test = ds.at("N_test").get<std::size_t>();
  const std::size_t total = n_train + n_val + n_test;

  DatasetOptions options;
  options.T = ds.at("T").get<std::size_t>();
  const Json groups = Json::array({{{"name", "all"}, {"count", total}}});
  const auto records = build_dataset(family, groups, options, observables, root);
  const auto split = predictor::split_indices(total, n_train, n_val, derive_seed(root, kSplitStream));

  std::vector<std::string> split_of(total);
  for (auto i : split.train) split_of[i] = "train";
  for (auto i : split.validation) split_of[i] = "validation";
  for (auto i : split.test) split_of[i] = "test";
  write_records(join(out, "records.csv"), records, family.num_params(), split_of);

  auto make_set = [&](const std::vector<std::size_t>& idx) {
    std::vector<predictor::Record> recs;
    for (auto i : idx) recs.push_back({records[i].x, records[i].shadow});
    return std::make_shared<const predictor::TrainingSet>(family.num_params(), std::move(recs));
  };
  const auto train = make_set(split.train);

  std::vector<predictor::Observable> terms;
  for (const auto& o : observables) terms.push_back(o.terms);

  const Json& model_cfg = config.at("model");
  const std::string mode = model_cfg.at("mode");
  std::vector<kernels::Point> test_points;
  for (auto i : split.test) test_points.push_back(records[i].x);

  // predictions(q, o) for test record q and observable o.
  RMatrix predictions(static_cast<Eigen::Index>(n_test), static_cast<Eigen::Index>(observables.size()));
  std::vector<std::string> kernel_used(observables.size());
  std::vector<double> lambda_used(observables.size(), 0.0);
  std::vector<double> validation_rmse(observables.size(), std::nan(""));
  std::size_t overlapping = 0;

  if (mode == "dirichlet") {
    const double cutoff = model_cfg.at("cutoff").get<double>();
    const auto model = predictor::train_dirichlet(train, cutoff);
    const RMatrix w = model.weight_matrix(test_points);
    for (std::size_t o = 0; o < observables.size(); ++o) {
      predictions.col(static_cast<Eigen::Index>(o)) = w * *train->estimates(terms[o]);
      kernel_used[o] = kernels::kernel_name(kernels::DirichletSpec{cutoff});
    }
  } else {
    const auto validation = make_set(split.validation);
    std::vector<kernels::KernelSpec> candidates;
    for (const auto& k : model_cfg.at("kernels")) candidates.push_back(kernels::kernel_spec_from_json(k));
    const auto grid = model_cfg.at("lambda_grid").get<std::vector<double>>();
    RMatrix truth;
    const bool exact_target = model_cfg.at("validation_target") == "exact";
    if (exact_target) {
      truth.resize(static_cast<Eigen::Index>(n_val), static_cast<Eigen::Index>(observables.size()));
      for (std::size_t v = 0; v < n_val; ++v) {
        for (std::size_t o = 0; o < observables.size(); ++o) {
          truth(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(o)) = records[split.validation[v]].truths[o];
        }
      }
    }
    const auto report =
        predictor::model_select(train, *validation, terms, grid, candidates, exact_target ? &truth : nullptr);
    overlapping = report.overlapping_records;
    for (std::size_t o = 0; o < observables.size(); ++o) {
      const auto& sel = report.selections[o];
      const RMatrix w = sel.model->weight_matrix(test_points);
      predictions.col(static_cast<Eigen::Index>(o)) = w * *train->estimates(terms[o]);
      kernel_used[o] = kernels::kernel_name(sel.model->kernel());
      lambda_used[o] = sel.lambda;
      validation_rmse[o] = sel.validation_rmse;
    }
  }

  CsvTable pred(concat(concat({"record"}, param_header("x_", family.num_params())),
                       {"observable", "prediction", "exact", "baseline"}));
  CsvTable summary_table({"observable", "observable_id", "kernel", "lambda", "validation_rmse", "test_rmse",
                          "baseline_rmse"});
  double se = 0.0;
  double se_base = 0.0;
  for (std::size_t o = 0; o < observables.size(); ++o) {
    const RVector& est = *train->estimates(terms[o]);
    const double baseline = est.mean();
    double se_o = 0.0;
    double se_base_o = 0.0;
    for (std::size_t q = 0; q < n_test; ++q) {
      const DataRecord& r = records[split.test[q]];
      const double p = predictions(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(o));
      se_o += (p - r.truths[o]) * (p - r.truths[o]);
      se_base_o += (baseline - r.truths[o]) * (baseline - r.truths[o]);
    }
    se += se_o;
    se_base += se_base_o;
    summary_table.row()
        .add(observables[o].name)
        .add(observables[o].id)
        .add(kernel_used[o])
        .add(lambda_used[o])
        .add(validation_rmse[o])
        .add(std::sqrt(se_o / static_cast<double>(n_test)))
        .add(std::sqrt(se_base_o / static_cast<double>(n_test)));
  }
  for (std::size_t q = 0; q < n_test; ++q) {
    const DataRecord& r = records[split.test[q]];
    for (std::size_t o = 0; o < observables.size(); ++o) {
      pred.row().add_int(static_cast<long long>(r.index));
      for (double v : r.x) pred.add(v);
      pred.add(observables[o].name)
          .add(predictions(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(o)))
          .add(r.truths[o])
          .add(train->estimates(terms[o])->mean());
    }
  }
  pred.write(join(out, "predictions.csv"));
  summary_table.write(join(out, "model_selection.csv"));

  const double count = static_cast<double>(n_test * observables.size());
  const Json summary = {{"mode", mode},
                        {"N_train", n_train},
                        {"N_validation", n_val},
                        {"N_test", n_test},
                        {"num_observables", observables.size()},
                        {"rmse", std::sqrt(se / count)},
                        {"baseline_rmse", std::sqrt(se_base / count)},
                        {"overlapping_validation_records", overlapping}};
  write_sidecar(join(out, "predict.json"), "predict", config, summary);
  return summary;
}

// classify -------------------------------------------------------------------------------

Json cmd_classify(const Json& config) {
  const std::string out = config.at("out");
  const std::uint64_t root = root_seed(config);
  EmbeddingRun run = run_embedding(config);
  const std::size_t n = run.records.size();
  const Json& svm_cfg = config.at("svm");
  const auto n_train = static_cast<std::size_t>(
      std::llround(svm_cfg.at("train_fraction").get<double>() * static_cast<double>(n)));
  if (n_train == 0 || n_train >= n) fail(ErrorCode::ConfigError, "svm.train_fraction leaves an empty split");
  const auto split = predictor::split_indices(n, n_train, 0, derive_seed(root, kSplitStream));

  RMatrix k_train(static_cast<Eigen::Index>(n_train), static_cast<Eigen::Index>(n_train));
  std::vector<int> y_train;
  for (std::size_t a = 0; a < n_train; ++a) {
    y_train.push_back(run.labels[split.train[a]]);
    for (std::size_t b = 0; b < n_train; ++b) {
      k_train(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          run.gram.entries(static_cast<Eigen::Index>(split.train[a]), static_cast<Eigen::Index>(split.train[b]));
    }
  }
  classifier::SVMOptions options;
  options.lambda_sq = svm_cfg.at("lambda_sq").get<double>();
  options.tol = svm_cfg.at("tol").get<double>();
  options.max_iter = svm_cfg.at("max_iter").get<std::size_t>();
  classifier::SVMModel model = classifier::svm_train(k_train, y_train, options);
  model.kernel_hash = kernels::kernel_name(kernels::kernel_spec_from_json(config.at("kernel")));

  std::vector<int> predicted(n, 0);
  std::vector<double> score(n, 0.0);
  std::vector<std::string> split_of(n, "train");
  std::vector<double> row(n_train);
  auto evaluate = [&](std::size_t i) {
    for (std::size_t b = 0; b < n_train; ++b) {
      row[b] = run.gram.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(split.train[b]));
    }
    const auto p = classifier::svm_predict(model, row);
    predicted[i] = p.label;
    score[i] = p.score;
  };
  for (auto i : split.train) evaluate(i);
  // Confusion counts indexed [true == +1 ? 0 : 1][predicted == +1 ? 0 : 1].
  std::array<std::array<std::size_t, 2>, 2> confusion{};
  std::size_t correct = 0;
  for (auto i : split.test) {
    split_of[i] = "test";
    evaluate(i);
    ++confusion[run.labels[i] == 1 ? 0 : 1][predicted[i] == 1 ? 0 : 1];
    if (predicted[i] == run.labels[i]) ++correct;
  }
  const double accuracy = static_cast<double>(correct) / static_cast<double>(split.test.size());
  double radius_sq = 0.0;
  for (Eigen::Index i = 0; i < k_train.rows(); ++i) radius_sq = std::max(radius_sq, k_train(i, i));
  const double bound = classifier::svm_error_bound(model.training_error, n_train, options.lambda_sq,
                                                   std::sqrt(radius_sq), svm_cfg.at("delta").get<double>());

  const std::size_t m = run.records.empty() ? 0 : run.records.front().x.size();
  CsvTable labels(concat(concat(concat({"record", "group"}, param_header("x_", m)), param_header("p_", m)),
                         {"reflection", "label", "split", "predicted", "score", "split_label"}));
  for (const auto& r : run.records) {
    labels.row().add_int(static_cast<long long>(r.index)).add(r.group);
    for (double v : r.x) labels.add(v);
    for (double v : r.physical) labels.add(v);
    labels.add(r.reflection)
        .add_int(run.labels[r.index])
        .add(split_of[r.index])
        .add_int(predicted[r.index])
        .add(score[r.index])
        .add_int(run.split.labels[r.index]);
  }
  labels.write(join(out, "labels.csv"));
  write_records(join(out, "records.csv"), run.records, m, split_of);
  write_embedding_outputs(out, run);

  const Json summary = {
      {"N", n},
      {"N_train", n_train},
      {"N_test", split.test.size()},
      {"accuracy", accuracy},
      {"confusion", {{"true_pos", confusion[0][0]}, {"false_neg", confusion[0][1]},
                     {"false_pos", confusion[1][0]}, {"true_neg", confusion[1][1]}}},
      {"svm", classifier::to_json(model)},
      {"error_bound", bound},
      {"pca_agreement", run.agreement},
      {"pca_best_trial", run.split.best_trial},
  };
  CsvTable metrics({"metric", "value"});
  metrics.row().add("accuracy").add(accuracy);
  metrics.row().add("training_hinge").add(model.training_error);
  metrics.row().add("training_misclassified").add_int(static_cast<long long>(model.misclassified));
  metrics.row().add("svm_converged").add_int(model.converged ? 1 : 0);
  metrics.row().add("error_bound").add(bound);
  metrics.row().add("pca_agreement").add(run.agreement);
  metrics.row().add("true_pos").add_int(static_cast<long long>(confusion[0][0]));
  metrics.row().add("false_neg").add_int(static_cast<long long>(confusion[0][1]));
  metrics.row().add("false_pos").add_int(static_cast<long long>(confusion[1][0]));
  metrics.row().add("true_neg").add_int(static_cast<long long>(confusion[1][1]));
  metrics.write(join(out, "summary.csv"));
  write_sidecar(join(out, "classify.json"), "classify", config, summary);
  return summary;
}

// pca ------------------------------------------------------------------------------------

Json cmd_pca(const Json& config) {
  const std::string out = config.at("out");
  const EmbeddingRun run = run_embedding(config);
  write_embedding_outputs(out, run);
  const std::size_t m = run.records.empty() ? 0 : run.records.front().x.size();
  write_records(join(out, "records.csv"), run.records, m, {});
  std::size_t positives = 0;
  for (int y : run.labels) positives += y == 1 ? 1 : 0;
  const Json summary = {{"N", run.records.size()},
                        {"positive_labels", positives},
                        {"agreement", run.agreement},
                        {"best_trial", run.split.best_trial},
                        {"split_score", run.split.score}};
  CsvTable metrics({"metric", "value"});
  metrics.row().add("agreement").add(run.agreement);
  metrics.row().add("split_score").add(run.split.score);
  metrics.row().add("positive_labels").add_int(static_cast<long long>(positives));
  metrics.write(join(out, "summary.csv"));
  write_sidecar(join(out, "pca.json"), "pca", config, summary);
  return summary;
}

// invariant ------------------------------------------------------------------------------

Json cmd_invariant(const Json& config) {
  const std::string out = config.at("out");
  const std::string quantity = config.at("quantity");
  const Json& fam = config.at("family");
  Json summary;

  if (quantity == "twist") {
    simulator::AkltFamily aklt;
    aklt.n = fam.value("n", std::size_t{8});
    aklt.periodic = fam.value("periodic", true);
    if (simulator::family_from_string(fam.at("name").get<std::string>()) != simulator::Family::AKLT) {
      fail(ErrorCode::ConfigError, "the twist operator is evaluated on the AKLT family");
    }
    const auto gs = simulator::ground_state(aklt.build());
    CsvTable table({"ell", "real", "imag", "hermitian"});
    Json values = Json::array();
    for (const auto& e : config.at("ells")) {
      const double ell = e.get<double>();
      const auto z = observables::twist_expectation(gs.state, ell, aklt.periodic);
      table.row().add(ell).add(z.real()).add(z.imag()).add(observables::twist_hermitian_expectation(gs.state, ell, aklt.periodic));
      values.push_back({{"ell", ell}, {"real", z.real()}, {"imag", z.imag()}});
    }
    table.write(join(out, "twist.csv"));
    summary = {{"energy", gs.energy}, {"gap", gs.gap}, {"degenerate", gs.degenerate}, {"values", values}};
  } else if (quantity == "partial_reflection") {
    const FamilyModel family(fam);
    const std::size_t length = config.at("interval_length").get<std::size_t>();
    const Json& grid = config.at("grid");
    std::vector<std::vector<double>> axes;
    for (const auto& axis : family.axes()) {
      if (!grid.contains(axis.name)) fail(ErrorCode::ConfigError, "grid has no values for axis '" + axis.name + "'");
      axes.push_back(grid.at(axis.name).get<std::vector<double>>());
      if (axes.back().empty()) fail(ErrorCode::ConfigError, "grid axis '" + axis.name + "' is empty");
    }
    // Cartesian product, last axis fastest.
    std::vector<std::vector<double>> points(1);
    for (const auto& values : axes) {
      std::vector<std::vector<double>> next;
      for (const auto& p : points) {
        for (double v : values) {
          auto q = p;
          q.push_back(v);
          next.push_back(std::move(q));
        }
      }
      points = std::move(next);
    }
    struct Row {
      double energy = 0.0, gap = 0.0, value = 0.0;
      bool degenerate = false;
    };
    std::vector<Row> rows(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
      const auto gs = simulator::ground_state(family.from_physical(points[i]));
      const auto [i1, i2] = observables::central_intervals(gs.state.n, length);
      rows[i] = {gs.energy, gs.gap, observables::partial_reflection_invariant(gs.state, i1, i2), gs.degenerate};
    });
    std::vector<std::string> names;
    for (const auto& a : family.axes()) names.push_back(a.name);
    CsvTable table(concat(concat({"point"}, names), {"energy", "gap", "degenerate", "reflection"}));
    for (std::size_t i = 0; i < points.size(); ++i) {
      table.row().add_int(static_cast<long long>(i));
      for (double v : points[i]) table.add(v);
      table.add(rows[i].energy).add(rows[i].gap).add_int(rows[i].degenerate ? 1 : 0).add(rows[i].value);
    }
    table.write(join(out, "invariant.csv"));
    summary = {{"points", points.size()}, {"interval_length", length}};
  } else {
    fail(ErrorCode::ConfigError, "quantity must be 'partial_reflection' or 'twist'");
  }
  write_sidecar(join(out, "invariant.json"), "invariant", config, summary);
  return summary;
}

// shadow-bench ---------------------------------------------------------------------------

Json cmd_shadow_bench(const Json& config) {
  const std::string out = config.at("out");
  const std::uint64_t root = root_seed(config);
  const auto n = config.at("n").get<std::size_t>();
  const auto r = config.at("r").get<std::size_t>();
  const double eps = config.at("eps");
  const double delta = config.at("delta");
  const auto seeds = config.at("seeds").get<std::size_t>();
  const auto states = config.at("states").get<std::vector<std::string>>();
  if (r > n) fail(ErrorCode::ConfigError, "r exceeds n");

  const std::size_t bound_t = shadows::snapshot_count_bound(n, r, eps, delta);
  const auto base = config.at("T_base").get<std::size_t>();
  const std::size_t t0 = base == 0 ? bound_t : base;
  std::vector<std::size_t> t_list;
  for (std::size_t k = 0; k <= config.at("doublings").get<std::size_t>(); ++k) t_list.push_back(t0 << k);

  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> current;
  std::function<void(std::size_t)> choose = [&](std::size_t start) {
    if (current.size() == r) {
      subsets.push_back(current);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      current.push_back(i);
      choose(i + 1);
      current.pop_back();
    }
  };
  choose(0);

  // errors[(state * seeds + seed) * |T| + k]
  std::vector<double> errors(states.size() * seeds * t_list.size(), 0.0);
  parallel_for(states.size() * seeds, [&](std::size_t task) {
    const std::size_t kind = task / seeds;
    const std::size_t seed = task % seeds;
    simulator::StateVector psi;
    if (states[kind] == "ghz") {
      psi = simulator::ghz_state(n);
    } else {
      CounterRng rng(derive_seed(root, kBenchStateStream), seed);
      std::vector<CVector> sites;
      for (std::size_t i = 0; i < n; ++i) {
        CVector v(2);
        for (Eigen::Index c = 0; c < 2; ++c) v[c] = Complex(rng.normal(), rng.normal());
        sites.push_back(v / v.norm());
      }
      psi = simulator::product_state(sites);
    }
    std::vector<CMatrix> exact;
    for (const auto& s : subsets) exact.push_back(simulator::exact_rdm(psi, s, r).matrix);
    for (std::size_t k = 0; k < t_list.size(); ++k) {
      const auto shadow = simulator::sample_shadow(psi, t_list[k], derive_seed(root, kBenchShadowStream + kind, seed * 64 + k));
      double worst = 0.0;
      for (std::size_t s = 0; s < subsets.size(); ++s) {
        worst = std::max(worst, trace_norm_distance(shadows::shadow_rdm(shadow, subsets[s], r).matrix, exact[s]));
      }
      errors[task * t_list.size() + k] = worst;
    }
  });

  CsvTable raw({"state", "seed", "T", "max_error"});
  CsvTable table({"state", "T", "median_error", "mean_error", "fraction_within_eps"});
  Json per_state = Json::object();
  for (std::size_t kind = 0; kind < states.size(); ++kind) {
    Json medians = Json::array();
    for (std::size_t k = 0; k < t_list.size(); ++k) {
      std::vector<double> column;
      for (std::size_t seed = 0; seed < seeds; ++seed) {
        const double e = errors[(kind * seeds + seed) * t_list.size() + k];
        column.push_back(e);
        raw.row().add(states[kind]).add_int(static_cast<long long>(seed)).add_int(static_cast<long long>(t_list[k])).add(e);
      }
      std::vector<double> sorted = column;
      std::sort(sorted.begin(), sorted.end());
      const std::size_t h = sorted.size() / 2;
      const double median = sorted.size() % 2 ? sorted[h] : 0.5 * (sorted[h - 1] + sorted[h]);
      double mean = 0.0;
      std::size_t within = 0;
      for (double e : column) {
        mean += e / static_cast<double>(column.size());
        within += e <= eps ? 1 : 0;
      }
      const double fraction = static_cast<double>(within) / static_cast<double>(column.size());
      table.row().add(states[kind]).add_int(static_cast<long long>(t_list[k])).add(median).add(mean).add(fraction);
      medians.push_back({{"T", t_list[k]}, {"median", median}, {"within", within}});
    }
    per_state[states[kind]] = medians;
  }
  raw.write(join(out, "bench_raw.csv"));
  table.write(join(out, "bench.csv"));
  const Json summary = {{"T_bound", bound_t}, {"T", t_list}, {"subsets", subsets.size()}, {"states", per_state}};
  write_sidecar(join(out, "shadow_bench.json"), "shadow-bench", config, summary);
  return summary;
}

// Dispatch ---------------------------------------------------------------------------------

Json run_command(std::string_view command, const Json& user) {
  const Json config = resolve_config(command, user);
  set_max_threads(config.at("threads").get<unsigned>());
  ensure_directory(config.at("out").get<std::string>());
  if (command == "generate") return cmd_generate(config);
  if (command == "predict") return cmd_predict(config);
  if (command == "classify") return cmd_classify(config);
  if (command == "pca") return cmd_pca(config);
  if (command == "invariant") return cmd_invariant(config);
  return cmd_shadow_bench(config);
}

}  // namespace shadowkit::cli
