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

// Acceptance runner: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "shadowkit/classifier.hpp"
#include "shadowkit/cli.hpp"
#include "shadowkit/kernels.hpp"
#include "shadowkit/observables.hpp"
#include "shadowkit/random.hpp"
#include "shadowkit/shadows.hpp"
#include "shadowkit/simulator.hpp"

namespace sk = shadowkit;
namespace sh = shadowkit::shadows;
namespace kn = shadowkit::kernels;
namespace cl = shadowkit::classifier;
namespace ob = shadowkit::observables;
namespace sim = shadowkit::simulator;
namespace cli = shadowkit::cli;
namespace fs = std::filesystem;
using cli::Json;

#ifndef SHADOWKIT_CONFIG_DIR
#define SHADOWKIT_CONFIG_DIR "configs"
#endif

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::map<std::string, std::string> csv_files(const fs::path& dir) {
  std::map<std::string, std::string> out;
  if (!fs::exists(dir)) return out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.path().extension() == ".csv") out[fs::relative(e.path(), dir).string()] = slurp(e.path());
  return out;
}

class Runner {
 public:
  explicit Runner(fs::path out) : out_(std::move(out)) {}

  Json run(const std::string& command, const std::string& config_file, const std::string& tag, unsigned threads) {
    Json user = cli::load_config(std::string(SHADOWKIT_CONFIG_DIR) + "/" + config_file);
    user["threads"] = threads;
    user["out"] = (out_ / tag).string();
    fs::remove_all(out_ / tag);
    return cli::run_command(command, user);
  }

  const fs::path& out() const { return out_; }

 private:
  fs::path out_;
};

// Criterion 1: snapshot spectra and the three-valued trace table.
Outcome snapshot_algebra() {
  double worst = 0.0;
  for (std::size_t s = 0; s < sh::kNumSymbols; ++s) {
    const auto m = sh::snapshot_matrix(static_cast<sh::SnapshotSymbol>(s));
    const auto ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd>(m).eigenvalues();
    worst = std::max({worst, std::abs(ev[0] + 1.0), std::abs(ev[1] - 2.0), std::abs(m.trace() - 1.0)});
  }
  std::size_t off_table = 0;
  for (std::size_t s = 0; s < sh::kNumSymbols; ++s) {
    for (std::size_t t = 0; t < sh::kNumSymbols; ++t) {
      const auto a = static_cast<sh::SnapshotSymbol>(s), b = static_cast<sh::SnapshotSymbol>(t);
      const double v = kn::shadow_trace(a, b);
      const double overlap = std::norm(sh::symbol_state(a).dot(sh::symbol_state(b)));
      worst = std::max(worst, std::abs(v - (9.0 * overlap - 4.0)));
      const bool in_set = std::abs(v + 4.0) <= 1e-12 || std::abs(v - 0.5) <= 1e-12 || std::abs(v - 5.0) <= 1e-12;
      off_table += in_set ? 0 : 1;
    }
  }
  return {worst <= 1e-12 && off_table == 0, "max deviation " + fmt(worst) + ", values outside {-4, 1/2, 5}: " +
                                                std::to_string(off_table)};
}

// Criterion 2: Born-weighted average over the six outcomes reproduces rho.
Outcome unbiasedness() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    sk::CounterRng rng(seed, 11);
    Eigen::Vector2cd psi(sk::Complex(rng.normal(), rng.normal()), sk::Complex(rng.normal(), rng.normal()));
    psi.normalize();
    const Eigen::Matrix2cd rho = psi * psi.adjoint();
    Eigen::Matrix2cd avg = Eigen::Matrix2cd::Zero();
    for (std::size_t s = 0; s < sh::kNumSymbols; ++s) {
      const auto sym = static_cast<sh::SnapshotSymbol>(s);
      const double born = std::norm(sh::symbol_state(sym).dot(psi));
      avg += (1.0 / 3.0) * born * sh::snapshot_matrix(sym);
    }
    worst = std::max(worst, (avg - rho).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-12, "20 states, max |E[snapshot] - rho| = " + fmt(worst)};
}

// Criterion 3: snapshot-count bound and the inverse-square-root law.
Outcome count_scaling(Runner& runner, unsigned threads) {
  const Json s = runner.run("shadow-bench", "shadow_bench.json", "c3_shadow_bench", threads);
  bool ok = true;
  std::string detail = "T0=" + s["T_bound"].dump();
  for (const auto& [state, rows] : s["states"].items()) {
    const std::size_t within = rows[0]["within"];
    const double m0 = rows[0]["median"], m2 = rows[2]["median"];
    const double ratio = m0 / m2;
    ok = ok && within >= 18 && ratio >= 1.4 && ratio <= 2.6;
    detail += "; " + state + ": " + std::to_string(within) + "/20 within eps, median " + fmt(m0) + " -> " + fmt(m2) +
              " at 4T (ratio " + fmt(ratio, 3) + ")";
  }
  return {ok, detail};
}

// Criterion 4: TFIM Dirichlet and XXZ ridge prediction.
Outcome prediction(Runner& runner, unsigned threads) {
  const Json tfim = runner.run("predict", "tfim_predict.json", "c4_tfim", threads);
  const Json xxz = runner.run("predict", "xxz_predict.json", "c4_xxz", threads);
  const double tfim_rmse = tfim["rmse"];
  const double xxz_rmse = xxz["rmse"], xxz_base = xxz["baseline_rmse"];
  const bool ok = tfim_rmse <= 0.2 && xxz_base >= 2.0 * xxz_rmse;
  return {ok, "TFIM RMSE " + fmt(tfim_rmse) + " (<= 0.2; training-mean baseline " + fmt(tfim["baseline_rmse"].get<double>()) +
                  "); XXZ ridge RMSE " + fmt(xxz_rmse) + " vs baseline " + fmt(xxz_base) + " (" +
                  fmt(xxz_base / xxz_rmse, 3) + "x, need >= 2x)"};
}

// Criterion 5: truncated kernel vs closed form at eta = 1e-3.
Outcome shadow_kernel_truncation() {
  const double tau = 1.0, gamma = 1.0, eta = 1e-3;
  const auto orders = kn::truncation_orders(tau, gamma, eta);
  const double ceiling = std::exp(tau * std::exp(5.0 * gamma));
  double worst = 0.0;
  bool bounded = true;
  for (std::uint64_t pair = 0; pair < 50; ++pair) {
    sk::CounterRng rng(pair, 5);
    std::vector<std::uint8_t> a(18), b(18);
    for (auto& v : a) v = static_cast<std::uint8_t>(rng.below(6));
    for (auto& v : b) v = static_cast<std::uint8_t>(rng.below(6));
    const sh::ClassicalShadow sa(6, 3, a), sb(6, 3, b);
    const double closed = kn::shadow_kernel(sa, sb, tau, gamma).value();
    const double finite = kn::finite_shadow_kernel(sa, sb, tau, gamma, orders.D, orders.R);
    worst = std::max(worst, std::abs(closed - finite));
    bounded = bounded && closed <= ceiling;
  }
  return {worst <= 2 * eta && bounded, "D=" + std::to_string(orders.D) + ", R=" + std::to_string(orders.R) +
                                           ", max |finite - closed| = " + fmt(worst) + " (<= " + fmt(2 * eta) +
                                           "), closed form below exp(tau e^(5 gamma)): " + (bounded ? "yes" : "no")};
}

// Criterion 6: unsupervised and supervised phase classification.
Outcome classification(Runner& runner, unsigned threads) {
  const Json s = runner.run("classify", "xxz_classify.json", "c6_classify", threads);
  const double agreement = s["pca_agreement"], accuracy = s["accuracy"];
  const double hinge = s["svm"]["training_error"];
  const std::size_t wrong = s["svm"]["misclassified"];
  const bool ok = agreement >= 0.9 && accuracy >= 0.95 && wrong == 0 && hinge <= 1e-3;
  return {ok, "PCA+median agreement " + fmt(agreement) + ", SVM held-out accuracy " + fmt(accuracy) +
                  ", training hinge " + fmt(hinge) + ", training misclassified " + std::to_string(wrong)};
}

// Criterion 7: SVM example and the margin bound on synthetic data.
Outcome svm_machinery() {
  const sk::RMatrix eye = sk::RMatrix::Identity(2, 2);
  const auto two = cl::svm_train(eye, {1, -1}, {4.0, 1e-3, 20000});
  const double lambda = 4.0, delta = 0.1;
  std::size_t held = 0;
  const std::size_t seeds = 50, n_train = 100, n_test = 200;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    sk::CounterRng rng(seed, 21);
    std::vector<Eigen::Vector2d> pts;
    std::vector<int> labels;
    while (pts.size() < n_train + n_test) {
      const double a = 2 * rng.uniform() - 1, b = 2 * rng.uniform() - 1;
      if (a * a + b * b > 1.0 || std::abs(a) < 1.0 / lambda) continue;
      pts.emplace_back(a, b);
      labels.push_back(a > 0 ? 1 : -1);
    }
    sk::RMatrix K(n_train, n_train);
    double radius_sq = 0.0;
    for (std::size_t i = 0; i < n_train; ++i) {
      for (std::size_t j = 0; j < n_train; ++j)
        K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = pts[i].dot(pts[j]);
      radius_sq = std::max(radius_sq, pts[i].squaredNorm());
    }
    const std::vector<int> train_labels(labels.begin(), labels.begin() + n_train);
    const auto model = cl::svm_train(K, train_labels, {lambda * lambda, 1e-3, 20000});
    std::size_t wrong = 0;
    std::vector<double> row(n_train);
    for (std::size_t q = n_train; q < n_train + n_test; ++q) {
      for (std::size_t j = 0; j < n_train; ++j) row[j] = pts[q].dot(pts[j]);
      wrong += cl::svm_predict(model, row).label != labels[q] ? 1 : 0;
    }
    const double err = static_cast<double>(wrong) / static_cast<double>(n_test);
    held += err <= cl::svm_error_bound(model.training_error, n_train, lambda * lambda, std::sqrt(radius_sq), delta) ? 1 : 0;
  }
  const bool ok = two.training_error <= 1e-3 && held * 10 >= seeds * 9;
  return {ok, "N=2 example training error " + fmt(two.training_error) + "; bound held in " + std::to_string(held) + "/" +
                  std::to_string(seeds) + " seeds"};
}

// Criterion 8: twist operator on the zero-level product state and AKLT.
Outcome twist(Runner& runner, unsigned threads) {
  const auto zero = sim::basis_state(3, std::vector<std::size_t>(8, 1));
  double product_dev = 0.0;
  for (double ell : {0.0, 1.0, 2.0, 3.0}) product_dev = std::max(product_dev, std::abs(ob::twist_expectation(zero, ell) - 1.0));
  const Json s = runner.run("invariant", "aklt_twist.json", "c8_twist", threads);
  bool negative = true;
  std::string values;
  for (const auto& v : s["values"]) {
    const double ell = v["ell"], re = v["real"];
    if (ell == 2.0 || ell == 3.0) negative = negative && re < 0.0;
    values += (values.empty() ? "" : ", ") + std::string("l=") + fmt(ell, 2) + ": " + fmt(re);
  }
  return {product_dev == 0.0 && negative,
          "product |<O_l> - 1| = " + fmt(product_dev) + "; AKLT n=8 periodic Re<O_l>: " + values};
}

// Criterion 9: CSV outputs are identical when rerun at another thread count.
Outcome reproducibility(Runner& runner, unsigned threads) {
  struct Job {
    std::string command, config, tag;
  };
  const std::vector<Job> jobs = {{"shadow-bench", "shadow_bench.json", "c3_shadow_bench"},
                                 {"predict", "tfim_predict.json", "c4_tfim"},
                                 {"predict", "xxz_predict.json", "c4_xxz"},
                                 {"classify", "xxz_classify.json", "c6_classify"},
                                 {"invariant", "aklt_twist.json", "c8_twist"}};
  std::size_t files = 0, mismatched = 0, missing = 0;
  for (const auto& job : jobs) {
    const auto first = csv_files(runner.out() / job.tag);
    runner.run(job.command, job.config, job.tag + "_rerun", threads);
    const auto second = csv_files(runner.out() / (job.tag + "_rerun"));
    if (first.empty()) ++missing;
    for (const auto& [name, text] : first) {
      ++files;
      const auto it = second.find(name);
      if (it == second.end() || it->second != text) ++mismatched;
    }
  }
  return {files > 0 && mismatched == 0 && missing == 0,
          std::to_string(files) + " CSV files compared at --threads " + std::to_string(threads) + ", " +
              std::to_string(mismatched) + " differ" + (missing ? ", " + std::to_string(missing) + " runs missing" : "")};
}

}  // namespace

int main(int argc, char** argv) {
  fs::path out = "acceptance_out";
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--out") out = argv[i + 1];
  fs::create_directories(out);
  Runner runner(out);

  struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<Outcome()> body;
  };
  const std::vector<Criterion> criteria = {
      {1, "snapshot algebra", 1.0, snapshot_algebra},
      {2, "unbiasedness by enumeration", 1.0, unbiasedness},
      {3, "snapshot-count scaling", 300.0, [&] { return count_scaling(runner, 1); }},
      {4, "ground-state property prediction", 900.0, [&] { return prediction(runner, 1); }},
      {5, "shadow kernel truncation", 60.0, shadow_kernel_truncation},
      {6, "phase classification", 1200.0, [&] { return classification(runner, 1); }},
      {7, "SVM machinery", 120.0, svm_machinery},
      {8, "twist operator", 300.0, [&] { return twist(runner, 1); }},
      {9, "thread-count reproducibility", 1e9, [&] { return reproducibility(runner, 4); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = seconds <= c.budget_seconds;
    const bool pass = o.pass && in_budget;
    failures += pass ? 0 : 1;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail << " ["
              << fmt(seconds, 3) << " s" << (in_budget ? "" : ", over the " + fmt(c.budget_seconds, 4) + " s budget")
              << "]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
