#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "segmerge/baseline.hpp"
#include "segmerge/eval.hpp"
#include "segmerge/grid.hpp"
#include "segmerge/io.hpp"
#include "segmerge/merge.hpp"
#include "segmerge/synth.hpp"

namespace {

using namespace segmerge;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

FittedModel fit_dataset(const Dataset& ds, Kernel kernel, double sigma, int stop) {
  Grid grid = build_grid(ds);
  auto tree = build_tree(grid, ds);
  MergeConfig cfg{sigma, stop, kernel};
  return greedy_merge(*tree, ds, grid, cfg);
}

int run_gen(const std::string& out, int n, int d, int d_prime, int k, double s2,
            const std::string& noise, std::uint64_t seed, bool affine_truth) {
  NoiseSpec spec = noise == "none"      ? NoiseSpec::none()
                   : noise == "uniform" ? NoiseSpec::uniform(s2, seed + 1)
                                        : NoiseSpec::gaussian(s2, seed + 1);
  SyntheticData data = gen_synthetic(n, d, d_prime, k, spec, seed, affine_truth);
  write_dataset_csv(out, data.dataset);
  std::cout << "wrote " << out << " n=" << n << " d=" << d << " k=" << k << "\n";
  return 0;
}

int run_fit(const std::string& data_path, const std::string& out, int d_prime,
            const std::string& kernel_name, double sigma, int stop, int k) {
  Dataset ds = read_dataset_csv(data_path, d_prime);
  Kernel kernel = kernel_from_string(kernel_name);
  if (stop <= 0) {
    if (k <= 0) {
      std::cerr << "error: pass --stop or --k\n";
      return 1;
    }
    stop = default_stop_count(k, ds.n(), d_prime);
  }
  auto start = Clock::now();
  FittedModel model = fit_dataset(ds, kernel, sigma, stop);
  double ms = elapsed_ms(start);
  if (!out.empty()) save_model(out, model);
  std::cout << "pieces=" << model.pieces.size()
            << " empirical_risk=" << fmt6(empirical_risk(model, ds))
            << " time_ms=" << fmt6(ms) << "\n";
  return 0;
}

int run_predict(const std::string& model_path, const std::string& data_path,
                const std::string& out_path) {
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
  out << "prediction\n";

  std::string type = model_file_type(model_path);
  Dataset ds;
  try {
    ds = read_dataset_csv(data_path, 1);
  } catch (const CsvError& e) {
    if (std::string(e.what()).find("no data rows") == std::string::npos) throw;
    return 0;  // empty query file: header-only output
  }
  Eigen::VectorXd preds;
  if (type == "cart") {
    CartModel model = load_cart(model_path);
    if (model.d != ds.dim()) {
      std::cerr << "error: model expects d=" << model.d << ", data has d=" << ds.dim() << "\n";
      return 2;
    }
    preds = model.predict_many(ds.features);
  } else {
    FittedModel model = load_model(model_path);
    if (model.d != ds.dim()) {
      std::cerr << "error: model expects d=" << model.d << ", data has d=" << ds.dim() << "\n";
      return 2;
    }
    preds = predict_many(model, ds.features);
  }
  for (Eigen::Index i = 0; i < preds.size(); ++i) out << fmt6(preds[i]) << "\n";
  return 0;
}

struct BenchCell {
  std::string method;
  int n = 0;
  double param = 0;
  std::vector<double> mse, pieces, time_ms;
};

int run_bench(const std::string& out_path, const std::vector<int>& n_list, int trials, int k,
              int d, int d_prime, double sigma, const std::vector<int>& stop_list,
              const std::vector<int>& leaves_list, std::uint64_t seed,
              const std::string& kernel_name, const std::string& noise, double s2, int jobs) {
  Kernel kernel = kernel_from_string(kernel_name);
  if (jobs <= 0) {
    if (const char* env = std::getenv("SEGMERGE_JOBS")) jobs = std::atoi(env);
    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 0) jobs = 1;
  }

  // One cell per (n, method, parameter); trials share datasets across methods.
  std::vector<BenchCell> cells;
  for (int n : n_list) {
    cells.push_back({"truefit", n, double(k), {}, {}, {}});
    for (int stop : stop_list) cells.push_back({"merge", n, double(stop), {}, {}, {}});
    for (int leaves : leaves_list) cells.push_back({"cart", n, double(leaves), {}, {}, {}});
  }
  for (auto& cell : cells) {
    cell.mse.resize(trials);
    cell.pieces.resize(trials);
    cell.time_ms.resize(trials);
  }

  struct Task {
    int n_index, trial;
  };
  std::vector<Task> tasks;
  for (int ni = 0; ni < static_cast<int>(n_list.size()); ++ni)
    for (int t = 0; t < trials; ++t) tasks.push_back({ni, t});

  const int methods_per_n = 1 + static_cast<int>(stop_list.size() + leaves_list.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t ti = next.fetch_add(1);
      if (ti >= tasks.size()) return;
      const Task task = tasks[ti];
      const int n = n_list[task.n_index];
      std::uint64_t s = seed + 1000003ull * task.n_index + task.trial;
      NoiseSpec spec = noise == "none"      ? NoiseSpec::none()
                       : noise == "uniform" ? NoiseSpec::uniform(s2, s + 7)
                                            : NoiseSpec::gaussian(s2, s + 7);
      SyntheticData data = gen_synthetic(n, d, d_prime, k, spec, s);
      int base = task.n_index * methods_per_n;

      auto t0 = Clock::now();
      double floor_mse = true_fit_mse(data, kernel);
      cells[base].mse[task.trial] = floor_mse;
      cells[base].pieces[task.trial] = k;
      cells[base].time_ms[task.trial] = elapsed_ms(t0);

      int ci = base + 1;
      for (int stop : stop_list) {
        t0 = Clock::now();
        FittedModel model = fit_dataset(data.dataset, kernel, sigma, stop);
        cells[ci].time_ms[task.trial] = elapsed_ms(t0);
        cells[ci].mse[task.trial] = oracle_mse(model, data.dataset);
        cells[ci].pieces[task.trial] = static_cast<double>(model.pieces.size());
        ++ci;
      }
      for (int leaves : leaves_list) {
        t0 = Clock::now();
        CartModel model = cart_fit(data.dataset, leaves);
        cells[ci].time_ms[task.trial] = elapsed_ms(t0);
        cells[ci].mse[task.trial] = cart_oracle_mse(model, data.dataset);
        cells[ci].pieces[task.trial] = model.leaf_count();
        ++ci;
      }
    }
  };

  std::vector<std::thread> pool;
  for (int j = 0; j < std::min<int>(jobs, static_cast<int>(tasks.size())); ++j)
    pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
  out << "method,n,param,mse_mean,mse_std,pieces_mean,time_ms\n";
  for (const BenchCell& cell : cells) {
    double mean = 0, var = 0, pieces = 0, ms = 0;
    for (double v : cell.mse) mean += v;
    mean /= trials;
    for (double v : cell.mse) var += (v - mean) * (v - mean);
    var = trials > 1 ? var / (trials - 1) : 0.0;
    for (double v : cell.pieces) pieces += v;
    for (double v : cell.time_ms) ms += v;
    out << cell.method << "," << cell.n << "," << fmt6(cell.param) << "," << fmt6(mean) << ","
        << fmt6(std::sqrt(var)) << "," << fmt6(pieces / trials) << "," << fmt6(ms / trials)
        << "\n";
  }
  std::cout << "wrote " << out_path << " (" << cells.size() << " cells, " << trials
            << " trials each)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multidimensional segmented regression by greedy merging"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset CSV");
  std::string gen_out;
  int gen_n = 8000, gen_d = 10, gen_dp = 2, gen_k = 16;
  double gen_s2 = 1.0;
  std::string gen_noise = "gaussian";
  std::uint64_t gen_seed = 0;
  bool gen_affine = false;
  gen->add_option("--out", gen_out, "output CSV path")->required();
  gen->add_option("--n", gen_n);
  gen->add_option("--d", gen_d);
  gen->add_option("--d-prime", gen_dp);
  gen->add_option("--k", gen_k);
  gen->add_option("--s2", gen_s2, "noise variance");
  gen->add_option("--noise", gen_noise)->check(CLI::IsMember({"gaussian", "uniform", "none"}));
  gen->add_option("--seed", gen_seed);
  gen->add_flag("--affine-truth", gen_affine);

  // fit
  auto* fit = app.add_subcommand("fit", "fit a merging model to a CSV dataset");
  std::string fit_data, fit_out, fit_kernel = "affine";
  int fit_dp = 0, fit_stop = 0, fit_k = 0;
  double fit_sigma = 0;
  fit->add_option("--data", fit_data)->required();
  fit->add_option("--d-prime", fit_dp)->required();
  fit->add_option("--kernel", fit_kernel)
      ->check(CLI::IsMember({"constant", "identity", "affine"}));
  fit->add_option("--sigma", fit_sigma, "noise scale for the merge criterion")->required();
  fit->add_option("--stop", fit_stop, "sibling groups retained per iteration");
  fit->add_option("--k", fit_k, "true piece count; sets the default stopping parameter");
  fit->add_option("--out", fit_out, "model file path");

  // predict
  auto* predict = app.add_subcommand("predict", "predict with a saved model");
  std::string pr_model, pr_data, pr_out;
  predict->add_option("--model", pr_model)->required();
  predict->add_option("--data", pr_data)->required();
  predict->add_option("--out", pr_out)->required();

  // bench
  auto* bench = app.add_subcommand("bench", "synthetic benchmark sweep");
  std::string be_out = "bench.csv", be_kernel = "constant";
  std::vector<int> be_n{96, 500, 1000, 2000, 4000, 8000};
  std::vector<int> be_stop{16, 8, 4, 2};
  std::vector<int> be_leaves{16, 24};
  int be_trials = 20, be_k = 16, be_d = 10, be_dp = 2, be_jobs = 0;
  double be_sigma = 1.0;
  std::uint64_t be_seed = 0;
  bench->add_option("--out", be_out);
  bench->add_option("--n-list", be_n)->delimiter(',');
  bench->add_option("--trials", be_trials);
  bench->add_option("--k", be_k);
  bench->add_option("--d", be_d);
  bench->add_option("--d-prime", be_dp);
  bench->add_option("--sigma", be_sigma);
  bench->add_option("--stop-list", be_stop)->delimiter(',');
  bench->add_option("--baseline-leaves-list", be_leaves)->delimiter(',');
  bench->add_option("--seed", be_seed);
  bench->add_option("--kernel", be_kernel)
      ->check(CLI::IsMember({"constant", "identity", "affine"}));
  std::string be_noise = "gaussian";
  double be_s2 = 1.0;
  bench->add_option("--noise", be_noise)->check(CLI::IsMember({"gaussian", "uniform", "none"}));
  bench->add_option("--s2", be_s2, "noise variance");
  bench->add_option("--jobs", be_jobs, "worker threads (env SEGMERGE_JOBS)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed())
      return run_gen(gen_out, gen_n, gen_d, gen_dp, gen_k, gen_s2, gen_noise, gen_seed,
                     gen_affine);
    if (fit->parsed())
      return run_fit(fit_data, fit_out, fit_dp, fit_kernel, fit_sigma, fit_stop, fit_k);
    if (predict->parsed()) return run_predict(pr_model, pr_data, pr_out);
    if (bench->parsed())
      return run_bench(be_out, be_n, be_trials, be_k, be_d, be_dp, be_sigma, be_stop, be_leaves,
                       be_seed, be_kernel, be_noise, be_s2, be_jobs);
  } catch (const segmerge::CsvError& e) {
    std::cerr << "csv error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
