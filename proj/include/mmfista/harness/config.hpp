#pragma once

#include <string>
#include <vector>

#include "mmfista/harness/degrade.hpp"
#include "mmfista/multilevel.hpp"

namespace mmfista {

struct ImageParams {
  std::string path;  // empty: synthetic_scene(size x size)
  int size = 256;
};

struct HierarchyParams {
  int levels = 3;
  std::string wavelet = "sym4";        // transfers
  std::string prior_wavelet = "sym4";  // W in the regularizer
  int prior_levels = -1;               // < 0: full decomposition
  double eta = 0.25;
  double lambda = -1.0;                // < 0: grid search over lambda_grid
  std::vector<double> lambda_grid;
  double lambda_factor = 0.25;
  bool compound_lambda = true;
  double gamma_fine = 1.0;
  double gamma_coarse = 1.1;
};

struct SolverParams {
  int m = 5;
  std::vector<int> p = {1, 2};
  std::vector<std::string> coarse = {"smoothed", "fb", "fista"};
  double a = 3.0;
  std::string tau_bar = "1";  // a positive number or "search"
  double eps = -1.0;
  int max_iter = 1000;
};

struct BenchmarkParams {
  std::vector<double> thresholds = {5, 2, 1, 0.1, 0.01};
  int oracle_iterations = 10000;
  int repetitions = 3;
  double wiener_mu = 1e-2;
  int grid_iterations = 200;
};

/// JSON experiment description. Every section and key is optional; unknown
/// keys are rejected.
struct ExperimentConfig {
  ImageParams image;
  DegradationSpec degradation;
  HierarchyParams hierarchy;
  SolverParams mmfista;
  BenchmarkParams benchmark;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string to_json(const ExperimentConfig& cfg);

TauBarMode parse_tau_bar(const std::string& text);

}  // namespace mmfista
