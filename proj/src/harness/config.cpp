#include "mmfista/harness/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mmfista {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ParameterError("config: '" + where + "' must be an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw ParameterError("config: unknown key '" + item.key() + "' in " + where);
    }
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

}  // namespace

TauBarMode parse_tau_bar(const std::string& text) {
  if (text == "search") return TauBarLinesearch{};
  double value = 0.0;
  try {
    value = std::stod(text);
  } catch (const std::exception&) {
    throw ParameterError("tau_bar must be a positive number or 'search', got '" + text + "'");
  }
  if (!(value > 0.0)) throw ParameterError("tau_bar must be positive");
  return TauBarFixed{value};
}

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("config: invalid JSON: ") + e.what());
  }
  reject_unknown(doc, {"image", "degradation", "hierarchy", "mmfista", "benchmark"}, "document");

  ExperimentConfig cfg;
  try {
    if (doc.contains("image")) {
      const json& j = doc["image"];
      reject_unknown(j, {"path", "size"}, "image");
      read(j, "path", cfg.image.path);
      read(j, "size", cfg.image.size);
    }
    if (doc.contains("degradation")) {
      const json& j = doc["degradation"];
      reject_unknown(j, {"psf_support", "psf_sigma", "noise_sigma", "seed"}, "degradation");
      read(j, "psf_support", cfg.degradation.psf_support);
      read(j, "psf_sigma", cfg.degradation.psf_sigma);
      read(j, "noise_sigma", cfg.degradation.noise_sigma);
      read(j, "seed", cfg.degradation.seed);
    }
    if (doc.contains("hierarchy")) {
      const json& j = doc["hierarchy"];
      reject_unknown(j,
                     {"levels", "wavelet", "prior_wavelet", "prior_levels", "eta", "lambda", "lambda_grid",
                      "lambda_factor", "compound_lambda", "gamma_fine", "gamma_coarse"},
                     "hierarchy");
      auto& h = cfg.hierarchy;
      read(j, "levels", h.levels);
      read(j, "wavelet", h.wavelet);
      read(j, "prior_wavelet", h.prior_wavelet);
      read(j, "prior_levels", h.prior_levels);
      read(j, "eta", h.eta);
      read(j, "lambda", h.lambda);
      read(j, "lambda_grid", h.lambda_grid);
      read(j, "lambda_factor", h.lambda_factor);
      read(j, "compound_lambda", h.compound_lambda);
      read(j, "gamma_fine", h.gamma_fine);
      read(j, "gamma_coarse", h.gamma_coarse);
    }
    if (doc.contains("mmfista")) {
      const json& j = doc["mmfista"];
      reject_unknown(j, {"m", "p", "coarse", "a", "tau_bar", "eps", "max_iter"}, "mmfista");
      auto& s = cfg.mmfista;
      read(j, "m", s.m);
      if (j.contains("p")) {
        s.p = j["p"].is_array() ? j["p"].get<std::vector<int>>() : std::vector<int>{j["p"].get<int>()};
      }
      if (j.contains("coarse")) {
        s.coarse = j["coarse"].is_array() ? j["coarse"].get<std::vector<std::string>>()
                                          : std::vector<std::string>{j["coarse"].get<std::string>()};
      }
      read(j, "a", s.a);
      if (j.contains("tau_bar")) {
        const json& t = j["tau_bar"];
        s.tau_bar = t.is_string() ? t.get<std::string>() : json(t.get<double>()).dump();
      }
      read(j, "eps", s.eps);
      read(j, "max_iter", s.max_iter);
    }
    if (doc.contains("benchmark")) {
      const json& j = doc["benchmark"];
      reject_unknown(j, {"thresholds", "oracle_iterations", "repetitions", "wiener_mu", "grid_iterations"},
                     "benchmark");
      auto& b = cfg.benchmark;
      read(j, "thresholds", b.thresholds);
      read(j, "oracle_iterations", b.oracle_iterations);
      read(j, "repetitions", b.repetitions);
      read(j, "wiener_mu", b.wiener_mu);
      read(j, "grid_iterations", b.grid_iterations);
    }
  } catch (const json::exception& e) {
    throw ParameterError(std::string("config: ") + e.what());
  }

  for (const auto& name : cfg.mmfista.coarse) parse_coarse_kind(name);
  parse_tau_bar(cfg.mmfista.tau_bar);
  if (cfg.hierarchy.levels < 1) throw ParameterError("config: hierarchy.levels must be >= 1");
  if (cfg.mmfista.m < 1) throw ParameterError("config: mmfista.m must be >= 1");
  if (cfg.benchmark.repetitions < 1) throw ParameterError("config: benchmark.repetitions must be >= 1");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("config: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string to_json(const ExperimentConfig& cfg) {
  json doc;
  doc["image"] = {{"path", cfg.image.path}, {"size", cfg.image.size}};
  doc["degradation"] = {{"psf_support", cfg.degradation.psf_support},
                        {"psf_sigma", cfg.degradation.psf_sigma},
                        {"noise_sigma", cfg.degradation.noise_sigma},
                        {"seed", cfg.degradation.seed}};
  const auto& h = cfg.hierarchy;
  doc["hierarchy"] = {{"levels", h.levels},
                      {"wavelet", h.wavelet},
                      {"prior_wavelet", h.prior_wavelet},
                      {"prior_levels", h.prior_levels},
                      {"eta", h.eta},
                      {"lambda", h.lambda},
                      {"lambda_grid", h.lambda_grid},
                      {"lambda_factor", h.lambda_factor},
                      {"compound_lambda", h.compound_lambda},
                      {"gamma_fine", h.gamma_fine},
                      {"gamma_coarse", h.gamma_coarse}};
  const auto& s = cfg.mmfista;
  doc["mmfista"] = {{"m", s.m},     {"p", s.p},     {"coarse", s.coarse},      {"a", s.a},
                    {"tau_bar", s.tau_bar}, {"eps", s.eps}, {"max_iter", s.max_iter}};
  const auto& b = cfg.benchmark;
  doc["benchmark"] = {{"thresholds", b.thresholds},
                      {"oracle_iterations", b.oracle_iterations},
                      {"repetitions", b.repetitions},
                      {"wiener_mu", b.wiener_mu},
                      {"grid_iterations", b.grid_iterations}};
  return doc.dump(2);
}

}  // namespace mmfista
