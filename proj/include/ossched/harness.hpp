#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ossched/exact_k.hpp"
#include "ossched/model.hpp"
#include "ossched/prec_approx.hpp"

namespace ossched {

enum class Distribution { kNormal, kLognormal, kUniform, kWeibull };

Distribution distribution_from_name(const std::string& name);
std::string distribution_name(Distribution distribution);

// (location, scale) defaults: normal(100, 20), lognormal(ln 100, 0.5),
// uniform(50, 150), weibull(shape 2, scale 100).
std::pair<double, double> default_parameters(Distribution distribution);

struct WeightMode {
  enum class Kind { kUnit, kUniform };
  Kind kind = Kind::kUnit;
  double low = 1.0;
  double high = 1.0;
};

struct GenConfig {
  std::size_t n_jobs = 1000;
  std::size_t n_families = 5;
  double setup_cost_factor = 5.0;
  double prob_per_family = 0.3;
  Distribution distribution = Distribution::kNormal;
  std::optional<std::pair<double, double>> parameters;  // defaults when empty
  WeightMode weights;
  std::uint64_t seed = 1;
};

// Throws ParameterError for an invalid configuration.
void validate(const GenConfig& config);

// Random instance: each job holds an operation of each family with
// probability prob_per_family (jobs left empty are redrawn), lengths are
// drawn from the configured distribution and redrawn until positive, and
// s(f) = setup_cost_factor * mean length of f's operations. Families without
// operations are dropped. Deterministic in the seed.
Instance generate(const GenConfig& config);

// Turns the special case of 1|prec|sum wC in which every node is (p=1, w=0)
// or (p=0, w=1) and every edge runs from a (1,0) to a (0,1) node into an
// order scheduling instance with the same optimum. Throws ShapeError
// otherwise.
Instance reduce_prec_special(const PrecInstance& prec);

struct BenchSpec {
  std::vector<GenConfig> configs;  // seed fields are ignored
  std::vector<std::string> algorithms{"exact-k"};  // "exact-k" and/or "sidney"
  std::vector<double> betas{2.0};
  std::vector<std::uint64_t> seeds{1};
  ExactKOptions exact;
};

BenchSpec bench_spec_from_json(const nlohmann::json& doc);

struct BenchRow {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  double beta = 0.0;
  double setup_cost_factor = 0.0;
  double prob_per_family = 0.0;
  std::string algorithm;
  std::string lb_kind;  // "exact-lb" or "approx-lb"
  double cost = 0.0;
  double lower_bound = 0.0;
  double ratio = 0.0;
  double wall_time_ms = 0.0;
};

// Seed of the instance generated for (seed, config index).
std::uint64_t derive_seed(std::uint64_t seed, std::size_t config_index);

// For every config, seed, algorithm and beta: generate, solve the
// one-time-setup relaxation, transform, evaluate. The lower bound is the
// exact relaxation optimum whenever the family count permits ("exact-lb"),
// otherwise the Sidney schedule's relaxation cost ("approx-lb").
std::vector<BenchRow> run_bench(const BenchSpec& spec);

extern const char* const kBenchCsvHeader;
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace ossched
