#include "ossched/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <random>
#include <unordered_map>

#include "ossched/errors.hpp"
#include "ossched/relaxation.hpp"
#include "ossched/transform.hpp"

namespace ossched {
namespace {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

class LengthSampler {
 public:
  LengthSampler(Distribution distribution, std::pair<double, double> parameters)
      : distribution_(distribution),
        normal_(parameters.first, parameters.second),
        lognormal_(parameters.first, parameters.second),
        uniform_(parameters.first, parameters.second),
        weibull_(parameters.first, parameters.second) {}

  double operator()(std::mt19937_64& rng) {
    for (;;) {
      double x = 0.0;
      switch (distribution_) {
        case Distribution::kNormal: x = normal_(rng); break;
        case Distribution::kLognormal: x = lognormal_(rng); break;
        case Distribution::kUniform: x = uniform_(rng); break;
        case Distribution::kWeibull: x = weibull_(rng); break;
      }
      if (x > 0.0) return x;
    }
  }

 private:
  Distribution distribution_;
  std::normal_distribution<double> normal_;
  std::lognormal_distribution<double> lognormal_;
  std::uniform_real_distribution<double> uniform_;
  std::weibull_distribution<double> weibull_;
};

std::string format_number(double x) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, end);
}

}  // namespace

Distribution distribution_from_name(const std::string& name) {
  if (name == "normal") return Distribution::kNormal;
  if (name == "lognormal") return Distribution::kLognormal;
  if (name == "uniform") return Distribution::kUniform;
  if (name == "weibull") return Distribution::kWeibull;
  throw ParameterError("unknown distribution '" + name + "'");
}

std::string distribution_name(Distribution distribution) {
  switch (distribution) {
    case Distribution::kNormal: return "normal";
    case Distribution::kLognormal: return "lognormal";
    case Distribution::kUniform: return "uniform";
    case Distribution::kWeibull: return "weibull";
  }
  return "normal";
}

std::pair<double, double> default_parameters(Distribution distribution) {
  switch (distribution) {
    case Distribution::kNormal: return {100.0, 20.0};
    case Distribution::kLognormal: return {std::log(100.0), 0.5};
    case Distribution::kUniform: return {50.0, 150.0};
    case Distribution::kWeibull: return {2.0, 100.0};
  }
  return {100.0, 20.0};
}

void validate(const GenConfig& config) {
  if (config.n_jobs < 1) throw ParameterError("at least one job required");
  if (config.n_families < 1) throw ParameterError("at least one family required");
  if (!(config.prob_per_family > 0.0 && config.prob_per_family <= 1.0))
    throw ParameterError("probability per family must lie in (0, 1]");
  if (!(config.setup_cost_factor >= 0.0) || !std::isfinite(config.setup_cost_factor))
    throw ParameterError("setup cost factor must be nonnegative");
  const auto [a, b] = config.parameters.value_or(default_parameters(config.distribution));
  const bool valid = config.distribution == Distribution::kUniform
                         ? (a < b && a >= 0.0 && std::isfinite(b) && b > 0.0)
                         : (b > 0.0 && std::isfinite(a) && std::isfinite(b) &&
                            (config.distribution != Distribution::kWeibull || a > 0.0));
  if (!valid) throw ParameterError("invalid distribution parameters");
  if (config.weights.kind == WeightMode::Kind::kUniform &&
      !(config.weights.low >= 0.0 && config.weights.low <= config.weights.high))
    throw ParameterError("invalid uniform weight range");
}

Instance generate(const GenConfig& config) {
  validate(config);
  auto rng = make_rng(config.seed, 0);
  LengthSampler length(config.distribution,
                       config.parameters.value_or(default_parameters(config.distribution)));
  std::bernoulli_distribution include(config.prob_per_family);

  struct Draw {
    std::size_t family;
    double p;
  };
  std::vector<std::vector<Draw>> drawn(config.n_jobs);
  for (auto& job : drawn) {
    while (job.empty())
      for (std::size_t f = 0; f < config.n_families; ++f)
        if (include(rng)) job.push_back({f, length(rng)});
  }

  std::vector<double> family_sum(config.n_families, 0.0);
  std::vector<std::size_t> family_count(config.n_families, 0);
  for (const auto& job : drawn)
    for (const auto& d : job) {
      family_sum[d.family] += d.p;
      ++family_count[d.family];
    }
  Instance instance;
  std::vector<std::size_t> index(config.n_families, 0);
  for (std::size_t f = 0; f < config.n_families; ++f) {
    if (family_count[f] == 0) continue;
    index[f] = instance.families.size();
    instance.families.push_back(
        {"f" + std::to_string(f),
         config.setup_cost_factor * family_sum[f] / static_cast<double>(family_count[f])});
  }
  std::uniform_real_distribution<double> weight(config.weights.low, config.weights.high);
  for (std::size_t j = 0; j < config.n_jobs; ++j) {
    Job job{"j" + std::to_string(j), 1.0, {}};
    if (config.weights.kind == WeightMode::Kind::kUniform) job.weight = weight(rng);
    for (const auto& d : drawn[j])
      job.operations.push_back(
          {"j" + std::to_string(j) + "f" + std::to_string(d.family), index[d.family], d.p});
    instance.jobs.push_back(std::move(job));
  }
  return instance;
}

Instance reduce_prec_special(const PrecInstance& prec) {
  validate(prec);
  enum class Role { kSetup, kJob };
  std::vector<Role> role(prec.nodes.size());
  for (std::size_t v = 0; v < prec.nodes.size(); ++v) {
    const auto& node = prec.nodes[v];
    if (node.processing == 1.0 && node.weight == 0.0)
      role[v] = Role::kSetup;
    else if (node.processing == 0.0 && node.weight == 1.0)
      role[v] = Role::kJob;
    else
      throw ShapeError("node '" + node.id + "' is neither (p=1, w=0) nor (p=0, w=1)");
  }
  Instance instance;
  std::vector<std::size_t> family_of(prec.nodes.size(), 0);
  std::vector<std::size_t> job_of(prec.nodes.size(), 0);
  for (std::size_t v = 0; v < prec.nodes.size(); ++v) {
    if (role[v] == Role::kSetup) {
      family_of[v] = instance.families.size();
      instance.families.push_back({prec.nodes[v].id, 1.0});
    } else {
      job_of[v] = instance.jobs.size();
      instance.jobs.push_back({prec.nodes[v].id, 1.0, {}});
    }
  }
  for (const auto& [from, to] : prec.edges) {
    if (role[from] != Role::kSetup || role[to] != Role::kJob)
      throw ShapeError("edge '" + prec.nodes[from].id + "' -> '" + prec.nodes[to].id +
                       "' does not run from a (1,0) node to a (0,1) node");
    instance.jobs[job_of[to]].operations.push_back(
        {prec.nodes[from].id + "->" + prec.nodes[to].id, family_of[from], 0.0});
  }
  // Jobs without predecessors get one free operation so that they are
  // nonempty; its family has no setup cost.
  std::size_t free_family = instance.families.size();
  for (auto& job : instance.jobs) {
    if (!job.operations.empty()) continue;
    if (free_family == instance.families.size()) {
      std::string id = "free";
      for (std::size_t suffix = 0;
           std::any_of(instance.families.begin(), instance.families.end(),
                       [&](const Family& f) { return f.id == id; });
           ++suffix)
        id = "free" + std::to_string(suffix);
      instance.families.push_back({id, 0.0});
    }
    job.operations.push_back({job.id + "->free", free_family, 0.0});
  }
  validate(instance);
  return instance;
}

namespace {

BenchSpec parse_bench_spec(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("configs") || !doc["configs"].is_array())
    throw ParameterError("bench config needs a \"configs\" array");
  BenchSpec spec;
  for (const auto& c : doc["configs"]) {
    GenConfig config;
    config.n_jobs = c.value("jobs", config.n_jobs);
    config.n_families = c.value("families", config.n_families);
    config.setup_cost_factor = c.value("setup_factor", config.setup_cost_factor);
    config.prob_per_family = c.value("prob", config.prob_per_family);
    config.distribution = distribution_from_name(c.value("dist", std::string("normal")));
    if (c.contains("dist_params")) {
      const auto& p = c["dist_params"];
      if (!p.is_array() || p.size() != 2) throw ParameterError("dist_params must be [a, b]");
      config.parameters = std::make_pair(p[0].get<double>(), p[1].get<double>());
    }
    if (c.contains("weights")) {
      const auto& w = c["weights"];
      if (w.is_string() && w.get<std::string>() == "unit") {
        config.weights = {};
      } else if (w.is_object() && w.contains("uniform") && w["uniform"].size() == 2) {
        config.weights = {WeightMode::Kind::kUniform, w["uniform"][0].get<double>(),
                          w["uniform"][1].get<double>()};
      } else {
        throw ParameterError("weights must be \"unit\" or {\"uniform\":[a,b]}");
      }
    }
    validate(config);
    spec.configs.push_back(config);
  }
  if (doc.contains("algorithms")) spec.algorithms = doc["algorithms"].get<std::vector<std::string>>();
  if (doc.contains("betas")) spec.betas = doc["betas"].get<std::vector<double>>();
  if (doc.contains("seeds")) {
    const auto& s = doc["seeds"];
    if (s.is_array()) {
      spec.seeds = s.get<std::vector<std::uint64_t>>();
    } else {
      const auto first = s.value("first", std::uint64_t{1});
      const auto count = s.value("count", std::uint64_t{1});
      spec.seeds.clear();
      for (std::uint64_t i = 0; i < count; ++i) spec.seeds.push_back(first + i);
    }
  }
  if (doc.contains("max_exact_families"))
    spec.exact.max_families = doc["max_exact_families"].get<std::size_t>();
  for (const auto& a : spec.algorithms)
    if (a != "exact-k" && a != "sidney") throw ParameterError("unknown algorithm '" + a + "'");
  for (double b : spec.betas) PullFactor{b};
  return spec;
}

}  // namespace

BenchSpec bench_spec_from_json(const nlohmann::json& doc) {
  try {
    return parse_bench_spec(doc);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("bad bench config: ") + e.what());
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::size_t config_index) {
  return make_rng(seed, config_index + 1)();
}

std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  using Clock = std::chrono::steady_clock;
  auto elapsed_ms = [](Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
  };
  std::vector<BenchRow> rows;
  for (std::size_t c = 0; c < spec.configs.size(); ++c) {
    for (auto seed : spec.seeds) {
      auto config = spec.configs[c];
      config.seed = derive_seed(seed, c);
      const auto instance = generate(config);
      const auto glued = glue(instance);
      const bool exact_possible = glued.setups.size() <= spec.exact.max_families;

      std::unordered_map<std::string, std::pair<OsSchedule, double>> solved;  // os, ms
      double lower_bound = 0.0;
      std::string lb_kind;
      if (exact_possible) {
        const auto start = Clock::now();
        auto exact = solve_exact_k(glued, spec.exact);
        solved["exact-k"] = {std::move(exact.schedule), elapsed_ms(start)};
        lower_bound = exact.total;
        lb_kind = "exact-lb";
      }
      const bool wants_sidney =
          std::find(spec.algorithms.begin(), spec.algorithms.end(), "sidney") != spec.algorithms.end();
      if (wants_sidney || !exact_possible) {
        const auto start = Clock::now();
        auto order = sidney_schedule(to_prec(glued));
        solved["sidney"] = {os_from_prec_order(glued, order), elapsed_ms(start)};
        if (!exact_possible) {
          lower_bound = evaluate_os(glued, solved["sidney"].first).total;
          lb_kind = "approx-lb";
        }
      }

      for (const auto& algorithm : spec.algorithms) {
        if (algorithm == "exact-k" && !exact_possible)
          throw GuardExceededError(std::to_string(glued.setups.size()) +
                                   " families exceed the exact solver limit");
        const auto& [os, solve_ms] = solved.at(algorithm);
        for (double beta : spec.betas) {
          const auto start = Clock::now();
          const auto schedule = transform(instance, glued, os, PullFactor(beta));
          const double cost = evaluate_original(instance, schedule).total;
          BenchRow row;
          row.seed = seed;
          row.n = instance.jobs.size();
          row.k = glued.setups.size();
          row.beta = beta;
          row.setup_cost_factor = config.setup_cost_factor;
          row.prob_per_family = config.prob_per_family;
          row.algorithm = algorithm;
          row.lb_kind = lb_kind;
          row.cost = cost;
          row.lower_bound = lower_bound;
          row.ratio = cost / lower_bound;
          row.wall_time_ms = solve_ms + elapsed_ms(start);
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

const char* const kBenchCsvHeader =
    "seed,n,K,beta,setup_factor,prob,alg,lb_kind,cost,lower_bound,ratio,wall_time_ms";

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = kBenchCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.seed) + ',' + std::to_string(r.n) + ',' + std::to_string(r.k) + ',' +
           format_number(r.beta) + ',' + format_number(r.setup_cost_factor) + ',' +
           format_number(r.prob_per_family) + ',' + r.algorithm + ',' + r.lb_kind + ',' +
           format_number(r.cost) + ',' + format_number(r.lower_bound) + ',' +
           format_number(r.ratio) + ',' + format_number(r.wall_time_ms) + '\n';
  }
  return out;
}

}  // namespace ossched
