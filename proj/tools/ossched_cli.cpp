// Command-line front end: instance generation, solving, transform, benchmark
// sweeps, the tightness construction and the prec-to-instance reduction.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ossched/errors.hpp"
#include "ossched/exact_k.hpp"
#include "ossched/harness.hpp"
#include "ossched/json_io.hpp"
#include "ossched/oracle.hpp"
#include "ossched/prec_approx.hpp"
#include "ossched/relaxation.hpp"
#include "ossched/transform.hpp"

namespace {

using nlohmann::json;
using namespace ossched;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text << '\n';
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-machine order scheduling with family setup times"};
  app.require_subcommand(1);

  // generate
  GenConfig gen;
  std::string gen_dist = "normal";
  std::vector<double> gen_params;
  std::vector<double> gen_weights;
  std::string gen_out;
  auto* generate_cmd = app.add_subcommand("generate", "Draw a random instance");
  generate_cmd->add_option("--jobs", gen.n_jobs, "Number of jobs")->required();
  generate_cmd->add_option("--families", gen.n_families, "Number of families")->required();
  generate_cmd->add_option("--setup-factor", gen.setup_cost_factor, "Setup cost factor");
  generate_cmd->add_option("--prob", gen.prob_per_family, "Probability per family");
  generate_cmd->add_option("--dist", gen_dist, "normal|lognormal|uniform|weibull");
  generate_cmd->add_option("--dist-params", gen_params, "Location and scale")->expected(2);
  generate_cmd->add_option("--weights-uniform", gen_weights, "Draw weights uniformly in [a, b]")
      ->expected(2);
  generate_cmd->add_option("--seed", gen.seed, "Random seed");
  generate_cmd->add_option("--out", gen_out, "Output file (stdout if omitted)");

  // solve
  std::string solve_input, solve_algo = "exact-k", solve_out;
  double solve_beta = PullFactor::kSqrt2;
  std::size_t max_exact = ExactKOptions{}.max_families;
  std::size_t max_items = SearchGuard{}.max_items;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("--input", solve_input, "Instance JSON")->required();
  solve_cmd->add_option("--algo", solve_algo, "exact-k|sidney|brute|brute-os")
      ->check(CLI::IsMember({"exact-k", "sidney", "brute", "brute-os"}));
  solve_cmd->add_option("--beta", solve_beta, "Pull factor for transform");
  solve_cmd->add_option("--out", solve_out, "Schedule output file (stdout if omitted)");
  solve_cmd->add_option("--max-exact-families", max_exact, "Family limit for exact-k");
  solve_cmd->add_option("--max-items", max_items, "Item limit for brute force");

  // transform
  std::string tr_input, tr_os, tr_out;
  double tr_beta = PullFactor::kSqrt2;
  auto* transform_cmd = app.add_subcommand("transform", "Turn a one-time-setup schedule into a schedule");
  transform_cmd->add_option("--input", tr_input, "Instance JSON")->required();
  transform_cmd->add_option("--os-schedule", tr_os, "One-time-setup schedule JSON")->required();
  transform_cmd->add_option("--beta", tr_beta, "Pull factor");
  transform_cmd->add_option("--out", tr_out, "Schedule output file (stdout if omitted)");

  // evaluate
  std::string ev_input, ev_schedule;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate a schedule");
  evaluate_cmd->add_option("--input", ev_input, "Instance JSON")->required();
  evaluate_cmd->add_option("--schedule", ev_schedule, "Schedule JSON")->required();

  // bench
  std::string bench_config, bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark sweep");
  bench_cmd->add_option("--config", bench_config, "Benchmark JSON")->required();
  bench_cmd->add_option("--out", bench_out, "CSV output file (stdout if omitted)");

  // tightness
  std::size_t tight_m = 1000;
  double tight_eps = 1e-6;
  double tight_beta = PullFactor::kSqrt2;
  bool tight_with_instance = false;
  auto* tightness_cmd = app.add_subcommand("tightness", "Measure transform on its worst case");
  tightness_cmd->add_option("--m", tight_m, "Number of short jobs");
  tightness_cmd->add_option("--eps", tight_eps, "Short length");
  tightness_cmd->add_option("--beta", tight_beta, "Pull factor");
  tightness_cmd->add_flag("--emit-instance", tight_with_instance, "Include instance and schedules");

  // reduce
  std::string reduce_prec, reduce_out;
  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a special-case prec instance");
  reduce_cmd->add_option("--prec", reduce_prec, "Precedence instance JSON")->required();
  reduce_cmd->add_option("--out", reduce_out, "Instance output file (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate_cmd) {
      gen.distribution = distribution_from_name(gen_dist);
      if (!gen_params.empty()) gen.parameters = std::make_pair(gen_params[0], gen_params[1]);
      if (!gen_weights.empty())
        gen.weights = {WeightMode::Kind::kUniform, gen_weights[0], gen_weights[1]};
      write_output(gen_out, serialize_instance(generate(gen)));
    } else if (*solve_cmd) {
      const auto instance = parse_instance(read_file(solve_input));
      const auto glued = glue(instance);
      json result;
      if (solve_algo == "brute-os") {
        const auto best = brute_force_os(glued, {max_items, SearchGuard{}.max_closed_sets});
        result = os_schedule_to_json(glued, best.schedule);
        result.update(os_evaluation_report(glued, evaluate_os(glued, best.schedule)));
      } else {
        Schedule schedule;
        if (solve_algo == "brute") {
          schedule = brute_force_original(instance, {max_items, SearchGuard{}.max_closed_sets}).schedule;
        } else {
          OsSchedule os;
          if (solve_algo == "exact-k")
            os = solve_exact_k(glued, {max_exact}).schedule;
          else
            os = os_from_prec_order(glued, sidney_schedule(to_prec(glued)));
          schedule = transform(instance, glued, os, PullFactor(solve_beta));
          result["os_total"] = evaluate_os(glued, os).total;
          result["os_schedule"] = os_schedule_to_json(glued, os)["order"];
        }
        result.update(schedule_to_json(instance, schedule));
        result.update(evaluation_report(instance, evaluate_original(instance, schedule)));
      }
      result["algorithm"] = solve_algo;
      write_output(solve_out, result.dump());
      if (!solve_out.empty() && solve_out != "-")
        std::cout << json{{"algorithm", solve_algo}, {"total", result["total"]}}.dump() << '\n';
    } else if (*transform_cmd) {
      const auto instance = parse_instance(read_file(tr_input));
      const auto glued = glue(instance);
      const auto os = os_schedule_from_json(glued, parse_json(read_file(tr_os)));
      const auto schedule = transform(instance, glued, os, PullFactor(tr_beta));
      auto result = schedule_to_json(instance, schedule);
      result.update(evaluation_report(instance, evaluate_original(instance, schedule)));
      result["os_total"] = evaluate_os(glued, os).total;
      write_output(tr_out, result.dump());
    } else if (*evaluate_cmd) {
      const auto instance = parse_instance(read_file(ev_input));
      const auto schedule = schedule_from_json(instance, parse_json(read_file(ev_schedule)));
      std::cout << evaluation_report(instance, evaluate_original(instance, schedule)).dump() << '\n';
    } else if (*bench_cmd) {
      const auto spec = bench_spec_from_json(parse_json(read_file(bench_config)));
      const auto csv = bench_csv(run_bench(spec));
      if (bench_out.empty() || bench_out == "-") {
        std::cout << csv;
      } else {
        std::ofstream out(bench_out);
        if (!(out << csv)) throw Error("failed writing '" + bench_out + "'");
      }
    } else if (*tightness_cmd) {
      const auto tc = gen_tightness(tight_m, tight_eps, tight_beta);
      const auto schedule = transform(tc.instance, tc.glued, tc.os, PullFactor(tight_beta));
      const double os_cost = evaluate_os(tc.glued, tc.os).total;
      const double cost = evaluate_original(tc.instance, schedule).total;
      json result{{"m", tight_m},          {"eps", tight_eps},
                  {"beta", tight_beta},    {"os_cost", os_cost},
                  {"transformed_cost", cost}, {"ratio", cost / os_cost},
                  {"bound", 1.0 + tight_beta}};
      if (tight_with_instance) {
        result["instance"] = instance_to_json(tc.instance);
        result["os_schedule"] = os_schedule_to_json(tc.glued, tc.os);
        result["schedule"] = schedule_to_json(tc.instance, schedule);
      }
      std::cout << result.dump() << '\n';
    } else if (*reduce_cmd) {
      const auto prec = prec_from_json(parse_json(read_file(reduce_prec)));
      write_output(reduce_out, serialize_instance(reduce_prec_special(prec)));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
