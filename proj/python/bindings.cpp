#include <string>
#include <tuple>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ossched/errors.hpp"
#include "ossched/exact_k.hpp"
#include "ossched/harness.hpp"
#include "ossched/json_io.hpp"
#include "ossched/oracle.hpp"
#include "ossched/prec_approx.hpp"
#include "ossched/relaxation.hpp"
#include "ossched/transform.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

std::string evaluate(const std::string& instance_text, const std::string& schedule_text) {
  const auto instance = ossched::parse_instance(instance_text);
  const auto schedule = ossched::schedule_from_json(instance, ossched::parse_json(schedule_text));
  return ossched::evaluation_report(instance, ossched::evaluate_original(instance, schedule)).dump();
}

std::string evaluate_os(const std::string& instance_text, const std::string& os_text) {
  const auto glued = ossched::glue(ossched::parse_instance(instance_text));
  const auto os = ossched::os_schedule_from_json(glued, ossched::parse_json(os_text));
  return ossched::os_evaluation_report(glued, ossched::evaluate_os(glued, os)).dump();
}

std::string solve(const std::string& instance_text, const std::string& algorithm, double beta,
                  std::size_t max_exact_families) {
  const auto instance = ossched::parse_instance(instance_text);
  const auto glued = ossched::glue(instance);
  json result;
  if (algorithm == "brute-os") {
    const auto best = ossched::brute_force_os(glued);
    result = ossched::os_schedule_to_json(glued, best.schedule);
    result["total"] = best.total;
    return result.dump();
  }
  ossched::Schedule schedule;
  if (algorithm == "brute") {
    schedule = ossched::brute_force_original(instance).schedule;
  } else if (algorithm == "exact-k" || algorithm == "sidney") {
    const auto os = algorithm == "exact-k"
                        ? ossched::solve_exact_k(glued, {max_exact_families}).schedule
                        : ossched::os_from_prec_order(glued, ossched::sidney_schedule(ossched::to_prec(glued)));
    schedule = ossched::transform(instance, glued, os, ossched::PullFactor(beta));
    result["os_total"] = ossched::evaluate_os(glued, os).total;
    result["os_schedule"] = ossched::os_schedule_to_json(glued, os)["order"];
  } else {
    throw ossched::ParameterError("unknown algorithm '" + algorithm + "'");
  }
  result.update(ossched::schedule_to_json(instance, schedule));
  result.update(ossched::evaluation_report(instance, ossched::evaluate_original(instance, schedule)));
  return result.dump();
}

std::string transform(const std::string& instance_text, const std::string& os_text, double beta) {
  const auto instance = ossched::parse_instance(instance_text);
  const auto glued = ossched::glue(instance);
  const auto os = ossched::os_schedule_from_json(glued, ossched::parse_json(os_text));
  const auto schedule = ossched::transform(instance, glued, os, ossched::PullFactor(beta));
  auto result = ossched::schedule_to_json(instance, schedule);
  result.update(ossched::evaluation_report(instance, ossched::evaluate_original(instance, schedule)));
  return result.dump();
}

std::string generate(std::size_t jobs, std::size_t families, double setup_factor, double prob,
                     const std::string& dist, std::uint64_t seed) {
  ossched::GenConfig config;
  config.n_jobs = jobs;
  config.n_families = families;
  config.setup_cost_factor = setup_factor;
  config.prob_per_family = prob;
  config.distribution = ossched::distribution_from_name(dist);
  config.seed = seed;
  return ossched::serialize_instance(ossched::generate(config));
}

std::tuple<double, double, double> tightness(std::size_t m, double eps, double beta) {
  const auto tc = ossched::gen_tightness(m, eps, beta);
  const auto schedule = ossched::transform(tc.instance, tc.glued, tc.os, ossched::PullFactor(beta));
  const double os_cost = ossched::evaluate_os(tc.glued, tc.os).total;
  const double cost = ossched::evaluate_original(tc.instance, schedule).total;
  return {os_cost, cost, cost / os_cost};
}

std::vector<std::string> wspt_order(const std::vector<std::tuple<std::string, double, double>>& jobs) {
  std::vector<ossched::WsptEntry> entries;
  for (const auto& [id, p, w] : jobs) entries.push_back({id, p, w});
  return ossched::wspt_order(entries);
}

std::string reduce(const std::string& prec_text) {
  return ossched::serialize_instance(
      ossched::reduce_prec_special(ossched::prec_from_json(ossched::parse_json(prec_text))));
}

std::string bench(const std::string& config_text) {
  return ossched::bench_csv(ossched::run_bench(ossched::bench_spec_from_json(ossched::parse_json(config_text))));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Order scheduling with family setup times";

  auto base = py::register_exception<ossched::Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ossched::InstanceError>(m, "InstanceError", base.ptr());
  py::register_exception<ossched::MalformedScheduleError>(m, "MalformedScheduleError", base.ptr());
  py::register_exception<ossched::InfeasibleScheduleError>(m, "InfeasibleScheduleError", base.ptr());
  py::register_exception<ossched::ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<ossched::GuardExceededError>(m, "GuardExceededError", base.ptr());
  py::register_exception<ossched::ShapeError>(m, "ShapeError", base.ptr());

  m.attr("SQRT2") = ossched::PullFactor::kSqrt2;

  m.def("evaluate", &evaluate, py::arg("instance"), py::arg("schedule"));
  m.def("evaluate_os", &evaluate_os, py::arg("instance"), py::arg("os_schedule"));
  m.def("solve", &solve, py::arg("instance"), py::arg("algorithm") = "exact-k",
        py::arg("beta") = ossched::PullFactor::kSqrt2,
        py::arg("max_exact_families") = ossched::ExactKOptions{}.max_families);
  m.def("transform", &transform, py::arg("instance"), py::arg("os_schedule"),
        py::arg("beta") = ossched::PullFactor::kSqrt2);
  m.def("generate", &generate, py::arg("jobs"), py::arg("families"), py::arg("setup_factor") = 5.0,
        py::arg("prob") = 0.3, py::arg("dist") = "normal", py::arg("seed") = 1);
  m.def("tightness", &tightness, py::arg("m"), py::arg("eps"),
        py::arg("beta") = ossched::PullFactor::kSqrt2,
        "Returns (os_cost, transformed_cost, ratio) for the worst-case construction.");
  m.def("wspt_order", &wspt_order, py::arg("jobs"));
  m.def("reduce", &reduce, py::arg("prec"));
  m.def("bench", &bench, py::arg("config"));
}
