#include "ossched/json_io.hpp"

#include <unordered_map>

#include "ossched/errors.hpp"

namespace ossched {
namespace {

using nlohmann::json;

const json& field(const json& object, const std::string& path, const char* name) {
  if (!object.is_object()) throw InstanceError(path, "expected an object");
  auto it = object.find(name);
  if (it == object.end()) throw InstanceError(path + "." + name, "missing field");
  return *it;
}

std::string string_field(const json& object, const std::string& path, const char* name) {
  const auto& value = field(object, path, name);
  if (!value.is_string()) throw InstanceError(path + "." + name, "expected a string");
  return value.get<std::string>();
}

double nonnegative_field(const json& object, const std::string& path, const char* name) {
  const auto& value = field(object, path, name);
  if (!value.is_number()) throw InstanceError(path + "." + name, "expected a number");
  const double x = value.get<double>();
  if (!(x >= 0.0)) throw InstanceError(path + "." + name, "must be nonnegative");
  return x;
}

const json& array_field(const json& object, const std::string& path, const char* name) {
  const auto& value = field(object, path, name);
  if (!value.is_array()) throw InstanceError(path + "." + name, "expected an array");
  return value;
}

std::string at(const std::string& path, const char* name, std::size_t i) {
  return (path.empty() ? std::string(name) : path + "." + name) + "[" + std::to_string(i) + "]";
}

}  // namespace

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceError("", std::string("syntax error: ") + e.what());
  }
}

Instance instance_from_json(const json& doc) {
  Instance instance;
  std::unordered_map<std::string, std::size_t> family_index;
  const auto& families = field(doc, "", "families");
  if (!families.is_array()) throw InstanceError("families", "expected an array");
  for (std::size_t f = 0; f < families.size(); ++f) {
    const auto path = at("", "families", f);
    Family family{string_field(families[f], path, "id"),
                  nonnegative_field(families[f], path, "setup")};
    if (!family_index.emplace(family.id, f).second)
      throw InstanceError(path + ".id", "duplicate family id '" + family.id + "'");
    instance.families.push_back(std::move(family));
  }
  const auto& jobs = field(doc, "", "jobs");
  if (!jobs.is_array()) throw InstanceError("jobs", "expected an array");
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const auto path = at("", "jobs", j);
    Job job{string_field(jobs[j], path, "id"), nonnegative_field(jobs[j], path, "weight"), {}};
    const auto& ops = array_field(jobs[j], path, "ops");
    for (std::size_t o = 0; o < ops.size(); ++o) {
      const auto op_path = at(path, "ops", o);
      const auto family = string_field(ops[o], op_path, "family");
      auto it = family_index.find(family);
      if (it == family_index.end())
        throw InstanceError(op_path + ".family", "unknown family '" + family + "'");
      job.operations.push_back({string_field(ops[o], op_path, "id"), it->second,
                                nonnegative_field(ops[o], op_path, "p")});
    }
    instance.jobs.push_back(std::move(job));
  }
  validate(instance);
  return instance;
}

json instance_to_json(const Instance& instance) {
  json families = json::array();
  for (const auto& f : instance.families) families.push_back({{"id", f.id}, {"setup", f.setup_time}});
  json jobs = json::array();
  for (const auto& job : instance.jobs) {
    json ops = json::array();
    for (const auto& op : job.operations)
      ops.push_back({{"id", op.id},
                     {"family", instance.families.at(op.family).id},
                     {"p", op.processing_time}});
    jobs.push_back({{"id", job.id}, {"weight", job.weight}, {"ops", std::move(ops)}});
  }
  return {{"families", std::move(families)}, {"jobs", std::move(jobs)}};
}

Instance parse_instance(std::string_view text) { return instance_from_json(parse_json(text)); }

std::string serialize_instance(const Instance& instance) { return instance_to_json(instance).dump(); }

Schedule schedule_from_json(const Instance& instance, const json& doc) {
  if (!doc.is_object() || !doc.contains("order") || !doc["order"].is_array())
    throw MalformedScheduleError("schedule document needs an \"order\" array");
  std::vector<std::string> ids;
  for (const auto& entry : doc["order"]) {
    if (!entry.is_string()) throw MalformedScheduleError("operation ids must be strings");
    ids.push_back(entry.get<std::string>());
  }
  return schedule_from_ids(instance, ids);
}

json schedule_to_json(const Instance& instance, const Schedule& schedule) {
  return {{"order", schedule_ids(instance, schedule)}};
}

OsSchedule os_schedule_from_json(const GluedInstance& glued, const json& doc) {
  if (!doc.is_object() || !doc.contains("order") || !doc["order"].is_array())
    throw MalformedScheduleError("schedule document needs an \"order\" array");
  std::unordered_map<std::string, std::size_t> setup_by_family;
  std::unordered_map<std::string, std::size_t> job_by_id;
  for (std::size_t s = 0; s < glued.setups.size(); ++s) setup_by_family[glued.setups[s].family_id] = s;
  for (std::size_t j = 0; j < glued.jobs.size(); ++j) job_by_id[glued.jobs[j].job_id] = j;

  OsSchedule os;
  for (const auto& entry : doc["order"]) {
    std::string kind;
    if (entry.is_object() && entry.contains("kind") && entry["kind"].is_string())
      kind = entry["kind"].get<std::string>();
    if (kind == "setup" && entry.contains("family") && entry["family"].is_string()) {
      auto it = setup_by_family.find(entry["family"].get<std::string>());
      if (it == setup_by_family.end())
        throw MalformedScheduleError("no setup for family '" + entry["family"].get<std::string>() + "'");
      os.order.push_back(OsItem::setup(it->second));
    } else if (kind == "job" && entry.contains("job") && entry["job"].is_string()) {
      auto it = job_by_id.find(entry["job"].get<std::string>());
      if (it == job_by_id.end())
        throw MalformedScheduleError("unknown job '" + entry["job"].get<std::string>() + "'");
      os.order.push_back(OsItem::job(it->second));
    } else {
      throw MalformedScheduleError("order entries are {\"kind\":\"setup\",\"family\":..} or "
                                   "{\"kind\":\"job\",\"job\":..}");
    }
  }
  check_os_schedule(glued, os);
  return os;
}

json os_schedule_to_json(const GluedInstance& glued, const OsSchedule& schedule) {
  json order = json::array();
  for (const auto& item : schedule.order) {
    if (item.kind == OsItem::Kind::kSetup)
      order.push_back({{"kind", "setup"}, {"family", glued.setups.at(item.index).family_id}});
    else
      order.push_back({{"kind", "job"}, {"job", glued.jobs.at(item.index).job_id}});
  }
  return {{"order", std::move(order)}};
}

json evaluation_report(const Instance& instance, const Evaluation& evaluation) {
  json jobs = json::object();
  for (std::size_t j = 0; j < instance.jobs.size(); ++j)
    jobs[instance.jobs[j].id] = evaluation.job_completion.at(j);
  return {{"total", evaluation.total}, {"jobs", std::move(jobs)}};
}

json os_evaluation_report(const GluedInstance& glued, const Evaluation& evaluation) {
  json jobs = json::object();
  for (std::size_t j = 0; j < glued.jobs.size(); ++j)
    jobs[glued.jobs[j].job_id] = evaluation.job_completion.at(j);
  return {{"total", evaluation.total}, {"jobs", std::move(jobs)}};
}

PrecInstance prec_from_json(const json& doc) {
  PrecInstance prec;
  std::unordered_map<std::string, std::size_t> index;
  const auto& nodes = array_field(doc, "", "nodes");
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    const auto path = at("", "nodes", v);
    PrecNode node{string_field(nodes[v], path, "id"), nonnegative_field(nodes[v], path, "p"),
                  nonnegative_field(nodes[v], path, "w")};
    if (!index.emplace(node.id, v).second)
      throw InstanceError(path + ".id", "duplicate node id '" + node.id + "'");
    prec.nodes.push_back(std::move(node));
  }
  const auto& edges = doc.contains("edges") ? doc["edges"] : json::array();
  if (!edges.is_array()) throw InstanceError("edges", "expected an array");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto path = at("", "edges", e);
    const auto& edge = edges[e];
    if (!edge.is_array() || edge.size() != 2 || !edge[0].is_string() || !edge[1].is_string())
      throw InstanceError(path, "expected [predId, succId]");
    auto from = index.find(edge[0].get<std::string>());
    auto to = index.find(edge[1].get<std::string>());
    if (from == index.end()) throw InstanceError(path + "[0]", "unknown node");
    if (to == index.end()) throw InstanceError(path + "[1]", "unknown node");
    prec.edges.emplace_back(from->second, to->second);
  }
  validate(prec);
  return prec;
}

json prec_to_json(const PrecInstance& prec) {
  json nodes = json::array();
  for (const auto& node : prec.nodes)
    nodes.push_back({{"id", node.id}, {"p", node.processing}, {"w", node.weight}});
  json edges = json::array();
  for (const auto& [from, to] : prec.edges)
    edges.push_back({prec.nodes.at(from).id, prec.nodes.at(to).id});
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

}  // namespace ossched
