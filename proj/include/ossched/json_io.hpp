#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "ossched/model.hpp"
#include "ossched/prec_approx.hpp"
#include "ossched/relaxation.hpp"

namespace ossched {

// Instance documents:
//   {"families":[{"id":str,"setup":number}],
//    "jobs":[{"id":str,"weight":number,"ops":[{"id":str,"family":str,"p":number}]}]}
// Parse failures throw InstanceError carrying the path of the offending field.
Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const Instance& instance);
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& instance);

// {"order":[opId,...]}
Schedule schedule_from_json(const Instance& instance, const nlohmann::json& doc);
nlohmann::json schedule_to_json(const Instance& instance, const Schedule& schedule);

// {"order":[{"kind":"setup","family":str} | {"kind":"job","job":str},...]}
OsSchedule os_schedule_from_json(const GluedInstance& glued, const nlohmann::json& doc);
nlohmann::json os_schedule_to_json(const GluedInstance& glued, const OsSchedule& schedule);

// {"total":number,"jobs":{jobId:number}}
nlohmann::json evaluation_report(const Instance& instance, const Evaluation& evaluation);
nlohmann::json os_evaluation_report(const GluedInstance& glued, const Evaluation& evaluation);

// {"nodes":[{"id":str,"p":number,"w":number}],"edges":[[predId,succId],...]}
PrecInstance prec_from_json(const nlohmann::json& doc);
nlohmann::json prec_to_json(const PrecInstance& prec);

nlohmann::json parse_json(std::string_view text);

}  // namespace ossched
