#include "ossched/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <string>

#include "ossched/errors.hpp"

namespace ossched {

PullFactor::PullFactor(double beta) : beta_(beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw ParameterError("pull factor must be positive and finite");
}

std::vector<Batch> batches_of(const Instance& instance, const Schedule& schedule) {
  std::vector<Batch> batches;
  for (const auto& ref : schedule.order) {
    const auto& op = operation_at(instance, ref);
    if (batches.empty() || batches.back().family != op.family)
      batches.push_back({op.family, {}, 0.0});
    batches.back().ops.push_back(ref);
    batches.back().processing += op.processing_time;
  }
  return batches;
}

Schedule ungle(const Instance& instance, const GluedInstance& glued,
               const OsSchedule& os) {
  check_os_schedule(glued, os);
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> setup_rank(instance.families.size(), kNone);
  std::size_t rank = 0;
  for (const auto& item : os.order)
    if (item.kind == OsItem::Kind::kSetup)
      setup_rank[glued.setups[item.index].family] = rank++;

  Schedule out;
  for (const auto& item : os.order) {
    if (item.kind != OsItem::Kind::kJob) continue;
    auto ops = glued.jobs[item.index].origin_ops;
    std::stable_sort(ops.begin(), ops.end(), [&](OpRef a, OpRef b) {
      return setup_rank[operation_at(instance, a).family] <
             setup_rank[operation_at(instance, b).family];
    });
    out.order.insert(out.order.end(), ops.begin(), ops.end());
  }
  return out;
}

Schedule transform(const Instance& instance, const GluedInstance& glued,
                   const OsSchedule& os, PullFactor beta, std::vector<OpRef>* pulled) {
  const auto initial = batches_of(instance, ungle(instance, glued, os));
  std::list<Batch> batches(initial.begin(), initial.end());

  for (auto current = batches.begin(); current != batches.end(); ++current) {
    const auto family = current->family;
    const double threshold = beta.value() * instance.families[family].setup_time;
    if (!(threshold > 0.0)) continue;

    bool full = false;
    while (!full) {
      auto source = std::find_if(std::next(current), batches.end(),
                                 [&](const Batch& b) { return b.family == family; });
      if (source == batches.end()) break;
      while (!source->ops.empty()) {
        const auto ref = source->ops.front();
        const double p = operation_at(instance, ref).processing_time;
        if (p != 0.0 && !(current->processing + p < threshold)) {
          full = true;
          break;
        }
        current->ops.push_back(ref);
        if (pulled) pulled->push_back(ref);
        current->processing += p;
        source->ops.erase(source->ops.begin());
        source->processing -= p;
      }
      if (!source->ops.empty()) break;

      auto after = batches.erase(source);
      if (after != batches.end() && after != batches.begin()) {
        auto before = std::prev(after);
        if (before->family == after->family) {
          before->ops.insert(before->ops.end(), after->ops.begin(), after->ops.end());
          before->processing += after->processing;
          batches.erase(after);
        }
      }
    }
  }

  Schedule out;
  out.order.reserve(instance.operation_count());
  for (const auto& batch : batches)
    out.order.insert(out.order.end(), batch.ops.begin(), batch.ops.end());
  return out;
}

TightnessCase gen_tightness(std::size_t m, double eps, double beta) {
  if (m < 1) throw ParameterError("tightness construction needs m >= 1");
  if (!(eps > 0.0)) throw ParameterError("eps must be positive");
  if (!(beta >= PullFactor::kSqrt2 - 1e-9) || !std::isfinite(beta))
    throw ParameterError("beta must be at least sqrt(2)");
  if (!(2.0 * eps < beta)) throw ParameterError("eps too large for beta");

  TightnessCase tc;
  auto& inst = tc.instance;
  inst.families = {{"A", 1.0}, {"B", eps * eps}};
  inst.jobs.push_back({"first", 1.0, {{"first_op", 0, eps}}});
  for (std::size_t i = 0; i < m; ++i) {
    const auto id = "blue" + std::to_string(i);
    inst.jobs.push_back({id, 1.0, {{id + "_op", 1, eps}}});
  }
  inst.jobs.push_back({"last", 1.0, {{"last_op", 0, beta - 2.0 * eps}}});

  tc.glued = glue(inst);
  tc.os.order.push_back(OsItem::setup(0));
  tc.os.order.push_back(OsItem::job(0));
  tc.os.order.push_back(OsItem::setup(1));
  for (std::size_t i = 0; i < m; ++i) tc.os.order.push_back(OsItem::job(1 + i));
  tc.os.order.push_back(OsItem::job(m + 1));
  return tc;
}

}  // namespace ossched
