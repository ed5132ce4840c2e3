#pragma once

#include <string>
#include <vector>

#include "flowkit/engine.hpp"
#include "flowkit/flow.hpp"
#include "flowkit/node.hpp"
#include "flowkit/task.hpp"
#include "flowkit/value.hpp"

namespace flowkit {

// Node whose lifecycle methods are suspendable: they may await channel reads
// without blocking the hosting run. Semantics (phase order, store visibility,
// retry) are identical to the blocking node. Defaults delegate to the sync
// phases, so overriding only the suspending phase is enough.
class AsyncNode : public Node {
 public:
  using Node::Node;

  bool non_blocking() const final { return true; }

  virtual Task<Value> prep_async(SharedStore& store);
  virtual Task<Value> exec_async(const Value& prep_res);
  virtual Task<std::string> post_async(SharedStore& store, const Value& prep_res,
                                       const Value& exec_res);
};

// Cooperative counterpart of run_flow: observationally identical for flows of
// blocking nodes, and additionally runs non-blocking nodes, which may suspend
// on channel reads. Blocking and non-blocking nodes mix freely.
FlowOutcome run_flow_nonblocking(Flow& flow, SharedStore& store, const RunLimits& limits);
FlowOutcome run_flow_nonblocking(Flow& flow, SharedStore& store, const RunLimits& limits,
                                 WaitProvider& wait);

// Runs several flows on one cooperative scheduler against the same store;
// they rendezvous via channel handles in the store. The step budget is shared
// across all flows. Outcomes are in input order; each flow's trace is its
// own, with step indexes global to the run. When every runnable flow is
// suspended on an empty channel the run aborts with a Deadlock error.
std::vector<FlowOutcome> run_concurrent(const std::vector<Flow*>& flows, SharedStore& store,
                                        const RunLimits& limits);
std::vector<FlowOutcome> run_concurrent(const std::vector<Flow*>& flows, SharedStore& store,
                                        const RunLimits& limits, WaitProvider& wait);

}  // namespace flowkit
