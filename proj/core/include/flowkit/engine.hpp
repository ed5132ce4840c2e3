#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

#include "flowkit/flow.hpp"
#include "flowkit/trace.hpp"
#include "flowkit/value.hpp"

namespace flowkit {

// Cycles are legal, so every run carries a hard budget on node executions
// (nested executions included). Exceeding it raises StepLimitError.
struct RunLimits {
  std::size_t max_steps = 100000;
};

struct FlowOutcome {
  SharedStore final_store;
  std::string terminal_action;  // the action that found no successor
  std::vector<TraceEntry> trace;
};

// Injectable delay source so retry waits are testable without real sleeping.
class WaitProvider {
 public:
  virtual ~WaitProvider() = default;
  virtual void wait_for(std::chrono::milliseconds delay) = 0;
};

class SleepWaitProvider : public WaitProvider {
 public:
  void wait_for(std::chrono::milliseconds delay) override;
};

// Process-wide default (real sleeping).
WaitProvider& default_wait_provider();

// Runs a single node's lifecycle outside a flow; returns post's action.
std::string execute_node(Node& node, SharedStore& store);
std::string execute_node(Node& node, SharedStore& store, WaitProvider& wait);

// Executes the graph from flow.start, following actions until one finds no
// successor. The store is mutated in place across nodes.
FlowOutcome run_flow(Flow& flow, SharedStore& store, const RunLimits& limits);
FlowOutcome run_flow(Flow& flow, SharedStore& store, const RunLimits& limits,
                     WaitProvider& wait);

// Runs a flow the way a parent flow would (same store, fresh budget); returns
// the sub-flow's terminal action.
std::string run_nested(Flow& flow, SharedStore& store, const RunLimits& limits);

}  // namespace flowkit
