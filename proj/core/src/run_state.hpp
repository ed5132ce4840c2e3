#pragma once

// Internal execution context shared by the engine, variants, durability and
// non-blocking runner. Not installed.

#include <cstddef>
#include <string>
#include <vector>

#include "flowkit/checkpoint.hpp"
#include "flowkit/engine.hpp"
#include "flowkit/errors.hpp"

namespace flowkit {

class Scheduler;

// Node-execution budget, shared across nesting depth and across concurrently
// scheduled flows of one run.
struct RunBudget {
  std::size_t max_steps = 0;
  std::size_t used = 0;
};

struct RunState {
  RunBudget* budget = nullptr;
  std::vector<TraceEntry>* trace = nullptr;
  WaitProvider* wait = nullptr;

  // Monotone step index; starts past the checkpoint on resume.
  std::size_t next_step_index = 0;

  // Durability (null sink disables checkpointing). suppress_sink is raised
  // inside batch-flow iterations, which checkpoint only as a whole.
  CheckpointSink* sink = nullptr;
  bool suppress_sink = false;
  std::string run_id;
  std::string fingerprint;

  // Hierarchical node-id prefix of the flow currently executing.
  std::string id_prefix;

  // Flows on the nesting path; re-entering one is a containment cycle.
  std::vector<const Flow*> nesting;

  // Set while running under the cooperative (non-blocking) runner.
  Scheduler* scheduler = nullptr;
};

// Charges one node execution against the budget; throws StepLimitError when
// the budget is spent.
void charge_step(RunState& state);

// Records a completed step: appends the trace entry and, when a sink is
// active, serializes the store and emits the checkpoint.
void finish_step(RunState& state, SharedStore& store, const std::string& node_id,
                 const std::string& action);

// Engine core: runs `flow` from `entry` (defaults to flow.start() when null)
// until an action finds no successor; returns that terminal action.
std::string run_flow_from(Flow& flow, Node* entry, SharedStore& store, RunState& state);

}  // namespace flowkit
