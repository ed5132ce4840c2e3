#include "flowkit/engine.hpp"

#include <algorithm>
#include <limits>
#include <thread>

#include "flowkit/errors.hpp"
#include "flowkit/serialize.hpp"
#include "run_state.hpp"

namespace flowkit {

void SleepWaitProvider::wait_for(std::chrono::milliseconds delay) {
  if (delay.count() > 0) std::this_thread::sleep_for(delay);
}

WaitProvider& default_wait_provider() {
  static SleepWaitProvider provider;
  return provider;
}

void charge_step(RunState& state) {
  if (state.budget->used >= state.budget->max_steps)
    throw StepLimitError(state.budget->max_steps);
  ++state.budget->used;
}

void finish_step(RunState& state, SharedStore& store, const std::string& node_id,
                 const std::string& action) {
  state.trace->push_back({state.next_step_index, node_id, action});
  if (state.sink && !state.suppress_sink) {
    Checkpoint checkpoint;
    checkpoint.run_id = state.run_id;
    checkpoint.step_index = state.next_step_index;
    checkpoint.node_id = node_id;
    checkpoint.action = action;
    checkpoint.store_bytes = canonical_serialize(store);
    checkpoint.fingerprint = state.fingerprint;
    state.sink->append(checkpoint);
  }
  ++state.next_step_index;
}

std::string run_flow_from(Flow& flow, Node* entry, SharedStore& store, RunState& state) {
  if (std::find(state.nesting.begin(), state.nesting.end(), &flow) != state.nesting.end())
    throw FlowError(ErrorCode::NestingCycle,
                    "flow '" + flow.id() + "' transitively contains itself");
  state.nesting.push_back(&flow);
  struct NestGuard {
    std::vector<const Flow*>& stack;
    ~NestGuard() { stack.pop_back(); }
  } guard{state.nesting};

  ensure_ids(flow);
  Node* current = entry ? entry : flow.start();
  while (true) {
    std::string action = current->run_as_node(store, state);
    Node* next = next_node(*current, action);
    if (!next) return action;
    current = next;
  }
}

namespace {

FlowOutcome run_flow_impl(Flow& flow, SharedStore& store, const RunLimits& limits,
                          WaitProvider& wait) {
  if (limits.max_steps == 0)
    throw FlowError(ErrorCode::Internal, "max_steps must be positive");
  RunBudget budget{limits.max_steps, 0};
  FlowOutcome outcome;
  RunState state;
  state.budget = &budget;
  state.trace = &outcome.trace;
  state.wait = &wait;
  try {
    outcome.terminal_action = run_flow_from(flow, nullptr, store, state);
  } catch (FlowError& e) {
    e.trace = outcome.trace;  // annotate the in-flight object, keep its type
    throw;
  }
  outcome.final_store = store;
  return outcome;
}

}  // namespace

FlowOutcome run_flow(Flow& flow, SharedStore& store, const RunLimits& limits) {
  return run_flow_impl(flow, store, limits, default_wait_provider());
}

FlowOutcome run_flow(Flow& flow, SharedStore& store, const RunLimits& limits,
                     WaitProvider& wait) {
  return run_flow_impl(flow, store, limits, wait);
}

std::string run_nested(Flow& flow, SharedStore& store, const RunLimits& limits) {
  return run_flow(flow, store, limits).terminal_action;
}

std::string execute_node(Node& node, SharedStore& store, WaitProvider& wait) {
  RunBudget budget{std::numeric_limits<std::size_t>::max(), 0};
  std::vector<TraceEntry> trace;
  RunState state;
  state.budget = &budget;
  state.trace = &trace;
  state.wait = &wait;
  if (node.id().empty()) node.set_id("node");
  return node.run_as_node(store, state);
}

std::string execute_node(Node& node, SharedStore& store) {
  return execute_node(node, store, default_wait_provider());
}

std::string format_trace(const std::vector<TraceEntry>& trace) {
  std::string out;
  for (const TraceEntry& entry : trace) {
    out += std::to_string(entry.step);
    out += '\t';
    out += entry.node_id;
    out += '\t';
    out += entry.action;
    out += '\n';
  }
  return out;
}

}  // namespace flowkit
