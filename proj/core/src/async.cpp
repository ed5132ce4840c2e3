#include "flowkit/async.hpp"

#include <algorithm>
#include <exception>
#include <optional>

#include "flowkit/errors.hpp"
#include "run_state.hpp"

namespace flowkit {

Task<Value> AsyncNode::prep_async(SharedStore& store) { co_return prep(store); }

Task<Value> AsyncNode::exec_async(const Value& prep_res) { co_return exec(prep_res); }

Task<std::string> AsyncNode::post_async(SharedStore& store, const Value& prep_res,
                                        const Value& exec_res) {
  co_return post(store, prep_res, exec_res);
}

namespace {

Task<std::string> run_flow_async(Flow& flow, SharedStore& store, RunState& state);

// Async twin of exec_with_retry; the wait provider is invoked synchronously.
Task<Value> exec_with_retry_async(AsyncNode& node, const Value& prep_res, RunState& state,
                                  const std::string& full_id) {
  const RetryPolicy& policy = node.retry();
  const int attempts = policy.max_retries < 1 ? 1 : policy.max_retries;

  std::string last_error;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    bool failed = false;
    try {
      Value result = co_await node.exec_async(prep_res);
      co_return result;
    } catch (const std::exception& e) {
      last_error = e.what();
      failed = true;
    }
    if (failed && attempt < attempts) state.wait->wait_for(policy.wait);
  }

  if (node.has_fallback()) {
    try {
      co_return node.exec_fallback(prep_res, std::runtime_error(last_error));
    } catch (const std::exception& e) {
      throw PhaseError(ErrorCode::FallbackFailed, Phase::Fallback, full_id,
                       std::string("fallback failed: ") + e.what());
    }
  }
  ExecExhaustedError error(attempts, last_error);
  error.node_id = full_id;
  throw error;
}

Task<std::string> run_async_lifecycle(AsyncNode& node, SharedStore& store, RunState& state) {
  charge_step(state);
  const std::string full_id = state.id_prefix + node.id();

  Value prep_res;
  try {
    prep_res = co_await node.prep_async(store);
  } catch (const FlowError& e) {
    PhaseError wrapped(ErrorCode::PrepFailed, Phase::Prep, full_id, e.what());
    wrapped.cause_code = e.code();
    throw wrapped;
  } catch (const std::exception& e) {
    throw PhaseError(ErrorCode::PrepFailed, Phase::Prep, full_id, e.what());
  }

  Value exec_res = co_await exec_with_retry_async(node, prep_res, state, full_id);

  std::string action;
  try {
    action = co_await node.post_async(store, prep_res, exec_res);
  } catch (const std::exception& e) {
    throw PhaseError(ErrorCode::PostFailed, Phase::Post, full_id, e.what());
  }
  if (action.empty())
    throw PhaseError(ErrorCode::PostFailed, Phase::Post, full_id, "returned an empty action");

  finish_step(state, store, full_id, action);
  co_return action;
}

Task<std::string> run_node_async(Node& node, SharedStore& store, RunState& state) {
  if (node.is_flow()) {
    auto& sub = static_cast<Flow&>(node);
    const std::string saved_prefix = state.id_prefix;
    state.id_prefix += sub.id() + "/";
    std::string action;
    try {
      action = co_await run_flow_async(sub, store, state);
    } catch (...) {
      state.id_prefix = saved_prefix;
      throw;
    }
    state.id_prefix = saved_prefix;
    co_return action;
  }
  if (auto* async_node = dynamic_cast<AsyncNode*>(&node))
    co_return co_await run_async_lifecycle(*async_node, store, state);
  co_return node.run_as_node(store, state);  // blocking node, inline
}

Task<std::string> run_flow_async(Flow& flow, SharedStore& store, RunState& state) {
  if (std::find(state.nesting.begin(), state.nesting.end(), &flow) != state.nesting.end())
    throw FlowError(ErrorCode::NestingCycle,
                    "flow '" + flow.id() + "' transitively contains itself");
  state.nesting.push_back(&flow);
  struct NestGuard {
    std::vector<const Flow*>& stack;
    ~NestGuard() { stack.pop_back(); }
  } guard{state.nesting};

  ensure_ids(flow);
  Node* current = flow.start();
  while (true) {
    std::string action = co_await run_node_async(*current, store, state);
    Node* next = next_node(*current, action);
    if (!next) co_return action;
    current = next;
  }
}

// Detached root coroutine driving one flow to completion.
struct Driver {
  struct promise_type {
    Driver get_return_object() {
      return Driver{std::coroutine_handle<promise_type>::from_promise(*this)};
    }
    std::suspend_never initial_suspend() noexcept { return {}; }
    std::suspend_always final_suspend() noexcept { return {}; }  // owner destroys
    void return_void() {}
    void unhandled_exception() { std::terminate(); }  // drive() catches everything
  };
  std::coroutine_handle<promise_type> handle;
};

Driver drive(Flow& flow, SharedStore& store, RunState& state, std::optional<FlowOutcome>& out,
             std::exception_ptr& error, int& live) {
  try {
    FlowOutcome outcome;
    outcome.terminal_action = co_await run_flow_async(flow, store, state);
    outcome.trace = *state.trace;
    outcome.final_store = store;
    out = std::move(outcome);
  } catch (FlowError& e) {
    e.trace = *state.trace;
    error = std::current_exception();
  } catch (...) {
    error = std::current_exception();
  }
  --live;
}

std::vector<FlowOutcome> run_concurrent_impl(const std::vector<Flow*>& flows,
                                             SharedStore& store, const RunLimits& limits,
                                             WaitProvider& wait) {
  if (limits.max_steps == 0)
    throw FlowError(ErrorCode::Internal, "max_steps must be positive");

  Scheduler scheduler;
  RunBudget budget{limits.max_steps, 0};
  const std::size_t n = flows.size();

  std::vector<RunState> states(n);
  std::vector<std::vector<TraceEntry>> traces(n);
  std::vector<std::optional<FlowOutcome>> outcomes(n);
  std::vector<std::exception_ptr> errors(n);
  std::vector<Driver> drivers;
  drivers.reserve(n);
  int live = static_cast<int>(n);

  {
    Scheduler::Scope scope(scheduler);
    for (std::size_t i = 0; i < n; ++i) {
      states[i].budget = &budget;
      states[i].trace = &traces[i];
      states[i].wait = &wait;
      states[i].scheduler = &scheduler;
      drivers.push_back(drive(*flows[i], store, states[i], outcomes[i], errors[i], live));
    }
    while (live > 0) {
      if (!scheduler.run_one()) break;
    }
  }

  const bool deadlocked = live > 0;
  for (Driver& d : drivers)
    if (d.handle) d.handle.destroy();

  // A failed flow usually strands its peers on empty channels; surface the
  // failure rather than the secondary deadlock.
  for (std::size_t i = 0; i < n; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
  if (deadlocked)
    throw FlowError(ErrorCode::Deadlock,
                    "all remaining non-blocking flows are waiting on empty channels");

  std::vector<FlowOutcome> result;
  result.reserve(n);
  for (auto& o : outcomes) result.push_back(std::move(*o));
  return result;
}

}  // namespace

std::vector<FlowOutcome> run_concurrent(const std::vector<Flow*>& flows, SharedStore& store,
                                        const RunLimits& limits) {
  return run_concurrent_impl(flows, store, limits, default_wait_provider());
}

std::vector<FlowOutcome> run_concurrent(const std::vector<Flow*>& flows, SharedStore& store,
                                        const RunLimits& limits, WaitProvider& wait) {
  return run_concurrent_impl(flows, store, limits, wait);
}

FlowOutcome run_flow_nonblocking(Flow& flow, SharedStore& store, const RunLimits& limits,
                                 WaitProvider& wait) {
  return std::move(run_concurrent_impl({&flow}, store, limits, wait).front());
}

FlowOutcome run_flow_nonblocking(Flow& flow, SharedStore& store, const RunLimits& limits) {
  return run_flow_nonblocking(flow, store, limits, default_wait_provider());
}

}  // namespace flowkit
