#include "flowkit/batch.hpp"

#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "flowkit/errors.hpp"
#include "lifecycle.hpp"
#include "run_state.hpp"

namespace flowkit {

namespace {

Value::List require_list(const Value& prep_res, const std::string& full_id) {
  if (!prep_res.is_list())
    throw FlowError(ErrorCode::PrepNotAList,
                    "batch node '" + full_id + "' prep returned " +
                        Value::kind_name(prep_res.kind()) + ", expected a list");
  return prep_res.list();
}

// Index-aligned concurrent map over the elements; fail-fast on the first
// element whose retries are exhausted. Threads never touch the store.
Value::List parallel_map(Node& node, const Value::List& items, std::size_t max_concurrency,
                         WaitProvider& wait, const std::string& full_id) {
  const std::size_t n = items.size();
  Value::List results(n);
  if (n == 0) return results;

  std::size_t workers = max_concurrency == 0 ? n : std::min(max_concurrency, n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    while (!failed.load(std::memory_order_acquire)) {
      std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      try {
        results[i] = detail::guarded_exec(node, items[i], wait, full_id, i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_release);
        return;
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

Value::List sequential_map(Node& node, const Value::List& items, WaitProvider& wait,
                           const std::string& full_id) {
  Value::List results;
  results.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i)
    results.push_back(detail::guarded_exec(node, items[i], wait, full_id, i));
  return results;
}

std::string run_batch_lifecycle(BatchNode& node, SharedStore& store, RunState& state,
                                std::optional<std::size_t> parallel) {
  charge_step(state);
  const std::string full_id = state.id_prefix + node.id();

  Value prep_res = detail::guarded_prep(node, store, full_id);
  Value::List items = require_list(prep_res, full_id);

  Value::List results = parallel ? parallel_map(node, items, *parallel, *state.wait, full_id)
                                 : sequential_map(node, items, *state.wait, full_id);

  std::string action =
      detail::guarded_post(node, store, prep_res, Value(std::move(results)), full_id);
  finish_step(state, store, full_id, action);
  return action;
}

RunState standalone_state(RunBudget& budget, std::vector<TraceEntry>& trace,
                          WaitProvider& wait) {
  RunState state;
  state.budget = &budget;
  state.trace = &trace;
  state.wait = &wait;
  return state;
}

}  // namespace

std::string BatchNode::run_as_node(SharedStore& store, RunState& state) {
  return run_batch_lifecycle(*this, store, state, std::nullopt);
}

std::string ParallelBatchNode::run_as_node(SharedStore& store, RunState& state) {
  return run_batch_lifecycle(*this, store, state, max_concurrency_);
}

std::string BatchFlow::run_as_node(SharedStore& store, RunState& state) {
  charge_step(state);
  const std::string full_id = state.id_prefix + id();

  std::vector<ParamSet> params;
  try {
    if (params_) params = params_(store);
  } catch (const std::exception& e) {
    throw PhaseError(ErrorCode::PrepFailed, Phase::Prep, full_id, e.what());
  }

  std::vector<std::string> actions;
  actions.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    // shadow the overlay keys, remembering prior bindings
    std::vector<std::pair<std::string, std::optional<Value>>> priors;
    priors.reserve(params[i].overlay.size());
    for (const auto& [key, value] : params[i].overlay) {
      const Value* prior = store.get(key);
      priors.emplace_back(key, prior ? std::optional<Value>(*prior) : std::nullopt);
      store.set(key, value);
    }

    const bool saved_suppress = state.suppress_sink;
    state.suppress_sink = true;  // iterations checkpoint only as a whole
    const std::string saved_prefix = state.id_prefix;
    state.id_prefix = full_id + "[" + std::to_string(i) + "]/";
    try {
      actions.push_back(run_flow_from(*inner_, nullptr, store, state));
    } catch (FlowError& e) {
      state.id_prefix = saved_prefix;
      state.suppress_sink = saved_suppress;
      throw FlowError(e.code(), "batch flow '" + full_id + "' iteration " +
                                    std::to_string(i) + ": " + e.what());
    }
    state.id_prefix = saved_prefix;
    state.suppress_sink = saved_suppress;

    for (auto it = priors.rbegin(); it != priors.rend(); ++it) {
      if (it->second)
        store.set(it->first, *it->second);
      else
        store.erase(it->first);
    }
  }

  std::string action;
  try {
    action = collect_ ? collect_(store, actions) : std::string("default");
  } catch (const std::exception& e) {
    throw PhaseError(ErrorCode::PostFailed, Phase::Post, full_id, e.what());
  }
  if (action.empty())
    throw PhaseError(ErrorCode::PostFailed, Phase::Post, full_id, "returned an empty action");
  finish_step(state, store, full_id, action);
  return action;
}

std::string run_batch_node(BatchNode& node, SharedStore& store, WaitProvider& wait) {
  RunBudget budget{std::numeric_limits<std::size_t>::max(), 0};
  std::vector<TraceEntry> trace;
  RunState state = standalone_state(budget, trace, wait);
  if (node.id().empty()) node.set_id("batch");
  return node.run_as_node(store, state);
}

std::string run_batch_node(BatchNode& node, SharedStore& store) {
  return run_batch_node(node, store, default_wait_provider());
}

std::string run_parallel_batch_node(BatchNode& node, SharedStore& store,
                                    std::size_t max_concurrency) {
  RunBudget budget{std::numeric_limits<std::size_t>::max(), 0};
  std::vector<TraceEntry> trace;
  RunState state = standalone_state(budget, trace, default_wait_provider());
  if (node.id().empty()) node.set_id("batch");
  return run_batch_lifecycle(node, store, state, max_concurrency);
}

std::string run_batch_flow(BatchFlow& bflow, SharedStore& store, const RunLimits& limits) {
  RunBudget budget{limits.max_steps, 0};
  std::vector<TraceEntry> trace;
  RunState state = standalone_state(budget, trace, default_wait_provider());
  if (bflow.id().empty()) bflow.set_id("batch_flow");
  return bflow.run_as_node(store, state);
}

}  // namespace flowkit
