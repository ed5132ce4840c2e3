#include "flowkit/node.hpp"

#include "flowkit/errors.hpp"
#include "flowkit/retry.hpp"
#include "lifecycle.hpp"
#include "run_state.hpp"

namespace flowkit {

Node* Node::successor(const std::string& action) const {
  auto it = by_action_.find(action);
  return it == by_action_.end() ? nullptr : it->second;
}

void Node::bind(std::string action, Node& to) {
  if (action.empty())
    throw FlowError(ErrorCode::EmptyLabel, "action labels must be non-empty");
  auto [it, inserted] = by_action_.emplace(action, &to);
  if (!inserted) throw DuplicateBindingError(action);
  ordered_.emplace_back(std::move(action), &to);
}

Value Node::exec_fallback(const Value&, const std::exception& error) {
  throw std::runtime_error(error.what());  // no fallback defined: surface the last exec error
}

void connect_default(Node& from, Node& to) { from.bind("default", to); }

void connect_on(Node& from, std::string_view action, Node& to) {
  from.bind(std::string(action), to);
}

Node* next_node(const Node& current, const std::string& action) {
  if (Node* exact = current.successor(action)) return exact;
  if (action != "default") return current.successor("default");
  return nullptr;
}

namespace detail {

Value guarded_prep(Node& node, SharedStore& store, const std::string& full_id) {
  try {
    return node.prep(store);
  } catch (const FlowError& e) {
    PhaseError wrapped(ErrorCode::PrepFailed, Phase::Prep, full_id, e.what());
    wrapped.cause_code = e.code();
    throw wrapped;
  } catch (const std::exception& e) {
    throw PhaseError(ErrorCode::PrepFailed, Phase::Prep, full_id, e.what());
  }
}

Value guarded_exec(Node& node, const Value& prep_res, WaitProvider& wait,
                   const std::string& full_id, std::optional<std::size_t> element) {
  try {
    return exec_with_retry(node, prep_res, wait);
  } catch (ExecExhaustedError& e) {
    e.node_id = full_id;
    e.element_index = element;
    throw;
  } catch (const FlowError& e) {
    if (e.code() == ErrorCode::FallbackFailed)
      throw PhaseError(ErrorCode::FallbackFailed, Phase::Fallback, full_id, e.what());
    throw;
  }
}

std::string guarded_post(Node& node, SharedStore& store, const Value& prep_res,
                         const Value& exec_res, const std::string& full_id) {
  std::string action;
  try {
    action = node.post(store, prep_res, exec_res);
  } catch (const FlowError& e) {
    PhaseError wrapped(ErrorCode::PostFailed, Phase::Post, full_id, e.what());
    wrapped.cause_code = e.code();
    throw wrapped;
  } catch (const std::exception& e) {
    throw PhaseError(ErrorCode::PostFailed, Phase::Post, full_id, e.what());
  }
  if (action.empty())
    throw PhaseError(ErrorCode::PostFailed, Phase::Post, full_id, "returned an empty action");
  return action;
}

}  // namespace detail

std::string Node::run_as_node(SharedStore& store, RunState& state) {
  if (non_blocking())
    throw FlowError(ErrorCode::Internal,
                    "node '" + id() + "' is non-blocking; use run_flow_nonblocking");
  charge_step(state);
  const std::string full_id = state.id_prefix + id();

  Value prep_res = detail::guarded_prep(*this, store, full_id);
  Value exec_res = detail::guarded_exec(*this, prep_res, *state.wait, full_id);
  std::string action = detail::guarded_post(*this, store, prep_res, exec_res, full_id);

  finish_step(state, store, full_id, action);
  return action;
}

}  // namespace flowkit
