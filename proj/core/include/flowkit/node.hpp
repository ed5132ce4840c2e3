#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flowkit/value.hpp"

namespace flowkit {

struct RunState;  // internal execution context (core/src/run_state.hpp)

// Retry applies to the exec phase only. max_retries counts total attempts
// (1 = try once); wait elapses between consecutive attempts, never before the
// first or after the last.
struct RetryPolicy {
  int max_retries = 1;
  std::chrono::milliseconds wait{0};
};

// Atomic unit of computation with a three-phase lifecycle:
//   prep(store)  -> prepared input (only phase that reads the store)
//   exec(prep)   -> result; no store access by construction, retried per policy
//   post(store, prep, exec) -> action label selecting the outgoing edge
class Node {
 public:
  explicit Node(std::string id = "") : id_(std::move(id)) {}
  virtual ~Node() = default;

  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;

  const std::string& id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }

  const RetryPolicy& retry() const { return retry_; }
  void set_retry(RetryPolicy policy) { retry_ = policy; }

  // Outgoing edges in wiring order (deterministic enumeration for id
  // assignment and graph extraction).
  const std::vector<std::pair<std::string, Node*>>& successors() const { return ordered_; }

  // Exact-label lookup; no default fallback (see next_node).
  Node* successor(const std::string& action) const;

  virtual bool is_flow() const { return false; }
  virtual bool non_blocking() const { return false; }

  virtual Value prep(SharedStore&) { return Value(); }
  virtual Value exec(const Value&) { return Value(); }
  virtual std::string post(SharedStore&, const Value&, const Value&) { return "default"; }

  virtual bool has_fallback() const { return false; }
  virtual Value exec_fallback(const Value& prep_res, const std::exception& error);

  // Runs this node within an active run: counts a step, runs the lifecycle,
  // records the trace entry and checkpoint. Flow and the batch variants
  // override the execution strategy.
  virtual std::string run_as_node(SharedStore& store, RunState& state);

 private:
  friend void connect_default(Node& from, Node& to);
  friend void connect_on(Node& from, std::string_view action, Node& to);

  void bind(std::string action, Node& to);

  std::string id_;
  RetryPolicy retry_;
  std::unordered_map<std::string, Node*> by_action_;
  std::vector<std::pair<std::string, Node*>> ordered_;
};

// Binds the "default" transition. Rebinding any already-bound label raises
// DuplicateBindingError: graphs are write-once.
void connect_default(Node& from, Node& to);

// Binds a specific action label. Empty labels raise EmptyLabel.
void connect_on(Node& from, std::string_view action, Node& to);

// Successor selection: exact match first, then the "default" binding, then
// Terminal (nullptr). Constant-time map access.
Node* next_node(const Node& current, const std::string& action);

// Wiring sugar for linear chains: a >> b >> c.
inline Node& operator>>(Node& from, Node& to) {
  connect_default(from, to);
  return to;
}

// Leaf node with callback phases; unset callbacks keep the defaults
// (prep -> null, exec -> null, post -> "default").
class FunctionNode : public Node {
 public:
  using PrepFn = std::function<Value(SharedStore&)>;
  using ExecFn = std::function<Value(const Value&)>;
  using PostFn = std::function<std::string(SharedStore&, const Value&, const Value&)>;
  using FallbackFn = std::function<Value(const Value&, const std::exception&)>;

  explicit FunctionNode(std::string id = "") : Node(std::move(id)) {}

  FunctionNode& set_prep(PrepFn fn) { prep_ = std::move(fn); return *this; }
  FunctionNode& set_exec(ExecFn fn) { exec_ = std::move(fn); return *this; }
  FunctionNode& set_post(PostFn fn) { post_ = std::move(fn); return *this; }
  FunctionNode& set_fallback(FallbackFn fn) { fallback_ = std::move(fn); return *this; }

  Value prep(SharedStore& store) override { return prep_ ? prep_(store) : Value(); }
  Value exec(const Value& prep_res) override { return exec_ ? exec_(prep_res) : Value(); }
  std::string post(SharedStore& store, const Value& prep_res, const Value& exec_res) override {
    return post_ ? post_(store, prep_res, exec_res) : "default";
  }
  bool has_fallback() const override { return static_cast<bool>(fallback_); }
  Value exec_fallback(const Value& prep_res, const std::exception& error) override {
    return fallback_ ? fallback_(prep_res, error) : Node::exec_fallback(prep_res, error);
  }

 private:
  PrepFn prep_;
  ExecFn exec_;
  PostFn post_;
  FallbackFn fallback_;
};

}  // namespace flowkit
