#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flowkit/engine.hpp"
#include "flowkit/flow.hpp"
#include "flowkit/node.hpp"

namespace flowkit {

// Element-wise node: prep must return a list; exec runs once per element
// (retried per policy); post receives the full, index-aligned results list.
// A failing element aborts the node with its index; later elements never run.
class BatchNode : public Node {
 public:
  using Node::Node;
  std::string run_as_node(SharedStore& store, RunState& state) override;
};

// BatchNode with callback phases.
class FunctionBatchNode : public BatchNode {
 public:
  using PrepFn = std::function<Value(SharedStore&)>;
  using ExecFn = std::function<Value(const Value&)>;
  using PostFn = std::function<std::string(SharedStore&, const Value&, const Value&)>;

  explicit FunctionBatchNode(std::string id = "") : BatchNode(std::move(id)) {}

  FunctionBatchNode& set_prep(PrepFn fn) { prep_ = std::move(fn); return *this; }
  FunctionBatchNode& set_exec(ExecFn fn) { exec_ = std::move(fn); return *this; }
  FunctionBatchNode& set_post(PostFn fn) { post_ = std::move(fn); return *this; }

  Value prep(SharedStore& store) override { return prep_ ? prep_(store) : Value(Value::List{}); }
  Value exec(const Value& element) override { return exec_ ? exec_(element) : element; }
  std::string post(SharedStore& store, const Value& prep_res, const Value& exec_res) override {
    return post_ ? post_(store, prep_res, exec_res) : "default";
  }

 private:
  PrepFn prep_;
  ExecFn exec_;
  PostFn post_;
};

// Batch node whose per-element execs run concurrently, bounded by
// max_concurrency (0 = one thread per element). Results reach post in input
// order regardless of completion order; the first element failure wins and
// outstanding work is not started (fail-fast). Exec callbacks must be pure
// per-item; they never see the store.
class ParallelBatchNode : public FunctionBatchNode {
 public:
  explicit ParallelBatchNode(std::string id = "", std::size_t max_concurrency = 0)
      : FunctionBatchNode(std::move(id)), max_concurrency_(max_concurrency) {}

  std::size_t max_concurrency() const { return max_concurrency_; }
  void set_max_concurrency(std::size_t n) { max_concurrency_ = n; }

  std::string run_as_node(SharedStore& store, RunState& state) override;

 private:
  std::size_t max_concurrency_;
};

// Per-iteration key overlay: applied before an inner run, restored (or
// removed) afterward, so iterations cannot leak into each other.
struct ParamSet {
  Value::Map overlay;
};

// Runs its inner flow once per ParamSet produced by `params`, sequentially,
// in list order; `collect` receives the inner terminal actions in order and
// chooses this node's own action (default "default").
class BatchFlow : public Node {
 public:
  using ParamsFn = std::function<std::vector<ParamSet>(SharedStore&)>;
  using CollectFn = std::function<std::string(SharedStore&, const std::vector<std::string>&)>;

  BatchFlow(std::string id, Flow& inner) : Node(std::move(id)), inner_(&inner) {}

  BatchFlow& set_params(ParamsFn fn) { params_ = std::move(fn); return *this; }
  BatchFlow& set_collect(CollectFn fn) { collect_ = std::move(fn); return *this; }

  Flow& inner() const { return *inner_; }

  std::string run_as_node(SharedStore& store, RunState& state) override;

 private:
  Flow* inner_;
  ParamsFn params_;
  CollectFn collect_;
};

// Standalone entry points mirroring the in-flow behavior.
std::string run_batch_node(BatchNode& node, SharedStore& store);
std::string run_batch_node(BatchNode& node, SharedStore& store, WaitProvider& wait);
std::string run_parallel_batch_node(BatchNode& node, SharedStore& store,
                                    std::size_t max_concurrency);
std::string run_batch_flow(BatchFlow& bflow, SharedStore& store, const RunLimits& limits);

}  // namespace flowkit
