#pragma once

#include <memory>
#include <string>
#include <vector>

#include "flowkit/node.hpp"

namespace flowkit {

// A graph of nodes with a designated start. A flow satisfies the node
// contract itself, so it can be wired into another flow's successors; running
// it as a node executes the sub-graph on the same store and surfaces the
// sub-flow's terminal action to the parent. Construction stores only the
// start reference; ids are assigned lazily on first run or extraction.
class Flow : public Node {
 public:
  Flow(std::string id, Node& start) : Node(std::move(id)), start_(&start) {}
  explicit Flow(Node& start) : start_(&start) {}

  Node* start() const { return start_; }

  bool is_flow() const override { return true; }

  std::string run_as_node(SharedStore& store, RunState& state) override;

  // Ties node lifetime to this flow; wiring itself is non-owning.
  void retain(std::shared_ptr<void> owned) { retained_.push_back(std::move(owned)); }

  // Creates a node owned by this flow.
  template <typename N, typename... Args>
  N& make(Args&&... args) {
    auto node = std::make_shared<N>(std::forward<Args>(args)...);
    N& ref = *node;
    retained_.push_back(std::move(node));
    return ref;
  }

 private:
  Node* start_;
  std::vector<std::shared_ptr<void>> retained_;
};

// Nodes reachable from `start` over successor edges, in deterministic
// preorder (wiring order). Does not descend into nested flows.
std::vector<Node*> collect_nodes(Node& start);

// Assigns "<flow-id>#<ordinal>" ids to anonymous nodes in the flow's graph
// and verifies ids are unique within the flow. Idempotent; called on run and
// extraction. An anonymous flow itself gets the id "flow".
void ensure_ids(Flow& flow);

}  // namespace flowkit
