#include "flowkit/flow.hpp"

#include <unordered_set>

#include "flowkit/errors.hpp"
#include "run_state.hpp"

namespace flowkit {

std::vector<Node*> collect_nodes(Node& start) {
  std::vector<Node*> order;
  std::unordered_set<const Node*> seen;
  std::vector<Node*> pending{&start};
  while (!pending.empty()) {
    Node* n = pending.back();
    pending.pop_back();
    if (!seen.insert(n).second) continue;
    order.push_back(n);
    const auto& succ = n->successors();
    for (auto it = succ.rbegin(); it != succ.rend(); ++it) pending.push_back(it->second);
  }
  return order;
}

void ensure_ids(Flow& flow) {
  if (flow.id().empty()) flow.set_id("flow");
  std::vector<Node*> nodes = collect_nodes(*flow.start());
  std::size_t ordinal = 0;
  std::unordered_set<std::string> ids;
  for (Node* n : nodes) {
    if (n->id().empty()) n->set_id(flow.id() + "#" + std::to_string(++ordinal));
    if (!ids.insert(n->id()).second)
      throw FlowError(ErrorCode::DuplicateNodeId,
                      "node id '" + n->id() + "' is not unique within flow '" + flow.id() + "'");
  }
}

namespace {

struct PrefixGuard {
  PrefixGuard(RunState& state, const std::string& segment)
      : state(state), saved(state.id_prefix) {
    state.id_prefix += segment;
  }
  ~PrefixGuard() { state.id_prefix = std::move(saved); }
  RunState& state;
  std::string saved;
};

}  // namespace

std::string Flow::run_as_node(SharedStore& store, RunState& state) {
  PrefixGuard guard(state, id() + "/");
  return run_flow_from(*this, nullptr, store, state);
}

}  // namespace flowkit
