#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "flowkit/engine.hpp"

namespace flowkit {

// Persisted record of one completed step. store_bytes is the canonical store
// document; node_id is hierarchical ("parent/child") for nested flows.
struct Checkpoint {
  std::string run_id;
  std::size_t step_index = 0;
  std::string node_id;
  std::string action;
  std::string store_bytes;
  std::string fingerprint;

  bool operator==(const Checkpoint&) const = default;
};

class CheckpointSink {
 public:
  virtual ~CheckpointSink() = default;
  // Called synchronously after each node's post completes, before the next
  // node starts. A throw aborts the run (fail-stop).
  virtual void append(const Checkpoint& checkpoint) = 0;
};

class MemoryCheckpointSink : public CheckpointSink {
 public:
  void append(const Checkpoint& checkpoint) override { checkpoints.push_back(checkpoint); }
  std::vector<Checkpoint> checkpoints;
};

// One checkpoint per line, canonical JSON object with keys (sorted)
// action, fingerprint, node, run, step, store.
class FileCheckpointSink : public CheckpointSink {
 public:
  explicit FileCheckpointSink(const std::filesystem::path& path);
  void append(const Checkpoint& checkpoint) override;

 private:
  std::ofstream out_;
};

std::string encode_checkpoint(const Checkpoint& checkpoint);
Checkpoint decode_checkpoint(std::string_view line);

// Scans the file and returns the last well-formed checkpoint line, or nullopt
// when none exists (missing file included).
std::optional<Checkpoint> read_last_checkpoint(const std::filesystem::path& path);

// Stable hash of the flow's nested graph (node ids, labeled edges, nesting);
// resume refuses to run against a flow whose fingerprint changed.
std::string flow_fingerprint(Flow& flow);

// run_flow with a checkpoint emitted after every node's post. The store must
// be handle-free at each boundary. An empty run_id gets a generated one.
FlowOutcome checkpointed_run(Flow& flow, SharedStore& store, const RunLimits& limits,
                             CheckpointSink& sink, std::string run_id = "");

// Restores the store from the checkpoint, computes the successor of the last
// completed node, and continues the run (with fresh checkpoints) as if it had
// never stopped. When the recorded action is terminal, returns immediately
// with the restored store and zero new steps.
FlowOutcome resume(Flow& flow, const Checkpoint& checkpoint, const RunLimits& limits,
                   CheckpointSink& sink);

}  // namespace flowkit
