#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace flowkit {

// One completed node execution within a run.
struct TraceEntry {
  std::size_t step = 0;
  std::string node_id;
  std::string action;

  bool operator==(const TraceEntry&) const = default;
};

// Tab-separated export, one line per step: step<TAB>node_id<TAB>action
std::string format_trace(const std::vector<TraceEntry>& trace);

}  // namespace flowkit
