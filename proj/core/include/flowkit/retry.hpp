#pragma once

#include "flowkit/engine.hpp"
#include "flowkit/node.hpp"

namespace flowkit {

// Invokes node.exec up to retry().max_retries times, waiting retry().wait on
// the provider between consecutive attempts. First success wins. On
// exhaustion the node's fallback (when defined) supplies the result; its
// failure raises FallbackFailed, otherwise ExecExhaustedError carries the
// attempt count and last error.
Value exec_with_retry(Node& node, const Value& prep_res, WaitProvider& wait);

}  // namespace flowkit
