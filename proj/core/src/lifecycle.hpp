#pragma once

// Internal lifecycle helpers: run one phase and wrap failures with the node's
// hierarchical id and phase. Shared by the plain node and batch strategies.

#include <optional>
#include <string>

#include "flowkit/engine.hpp"
#include "flowkit/node.hpp"
#include "flowkit/value.hpp"

namespace flowkit::detail {

Value guarded_prep(Node& node, SharedStore& store, const std::string& full_id);

// exec via exec_with_retry; tags ExecExhaustedError with the node id and an
// optional batch element index, and turns fallback failures into PhaseError.
Value guarded_exec(Node& node, const Value& prep_res, WaitProvider& wait,
                   const std::string& full_id, std::optional<std::size_t> element = {});

std::string guarded_post(Node& node, SharedStore& store, const Value& prep_res,
                         const Value& exec_res, const std::string& full_id);

}  // namespace flowkit::detail
