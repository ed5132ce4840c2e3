#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowkit/trace.hpp"

namespace flowkit {

enum class ErrorCode {
  // value store
  EmptyKey,
  UnserializableHandle,
  NonFiniteFloat,
  InvalidText,
  MalformedDocument,
  // wiring
  EmptyLabel,
  DuplicateBinding,
  DuplicateNodeId,
  NestingCycle,
  // execution
  PrepFailed,
  ExecExhausted,
  PostFailed,
  FallbackFailed,
  PrepNotAList,
  StepLimitExceeded,
  Deadlock,
  // durability
  FingerprintMismatch,
  SinkWriteFailed,
  // analysis / tm
  UnknownNode,
  IncompleteDelta,
  // patterns
  MissingKey,
  ScriptExhausted,
  // documents / cli
  ParseError,
  UnknownKind,
  UnresolvedId,
  Internal,
};

const char* error_code_name(ErrorCode code);

class FlowError : public std::runtime_error {
 public:
  FlowError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Steps completed before the failure; attached by the engine on propagation.
  std::vector<TraceEntry> trace;

 private:
  ErrorCode code_;
};

enum class Phase { Prep, Exec, Post, Fallback };
const char* phase_name(Phase phase);

// Wraps an error thrown by a lifecycle callback with node id and phase.
class PhaseError : public FlowError {
 public:
  PhaseError(ErrorCode code, Phase phase, std::string node_id, std::string cause);

  Phase phase;
  std::string node_id;
  std::string cause;
  // Code of the wrapped FlowError, when the cause was one.
  std::optional<ErrorCode> cause_code;
};

class ExecExhaustedError : public FlowError {
 public:
  ExecExhaustedError(int attempts, std::string last_error);

  int attempts;
  std::string last_error;
  std::string node_id;                       // filled in by the engine
  std::optional<std::size_t> element_index;  // set for batch elements
};

class StepLimitError : public FlowError {
 public:
  explicit StepLimitError(std::size_t max_steps);
  std::size_t max_steps;
};

// Raised when canonical serialization meets an OpaqueHandle, a non-finite
// float, or invalid UTF-8; `path` names the offending location (e.g. "a.b[2]").
class UnserializableValueError : public FlowError {
 public:
  UnserializableValueError(ErrorCode code, std::string path);
  std::string path;
};

class MalformedDocumentError : public FlowError {
 public:
  MalformedDocumentError(std::string detail, std::size_t byte_offset = 0);
  std::size_t byte_offset;
};

class DuplicateBindingError : public FlowError {
 public:
  explicit DuplicateBindingError(std::string label);
  std::string label;
};

class FingerprintMismatchError : public FlowError {
 public:
  FingerprintMismatchError(std::string expected, std::string actual);
  std::string expected;
  std::string actual;
};

class IncompleteDeltaError : public FlowError {
 public:
  IncompleteDeltaError(std::string state, std::string symbol);
  std::string state;
  std::string symbol;
};

class UnknownNodeError : public FlowError {
 public:
  explicit UnknownNodeError(std::string node_id);
  std::string node_id;
};

class MissingKeyError : public FlowError {
 public:
  explicit MissingKeyError(std::string key);
  std::string key;
};

}  // namespace flowkit
