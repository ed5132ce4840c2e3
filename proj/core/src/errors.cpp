#include "flowkit/errors.hpp"

#include <sstream>

namespace flowkit {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyKey: return "EmptyKey";
    case ErrorCode::UnserializableHandle: return "UnserializableHandle";
    case ErrorCode::NonFiniteFloat: return "NonFiniteFloat";
    case ErrorCode::InvalidText: return "InvalidText";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::EmptyLabel: return "EmptyLabel";
    case ErrorCode::DuplicateBinding: return "DuplicateBinding";
    case ErrorCode::DuplicateNodeId: return "DuplicateNodeId";
    case ErrorCode::NestingCycle: return "NestingCycle";
    case ErrorCode::PrepFailed: return "PrepFailed";
    case ErrorCode::ExecExhausted: return "ExecExhausted";
    case ErrorCode::PostFailed: return "PostFailed";
    case ErrorCode::FallbackFailed: return "FallbackFailed";
    case ErrorCode::PrepNotAList: return "PrepNotAList";
    case ErrorCode::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorCode::Deadlock: return "Deadlock";
    case ErrorCode::FingerprintMismatch: return "FingerprintMismatch";
    case ErrorCode::SinkWriteFailed: return "SinkWriteFailed";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::IncompleteDelta: return "IncompleteDelta";
    case ErrorCode::MissingKey: return "MissingKey";
    case ErrorCode::ScriptExhausted: return "ScriptExhausted";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::UnresolvedId: return "UnresolvedId";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

const char* phase_name(Phase phase) {
  switch (phase) {
    case Phase::Prep: return "prep";
    case Phase::Exec: return "exec";
    case Phase::Post: return "post";
    case Phase::Fallback: return "fallback";
  }
  return "?";
}

PhaseError::PhaseError(ErrorCode code, Phase phase_in, std::string node_id_in, std::string cause_in)
    : FlowError(code, "node '" + node_id_in + "' " + phase_name(phase_in) +
                          " failed: " + cause_in),
      phase(phase_in),
      node_id(std::move(node_id_in)),
      cause(std::move(cause_in)) {}

ExecExhaustedError::ExecExhaustedError(int attempts_in, std::string last_error_in)
    : FlowError(ErrorCode::ExecExhausted,
                "exec exhausted after " + std::to_string(attempts_in) +
                    " attempt(s): " + last_error_in),
      attempts(attempts_in),
      last_error(std::move(last_error_in)) {}

StepLimitError::StepLimitError(std::size_t max_steps_in)
    : FlowError(ErrorCode::StepLimitExceeded,
                "step limit of " + std::to_string(max_steps_in) + " exceeded"),
      max_steps(max_steps_in) {}

UnserializableValueError::UnserializableValueError(ErrorCode code, std::string path_in)
    : FlowError(code, std::string(error_code_name(code)) + " at '" + path_in + "'"),
      path(std::move(path_in)) {}

MalformedDocumentError::MalformedDocumentError(std::string detail, std::size_t byte_offset_in)
    : FlowError(ErrorCode::MalformedDocument, detail), byte_offset(byte_offset_in) {}

DuplicateBindingError::DuplicateBindingError(std::string label_in)
    : FlowError(ErrorCode::DuplicateBinding, "action '" + label_in + "' is already bound"),
      label(std::move(label_in)) {}

FingerprintMismatchError::FingerprintMismatchError(std::string expected_in, std::string actual_in)
    : FlowError(ErrorCode::FingerprintMismatch,
                "flow fingerprint " + actual_in + " does not match checkpoint " + expected_in),
      expected(std::move(expected_in)),
      actual(std::move(actual_in)) {}

IncompleteDeltaError::IncompleteDeltaError(std::string state_in, std::string symbol_in)
    : FlowError(ErrorCode::IncompleteDelta,
                "no transition for state '" + state_in + "' reading '" + symbol_in + "'"),
      state(std::move(state_in)),
      symbol(std::move(symbol_in)) {}

UnknownNodeError::UnknownNodeError(std::string node_id_in)
    : FlowError(ErrorCode::UnknownNode, "unknown node '" + node_id_in + "'"),
      node_id(std::move(node_id_in)) {}

MissingKeyError::MissingKeyError(std::string key_in)
    : FlowError(ErrorCode::MissingKey, "missing store key '" + key_in + "'"),
      key(std::move(key_in)) {}

}  // namespace flowkit
