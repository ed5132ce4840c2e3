#include "flowkit/retry.hpp"

#include <stdexcept>

#include "flowkit/errors.hpp"

namespace flowkit {

Value exec_with_retry(Node& node, const Value& prep_res, WaitProvider& wait) {
  const RetryPolicy& policy = node.retry();
  const int attempts = policy.max_retries < 1 ? 1 : policy.max_retries;

  std::string last_error;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    try {
      return node.exec(prep_res);
    } catch (const std::exception& e) {
      last_error = e.what();
    } catch (...) {
      last_error = "non-standard exception";
    }
    if (attempt < attempts) wait.wait_for(policy.wait);
  }

  if (node.has_fallback()) {
    try {
      return node.exec_fallback(prep_res, std::runtime_error(last_error));
    } catch (const std::exception& e) {
      throw FlowError(ErrorCode::FallbackFailed,
                      std::string("fallback failed: ") + e.what());
    }
  }
  throw ExecExhaustedError(attempts, last_error);
}

}  // namespace flowkit
