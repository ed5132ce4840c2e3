#pragma once

#include <coroutine>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>

#include "flowkit/task.hpp"
#include "flowkit/value.hpp"

namespace flowkit {

// FIFO queue of Values for rendezvous between concurrently running
// non-blocking flows. put never blocks (unbounded); get suspends the awaiting
// coroutine until a value arrives. Internally synchronized.
class ValueChannel {
 public:
  class GetAwaiter;

  void put(Value value);

  // Awaitable read; only valid inside a non-blocking lifecycle method running
  // under the cooperative scheduler.
  GetAwaiter get();

  // Non-suspending read for draining from ordinary code.
  std::optional<Value> try_get();

  std::size_t size() const;

  class GetAwaiter {
   public:
    explicit GetAwaiter(ValueChannel& channel) : channel_(channel) {}
    ~GetAwaiter();  // unregisters if the frame dies while suspended
    bool await_ready();
    bool await_suspend(std::coroutine_handle<> handle);
    Value await_resume() { return std::move(slot_); }

   private:
    friend class ValueChannel;
    ValueChannel& channel_;
    Value slot_;
    Scheduler* scheduler_ = nullptr;
    std::coroutine_handle<> handle_;
    bool registered_ = false;
  };

 private:
  mutable std::mutex mutex_;
  std::deque<Value> items_;
  std::deque<GetAwaiter*> waiters_;
};

// Store representation of a channel: an OpaqueHandle with kind "queue".
Value make_channel_value();
Value make_channel_value(std::shared_ptr<ValueChannel> channel);

// The channel behind a handle value; raises on a wrong kind.
std::shared_ptr<ValueChannel> channel_of(const Value& value);

}  // namespace flowkit
