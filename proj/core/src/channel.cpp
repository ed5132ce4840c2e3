#include "flowkit/channel.hpp"

#include "flowkit/errors.hpp"

namespace flowkit {

void ValueChannel::put(Value value) {
  GetAwaiter* waiter = nullptr;
  {
    std::lock_guard lock(mutex_);
    if (!waiters_.empty()) {
      waiter = waiters_.front();
      waiters_.pop_front();
      waiter->slot_ = std::move(value);
    } else {
      items_.push_back(std::move(value));
    }
  }
  if (waiter) waiter->scheduler_->schedule(waiter->handle_);
}

ValueChannel::GetAwaiter ValueChannel::get() { return GetAwaiter(*this); }

std::optional<Value> ValueChannel::try_get() {
  std::lock_guard lock(mutex_);
  if (items_.empty()) return std::nullopt;
  Value v = std::move(items_.front());
  items_.pop_front();
  return v;
}

std::size_t ValueChannel::size() const {
  std::lock_guard lock(mutex_);
  return items_.size();
}

ValueChannel::GetAwaiter::~GetAwaiter() {
  if (!registered_) return;
  std::lock_guard lock(channel_.mutex_);
  std::erase(channel_.waiters_, this);
}

bool ValueChannel::GetAwaiter::await_ready() {
  std::lock_guard lock(channel_.mutex_);
  if (channel_.items_.empty()) return false;
  slot_ = std::move(channel_.items_.front());
  channel_.items_.pop_front();
  return true;
}

bool ValueChannel::GetAwaiter::await_suspend(std::coroutine_handle<> handle) {
  scheduler_ = Scheduler::current();
  if (!scheduler_)
    throw FlowError(ErrorCode::Internal,
                    "channel get outside a non-blocking run cannot suspend");
  handle_ = handle;
  std::lock_guard lock(channel_.mutex_);
  if (!channel_.items_.empty()) {  // value arrived between ready and suspend
    slot_ = std::move(channel_.items_.front());
    channel_.items_.pop_front();
    return false;
  }
  channel_.waiters_.push_back(this);
  return true;
}

Value make_channel_value() { return make_channel_value(std::make_shared<ValueChannel>()); }

Value make_channel_value(std::shared_ptr<ValueChannel> channel) {
  return Value(OpaqueHandle{"queue", std::move(channel)});
}

std::shared_ptr<ValueChannel> channel_of(const Value& value) {
  if (!value.is_handle() || value.handle().kind != "queue")
    throw FlowError(ErrorCode::Internal, "value is not a queue handle");
  return std::static_pointer_cast<ValueChannel>(value.handle().ref);
}

}  // namespace flowkit
