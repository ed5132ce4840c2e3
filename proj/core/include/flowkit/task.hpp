#pragma once

#include <coroutine>
#include <deque>
#include <exception>
#include <mutex>
#include <optional>
#include <utility>

namespace flowkit {

// Lazily started coroutine with symmetric transfer back to the awaiter.
// Building block of the non-blocking node lifecycle: suspension is
// cooperative, nothing here spawns threads.
template <typename T>
class [[nodiscard]] Task {
 public:
  struct promise_type {
    std::optional<T> value;
    std::exception_ptr error;
    std::coroutine_handle<> continuation;

    Task get_return_object() {
      return Task(std::coroutine_handle<promise_type>::from_promise(*this));
    }
    std::suspend_always initial_suspend() noexcept { return {}; }
    auto final_suspend() noexcept {
      struct FinalAwaiter {
        bool await_ready() noexcept { return false; }
        std::coroutine_handle<> await_suspend(std::coroutine_handle<promise_type> h) noexcept {
          auto cont = h.promise().continuation;
          return cont ? cont : std::noop_coroutine();
        }
        void await_resume() noexcept {}
      };
      return FinalAwaiter{};
    }
    void return_value(T v) { value = std::move(v); }
    void unhandled_exception() { error = std::current_exception(); }
  };

  Task() = default;
  explicit Task(std::coroutine_handle<promise_type> h) : handle_(h) {}
  Task(Task&& other) noexcept : handle_(std::exchange(other.handle_, {})) {}
  Task& operator=(Task&& other) noexcept {
    if (this != &other) {
      destroy();
      handle_ = std::exchange(other.handle_, {});
    }
    return *this;
  }
  Task(const Task&) = delete;
  Task& operator=(const Task&) = delete;
  ~Task() { destroy(); }

  bool await_ready() const noexcept { return false; }
  std::coroutine_handle<> await_suspend(std::coroutine_handle<> awaiter) noexcept {
    handle_.promise().continuation = awaiter;
    return handle_;
  }
  T await_resume() {
    auto& p = handle_.promise();
    if (p.error) std::rethrow_exception(p.error);
    return std::move(*p.value);
  }

 private:
  void destroy() {
    if (handle_) handle_.destroy();
  }
  std::coroutine_handle<promise_type> handle_;
};

// Ready queue for cooperatively scheduled coroutines. Single-threaded resume
// loop; schedule() may be called from other threads.
class Scheduler {
 public:
  void schedule(std::coroutine_handle<> handle) {
    std::lock_guard lock(mutex_);
    ready_.push_back(handle);
  }

  bool run_one() {
    std::coroutine_handle<> handle;
    {
      std::lock_guard lock(mutex_);
      if (ready_.empty()) return false;
      handle = ready_.front();
      ready_.pop_front();
    }
    Scheduler* saved = current_;
    current_ = this;
    handle.resume();
    current_ = saved;
    return true;
  }

  // Scheduler driving the calling context, when any.
  static Scheduler* current() { return current_; }

  // RAII marker used while spawning root coroutines so channel awaits issued
  // before the first suspension find the scheduler.
  struct Scope {
    explicit Scope(Scheduler& s) : saved(current_) { current_ = &s; }
    ~Scope() { current_ = saved; }
    Scheduler* saved;
  };

 private:
  std::mutex mutex_;
  std::deque<std::coroutine_handle<>> ready_;
  inline static thread_local Scheduler* current_ = nullptr;
};

}  // namespace flowkit
