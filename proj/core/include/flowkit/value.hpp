#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "flowkit/errors.hpp"

namespace flowkit {

// Runtime-only reference living in a store (e.g. a message queue). Never
// serializable; identity is the referenced object, tagged with a kind.
struct OpaqueHandle {
  std::string kind;
  std::shared_ptr<void> ref;

  bool operator==(const OpaqueHandle& other) const {
    return kind == other.kind && ref == other.ref;
  }
};

// Closed recursive value algebra carried through a run. Integer and Float are
// distinct kinds and never coerced; two handle-free values are equal iff
// their canonical serializations are byte-identical.
class Value {
 public:
  enum class Kind { Null, Boolean, Integer, Float, Text, List, Map, Handle };

  using List = std::vector<Value>;
  using Map = std::map<std::string, Value>;

  Value() : v_(std::monostate{}) {}
  Value(std::nullptr_t) : v_(std::monostate{}) {}
  template <typename T, std::enable_if_t<std::is_same_v<T, bool>, int> = 0>
  Value(T b) : v_(b) {}
  Value(int i) : v_(static_cast<std::int64_t>(i)) {}
  Value(std::int64_t i) : v_(i) {}
  Value(double d) : v_(d) {}
  Value(const char* s) : v_(std::string(s)) {}
  Value(std::string_view s) : v_(std::string(s)) {}
  Value(std::string s) : v_(std::move(s)) {}
  Value(List l) : v_(std::move(l)) {}
  Value(Map m) : v_(std::move(m)) {}
  Value(OpaqueHandle h) : v_(std::move(h)) {}

  Kind kind() const { return static_cast<Kind>(v_.index()); }

  bool is_null() const { return kind() == Kind::Null; }
  bool is_bool() const { return kind() == Kind::Boolean; }
  bool is_int() const { return kind() == Kind::Integer; }
  bool is_float() const { return kind() == Kind::Float; }
  bool is_text() const { return kind() == Kind::Text; }
  bool is_list() const { return kind() == Kind::List; }
  bool is_map() const { return kind() == Kind::Map; }
  bool is_handle() const { return kind() == Kind::Handle; }

  bool boolean() const { return expect<bool>("boolean"); }
  std::int64_t integer() const { return expect<std::int64_t>("integer"); }
  double real() const { return expect<double>("float"); }
  const std::string& text() const { return expect<std::string>("text"); }
  const List& list() const { return expect<List>("list"); }
  List& list() { return expect<List>("list"); }
  const Map& map() const { return expect<Map>("map"); }
  Map& map() { return expect<Map>("map"); }
  const OpaqueHandle& handle() const { return expect<OpaqueHandle>("handle"); }

  // Numeric convenience: integer or float widened to double.
  double number() const;

  bool operator==(const Value& other) const;
  bool operator!=(const Value& other) const { return !(*this == other); }

  // True if an OpaqueHandle occurs anywhere in the tree.
  bool contains_handle() const;

  static const char* kind_name(Kind kind);

 private:
  template <typename T>
  const T& expect(const char* what) const {
    if (const T* p = std::get_if<T>(&v_)) return *p;
    throw FlowError(ErrorCode::Internal,
                    std::string("value is ") + kind_name(kind()) + ", expected " + what);
  }
  template <typename T>
  T& expect(const char* what) {
    return const_cast<T&>(static_cast<const Value*>(this)->expect<T>(what));
  }

  std::variant<std::monostate, bool, std::int64_t, double, std::string, List, Map, OpaqueHandle>
      v_;
};

// The mutable key-value state propagated through a run; the sole channel of
// inter-node data flow. Confined to one run at a time.
class SharedStore {
 public:
  SharedStore() = default;
  explicit SharedStore(Value::Map entries) : entries_(std::move(entries)) {}

  // Returns the bound value or nullptr when the key is absent.
  const Value* get(std::string_view key) const;

  // Binds key to value, silently overwriting. Keys must be non-empty.
  void set(std::string_view key, Value value);

  // Returns the bound value or `fallback` when absent.
  Value value_or(std::string_view key, Value fallback) const;

  bool contains(std::string_view key) const { return get(key) != nullptr; }
  bool erase(const std::string& key) { return entries_.erase(key) > 0; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const Value::Map& entries() const { return entries_; }

  bool operator==(const SharedStore& other) const { return entries_ == other.entries_; }

 private:
  Value::Map entries_;
};

}  // namespace flowkit
