#include "flowkit/value.hpp"

#include <bit>

namespace flowkit {

namespace {

bool float_identical(double a, double b) {
  // Canonical-serialization equality: -0.0 != 0.0, bit patterns decide.
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

}  // namespace

double Value::number() const {
  if (is_int()) return static_cast<double>(integer());
  return real();
}

bool Value::operator==(const Value& other) const {
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Null: return true;
    case Kind::Boolean: return boolean() == other.boolean();
    case Kind::Integer: return integer() == other.integer();
    case Kind::Float: return float_identical(real(), other.real());
    case Kind::Text: return text() == other.text();
    case Kind::List: return list() == other.list();
    case Kind::Map: return map() == other.map();
    case Kind::Handle: return handle() == other.handle();
  }
  return false;
}

bool Value::contains_handle() const {
  switch (kind()) {
    case Kind::Handle:
      return true;
    case Kind::List:
      for (const Value& v : list())
        if (v.contains_handle()) return true;
      return false;
    case Kind::Map:
      for (const auto& [k, v] : map())
        if (v.contains_handle()) return true;
      return false;
    default:
      return false;
  }
}

const char* Value::kind_name(Kind kind) {
  switch (kind) {
    case Kind::Null: return "null";
    case Kind::Boolean: return "boolean";
    case Kind::Integer: return "integer";
    case Kind::Float: return "float";
    case Kind::Text: return "text";
    case Kind::List: return "list";
    case Kind::Map: return "map";
    case Kind::Handle: return "handle";
  }
  return "?";
}

const Value* SharedStore::get(std::string_view key) const {
  auto it = entries_.find(std::string(key));
  return it == entries_.end() ? nullptr : &it->second;
}

void SharedStore::set(std::string_view key, Value value) {
  if (key.empty()) throw FlowError(ErrorCode::EmptyKey, "store keys must be non-empty");
  entries_.insert_or_assign(std::string(key), std::move(value));
}

Value SharedStore::value_or(std::string_view key, Value fallback) const {
  const Value* v = get(key);
  return v ? *v : std::move(fallback);
}

}  // namespace flowkit
