#include "flowkit/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>

#include <json.hpp>

namespace flowkit {

namespace {

// Key path rendering for error reports: "a.b[2].c"; "" becomes "(root)".
class PathCursor {
 public:
  void push_key(std::string_view key) {
    if (!path_.empty()) path_ += '.';
    path_.append(key);
    marks_.push_back(path_.size());
  }
  void push_index(std::size_t i) {
    path_ += '[';
    path_ += std::to_string(i);
    path_ += ']';
    marks_.push_back(path_.size());
  }
  void pop() {
    marks_.pop_back();
    path_.resize(marks_.empty() ? 0 : marks_.back());
  }
  std::string current() const { return path_.empty() ? "(root)" : path_; }

 private:
  std::string path_;
  std::vector<std::size_t> marks_;
};

void append_escaped_text(std::string& out, std::string_view text, const PathCursor& at) {
  if (!is_valid_utf8(text))
    throw UnserializableValueError(ErrorCode::InvalidText, at.current());
  out += '"';
  for (unsigned char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
}

void append_float(std::string& out, double d, const PathCursor& at) {
  if (!std::isfinite(d))
    throw UnserializableValueError(ErrorCode::NonFiniteFloat, at.current());
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  std::string_view text(buf, res.ptr - buf);
  out += text;
  // keep floats distinguishable from integers
  if (text.find('.') == std::string_view::npos && text.find('e') == std::string_view::npos)
    out += ".0";
}

void append_value(std::string& out, const Value& v, PathCursor& at);

void append_map(std::string& out, const Value::Map& map, PathCursor& at) {
  out += '{';
  bool first = true;
  for (const auto& [key, item] : map) {  // std::map iterates in byte order
    if (!first) out += ',';
    first = false;
    if (key.empty()) throw UnserializableValueError(ErrorCode::EmptyKey, at.current());
    at.push_key(key);
    append_escaped_text(out, key, at);
    out += ':';
    append_value(out, item, at);
    at.pop();
  }
  out += '}';
}

void append_value(std::string& out, const Value& v, PathCursor& at) {
  switch (v.kind()) {
    case Value::Kind::Null:
      out += "null";
      break;
    case Value::Kind::Boolean:
      out += v.boolean() ? "true" : "false";
      break;
    case Value::Kind::Integer: {
      char buf[24];
      auto res = std::to_chars(buf, buf + sizeof buf, v.integer());
      out.append(buf, res.ptr - buf);
      break;
    }
    case Value::Kind::Float:
      append_float(out, v.real(), at);
      break;
    case Value::Kind::Text:
      append_escaped_text(out, v.text(), at);
      break;
    case Value::Kind::List: {
      out += '[';
      const auto& list = v.list();
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) out += ',';
        at.push_index(i);
        append_value(out, list[i], at);
        at.pop();
      }
      out += ']';
      break;
    }
    case Value::Kind::Map:
      append_map(out, v.map(), at);
      break;
    case Value::Kind::Handle:
      throw UnserializableValueError(ErrorCode::UnserializableHandle, at.current());
  }
}

Value from_json(const nlohmann::json& j) {
  using nlohmann::json;
  switch (j.type()) {
    case json::value_t::null:
      return Value();
    case json::value_t::boolean:
      return Value(j.get<bool>());
    case json::value_t::number_integer:
      return Value(j.get<std::int64_t>());
    case json::value_t::number_unsigned: {
      std::uint64_t u = j.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(INT64_MAX))
        throw MalformedDocumentError("integer out of 64-bit signed range");
      return Value(static_cast<std::int64_t>(u));
    }
    case json::value_t::number_float:
      return Value(j.get<double>());
    case json::value_t::string:
      return Value(j.get<std::string>());
    case json::value_t::array: {
      Value::List list;
      list.reserve(j.size());
      for (const auto& item : j) list.push_back(from_json(item));
      return Value(std::move(list));
    }
    case json::value_t::object: {
      Value::Map map;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key().empty()) throw MalformedDocumentError("empty object key");
        map.emplace(it.key(), from_json(it.value()));
      }
      return Value(std::move(map));
    }
    default:
      throw MalformedDocumentError("unsupported JSON value");
  }
}

nlohmann::json parse_json(std::string_view bytes) {
  try {
    return nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedDocumentError(e.what(), e.byte);
  }
}

}  // namespace

std::string canonical_serialize(const Value& value) {
  std::string out;
  PathCursor at;
  append_value(out, value, at);
  return out;
}

std::string canonical_serialize(const SharedStore& store) {
  std::string out;
  PathCursor at;
  append_map(out, store.entries(), at);
  return out;
}

Value deserialize_value(std::string_view bytes) { return from_json(parse_json(bytes)); }

SharedStore deserialize(std::string_view bytes) {
  Value root = deserialize_value(bytes);
  if (!root.is_map()) throw MalformedDocumentError("store document must be a JSON object");
  return SharedStore(std::move(root.map()));
}

bool is_valid_utf8(std::string_view text) {
  const auto* p = reinterpret_cast<const unsigned char*>(text.data());
  const auto* end = p + text.size();
  while (p < end) {
    unsigned char c = *p;
    if (c < 0x80) {
      ++p;
      continue;
    }
    int len;
    std::uint32_t cp;
    if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (end - p < len) return false;
    for (int i = 1; i < len; ++i) {
      if ((p[i] & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (p[i] & 0x3F);
    }
    static constexpr std::uint32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len]) return false;                  // overlong
    if (cp >= 0xD800 && cp <= 0xDFFF) return false;    // surrogate
    if (cp > 0x10FFFF) return false;
    p += len;
  }
  return true;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

}  // namespace flowkit
