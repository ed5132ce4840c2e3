#pragma once

#include <string>
#include <string_view>

#include "flowkit/value.hpp"

namespace flowkit {

// Canonical encoding: JSON with lexicographically sorted object keys, UTF-8,
// no insignificant whitespace, integers as decimal literals, floats as
// shortest round-trip decimals (always distinguishable from integers).
// Handles, non-finite floats and invalid UTF-8 raise UnserializableValueError
// with the offending key path. This exact format is the checkpoint payload.
std::string canonical_serialize(const SharedStore& store);
std::string canonical_serialize(const Value& value);

// Parses a store document (any valid JSON object); re-serializing yields the
// canonical form. Raises MalformedDocumentError on bad input.
SharedStore deserialize(std::string_view bytes);
Value deserialize_value(std::string_view bytes);

bool is_valid_utf8(std::string_view text);

// FNV-1a 64-bit over bytes; stable across platforms. Used for graph
// fingerprints and other content addresses.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace flowkit
