// Copyright 2026 The Skillchain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <string_view>

#include "skillchain/bytes.hpp"

namespace skillchain {

// Canonical encoding: everything that is hashed, signed, or persisted goes
// through this one format so that equal values produce equal bytes on every
// platform.
//
// Layout (all integers big-endian):
//   u64 field count
//   per field: u64 byte length, then the bytes
//
// Scalars are converted to fixed-width fields first: u64 -> 8 bytes BE,
// enum/byte -> 1 byte. Length prefixes make the encoding injective over
// field lists; nested structures encode themselves and are added as a
// single field.

class CanonicalEncoder {
 public:
  CanonicalEncoder& add(ByteView field);
  CanonicalEncoder& add(const Bytes& field) { return add(ByteView(field)); }
  CanonicalEncoder& add(std::string_view field);
  CanonicalEncoder& add_u64(std::uint64_t v);
  CanonicalEncoder& add_byte(std::uint8_t v);

  std::size_t field_count() const { return offsets_.size(); }

  /// Final byte string. The encoder may be reused after calling this.
  Bytes finish() const;

 private:
  Bytes body_;                         // concatenated (len, bytes) pairs
  std::vector<std::size_t> offsets_;   // field starts, for count
};

/// Convenience for a single already-ordered field list.
Bytes canonical_encode(std::initializer_list<ByteView> fields);

/// Strict reader for canonical encodings. Validates structure on
/// construction and bounds on every accessor; throws Error(malformed).
class FieldReader {
 public:
  explicit FieldReader(ByteView data);

  std::size_t count() const { return fields_.size(); }
  ByteView field(std::size_t i) const;
  std::uint64_t u64(std::size_t i) const;    // field must be exactly 8 bytes
  std::uint8_t byte(std::size_t i) const;    // field must be exactly 1 byte
  std::string str(std::size_t i) const;

 private:
  std::vector<std::pair<std::size_t, std::size_t>> fields_;  // (offset, len)
  Bytes storage_;
};

void put_u64_be(Bytes& out, std::uint64_t v);
std::uint64_t read_u64_be(ByteView in);  // requires in.size() >= 8

}  // namespace skillchain
