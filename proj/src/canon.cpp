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
#include "skillchain/canon.hpp"

#include <algorithm>

#include "skillchain/errors.hpp"

namespace skillchain {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::malformed: return "malformed";
    case Errc::duplicate: return "duplicate";
    case Errc::not_found: return "not_found";
    case Errc::ownership: return "ownership";
    case Errc::wrong_state: return "wrong_state";
    case Errc::wrong_type: return "wrong_type";
    case Errc::insufficient_funds: return "insufficient_funds";
    case Errc::stake_below_minimum: return "stake_below_minimum";
    case Errc::bad_signature: return "bad_signature";
    case Errc::crypto_auth: return "crypto_auth";
    case Errc::corrupt_log: return "corrupt_log";
    case Errc::io: return "io";
  }
  return "unknown";
}

std::string hex_encode(ByteView data) {
  static const char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0x0f]);
  }
  return out;
}

namespace {
int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

Bytes hex_decode(std::string_view hex) {
  if (hex.size() % 2 != 0) {
    throw Error(Errc::malformed, "hex string has odd length");
  }
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = hex_nibble(hex[i]);
    int lo = hex_nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) {
      throw Error(Errc::malformed, "non-hex character");
    }
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

void put_u64_be(Bytes& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
  }
}

std::uint64_t read_u64_be(ByteView in) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    v = (v << 8) | in[i];
  }
  return v;
}

CanonicalEncoder& CanonicalEncoder::add(ByteView field) {
  offsets_.push_back(body_.size());
  put_u64_be(body_, field.size());
  body_.insert(body_.end(), field.begin(), field.end());
  return *this;
}

CanonicalEncoder& CanonicalEncoder::add(std::string_view field) {
  return add(ByteView(reinterpret_cast<const std::uint8_t*>(field.data()),
                      field.size()));
}

CanonicalEncoder& CanonicalEncoder::add_u64(std::uint64_t v) {
  Bytes tmp;
  put_u64_be(tmp, v);
  return add(tmp);
}

CanonicalEncoder& CanonicalEncoder::add_byte(std::uint8_t v) {
  const std::uint8_t b[1] = {v};
  return add(ByteView(b, 1));
}

Bytes CanonicalEncoder::finish() const {
  Bytes out;
  out.reserve(8 + body_.size());
  put_u64_be(out, offsets_.size());
  out.insert(out.end(), body_.begin(), body_.end());
  return out;
}

Bytes canonical_encode(std::initializer_list<ByteView> fields) {
  CanonicalEncoder enc;
  for (ByteView f : fields) enc.add(f);
  return enc.finish();
}

FieldReader::FieldReader(ByteView data) : storage_(data.begin(), data.end()) {
  if (storage_.size() < 8) {
    throw Error(Errc::malformed, "canonical encoding shorter than count");
  }
  const std::uint64_t count = read_u64_be(storage_);
  std::size_t pos = 8;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (storage_.size() - pos < 8) {
      throw Error(Errc::malformed, "truncated field length");
    }
    const std::uint64_t len =
        read_u64_be(ByteView(storage_.data() + pos, 8));
    pos += 8;
    if (storage_.size() - pos < len) {
      throw Error(Errc::malformed, "truncated field body");
    }
    fields_.emplace_back(pos, static_cast<std::size_t>(len));
    pos += len;
  }
  if (pos != storage_.size()) {
    throw Error(Errc::malformed, "trailing bytes after last field");
  }
}

ByteView FieldReader::field(std::size_t i) const {
  if (i >= fields_.size()) {
    throw Error(Errc::malformed, "field index out of range");
  }
  return ByteView(storage_.data() + fields_[i].first, fields_[i].second);
}

std::uint64_t FieldReader::u64(std::size_t i) const {
  ByteView f = field(i);
  if (f.size() != 8) throw Error(Errc::malformed, "expected u64 field");
  return read_u64_be(f);
}

std::uint8_t FieldReader::byte(std::size_t i) const {
  ByteView f = field(i);
  if (f.size() != 1) throw Error(Errc::malformed, "expected byte field");
  return f[0];
}

std::string FieldReader::str(std::size_t i) const {
  ByteView f = field(i);
  return std::string(f.begin(), f.end());
}

}  // namespace skillchain
