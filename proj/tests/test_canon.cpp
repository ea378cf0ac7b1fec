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
#include <doctest.h>

#include <map>

#include "skillchain/canon.hpp"
#include "skillchain/errors.hpp"
#include "skillchain/rng.hpp"

using namespace skillchain;

TEST_CASE("empty field list encodes as an 8-byte zero count") {
  CanonicalEncoder enc;
  Bytes out = enc.finish();
  REQUIRE(out.size() == 8);
  for (auto b : out) CHECK(b == 0);
}

TEST_CASE("length prefixing separates field boundaries") {
  CanonicalEncoder a;
  a.add(std::string_view("ab")).add(std::string_view("c"));
  CanonicalEncoder b;
  b.add(std::string_view("a")).add(std::string_view("bc"));
  CHECK(a.finish() != b.finish());
}

TEST_CASE("encoding is deterministic across invocations") {
  auto build = [] {
    CanonicalEncoder enc;
    enc.add(std::string_view("skill body"));
    enc.add_u64(1234567);
    enc.add_byte(3);
    return enc.finish();
  };
  CHECK(build() == build());
}

TEST_CASE("u64 fields are 8-byte big-endian") {
  CanonicalEncoder enc;
  enc.add_u64(0x0102030405060708ULL);
  Bytes out = enc.finish();
  // count(8) + len(8) + payload(8)
  REQUIRE(out.size() == 24);
  CHECK(out[7] == 1);    // one field
  CHECK(out[15] == 8);   // field length
  for (int i = 0; i < 8; ++i) CHECK(out[16 + i] == i + 1);
}

TEST_CASE("reader round-trips and validates structure") {
  CanonicalEncoder enc;
  enc.add(std::string_view("hello"));
  enc.add_u64(42);
  enc.add_byte(7);
  Bytes out = enc.finish();

  FieldReader r(out);
  REQUIRE(r.count() == 3);
  CHECK(r.str(0) == "hello");
  CHECK(r.u64(1) == 42);
  CHECK(r.byte(2) == 7);
  CHECK_THROWS_AS(r.field(3), Error);

  SUBCASE("truncation is rejected") {
    Bytes cut(out.begin(), out.end() - 1);
    CHECK_THROWS_AS(FieldReader{cut}, Error);
  }
  SUBCASE("trailing bytes are rejected") {
    Bytes extended = out;
    extended.push_back(0);
    CHECK_THROWS_AS(FieldReader{extended}, Error);
  }
}

TEST_CASE("injectivity over random field lists") {
  // 1e5 random lists; any two distinct lists must encode differently.
  SeededRng rng(0x5eedULL);
  std::map<Bytes, std::vector<Bytes>> seen;
  for (int trial = 0; trial < 100'000; ++trial) {
    const std::size_t n = rng.uniform_below(4);
    std::vector<Bytes> fields;
    CanonicalEncoder enc;
    for (std::size_t i = 0; i < n; ++i) {
      Bytes f(rng.uniform_below(6));
      rng.fill(f);
      enc.add(f);
      fields.push_back(std::move(f));
    }
    auto [it, inserted] = seen.emplace(enc.finish(), fields);
    if (!inserted) {
      REQUIRE(it->second == fields);  // collision must mean identical input
    }
  }
}

TEST_CASE("hex round trip and strictness") {
  Bytes data = {0x00, 0x7f, 0xff, 0x10};
  CHECK(hex_encode(data) == "007fff10");
  CHECK(hex_decode("007fff10") == data);
  CHECK_THROWS_AS(hex_decode("abc"), Error);
  CHECK_THROWS_AS(hex_decode("zz"), Error);
}
