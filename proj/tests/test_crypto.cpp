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

#include "skillchain/crypto.hpp"
#include "skillchain/errors.hpp"

using namespace skillchain;

namespace {
SeededRng test_rng(std::uint64_t salt = 0) { return SeededRng(0xc0ffee ^ salt); }
}  // namespace

TEST_CASE("sha256 official test vectors") {
  // FIPS 180-2 vectors.
  CHECK(content_hash({}).hex() ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  Bytes abc = to_bytes("abc");
  CHECK(content_hash(abc).hex() ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  Bytes two_block =
      to_bytes("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq");
  CHECK(content_hash(two_block).hex() ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST_CASE("single bit flip changes the digest") {
  Bytes data = to_bytes("some skill content");
  ContentHash before = content_hash(data);
  data[4] ^= 0x01;
  CHECK(content_hash(data) != before);
}

TEST_CASE("content hash hex round trip") {
  ContentHash h = content_hash(to_bytes("x"));
  CHECK(ContentHash::from_hex(h.hex()) == h);
  CHECK_THROWS_AS(ContentHash::from_hex("abcd"), Error);
}

TEST_CASE("skill id determinism and golden value") {
  Bytes content = to_bytes("skill: summarize tickets\n");
  ContentHash id1 = derive_skill_id(content, "dev-alice", std::nullopt, 1700000000);
  ContentHash id2 = derive_skill_id(content, "dev-alice", std::nullopt, 1700000000);
  CHECK(id1 == id2);
  // Pinned at first build; any change to the canonical encoding or the
  // hash routine must show up here.
  CHECK(id1.hex() ==
        "3fca8026f6929c1f2b09d1a942d3359a5d27cf7b2eec162e2ea05e700f22b8e8");
}

TEST_CASE("skill id is sensitive to every input") {
  Bytes content = to_bytes("body");
  ContentHash base = derive_skill_id(content, "dev", std::nullopt, 100);
  CHECK(derive_skill_id(content, "dev", std::nullopt, 101) != base);
  CHECK(derive_skill_id(content, "dev2", std::nullopt, 100) != base);
  CHECK(derive_skill_id(to_bytes("body2"), "dev", std::nullopt, 100) != base);
  ContentHash prev = content_hash(to_bytes("v1"));
  CHECK(derive_skill_id(content, "dev", prev, 100) != base);

  SUBCASE("every single-byte flip of the content changes the id") {
    for (std::size_t i = 0; i < content.size(); ++i) {
      Bytes mutated = content;
      mutated[i] ^= 0x01;
      CHECK(derive_skill_id(mutated, "dev", std::nullopt, 100) != base);
    }
  }
}

TEST_CASE("dh keypairs derive and differ") {
  auto rng = test_rng();
  KeyPair a = generate_dh_keypair(rng);
  KeyPair b = generate_dh_keypair(rng);
  CHECK(a.public_key.size() == 32);
  CHECK(a.secret_key.size() == 32);
  CHECK(a.public_key != b.public_key);
  CHECK(dh_public_from_secret(a.secret_key) == a.public_key);
}

TEST_CASE("ecdh symmetry over many pairs") {
  auto rng = test_rng(1);
  for (int i = 0; i < 200; ++i) {
    KeyPair a = generate_dh_keypair(rng);
    KeyPair b = generate_dh_keypair(rng);
    CHECK(ecdh_shared_secret(a.secret_key, b.public_key) ==
          ecdh_shared_secret(b.secret_key, a.public_key));
  }
}

TEST_CASE("ecdh self-handshake is well defined") {
  auto rng = test_rng(2);
  KeyPair d = generate_dh_keypair(rng);
  Bytes s = ecdh_shared_secret(d.secret_key, d.public_key);
  CHECK(s.size() == 32);
  CHECK(s == ecdh_shared_secret(d.secret_key, d.public_key));
}

TEST_CASE("ecdh rejects invalid peer points") {
  auto rng = test_rng(3);
  KeyPair a = generate_dh_keypair(rng);
  Bytes zero(32, 0);
  CHECK_THROWS_AS(ecdh_shared_secret(a.secret_key, zero), Error);
  Bytes short_key(16, 1);
  CHECK_THROWS_AS(ecdh_shared_secret(a.secret_key, short_key), Error);
}

TEST_CASE("delivery key derivation separates contexts") {
  auto rng = test_rng(4);
  Bytes shared(32);
  rng.fill(shared);
  Bytes binding = to_bytes("binding-bytes");
  Bytes k_audit = derive_delivery_key(shared, KeyContext::audit, binding);
  Bytes k_license = derive_delivery_key(shared, KeyContext::license, binding);
  Bytes k_sealed = derive_delivery_key(shared, KeyContext::sealed, binding);
  CHECK(k_audit != k_license);
  CHECK(k_audit != k_sealed);
  CHECK(k_license != k_sealed);
  CHECK(k_audit == derive_delivery_key(shared, KeyContext::audit, binding));
  CHECK_THROWS_AS(derive_delivery_key(shared, KeyContext::content, binding),
                  Error);
}

TEST_CASE("delivery key golden value") {
  Bytes shared(32, 0x11);
  ContentHash id = content_hash(to_bytes("fixture-skill"));
  Bytes key = derive_delivery_key(shared, KeyContext::sealed, id.view());
  // Pinned at first build.
  CHECK(hex_encode(key) ==
        "3222c4ca21a58a4713b72c2da19a4dd4936ff12bfcd05dc579a5c2bfbaabdbb0");
}

TEST_CASE("wrap and unwrap content keys") {
  auto rng = test_rng(5);
  Bytes content_key = generate_content_key(rng);
  Bytes delivery(32);
  rng.fill(delivery);
  ContentHash id = content_hash(to_bytes("skill-1"));

  WrappedKey w =
      wrap_content_key(content_key, delivery, KeyContext::audit, id, rng);
  CHECK(unwrap_content_key(w, delivery, id) == content_key);

  SUBCASE("wrong delivery key fails") {
    Bytes other(32);
    rng.fill(other);
    CHECK_THROWS_AS(unwrap_content_key(w, other, id), Error);
  }
  SUBCASE("flipped ciphertext bit fails") {
    WrappedKey tampered = w;
    tampered.ciphertext[0] ^= 0x01;
    CHECK_THROWS_AS(unwrap_content_key(tampered, delivery, id), Error);
  }
  SUBCASE("context relabeling fails authentication") {
    WrappedKey relabeled = w;
    relabeled.context = KeyContext::license;
    CHECK_THROWS_AS(unwrap_content_key(relabeled, delivery, id), Error);
  }
  SUBCASE("different skill id fails") {
    ContentHash other_id = content_hash(to_bytes("skill-2"));
    CHECK_THROWS_AS(unwrap_content_key(w, delivery, other_id), Error);
  }
  SUBCASE("wire format round trip") {
    Bytes wire = w.to_bytes();
    CHECK(wire[0] == static_cast<std::uint8_t>(KeyContext::audit));
    WrappedKey back = WrappedKey::from_bytes(wire);
    CHECK(back == w);
    CHECK(unwrap_content_key(back, delivery, id) == content_key);
  }
}

TEST_CASE("content encryption round trips across sizes") {
  auto rng = test_rng(6);
  Bytes key = generate_content_key(rng);
  for (std::size_t size : {std::size_t{0}, std::size_t{1}, std::size_t{513},
                           std::size_t{1} << 20}) {
    Bytes plain(size);
    rng.fill(plain);
    ContentHash h = content_hash(plain);
    WrappedKey blob = encrypt_content(plain, key, h, rng);
    CHECK(decrypt_content(blob, key, h) == plain);
  }
}

TEST_CASE("content decryption authenticates key and hash binding") {
  auto rng = test_rng(7);
  Bytes key = generate_content_key(rng);
  Bytes plain = to_bytes("licensed skill body");
  ContentHash h = content_hash(plain);
  WrappedKey blob = encrypt_content(plain, key, h, rng);

  Bytes wrong_key = generate_content_key(rng);
  CHECK_THROWS_AS(decrypt_content(blob, wrong_key, h), Error);

  ContentHash wrong_hash = content_hash(to_bytes("other"));
  CHECK_THROWS_AS(decrypt_content(blob, key, wrong_hash), Error);
}

TEST_CASE("verdict signatures verify and reject mutation") {
  auto rng = test_rng(8);
  KeyPair signer = generate_sign_keypair(rng);
  CHECK(sign_public_from_secret(signer.secret_key) == signer.public_key);

  Bytes verdict = to_bytes("canonical verdict bytes");
  Bytes sig = sign_message(verdict, signer.secret_key);
  CHECK(verify_signature(verdict, sig, signer.public_key));

  SUBCASE("wrong public key") {
    KeyPair other = generate_sign_keypair(rng);
    CHECK_FALSE(verify_signature(verdict, sig, other.public_key));
  }
  SUBCASE("mutated message") {
    Bytes mutated = verdict;
    mutated[0] ^= 0x01;
    CHECK_FALSE(verify_signature(mutated, sig, signer.public_key));
  }
  SUBCASE("mutated signature") {
    Bytes bad = sig;
    bad[10] ^= 0x01;
    CHECK_FALSE(verify_signature(verdict, bad, signer.public_key));
  }
  SUBCASE("malformed signature length") {
    Bytes short_sig(10, 0);
    CHECK_FALSE(verify_signature(verdict, short_sig, signer.public_key));
  }
}
