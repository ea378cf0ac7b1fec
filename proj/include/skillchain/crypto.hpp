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

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "skillchain/bytes.hpp"
#include "skillchain/canon.hpp"
#include "skillchain/rng.hpp"

namespace skillchain {

// Content addressing uses SHA-256 throughout; key agreement is X25519,
// verdict signatures are Ed25519, and every symmetric operation is
// AES-256-GCM with a fresh random 96-bit nonce.

constexpr std::size_t kHashSize = 32;
constexpr std::size_t kKeySize = 32;
constexpr std::size_t kNonceSize = 12;
constexpr std::size_t kSignatureSize = 64;

struct ContentHash {
  std::array<std::uint8_t, kHashSize> bytes{};

  auto operator<=>(const ContentHash&) const = default;

  /// The null marker: 32 zero bytes (used for "no previous version" and
  /// for the genesis back-link of the log).
  static ContentHash zero() { return ContentHash{}; }
  bool is_zero() const;

  ByteView view() const { return ByteView(bytes.data(), bytes.size()); }
  std::string hex() const;
  static ContentHash from_hex(std::string_view hex);
  static ContentHash from_bytes(ByteView b);  // must be exactly 32 bytes
};

struct KeyPair {
  Bytes public_key;  // 32 bytes
  Bytes secret_key;  // 32 bytes
};

/// Domain-separation tag for delivery-key derivation and AEAD blobs.
/// `content` marks a bulk-content blob; the other three mark wrapped
/// content keys for the corresponding delivery flow.
enum class KeyContext : std::uint8_t {
  content = 0,
  audit = 1,
  license = 2,
  sealed = 3,
};

std::string_view key_context_name(KeyContext ctx);

/// AEAD envelope. Wire format (bit-exact, used both on the log and inside
/// registry payloads): context byte || 12-byte nonce || ciphertext, where
/// ciphertext carries the 16-byte GCM tag at its tail.
struct WrappedKey {
  KeyContext context = KeyContext::content;
  std::array<std::uint8_t, kNonceSize> nonce{};
  Bytes ciphertext;

  Bytes to_bytes() const;
  static WrappedKey from_bytes(ByteView data);
  bool operator==(const WrappedKey&) const = default;
};

struct VerdictSignature {
  Bytes signature;   // 64 bytes
  Bytes signer_public_key;
  bool operator==(const VerdictSignature&) const = default;
};

// -- Hashing and identifiers -------------------------------------------------

ContentHash content_hash(ByteView content);

/// skill_id = H(canonical(content_payload, developer, prev_version, timestamp)).
/// A missing previous version is encoded as 32 zero bytes.
ContentHash derive_skill_id(ByteView content_payload, std::string_view developer,
                            const std::optional<ContentHash>& prev_version,
                            std::uint64_t timestamp);

// -- Key agreement and derivation --------------------------------------------

KeyPair generate_dh_keypair(RandomSource& rng);
Bytes dh_public_from_secret(ByteView secret_key);

/// X25519. Symmetric in its arguments' keypairs:
/// ecdh(sk_a, pk_b) == ecdh(sk_b, pk_a). Rejects malformed and low-order
/// peer points with Error(crypto_auth).
Bytes ecdh_shared_secret(ByteView own_secret, ByteView peer_public);

/// HKDF-SHA256(ikm = shared, salt = empty,
///             info = context name bytes || binding), 32-byte output.
/// The binding is the caller's canonical encoding of the values the key
/// must be tied to (skill_id and the endpoint public keys).
Bytes derive_delivery_key(ByteView shared_secret, KeyContext context,
                          ByteView binding);

// -- AEAD ---------------------------------------------------------------------

/// Wrap a 32-byte content key under a delivery key. Associated data binds
/// the context byte and the skill id, so a wrap replayed under another
/// skill or flow fails authentication.
WrappedKey wrap_content_key(ByteView content_key, ByteView delivery_key,
                            KeyContext context, const ContentHash& skill_id,
                            RandomSource& rng);
Bytes unwrap_content_key(const WrappedKey& wrapped, ByteView delivery_key,
                         const ContentHash& skill_id);

/// Bulk content encryption under a content key (context = content).
/// Associated data binds the plaintext hash, which is the value the
/// registry anchors for Licensed/Sealed skills.
WrappedKey encrypt_content(ByteView plaintext, ByteView content_key,
                           const ContentHash& plaintext_hash, RandomSource& rng);
Bytes decrypt_content(const WrappedKey& blob, ByteView content_key,
                      const ContentHash& plaintext_hash);

Bytes generate_content_key(RandomSource& rng);

// -- Signatures ---------------------------------------------------------------

KeyPair generate_sign_keypair(RandomSource& rng);
Bytes sign_public_from_secret(ByteView secret_key);

/// Ed25519 over the exact message bytes (callers pass a canonical encoding).
Bytes sign_message(ByteView message, ByteView secret_key);
bool verify_signature(ByteView message, ByteView signature,
                      ByteView public_key);

}  // namespace skillchain
