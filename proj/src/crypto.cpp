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
#include "skillchain/crypto.hpp"

#include <openssl/evp.h>
#include <openssl/kdf.h>

#include <algorithm>
#include <cstring>
#include <memory>

#include "skillchain/errors.hpp"

namespace skillchain {

namespace {

struct PkeyDeleter {
  void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
struct PkeyCtxDeleter {
  void operator()(EVP_PKEY_CTX* p) const { EVP_PKEY_CTX_free(p); }
};
struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* p) const { EVP_CIPHER_CTX_free(p); }
};
struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* p) const { EVP_MD_CTX_free(p); }
};

using PkeyPtr = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
using PkeyCtxPtr = std::unique_ptr<EVP_PKEY_CTX, PkeyCtxDeleter>;
using CipherCtxPtr = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

PkeyPtr raw_private(int type, ByteView sk) {
  PkeyPtr key(EVP_PKEY_new_raw_private_key(type, nullptr, sk.data(), sk.size()));
  if (!key) throw Error(Errc::crypto_auth, "invalid raw private key");
  return key;
}

PkeyPtr raw_public(int type, ByteView pk) {
  PkeyPtr key(EVP_PKEY_new_raw_public_key(type, nullptr, pk.data(), pk.size()));
  if (!key) throw Error(Errc::crypto_auth, "invalid raw public key");
  return key;
}

Bytes raw_public_bytes(EVP_PKEY* key) {
  std::size_t len = 0;
  if (EVP_PKEY_get_raw_public_key(key, nullptr, &len) != 1) {
    throw Error(Errc::crypto_auth, "cannot export public key");
  }
  Bytes out(len);
  if (EVP_PKEY_get_raw_public_key(key, out.data(), &len) != 1) {
    throw Error(Errc::crypto_auth, "cannot export public key");
  }
  out.resize(len);
  return out;
}

Bytes random_secret(RandomSource& rng) {
  Bytes sk(kKeySize);
  rng.fill(sk);
  return sk;
}

// Encrypt-with-tag: ciphertext carries the 16-byte GCM tag at its tail.
constexpr std::size_t kTagSize = 16;

Bytes gcm_seal(ByteView plaintext, ByteView key, ByteView nonce, ByteView aad) {
  CipherCtxPtr ctx(EVP_CIPHER_CTX_new());
  if (!ctx) throw Error(Errc::crypto_auth, "cipher ctx alloc");
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(),
                         nonce.data()) != 1) {
    throw Error(Errc::crypto_auth, "gcm init");
  }
  int len = 0;
  if (!aad.empty() &&
      EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                        static_cast<int>(aad.size())) != 1) {
    throw Error(Errc::crypto_auth, "gcm aad");
  }
  Bytes out(plaintext.size() + kTagSize);
  int out_len = 0;
  if (!plaintext.empty() &&
      EVP_EncryptUpdate(ctx.get(), out.data(), &out_len, plaintext.data(),
                        static_cast<int>(plaintext.size())) != 1) {
    throw Error(Errc::crypto_auth, "gcm encrypt");
  }
  int fin_len = 0;
  if (EVP_EncryptFinal_ex(ctx.get(), out.data() + out_len, &fin_len) != 1) {
    throw Error(Errc::crypto_auth, "gcm final");
  }
  out_len += fin_len;
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kTagSize,
                          out.data() + out_len) != 1) {
    throw Error(Errc::crypto_auth, "gcm tag");
  }
  out.resize(out_len + kTagSize);
  return out;
}

Bytes gcm_open(ByteView sealed, ByteView key, ByteView nonce, ByteView aad) {
  if (sealed.size() < kTagSize) {
    throw Error(Errc::crypto_auth, "ciphertext shorter than tag");
  }
  const std::size_t ct_len = sealed.size() - kTagSize;
  CipherCtxPtr ctx(EVP_CIPHER_CTX_new());
  if (!ctx) throw Error(Errc::crypto_auth, "cipher ctx alloc");
  if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(),
                         nonce.data()) != 1) {
    throw Error(Errc::crypto_auth, "gcm init");
  }
  int len = 0;
  if (!aad.empty() &&
      EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                        static_cast<int>(aad.size())) != 1) {
    throw Error(Errc::crypto_auth, "gcm aad");
  }
  Bytes out(ct_len);
  int out_len = 0;
  if (ct_len > 0 &&
      EVP_DecryptUpdate(ctx.get(), out.data(), &out_len, sealed.data(),
                        static_cast<int>(ct_len)) != 1) {
    throw Error(Errc::crypto_auth, "gcm decrypt");
  }
  Bytes tag(sealed.begin() + ct_len, sealed.end());
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kTagSize,
                          tag.data()) != 1) {
    throw Error(Errc::crypto_auth, "gcm tag set");
  }
  int fin_len = 0;
  if (EVP_DecryptFinal_ex(ctx.get(), out.data() + out_len, &fin_len) != 1) {
    throw Error(Errc::crypto_auth, "authentication failed");
  }
  out.resize(out_len + fin_len);
  return out;
}

Bytes aead_ad(KeyContext context, const ContentHash& binding) {
  Bytes ad;
  ad.reserve(1 + kHashSize);
  ad.push_back(static_cast<std::uint8_t>(context));
  ad.insert(ad.end(), binding.bytes.begin(), binding.bytes.end());
  return ad;
}

WrappedKey aead_seal(ByteView plaintext, ByteView key, KeyContext context,
                     const ContentHash& binding, RandomSource& rng) {
  if (key.size() != kKeySize) {
    throw Error(Errc::invalid_argument, "AEAD key must be 32 bytes");
  }
  WrappedKey w;
  w.context = context;
  rng.fill(w.nonce);
  w.ciphertext = gcm_seal(plaintext, key,
                          ByteView(w.nonce.data(), w.nonce.size()),
                          aead_ad(context, binding));
  return w;
}

Bytes aead_open(const WrappedKey& w, ByteView key, KeyContext expected,
                const ContentHash& binding) {
  if (key.size() != kKeySize) {
    throw Error(Errc::invalid_argument, "AEAD key must be 32 bytes");
  }
  if (w.context != expected) {
    throw Error(Errc::crypto_auth, "context tag mismatch");
  }
  return gcm_open(w.ciphertext, key, ByteView(w.nonce.data(), w.nonce.size()),
                  aead_ad(w.context, binding));
}

}  // namespace

bool ContentHash::is_zero() const {
  return std::all_of(bytes.begin(), bytes.end(),
                     [](std::uint8_t b) { return b == 0; });
}

std::string ContentHash::hex() const { return hex_encode(view()); }

ContentHash ContentHash::from_hex(std::string_view hex) {
  return from_bytes(hex_decode(hex));
}

ContentHash ContentHash::from_bytes(ByteView b) {
  if (b.size() != kHashSize) {
    throw Error(Errc::malformed, "content hash must be 32 bytes");
  }
  ContentHash h;
  std::copy(b.begin(), b.end(), h.bytes.begin());
  return h;
}

std::string_view key_context_name(KeyContext ctx) {
  switch (ctx) {
    case KeyContext::content: return "content";
    case KeyContext::audit: return "audit";
    case KeyContext::license: return "license";
    case KeyContext::sealed: return "sealed";
  }
  return "unknown";
}

Bytes WrappedKey::to_bytes() const {
  Bytes out;
  out.reserve(1 + kNonceSize + ciphertext.size());
  out.push_back(static_cast<std::uint8_t>(context));
  out.insert(out.end(), nonce.begin(), nonce.end());
  out.insert(out.end(), ciphertext.begin(), ciphertext.end());
  return out;
}

WrappedKey WrappedKey::from_bytes(ByteView data) {
  if (data.size() < 1 + kNonceSize + kTagSize) {
    throw Error(Errc::malformed, "wrapped blob too short");
  }
  if (data[0] > static_cast<std::uint8_t>(KeyContext::sealed)) {
    throw Error(Errc::malformed, "unknown context byte");
  }
  WrappedKey w;
  w.context = static_cast<KeyContext>(data[0]);
  std::copy(data.begin() + 1, data.begin() + 1 + kNonceSize, w.nonce.begin());
  w.ciphertext.assign(data.begin() + 1 + kNonceSize, data.end());
  return w;
}

ContentHash content_hash(ByteView content) {
  ContentHash h;
  unsigned int len = 0;
  if (EVP_Digest(content.data(), content.size(), h.bytes.data(), &len,
                 EVP_sha256(), nullptr) != 1 ||
      len != kHashSize) {
    throw Error(Errc::crypto_auth, "sha256 failed");
  }
  return h;
}

ContentHash derive_skill_id(ByteView content_payload, std::string_view developer,
                            const std::optional<ContentHash>& prev_version,
                            std::uint64_t timestamp) {
  const ContentHash prev = prev_version.value_or(ContentHash::zero());
  CanonicalEncoder enc;
  enc.add(content_payload);
  enc.add(developer);
  enc.add(prev.view());
  enc.add_u64(timestamp);
  return content_hash(enc.finish());
}

KeyPair generate_dh_keypair(RandomSource& rng) {
  KeyPair kp;
  kp.secret_key = random_secret(rng);
  kp.public_key = dh_public_from_secret(kp.secret_key);
  return kp;
}

Bytes dh_public_from_secret(ByteView secret_key) {
  PkeyPtr key = raw_private(EVP_PKEY_X25519, secret_key);
  return raw_public_bytes(key.get());
}

Bytes ecdh_shared_secret(ByteView own_secret, ByteView peer_public) {
  if (peer_public.size() != kKeySize) {
    throw Error(Errc::crypto_auth, "peer public key must be 32 bytes");
  }
  PkeyPtr own = raw_private(EVP_PKEY_X25519, own_secret);
  PkeyPtr peer = raw_public(EVP_PKEY_X25519, peer_public);
  PkeyCtxPtr ctx(EVP_PKEY_CTX_new(own.get(), nullptr));
  if (!ctx || EVP_PKEY_derive_init(ctx.get()) != 1 ||
      EVP_PKEY_derive_set_peer(ctx.get(), peer.get()) != 1) {
    throw Error(Errc::crypto_auth, "ECDH setup failed");
  }
  Bytes shared(kKeySize);
  std::size_t len = shared.size();
  if (EVP_PKEY_derive(ctx.get(), shared.data(), &len) != 1 ||
      len != kKeySize) {
    // OpenSSL rejects X25519 derivations whose output is all zeros, which
    // covers the low-order point family.
    throw Error(Errc::crypto_auth, "ECDH derivation failed (invalid point)");
  }
  if (std::all_of(shared.begin(), shared.end(),
                  [](std::uint8_t b) { return b == 0; })) {
    throw Error(Errc::crypto_auth, "ECDH produced all-zero secret");
  }
  return shared;
}

Bytes derive_delivery_key(ByteView shared_secret, KeyContext context,
                          ByteView binding) {
  if (context == KeyContext::content) {
    throw Error(Errc::invalid_argument, "content is not a delivery context");
  }
  Bytes info;
  const std::string_view name = key_context_name(context);
  info.insert(info.end(), name.begin(), name.end());
  info.insert(info.end(), binding.begin(), binding.end());

  PkeyCtxPtr ctx(EVP_PKEY_CTX_new_id(EVP_PKEY_HKDF, nullptr));
  if (!ctx || EVP_PKEY_derive_init(ctx.get()) != 1 ||
      EVP_PKEY_CTX_set_hkdf_md(ctx.get(), EVP_sha256()) != 1 ||
      EVP_PKEY_CTX_set1_hkdf_key(ctx.get(), shared_secret.data(),
                                 static_cast<int>(shared_secret.size())) != 1 ||
      EVP_PKEY_CTX_add1_hkdf_info(ctx.get(), info.data(),
                                  static_cast<int>(info.size())) != 1) {
    throw Error(Errc::crypto_auth, "HKDF setup failed");
  }
  Bytes out(kKeySize);
  std::size_t len = out.size();
  if (EVP_PKEY_derive(ctx.get(), out.data(), &len) != 1 || len != kKeySize) {
    throw Error(Errc::crypto_auth, "HKDF derivation failed");
  }
  return out;
}

WrappedKey wrap_content_key(ByteView content_key, ByteView delivery_key,
                            KeyContext context, const ContentHash& skill_id,
                            RandomSource& rng) {
  if (content_key.size() != kKeySize) {
    throw Error(Errc::invalid_argument, "content key must be 32 bytes");
  }
  if (context == KeyContext::content) {
    throw Error(Errc::invalid_argument, "content is not a wrap context");
  }
  return aead_seal(content_key, delivery_key, context, skill_id, rng);
}

Bytes unwrap_content_key(const WrappedKey& wrapped, ByteView delivery_key,
                         const ContentHash& skill_id) {
  if (wrapped.context == KeyContext::content) {
    throw Error(Errc::crypto_auth, "blob is not a wrapped key");
  }
  Bytes key = aead_open(wrapped, delivery_key, wrapped.context, skill_id);
  if (key.size() != kKeySize) {
    throw Error(Errc::crypto_auth, "unwrapped key has wrong size");
  }
  return key;
}

WrappedKey encrypt_content(ByteView plaintext, ByteView content_key,
                           const ContentHash& plaintext_hash,
                           RandomSource& rng) {
  return aead_seal(plaintext, content_key, KeyContext::content, plaintext_hash,
                   rng);
}

Bytes decrypt_content(const WrappedKey& blob, ByteView content_key,
                      const ContentHash& plaintext_hash) {
  return aead_open(blob, content_key, KeyContext::content, plaintext_hash);
}

Bytes generate_content_key(RandomSource& rng) { return random_secret(rng); }

KeyPair generate_sign_keypair(RandomSource& rng) {
  KeyPair kp;
  kp.secret_key = random_secret(rng);
  kp.public_key = sign_public_from_secret(kp.secret_key);
  return kp;
}

Bytes sign_public_from_secret(ByteView secret_key) {
  PkeyPtr key = raw_private(EVP_PKEY_ED25519, secret_key);
  return raw_public_bytes(key.get());
}

Bytes sign_message(ByteView message, ByteView secret_key) {
  PkeyPtr key = raw_private(EVP_PKEY_ED25519, secret_key);
  MdCtxPtr ctx(EVP_MD_CTX_new());
  if (!ctx ||
      EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1) {
    throw Error(Errc::crypto_auth, "sign init failed");
  }
  Bytes sig(kSignatureSize);
  std::size_t len = sig.size();
  if (EVP_DigestSign(ctx.get(), sig.data(), &len, message.data(),
                     message.size()) != 1 ||
      len != kSignatureSize) {
    throw Error(Errc::crypto_auth, "signing failed");
  }
  return sig;
}

bool verify_signature(ByteView message, ByteView signature,
                      ByteView public_key) {
  if (signature.size() != kSignatureSize || public_key.size() != kKeySize) {
    return false;
  }
  PkeyPtr key(EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr,
                                          public_key.data(),
                                          public_key.size()));
  if (!key) return false;
  MdCtxPtr ctx(EVP_MD_CTX_new());
  if (!ctx ||
      EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) !=
          1) {
    return false;
  }
  return EVP_DigestVerify(ctx.get(), signature.data(), signature.size(),
                          message.data(), message.size()) == 1;
}

}  // namespace skillchain
