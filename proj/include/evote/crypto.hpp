#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evote/random.hpp"

namespace evote {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

// Every key and blob carries the name of the scheme that produced it.
struct PublicKey {
  std::string scheme;
  Bytes bytes;
  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct SecretKey {
  std::string scheme;
  Bytes bytes;
  friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

struct KeyPair {
  PublicKey public_key;
  SecretKey secret_key;
};

struct Signature {
  std::string scheme;
  Bytes bytes;
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct Ciphertext {
  std::string scheme;
  Bytes bytes;
  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

namespace schemes {
inline constexpr std::string_view kEd25519 = "ed25519";
inline constexpr std::string_view kSealedBox = "x25519-xsalsa20poly1305";
// Seeded toy schemes for fixtures: the public key equals the secret key.
inline constexpr std::string_view kTestSignature = "test-keyed-blake2b";
inline constexpr std::string_view kTestEncryption = "test-blake2b-stream";
}  // namespace schemes

class SignatureScheme {
 public:
  virtual ~SignatureScheme() = default;
  virtual std::string_view name() const = 0;
  /// Deterministic in the rng state.
  virtual KeyPair keygen(RandomSource& rng) const = 0;
  /// Throws CryptoError when the key belongs to another scheme.
  virtual Signature sign(const SecretKey& key, ByteView message) const = 0;
  /// Never throws; malformed input yields false.
  virtual bool verify(const PublicKey& key, ByteView message,
                      const Signature& signature) const = 0;
};

class EncryptionScheme {
 public:
  virtual ~EncryptionScheme() = default;
  virtual std::string_view name() const = 0;
  virtual KeyPair keygen(RandomSource& rng) const = 0;
  /// Randomness (ephemeral keys, nonces) comes from `rng`.
  virtual Ciphertext encrypt(const PublicKey& key, ByteView plaintext,
                             RandomSource& rng) const = 0;
  /// Throws CryptoError on wrong key, tampering or scheme mismatch.
  virtual Bytes decrypt(const SecretKey& key, const Ciphertext& ciphertext) const = 0;
};

/// Throws CryptoError for an unknown name.
const SignatureScheme& signature_scheme(std::string_view name);
const EncryptionScheme& encryption_scheme(std::string_view name);

// Scheme dispatch on the key's tag.
Signature sign(const SecretKey& key, ByteView message);
bool verify(const PublicKey& key, ByteView message, const Signature& signature);
Ciphertext encrypt_to(const PublicKey& key, ByteView plaintext, RandomSource& rng);
Bytes decrypt(const SecretKey& key, const Ciphertext& ciphertext);

std::string to_hex(ByteView bytes);
/// Throws ParseError on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

}  // namespace evote
