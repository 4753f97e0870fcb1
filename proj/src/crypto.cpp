#include "evote/crypto.hpp"

#include <sodium.h>

#include <array>
#include <string>

#include "evote/error.hpp"

namespace evote {
namespace {

void ensure_sodium() {
  static const bool ready = [] {
    if (sodium_init() < 0) throw CryptoError("libsodium initialisation failed");
    return true;
  }();
  (void)ready;
}

template <std::size_t N>
std::array<std::uint8_t, N> random_seed(RandomSource& rng) {
  std::array<std::uint8_t, N> seed{};
  rng.fill(seed);
  return seed;
}

void require_scheme(std::string_view have, std::string_view want, const char* what) {
  if (have != want) {
    throw CryptoError(std::string(what) + " belongs to scheme '" + std::string(have) +
                      "', expected '" + std::string(want) + "'");
  }
}

class Ed25519 final : public SignatureScheme {
 public:
  std::string_view name() const override { return schemes::kEd25519; }

  KeyPair keygen(RandomSource& rng) const override {
    ensure_sodium();
    auto seed = random_seed<crypto_sign_SEEDBYTES>(rng);
    Bytes pk(crypto_sign_PUBLICKEYBYTES), sk(crypto_sign_SECRETKEYBYTES);
    crypto_sign_seed_keypair(pk.data(), sk.data(), seed.data());
    sodium_memzero(seed.data(), seed.size());
    return {{std::string(name()), std::move(pk)}, {std::string(name()), std::move(sk)}};
  }

  Signature sign(const SecretKey& key, ByteView message) const override {
    ensure_sodium();
    require_scheme(key.scheme, name(), "signing key");
    if (key.bytes.size() != crypto_sign_SECRETKEYBYTES) throw CryptoError("malformed ed25519 key");
    Bytes sig(crypto_sign_BYTES);
    crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), key.bytes.data());
    return {std::string(name()), std::move(sig)};
  }

  bool verify(const PublicKey& key, ByteView message, const Signature& signature) const override {
    ensure_sodium();
    if (key.scheme != name() || signature.scheme != name()) return false;
    if (key.bytes.size() != crypto_sign_PUBLICKEYBYTES ||
        signature.bytes.size() != crypto_sign_BYTES) {
      return false;
    }
    return crypto_sign_verify_detached(signature.bytes.data(), message.data(), message.size(),
                                       key.bytes.data()) == 0;
  }
};

// Sealed-box layout: ephemeral public key || crypto_box(m, nonce, pk, esk) with
// nonce = BLAKE2b-192(epk || pk). The ephemeral key is drawn from the caller's
// rng, so output is reproducible; crypto_box_seal_open opens it unchanged.
// The secret key is stored as sk || pk because opening needs both.
class SealedBox final : public EncryptionScheme {
 public:
  std::string_view name() const override { return schemes::kSealedBox; }

  KeyPair keygen(RandomSource& rng) const override {
    ensure_sodium();
    auto seed = random_seed<crypto_box_SEEDBYTES>(rng);
    Bytes pk(crypto_box_PUBLICKEYBYTES), sk(crypto_box_SECRETKEYBYTES);
    crypto_box_seed_keypair(pk.data(), sk.data(), seed.data());
    sodium_memzero(seed.data(), seed.size());
    Bytes secret = sk;
    secret.insert(secret.end(), pk.begin(), pk.end());
    sodium_memzero(sk.data(), sk.size());
    return {{std::string(name()), std::move(pk)}, {std::string(name()), std::move(secret)}};
  }

  Ciphertext encrypt(const PublicKey& key, ByteView plaintext, RandomSource& rng) const override {
    ensure_sodium();
    require_scheme(key.scheme, name(), "encryption key");
    if (key.bytes.size() != crypto_box_PUBLICKEYBYTES) throw CryptoError("malformed x25519 key");

    auto seed = random_seed<crypto_box_SEEDBYTES>(rng);
    std::array<std::uint8_t, crypto_box_PUBLICKEYBYTES> epk{};
    std::array<std::uint8_t, crypto_box_SECRETKEYBYTES> esk{};
    crypto_box_seed_keypair(epk.data(), esk.data(), seed.data());
    sodium_memzero(seed.data(), seed.size());

    std::array<std::uint8_t, crypto_box_NONCEBYTES> nonce{};
    crypto_generichash_state st;
    crypto_generichash_init(&st, nullptr, 0, nonce.size());
    crypto_generichash_update(&st, epk.data(), epk.size());
    crypto_generichash_update(&st, key.bytes.data(), key.bytes.size());
    crypto_generichash_final(&st, nonce.data(), nonce.size());

    Bytes out(crypto_box_SEALBYTES + plaintext.size());
    std::copy(epk.begin(), epk.end(), out.begin());
    const int rc = crypto_box_easy(out.data() + epk.size(), plaintext.data(), plaintext.size(),
                                   nonce.data(), key.bytes.data(), esk.data());
    sodium_memzero(esk.data(), esk.size());
    if (rc != 0) throw CryptoError("crypto_box_easy failed");
    return {std::string(name()), std::move(out)};
  }

  Bytes decrypt(const SecretKey& key, const Ciphertext& ciphertext) const override {
    ensure_sodium();
    require_scheme(key.scheme, name(), "decryption key");
    require_scheme(ciphertext.scheme, name(), "ciphertext");
    if (key.bytes.size() != crypto_box_SECRETKEYBYTES + crypto_box_PUBLICKEYBYTES) {
      throw CryptoError("malformed x25519 secret key");
    }
    if (ciphertext.bytes.size() < crypto_box_SEALBYTES) throw CryptoError("ciphertext too short");
    Bytes out(ciphertext.bytes.size() - crypto_box_SEALBYTES);
    const std::uint8_t* sk = key.bytes.data();
    const std::uint8_t* pk = sk + crypto_box_SECRETKEYBYTES;
    if (crypto_box_seal_open(out.data(), ciphertext.bytes.data(), ciphertext.bytes.size(), pk,
                             sk) != 0) {
      throw CryptoError("ciphertext failed authentication");
    }
    return out;
  }
};

constexpr std::size_t kToyKeyBytes = 32;
constexpr std::size_t kToyTagBytes = 32;
constexpr std::size_t kToyNonceBytes = 16;

Bytes keyed_hash(ByteView key, ByteView a, ByteView b = {}) {
  Bytes out(kToyTagBytes);
  crypto_generichash_state st;
  crypto_generichash_init(&st, key.data(), key.size(), out.size());
  crypto_generichash_update(&st, a.data(), a.size());
  crypto_generichash_update(&st, b.data(), b.size());
  crypto_generichash_final(&st, out.data(), out.size());
  return out;
}

KeyPair toy_keygen(std::string_view scheme, RandomSource& rng) {
  Bytes key(kToyKeyBytes);
  rng.fill(key);
  return {{std::string(scheme), key}, {std::string(scheme), key}};
}

class ToySignature final : public SignatureScheme {
 public:
  std::string_view name() const override { return schemes::kTestSignature; }
  KeyPair keygen(RandomSource& rng) const override { return toy_keygen(name(), rng); }

  Signature sign(const SecretKey& key, ByteView message) const override {
    ensure_sodium();
    require_scheme(key.scheme, name(), "signing key");
    return {std::string(name()), keyed_hash(key.bytes, message)};
  }

  bool verify(const PublicKey& key, ByteView message, const Signature& signature) const override {
    ensure_sodium();
    if (key.scheme != name() || signature.scheme != name()) return false;
    if (key.bytes.size() != kToyKeyBytes || signature.bytes.size() != kToyTagBytes) return false;
    const Bytes expected = keyed_hash(key.bytes, message);
    return sodium_memcmp(expected.data(), signature.bytes.data(), kToyTagBytes) == 0;
  }
};

// nonce || (plaintext XOR BLAKE2b keystream) || tag over nonce || body.
class ToyEncryption final : public EncryptionScheme {
 public:
  std::string_view name() const override { return schemes::kTestEncryption; }
  KeyPair keygen(RandomSource& rng) const override { return toy_keygen(name(), rng); }

  Ciphertext encrypt(const PublicKey& key, ByteView plaintext, RandomSource& rng) const override {
    ensure_sodium();
    require_scheme(key.scheme, name(), "encryption key");
    if (key.bytes.size() != kToyKeyBytes) throw CryptoError("malformed toy key");
    Bytes nonce(kToyNonceBytes);
    rng.fill(nonce);
    Bytes out = nonce;
    apply_stream(key.bytes, nonce, plaintext, out);
    const Bytes tag = keyed_hash(key.bytes, out);
    out.insert(out.end(), tag.begin(), tag.end());
    return {std::string(name()), std::move(out)};
  }

  Bytes decrypt(const SecretKey& key, const Ciphertext& ciphertext) const override {
    ensure_sodium();
    require_scheme(key.scheme, name(), "decryption key");
    require_scheme(ciphertext.scheme, name(), "ciphertext");
    const Bytes& c = ciphertext.bytes;
    if (key.bytes.size() != kToyKeyBytes) throw CryptoError("malformed toy key");
    if (c.size() < kToyNonceBytes + kToyTagBytes) throw CryptoError("ciphertext too short");
    const ByteView authed(c.data(), c.size() - kToyTagBytes);
    const Bytes tag = keyed_hash(key.bytes, authed);
    if (sodium_memcmp(tag.data(), c.data() + authed.size(), kToyTagBytes) != 0) {
      throw CryptoError("ciphertext failed authentication");
    }
    Bytes out;
    apply_stream(key.bytes, ByteView(c.data(), kToyNonceBytes), authed.subspan(kToyNonceBytes),
                 out);
    return out;
  }

 private:
  static void apply_stream(ByteView key, ByteView nonce, ByteView in, Bytes& out) {
    for (std::size_t offset = 0; offset < in.size(); offset += kToyTagBytes) {
      std::array<std::uint8_t, 8> counter{};
      std::uint64_t block = offset / kToyTagBytes;
      for (auto& b : counter) {
        b = static_cast<std::uint8_t>(block & 0xff);
        block >>= 8;
      }
      const Bytes pad = keyed_hash(key, nonce, counter);
      for (std::size_t i = 0; i < kToyTagBytes && offset + i < in.size(); ++i) {
        out.push_back(in[offset + i] ^ pad[i]);
      }
    }
  }
};

const Ed25519 kEd25519Scheme;
const SealedBox kSealedBoxScheme;
const ToySignature kToySignatureScheme;
const ToyEncryption kToyEncryptionScheme;

}  // namespace

const SignatureScheme& signature_scheme(std::string_view name) {
  if (name == schemes::kEd25519) return kEd25519Scheme;
  if (name == schemes::kTestSignature) return kToySignatureScheme;
  throw CryptoError("unknown signature scheme '" + std::string(name) + "'");
}

const EncryptionScheme& encryption_scheme(std::string_view name) {
  if (name == schemes::kSealedBox) return kSealedBoxScheme;
  if (name == schemes::kTestEncryption) return kToyEncryptionScheme;
  throw CryptoError("unknown encryption scheme '" + std::string(name) + "'");
}

Signature sign(const SecretKey& key, ByteView message) {
  return signature_scheme(key.scheme).sign(key, message);
}

bool verify(const PublicKey& key, ByteView message, const Signature& signature) {
  try {
    return signature_scheme(key.scheme).verify(key, message, signature);
  } catch (const CryptoError&) {
    return false;
  }
}

Ciphertext encrypt_to(const PublicKey& key, ByteView plaintext, RandomSource& rng) {
  return encryption_scheme(key.scheme).encrypt(key, plaintext, rng);
}

Bytes decrypt(const SecretKey& key, const Ciphertext& ciphertext) {
  return encryption_scheme(key.scheme).decrypt(key, ciphertext);
}

std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) throw ParseError("hex string has odd length");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = nibble(hex[2 * i]);
    const int lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw ParseError("invalid hex character");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

}  // namespace evote
