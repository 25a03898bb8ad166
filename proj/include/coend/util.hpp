#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace coend {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Structural validation failed (category laws, functor laws, action tables).
class ValidationError : public Error {
public:
  using Error::Error;
};

// An operation needs a larger arity bound than the operands carry.
class BoundError : public Error {
public:
  using Error::Error;
};

// Text-format parse or schema problem.
class FormatError : public Error {
public:
  using Error::Error;
};

inline std::uint64_t fnv64(std::uint64_t h, std::uint64_t x) {
  // FNV-1a over the 8 bytes of x.
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xffu;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t fnv64_str(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

constexpr std::uint64_t kFnvSeed = 0xcbf29ce484222325ull;

inline std::int64_t pack2(std::int32_t a, std::int32_t b) {
  return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

// Deterministic 64-bit generator (splitmix64). Not stdlib <random> because
// reports must be byte-identical across platforms and the stdlib
// distributions are not pinned by the standard.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). n must be positive.
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  Rng fork() { return Rng(next() ^ 0xa5a5a5a5a5a5a5a5ull); }

private:
  std::uint64_t state_;
};

class UnionFind {
public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // Smaller index wins so representatives are least elements.
    if (a < b) parent_[b] = a; else parent_[a] = b;
  }

private:
  std::vector<int> parent_;
};

}  // namespace coend
