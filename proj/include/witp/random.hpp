// Copyright 2026 The WITP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace witp {

// Seeds are never consumed directly. Every random quantity is drawn from a
// substream keyed by (parent seed, purpose label, index):
//
//   derive_seed(parent, label, index)
//     = splitmix64(splitmix64(parent ^ fnv1a64(label)) + index)
//
// Each substream is a std::mt19937_64 (bit-exact across platforms). Adding
// indices never shifts existing substreams and the result does not depend on
// which thread evaluates which index.

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::string_view label,
                                    std::uint64_t index) {
  return splitmix64(splitmix64(parent ^ fnv1a64(label)) + index);
}

/// Portable uniform/Gaussian source. std::*_distribution is implementation
/// defined, so the transforms are spelled out here.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) from the top 53 bits of one engine draw.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open_zero() { return 1.0 - uniform(); }

  /// Box-Muller, cosine branch only: one standard normal per two uniforms,
  /// consumed in the order (u1, u2).
  double gaussian();

 private:
  std::mt19937_64 engine_;
};

}  // namespace witp
