//
// Copyright 2026 The PAPRIKA Authors
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
//

#ifndef PAPRIKA_RANDOM_H_
#define PAPRIKA_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace paprika {

// Source of uniform variates on the open interval (0, 1). Everything random
// in the library draws through this interface so tests can substitute a
// scripted stream.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual double Uniform() = 0;
};

// Deterministic 64-bit Mersenne Twister. The engine output sequence is fixed
// by the standard, and the double conversion below is done by hand, so draws
// are identical across standard libraries.
class Rng final : public RandomSource {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  double Uniform() override {
    // 53 random bits, shifted half an ulp so 0 is never returned.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

// Replays a constant value forever. Uniform 0.5 is the Laplace median, so
// ConstantUniform(0.5) acts as a zero-noise stub.
class ConstantUniform final : public RandomSource {
 public:
  explicit ConstantUniform(double u) : u_(u) {}
  double Uniform() override { return u_; }

 private:
  double u_;
};

// SplitMix64 finalizer.
constexpr uint64_t Mix64(uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Order-sensitive hash of a master seed and a list of keys. Used to derive
// per-trial seeds from the identity of the work item rather than its
// position in the schedule.
uint64_t DeriveSeed(uint64_t master, std::initializer_list<uint64_t> keys);

// Bit pattern of a double, for keying seeds by parameter values.
uint64_t KeyOf(double value);

}  // namespace paprika

#endif  // PAPRIKA_RANDOM_H_
