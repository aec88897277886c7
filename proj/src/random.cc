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

#include "paprika/random.h"

#include <bit>

namespace paprika {

uint64_t DeriveSeed(uint64_t master, std::initializer_list<uint64_t> keys) {
  uint64_t h = Mix64(master);
  for (uint64_t key : keys) {
    h = Mix64(h ^ Mix64(key + 0x632BE59BD9B4E019ULL));
  }
  return h;
}

uint64_t KeyOf(double value) {
  // Fold -0.0 onto 0.0 so equal parameters always hash alike.
  if (value == 0.0) value = 0.0;
  return std::bit_cast<uint64_t>(value);
}

}  // namespace paprika
