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

#ifndef PAPRIKA_SRC_FORMAT_UTIL_H_
#define PAPRIKA_SRC_FORMAT_UTIL_H_

#include <charconv>
#include <string>

namespace paprika::internal {

// Shortest decimal at 17 significant digits; round-trips any double.
inline std::string FormatReal(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

// Shortest representation that round-trips.
inline std::string FormatShort(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace paprika::internal

#endif  // PAPRIKA_SRC_FORMAT_UTIL_H_
