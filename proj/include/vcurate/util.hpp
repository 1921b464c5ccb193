// Copyright 2026 The vcurate Authors.
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

#ifndef VCURATE_UTIL_HPP
#define VCURATE_UTIL_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vcurate {

/// Base error type for all fatal conditions raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

using Warnings = std::vector<std::string>;

inline void warn(Warnings* sink, std::string message) {
  if (sink != nullptr) sink->push_back(std::move(message));
}

// --- hashing -------------------------------------------------------------

constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

constexpr std::uint64_t fnv1a64(std::string_view bytes,
                                std::uint64_t basis = kFnvOffsetBasis) {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

constexpr std::uint64_t fnv1a64_mix(std::uint64_t h, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
  return h;
}

/// splitmix64 finalizer; a strong 64-bit mixer used for hash families.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string to_hex(std::uint64_t value);

/// 128-bit content fingerprint rendered as 32 hex chars. Used for module
/// ids and cache keys where 64 bits would leave collisions plausible.
std::string fingerprint128(std::string_view bytes);

// --- text ----------------------------------------------------------------

/// Collapses every run of ASCII whitespace to a single space and trims.
std::string normalize_whitespace(std::string_view text);

/// Replaces invalid UTF-8 byte sequences with U+FFFD. Valid input is
/// returned unchanged.
std::string sanitize_utf8(std::string_view bytes);

bool is_ident_char(char c);
bool is_ident_start(char c);

/// Splits on newlines; the trailing fragment after the last '\n' counts as
/// a line when non-empty.
std::vector<std::string_view> split_lines(std::string_view text);

std::string lowercase(std::string_view text);

// --- filesystem ----------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path);

/// Write-then-rename so concurrent writers never expose partial content.
void write_text_file_atomic(const std::filesystem::path& path,
                            std::string_view content);

std::string iso8601_now();

}  // namespace vcurate

#endif  // VCURATE_UTIL_HPP
