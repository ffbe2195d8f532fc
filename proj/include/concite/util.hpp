/*
 * Copyright 2026 The Concite Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace concite {

std::uint64_t fnv1a64(std::string_view bytes);

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic combination of a run seed with a string key, e.g. a paper
/// id, so that per-item streams do not depend on iteration order.
inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view key) {
  return splitmix64(splitmix64(seed) ^ fnv1a64(key));
}

/// 53-bit uniform draw in [0, 1).
inline double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Unbiased uniform integer in [0, n) via rejection sampling. mt19937_64 is
/// fully specified by the standard, so results are portable; the
/// distribution adapters in <random> are not.
std::uint64_t bounded_uniform(std::mt19937_64& engine, std::uint64_t n);

/// Standard-normal sampler (Box-Muller over mt19937_64).
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct DistributionSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

/// Summary statistics with linearly interpolated quartiles. Throws
/// std::invalid_argument on an empty sample.
DistributionSummary summarize(std::vector<double> values);

/// 0 means "use hardware concurrency".
int resolve_workers(int requested);

/// Splits [0, count) into contiguous chunks and runs them on up to
/// `workers` threads. Callers get determinism by writing to disjoint
/// slots; the chunking itself never affects results.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t, std::size_t)>& run_range);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split_fields(std::string_view line, char sep);

/// Lowercases ASCII letters, collapses internal whitespace runs to a single
/// space, and trims. May return an empty string.
std::string normalize_surface(std::string_view raw);

std::string format_fixed(double value, int decimals);
std::string to_hex(std::uint64_t value);

bool parse_int(std::string_view s, long long& out);
bool parse_uint64(std::string_view s, std::uint64_t& out);
bool parse_double(std::string_view s, double& out);

}  // namespace concite
