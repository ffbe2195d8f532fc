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

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "concite/types.hpp"

namespace concite {

/// Which knowledge-graph variant a run operates on.
enum class KgSelection : std::uint8_t { InDomain, CrossDomain, Both };

std::string_view to_string(KgSelection selection);
std::optional<KgSelection> kg_selection_from_string(std::string_view name);

/// One run's inputs and knobs. Loaded from a flat key/value text file
/// (`key = value`, `#` comments); relative paths resolve against the
/// config file's directory. Path existence is checked by the command that
/// reads the file, so that a missing data file surfaces as an input error,
/// not a config error.
struct RunConfig {
  std::filesystem::path papers;
  std::filesystem::path mentions;
  std::filesystem::path citations;
  // `embedding.<label> = <path>` entries, in file order.
  std::vector<std::pair<std::string, std::filesystem::path>> embeddings;

  KgSelection kg = KgSelection::Both;
  TypeFilter types = TypeFilter::all();
  std::vector<std::size_t> k_values = {10, 20, 50};  // non-empty, ascending
  std::size_t min_citations = 4;                     // >= 1
  std::uint64_t seed = 0;
  std::filesystem::path out = "out";
  int workers = 0;  // 0 = hardware concurrency
  std::string embedding;    // label used when querying; empty = none
  bool use_concepts = true;

  const std::filesystem::path* embedding_path(const std::string& label) const;
};

/// Throws ConfigError on unknown keys, malformed values, or violated
/// invariants (empty or non-ascending k list, min_citations < 1, unknown
/// embedding label referenced by `embedding`, negative workers).
RunConfig parse_run_config(std::istream& in, const std::filesystem::path& base_dir,
                           const std::string& source_name = "<stream>");

/// Re-checks the invariants above, for configs adjusted after loading
/// (command-line overrides). Throws ConfigError.
void validate_run_config(const RunConfig& config);

/// Reads and parses the file; an unreadable file is a ConfigError.
RunConfig load_run_config(const std::filesystem::path& path);

/// Stable digest of the effective configuration (after flag overrides),
/// recorded in run manifests.
std::uint64_t config_digest(const RunConfig& config);

}  // namespace concite
