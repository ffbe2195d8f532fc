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

#include "concite/kg.hpp"

namespace concite {

/// Papers file: JSON Lines, one object per line with fields `id` and
/// `domain` (required) plus optional `title` and `abstract`. Throws
/// InputError naming the source and line on malformed input.
std::vector<PaperRecord> read_papers(std::istream& in, const std::string& source_name = "<stream>");
std::vector<PaperRecord> read_papers_file(const std::filesystem::path& path);

/// Mentions file: `paper_id<TAB>surface<TAB>concept_type<TAB>domain`.
std::vector<MentionRecord> read_mentions(std::istream& in,
                                         const std::string& source_name = "<stream>");
std::vector<MentionRecord> read_mentions_file(const std::filesystem::path& path);

/// Citations file: `citing_id<TAB>cited_id`.
std::vector<std::pair<std::string, std::string>> read_citations(
    std::istream& in, const std::string& source_name = "<stream>");
std::vector<std::pair<std::string, std::string>> read_citations_file(
    const std::filesystem::path& path);

/// Tab-separated per-domain statistics table: a header of domain codes plus
/// MIX and Total, then rows for abstracts, citations, and concepts.
/// Non-applicable cells print "-".
std::string stats_table_string(const KgStats& stats);

/// On-disk KG snapshot, one directory per scoping mode. Contains
/// manifest.json, papers.jsonl, concepts.tsv, links.tsv, citations.tsv and
/// stats.tsv. save_snapshot creates the directory; load_snapshot verifies
/// the manifest's format version, mode, and content checksums, then
/// rebuilds the graph. Both throw InputError on problems.
void save_snapshot(const KnowledgeGraph& kg, const std::filesystem::path& dir);
KnowledgeGraph load_snapshot(const std::filesystem::path& dir);

/// Directory a snapshot of the given mode lives in under an output root.
std::filesystem::path snapshot_dir(const std::filesystem::path& out_root, ScopingMode mode);

/// FNV-1a 64 over the raw bytes of the file. Throws InputError if
/// unreadable.
std::uint64_t file_checksum(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace concite
