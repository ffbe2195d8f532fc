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
#include "concite/io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "concite/util.hpp"

namespace concite {

namespace {

using nlohmann::json;

constexpr int kSnapshotVersion = 1;
constexpr std::string_view kSnapshotFormat = "concite-kg-snapshot";

[[noreturn]] void fail_at(const std::string& source, std::size_t line, const std::string& what) {
  throw InputError(source + ":" + std::to_string(line) + ": " + what);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file '" + path.string() + "'");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write file '" + path.string() + "'");
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw InputError("failed writing file '" + path.string() + "'");
}

// Calls row(line_number, line) for each non-blank line.
void for_each_line(std::istream& in,
                   const std::function<void(std::size_t, std::string_view)>& row) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    row(number, line);
  }
}

std::string json_string_field(const json& object, const char* field, const std::string& source,
                              std::size_t line, bool required) {
  const auto it = object.find(field);
  if (it == object.end()) {
    if (required) fail_at(source, line, std::string("missing field '") + field + "'");
    return {};
  }
  if (!it->is_string()) fail_at(source, line, std::string("field '") + field + "' must be a string");
  return it->get<std::string>();
}

}  // namespace

std::vector<PaperRecord> read_papers(std::istream& in, const std::string& source_name) {
  std::vector<PaperRecord> records;
  for_each_line(in, [&](std::size_t line, std::string_view text) {
    json object;
    try {
      object = json::parse(text);
    } catch (const json::exception& e) {
      fail_at(source_name, line, std::string("invalid record: ") + e.what());
    }
    if (!object.is_object()) fail_at(source_name, line, "record is not an object");
    PaperRecord record;
    record.id = json_string_field(object, "id", source_name, line, true);
    record.domain = json_string_field(object, "domain", source_name, line, true);
    record.title = json_string_field(object, "title", source_name, line, false);
    record.abstract_text = json_string_field(object, "abstract", source_name, line, false);
    if (record.id.empty()) fail_at(source_name, line, "empty paper id");
    records.push_back(std::move(record));
  });
  return records;
}

std::vector<PaperRecord> read_papers_file(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_papers(in, path.string());
}

std::vector<MentionRecord> read_mentions(std::istream& in, const std::string& source_name) {
  std::vector<MentionRecord> records;
  for_each_line(in, [&](std::size_t line, std::string_view text) {
    const std::vector<std::string_view> fields = split_fields(text, '\t');
    if (fields.size() != 4) {
      fail_at(source_name, line,
              "expected 4 tab-separated fields, got " + std::to_string(fields.size()));
    }
    MentionRecord record;
    record.paper_id = std::string(fields[0]);
    record.surface = std::string(fields[1]);
    const std::optional<ConceptType> type = concept_type_from_string(fields[2]);
    if (!type) fail_at(source_name, line, "unknown concept type '" + std::string(fields[2]) + "'");
    record.type = *type;
    const std::optional<Domain> domain = domain_from_code(trim(fields[3]));
    if (!domain) fail_at(source_name, line, "unknown domain code '" + std::string(fields[3]) + "'");
    record.domain = *domain;
    if (record.paper_id.empty()) fail_at(source_name, line, "empty paper id");
    records.push_back(std::move(record));
  });
  return records;
}

std::vector<MentionRecord> read_mentions_file(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_mentions(in, path.string());
}

std::vector<std::pair<std::string, std::string>> read_citations(std::istream& in,
                                                                const std::string& source_name) {
  std::vector<std::pair<std::string, std::string>> edges;
  for_each_line(in, [&](std::size_t line, std::string_view text) {
    const std::vector<std::string_view> fields = split_fields(text, '\t');
    if (fields.size() != 2) {
      fail_at(source_name, line,
              "expected 2 tab-separated fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) fail_at(source_name, line, "empty paper id");
    edges.emplace_back(std::string(fields[0]), std::string(fields[1]));
  });
  return edges;
}

std::vector<std::pair<std::string, std::string>> read_citations_file(
    const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_citations(in, path.string());
}

std::string stats_table_string(const KgStats& stats) {
  std::ostringstream out;
  for (Domain domain : all_domains()) out << '\t' << to_code(domain);
  out << "\tMIX\tTotal\n";

  const auto row = [&out](std::string_view label, const std::array<std::size_t, kNumDomains>& cells,
                          std::optional<std::size_t> mix, std::size_t total) {
    out << label;
    for (std::size_t cell : cells) out << '\t' << cell;
    if (mix) {
      out << '\t' << *mix;
    } else {
      out << "\t-";
    }
    out << '\t' << total << '\n';
  };

  row("# abstracts", stats.papers, std::nullopt, stats.total_papers);
  row("# citations", stats.citations, std::nullopt, stats.total_citations);
  row("KG concepts", stats.concepts,
      stats.mode == ScopingMode::CrossDomain ? std::optional<std::size_t>(stats.mix_concepts)
                                             : std::nullopt,
      stats.total_concepts);
  return out.str();
}

namespace {

const char* kPapersFile = "papers.jsonl";
const char* kConceptsFile = "concepts.tsv";
const char* kLinksFile = "links.tsv";
const char* kCitationsFile = "citations.tsv";
const char* kStatsFile = "stats.tsv";
const char* kManifestFile = "manifest.json";

const std::array<const char*, 4> kChecksummedFiles = {kPapersFile, kConceptsFile, kLinksFile,
                                                      kCitationsFile};

}  // namespace

void save_snapshot(const KnowledgeGraph& kg, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create directory '" + dir.string() + "': " + ec.message());

  {
    std::ofstream out = open_output(dir / kPapersFile);
    for (const Paper& paper : kg.papers()) {
      json object;
      object["id"] = paper.id;
      object["domain"] = std::string(to_code(paper.domain));
      if (!paper.title.empty()) object["title"] = paper.title;
      if (!paper.abstract_text.empty()) object["abstract"] = paper.abstract_text;
      out << object.dump() << '\n';
    }
    finish_output(out, dir / kPapersFile);
  }
  {
    std::ofstream out = open_output(dir / kConceptsFile);
    for (const Concept& entry : kg.concepts()) {
      out << entry.id << '\t' << entry.key << '\t' << to_string(entry.type) << '\t'
          << (entry.scope ? to_code(*entry.scope) : std::string_view("-")) << '\n';
    }
    finish_output(out, dir / kConceptsFile);
  }
  {
    std::ofstream out = open_output(dir / kLinksFile);
    for (std::size_t paper = 0; paper < kg.papers().size(); ++paper) {
      for (ConceptId concept_id : kg.links()[paper]) {
        out << kg.papers()[paper].id << '\t' << concept_id << '\n';
      }
    }
    finish_output(out, dir / kLinksFile);
  }
  {
    std::ofstream out = open_output(dir / kCitationsFile);
    for (const CitationEdge& edge : kg.citations()) {
      out << kg.papers()[edge.citing].id << '\t' << kg.papers()[edge.cited].id << '\n';
    }
    finish_output(out, dir / kCitationsFile);
  }
  write_text_file(dir / kStatsFile, stats_table_string(kg_stats(kg)));

  json manifest;
  manifest["format"] = std::string(kSnapshotFormat);
  manifest["version"] = kSnapshotVersion;
  manifest["mode"] = std::string(to_string(kg.mode()));
  manifest["papers"] = kg.papers().size();
  manifest["concepts"] = kg.concepts().size();
  manifest["links"] = kg.link_count();
  manifest["citations"] = kg.citations().size();
  manifest["dropped_citations"] = kg.dropped_citations();
  manifest["skipped_mentions"] = kg.skipped_mentions();
  json checksums;
  for (const char* name : kChecksummedFiles) {
    checksums[name] = to_hex(file_checksum(dir / name));
  }
  manifest["checksums"] = std::move(checksums);
  write_text_file(dir / kManifestFile, manifest.dump(2) + "\n");
}

KnowledgeGraph load_snapshot(const std::filesystem::path& dir) {
  json manifest;
  try {
    manifest = json::parse(read_text_file(dir / kManifestFile));
  } catch (const json::exception& e) {
    throw InputError("invalid snapshot manifest '" + (dir / kManifestFile).string() +
                     "': " + e.what());
  }
  const std::string manifest_name = (dir / kManifestFile).string();
  if (!manifest.is_object() || manifest.value("format", "") != kSnapshotFormat) {
    throw InputError("'" + manifest_name + "' is not a knowledge-graph snapshot manifest");
  }
  if (manifest.value("version", -1) != kSnapshotVersion) {
    throw InputError("unsupported snapshot version in '" + manifest_name + "'");
  }
  const std::optional<ScopingMode> mode = scoping_mode_from_string(manifest.value("mode", ""));
  if (!mode) throw InputError("unknown scoping mode in '" + manifest_name + "'");

  const json& checksums = manifest.at("checksums");
  for (const char* name : kChecksummedFiles) {
    const std::string expected = checksums.value(name, "");
    const std::string actual = to_hex(file_checksum(dir / name));
    if (expected != actual) {
      throw InputError("checksum mismatch for '" + (dir / name).string() +
                       "': snapshot files were modified after ingestion");
    }
  }

  std::vector<Paper> papers = ingest_papers(read_papers_file(dir / kPapersFile));
  std::unordered_map<std::string_view, PaperOrdinal> ordinals;
  ordinals.reserve(papers.size());
  for (std::size_t i = 0; i < papers.size(); ++i) {
    ordinals.emplace(papers[i].id, static_cast<PaperOrdinal>(i));
  }

  std::vector<Concept> concepts;
  {
    std::ifstream in = open_input(dir / kConceptsFile);
    const std::string source = (dir / kConceptsFile).string();
    for_each_line(in, [&](std::size_t line, std::string_view text) {
      const std::vector<std::string_view> fields = split_fields(text, '\t');
      if (fields.size() != 4) fail_at(source, line, "expected 4 tab-separated fields");
      Concept entry;
      std::uint64_t id = 0;
      if (!parse_uint64(fields[0], id)) fail_at(source, line, "invalid concept id");
      entry.id = static_cast<ConceptId>(id);
      entry.key = std::string(fields[1]);
      const std::optional<ConceptType> type = concept_type_from_string(fields[2]);
      if (!type) fail_at(source, line, "unknown concept type");
      entry.type = *type;
      if (fields[3] != "-") {
        const std::optional<Domain> domain = domain_from_code(fields[3]);
        if (!domain) fail_at(source, line, "unknown domain code");
        entry.scope = *domain;
      }
      concepts.push_back(std::move(entry));
    });
  }

  std::vector<std::vector<ConceptId>> links(papers.size());
  {
    std::ifstream in = open_input(dir / kLinksFile);
    const std::string source = (dir / kLinksFile).string();
    for_each_line(in, [&](std::size_t line, std::string_view text) {
      const std::vector<std::string_view> fields = split_fields(text, '\t');
      if (fields.size() != 2) fail_at(source, line, "expected 2 tab-separated fields");
      const auto paper = ordinals.find(fields[0]);
      if (paper == ordinals.end()) fail_at(source, line, "link references unknown paper");
      std::uint64_t concept_id = 0;
      if (!parse_uint64(fields[1], concept_id)) fail_at(source, line, "invalid concept id");
      links[paper->second].push_back(static_cast<ConceptId>(concept_id));
    });
  }

  std::vector<CitationEdge> citations;
  {
    std::ifstream in = open_input(dir / kCitationsFile);
    const std::string source = (dir / kCitationsFile).string();
    for_each_line(in, [&](std::size_t line, std::string_view text) {
      const std::vector<std::string_view> fields = split_fields(text, '\t');
      if (fields.size() != 2) fail_at(source, line, "expected 2 tab-separated fields");
      const auto citing = ordinals.find(fields[0]);
      const auto cited = ordinals.find(fields[1]);
      if (citing == ordinals.end() || cited == ordinals.end()) {
        fail_at(source, line, "citation references unknown paper");
      }
      citations.push_back(CitationEdge{citing->second, cited->second});
    });
  }

  KnowledgeGraph kg(*mode, std::move(papers), std::move(concepts), std::move(links),
                    std::move(citations), manifest.value("dropped_citations", std::size_t{0}),
                    manifest.value("skipped_mentions", std::size_t{0}));
  if (kg.papers().size() != manifest.value("papers", std::size_t{0}) ||
      kg.concepts().size() != manifest.value("concepts", std::size_t{0}) ||
      kg.link_count() != manifest.value("links", std::size_t{0}) ||
      kg.citations().size() != manifest.value("citations", std::size_t{0})) {
    throw InputError("snapshot '" + dir.string() + "' does not match its manifest counts");
  }
  return kg;
}

std::filesystem::path snapshot_dir(const std::filesystem::path& out_root, ScopingMode mode) {
  return out_root / (std::string("kg-") + std::string(to_string(mode)));
}

std::uint64_t file_checksum(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buffer[1 << 16];
  while (in) {
    in.read(buffer, sizeof buffer);
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 0x100000001b3ULL;
    }
  }
  return hash;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (!in && !in.eof()) throw InputError("failed reading file '" + path.string() + "'");
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out = open_output(path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  finish_output(out, path);
}

}  // namespace concite
