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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "concite/types.hpp"

namespace concite {

using ConceptId = std::uint32_t;
using PaperOrdinal = std::uint32_t;

struct Paper {
  std::string id;
  Domain domain = Domain::Agr;
  std::string title;
  std::string abstract_text;
};

/// Raw paper row before validation; domain still a code string.
struct PaperRecord {
  std::string id;
  std::string domain;
  std::string title;
  std::string abstract_text;
};

/// A scientific concept after identity resolution. `id` doubles as the
/// dimension index of the concept vector space; ids are contiguous and
/// assigned by sorting (key, type, scope), so they are reproducible for a
/// given input regardless of record order.
struct Concept {
  ConceptId id = 0;
  std::string key;  // normalized surface form
  ConceptType type = ConceptType::Material;
  std::optional<Domain> scope;  // nullopt = shared across domains
};

/// One raw concept mention, before identity resolution.
struct MentionRecord {
  std::string paper_id;
  std::string surface;
  ConceptType type = ConceptType::Material;
  Domain domain = Domain::Agr;  // domain of the mentioning paper
};

struct CitationEdge {
  PaperOrdinal citing = 0;
  PaperOrdinal cited = 0;
  friend auto operator<=>(const CitationEdge&, const CitationEdge&) = default;
};

/// Validates ids and domain codes and returns papers sorted by id.
/// Throws InputError on a duplicate or malformed record.
std::vector<Paper> ingest_papers(std::vector<PaperRecord> records);

struct ConceptResolution {
  std::vector<Concept> concepts;               // indexed by ConceptId
  std::vector<std::vector<ConceptId>> links;   // per paper ordinal, sorted, unique
  std::size_t skipped_mentions = 0;            // empty surface after normalization
};

/// Resolves mention surfaces to concept identities. Identity is
/// (normalized surface, type) when scoping is CrossDomain and
/// (normalized surface, type, paper's domain) when InDomain. Duplicate
/// paper-concept pairs collapse: links form a set.
ConceptResolution resolve_concepts(const std::vector<Paper>& papers,
                                   const std::vector<MentionRecord>& mentions,
                                   ScopingMode mode);

struct CitationIngest {
  std::vector<CitationEdge> edges;  // sorted, unique, both endpoints in-corpus
  std::size_t dropped = 0;          // out-of-corpus endpoints, self-loops, duplicates
};

/// Keeps only directed edges whose endpoints are both ingested papers;
/// self-loops and duplicates are dropped and counted, never fatal.
CitationIngest ingest_citations(const std::vector<Paper>& papers,
                                const std::vector<std::pair<std::string, std::string>>& raw_edges);

class KnowledgeGraph {
 public:
  KnowledgeGraph(ScopingMode mode, std::vector<Paper> papers,
                 std::vector<Concept> concepts,
                 std::vector<std::vector<ConceptId>> links,
                 std::vector<CitationEdge> citations,
                 std::size_t dropped_citations, std::size_t skipped_mentions);

  /// Runs the full ingestion pipeline: papers, concept resolution, citations.
  static KnowledgeGraph build(ScopingMode mode, std::vector<PaperRecord> records,
                              const std::vector<MentionRecord>& mentions,
                              const std::vector<std::pair<std::string, std::string>>& citations);

  ScopingMode mode() const { return mode_; }
  const std::vector<Paper>& papers() const { return papers_; }
  const std::vector<Concept>& concepts() const { return concepts_; }
  const std::vector<std::vector<ConceptId>>& links() const { return links_; }
  const std::vector<CitationEdge>& citations() const { return citations_; }
  std::size_t dropped_citations() const { return dropped_citations_; }
  std::size_t skipped_mentions() const { return skipped_mentions_; }

  std::size_t link_count() const;
  std::optional<PaperOrdinal> find_paper(std::string_view id) const;
  const std::vector<ConceptId>& links_of(PaperOrdinal paper) const { return links_[paper]; }

  /// Outgoing citation targets per paper, sorted ascending.
  const std::vector<std::vector<PaperOrdinal>>& outgoing_citations() const { return outgoing_; }

 private:
  void validate() const;

  ScopingMode mode_;
  std::vector<Paper> papers_;  // sorted by id; ordinal = position
  std::vector<Concept> concepts_;
  std::vector<std::vector<ConceptId>> links_;
  std::vector<CitationEdge> citations_;
  std::vector<std::vector<PaperOrdinal>> outgoing_;
  std::size_t dropped_citations_ = 0;
  std::size_t skipped_mentions_ = 0;
};

/// Per-domain corpus statistics. In cross-domain scoping a concept linked
/// from papers of more than one domain counts under `mix_concepts` instead
/// of any single domain; row sums always equal the totals.
struct KgStats {
  ScopingMode mode = ScopingMode::CrossDomain;
  std::array<std::size_t, kNumDomains> papers{};
  std::array<std::size_t, kNumDomains> citations{};  // by citing paper's domain
  std::array<std::size_t, kNumDomains> concepts{};
  std::size_t mix_concepts = 0;
  std::size_t total_papers = 0;
  std::size_t total_citations = 0;
  std::size_t total_concepts = 0;
};

KgStats kg_stats(const KnowledgeGraph& kg);

}  // namespace concite
