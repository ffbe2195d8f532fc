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
#include "concite/kg.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>

#include "concite/util.hpp"

namespace concite {

std::vector<Paper> ingest_papers(std::vector<PaperRecord> records) {
  std::vector<Paper> papers;
  papers.reserve(records.size());
  for (PaperRecord& record : records) {
    if (record.id.empty()) throw InputError("paper with empty id");
    const std::optional<Domain> domain = domain_from_code(record.domain);
    if (!domain) {
      throw InputError("unknown domain code '" + record.domain + "' for paper '" + record.id +
                       "'");
    }
    papers.push_back(Paper{std::move(record.id), *domain, std::move(record.title),
                           std::move(record.abstract_text)});
  }
  std::sort(papers.begin(), papers.end(),
            [](const Paper& a, const Paper& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < papers.size(); ++i) {
    if (papers[i].id == papers[i - 1].id) {
      throw InputError("duplicate paper id " + papers[i].id);
    }
  }
  return papers;
}

namespace {

std::unordered_map<std::string_view, PaperOrdinal> ordinal_map(const std::vector<Paper>& papers) {
  std::unordered_map<std::string_view, PaperOrdinal> map;
  map.reserve(papers.size());
  for (std::size_t i = 0; i < papers.size(); ++i) {
    map.emplace(papers[i].id, static_cast<PaperOrdinal>(i));
  }
  return map;
}

// Identity of a entry before ids exist. scope < 0 means cross-domain.
struct IdentityKey {
  std::string key;
  ConceptType type = ConceptType::Material;
  int scope = -1;

  friend bool operator<(const IdentityKey& a, const IdentityKey& b) {
    return std::tie(a.key, a.type, a.scope) < std::tie(b.key, b.type, b.scope);
  }
  friend bool operator==(const IdentityKey& a, const IdentityKey& b) {
    return std::tie(a.key, a.type, a.scope) == std::tie(b.key, b.type, b.scope);
  }
};

}  // namespace

ConceptResolution resolve_concepts(const std::vector<Paper>& papers,
                                   const std::vector<MentionRecord>& mentions,
                                   ScopingMode mode) {
  const auto ordinals = ordinal_map(papers);

  ConceptResolution out;
  out.links.resize(papers.size());

  struct ResolvedMention {
    IdentityKey identity;
    PaperOrdinal paper = 0;
  };
  std::vector<ResolvedMention> resolved;
  resolved.reserve(mentions.size());

  for (const MentionRecord& mention : mentions) {
    const auto it = ordinals.find(mention.paper_id);
    if (it == ordinals.end()) {
      throw InputError("mention references unknown paper '" + mention.paper_id + "'");
    }
    const Paper& paper = papers[it->second];
    if (mention.domain != paper.domain) {
      throw InputError("mention for paper '" + mention.paper_id + "' carries domain " +
                       std::string(to_code(mention.domain)) + " but the paper is " +
                       std::string(to_code(paper.domain)));
    }
    std::string key = normalize_surface(mention.surface);
    if (key.empty()) {
      ++out.skipped_mentions;
      continue;
    }
    const int scope =
        mode == ScopingMode::InDomain ? static_cast<int>(paper.domain) : -1;
    resolved.push_back({IdentityKey{std::move(key), mention.type, scope}, it->second});
  }

  // Ids come from the sorted distinct identities, so they are independent
  // of mention order.
  std::vector<IdentityKey> identities;
  identities.reserve(resolved.size());
  for (const ResolvedMention& m : resolved) identities.push_back(m.identity);
  std::sort(identities.begin(), identities.end());
  identities.erase(std::unique(identities.begin(), identities.end()), identities.end());

  out.concepts.reserve(identities.size());
  for (std::size_t i = 0; i < identities.size(); ++i) {
    Concept entry;
    entry.id = static_cast<ConceptId>(i);
    entry.key = identities[i].key;
    entry.type = identities[i].type;
    if (identities[i].scope >= 0) entry.scope = static_cast<Domain>(identities[i].scope);
    out.concepts.push_back(std::move(entry));
  }

  for (const ResolvedMention& m : resolved) {
    const auto it = std::lower_bound(identities.begin(), identities.end(), m.identity);
    out.links[m.paper].push_back(static_cast<ConceptId>(it - identities.begin()));
  }
  for (std::vector<ConceptId>& link_list : out.links) {
    std::sort(link_list.begin(), link_list.end());
    link_list.erase(std::unique(link_list.begin(), link_list.end()), link_list.end());
  }
  return out;
}

CitationIngest ingest_citations(
    const std::vector<Paper>& papers,
    const std::vector<std::pair<std::string, std::string>>& raw_edges) {
  const auto ordinals = ordinal_map(papers);
  CitationIngest out;
  out.edges.reserve(raw_edges.size());
  for (const auto& [citing_id, cited_id] : raw_edges) {
    const auto citing = ordinals.find(citing_id);
    const auto cited = ordinals.find(cited_id);
    if (citing == ordinals.end() || cited == ordinals.end() ||
        citing->second == cited->second) {
      continue;
    }
    out.edges.push_back(CitationEdge{citing->second, cited->second});
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  out.dropped = raw_edges.size() - out.edges.size();
  return out;
}

KnowledgeGraph::KnowledgeGraph(ScopingMode mode, std::vector<Paper> papers,
                               std::vector<Concept> concepts,
                               std::vector<std::vector<ConceptId>> links,
                               std::vector<CitationEdge> citations,
                               std::size_t dropped_citations, std::size_t skipped_mentions)
    : mode_(mode),
      papers_(std::move(papers)),
      concepts_(std::move(concepts)),
      links_(std::move(links)),
      citations_(std::move(citations)),
      dropped_citations_(dropped_citations),
      skipped_mentions_(skipped_mentions) {
  validate();
  outgoing_.resize(papers_.size());
  for (const CitationEdge& edge : citations_) {
    outgoing_[edge.citing].push_back(edge.cited);
  }
  // citations_ is sorted, so each outgoing list already is too.
}

KnowledgeGraph KnowledgeGraph::build(
    ScopingMode mode, std::vector<PaperRecord> records,
    const std::vector<MentionRecord>& mentions,
    const std::vector<std::pair<std::string, std::string>>& citations) {
  std::vector<Paper> papers = ingest_papers(std::move(records));
  ConceptResolution resolution = resolve_concepts(papers, mentions, mode);
  CitationIngest ingest = ingest_citations(papers, citations);
  return KnowledgeGraph(mode, std::move(papers), std::move(resolution.concepts),
                        std::move(resolution.links), std::move(ingest.edges), ingest.dropped,
                        resolution.skipped_mentions);
}

void KnowledgeGraph::validate() const {
  for (std::size_t i = 0; i < papers_.size(); ++i) {
    if (papers_[i].id.empty()) throw InputError("paper with empty id");
    if (i > 0 && papers_[i].id <= papers_[i - 1].id) {
      throw InputError("papers not sorted by unique id at '" + papers_[i].id + "'");
    }
  }
  for (std::size_t i = 0; i < concepts_.size(); ++i) {
    const Concept& entry = concepts_[i];
    if (entry.id != i) throw InputError("concept ids not contiguous");
    if (entry.key.empty()) throw InputError("concept with empty key");
    if ((mode_ == ScopingMode::InDomain) != entry.scope.has_value()) {
      throw InputError("concept scope inconsistent with scoping mode");
    }
  }
  if (links_.size() != papers_.size()) {
    throw InputError("link table size does not match paper count");
  }
  for (const std::vector<ConceptId>& link_list : links_) {
    for (std::size_t i = 0; i < link_list.size(); ++i) {
      if (link_list[i] >= concepts_.size()) throw InputError("link to unknown concept id");
      if (i > 0 && link_list[i] <= link_list[i - 1]) {
        throw InputError("per-paper links not sorted and unique");
      }
    }
  }
  for (std::size_t i = 0; i < citations_.size(); ++i) {
    const CitationEdge& edge = citations_[i];
    if (edge.citing >= papers_.size() || edge.cited >= papers_.size()) {
      throw InputError("citation endpoint outside the corpus");
    }
    if (edge.citing == edge.cited) throw InputError("self-citation");
    if (i > 0 && !(citations_[i - 1] < edge)) {
      throw InputError("citations not sorted and unique");
    }
  }
}

std::size_t KnowledgeGraph::link_count() const {
  std::size_t count = 0;
  for (const std::vector<ConceptId>& link_list : links_) count += link_list.size();
  return count;
}

std::optional<PaperOrdinal> KnowledgeGraph::find_paper(std::string_view id) const {
  const auto it = std::lower_bound(
      papers_.begin(), papers_.end(), id,
      [](const Paper& paper, std::string_view target) { return paper.id < target; });
  if (it == papers_.end() || it->id != id) return std::nullopt;
  return static_cast<PaperOrdinal>(it - papers_.begin());
}

KgStats kg_stats(const KnowledgeGraph& kg) {
  KgStats stats;
  stats.mode = kg.mode();
  for (const Paper& paper : kg.papers()) {
    ++stats.papers[static_cast<std::size_t>(paper.domain)];
  }
  for (const CitationEdge& edge : kg.citations()) {
    ++stats.citations[static_cast<std::size_t>(kg.papers()[edge.citing].domain)];
  }

  if (kg.mode() == ScopingMode::InDomain) {
    for (const Concept& entry : kg.concepts()) {
      ++stats.concepts[static_cast<std::size_t>(*entry.scope)];
    }
  } else {
    // A concept belongs to the single domain linking it; with zero or
    // several linking domains it counts under MIX, keeping row sums equal
    // to the total.
    constexpr int kUnseen = -2;
    constexpr int kMulti = -1;
    std::vector<int> domain_of(kg.concepts().size(), kUnseen);
    for (std::size_t paper = 0; paper < kg.papers().size(); ++paper) {
      const int domain = static_cast<int>(kg.papers()[paper].domain);
      for (ConceptId entry : kg.links()[paper]) {
        int& slot = domain_of[entry];
        if (slot == kUnseen) {
          slot = domain;
        } else if (slot != domain) {
          slot = kMulti;
        }
      }
    }
    for (int slot : domain_of) {
      if (slot >= 0) {
        ++stats.concepts[static_cast<std::size_t>(slot)];
      } else {
        ++stats.mix_concepts;
      }
    }
  }

  stats.total_papers = kg.papers().size();
  stats.total_citations = kg.citations().size();
  stats.total_concepts = kg.concepts().size();
  return stats;
}

}  // namespace concite
