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
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "concite/kg.hpp"
#include "concite/retrieval.hpp"
#include "concite/util.hpp"
#include "concite/vectorizer.hpp"

namespace concite {

/// One benchmark query: a paper and the papers it cites in-corpus.
struct QueryRelevance {
  std::string query_id;
  std::vector<std::string> relevant;  // sorted ascending, excludes query_id
};

struct QuerySet {
  std::vector<QueryRelevance> queries;  // ascending query_id
  std::size_t total_relevant_links() const;
};

/// All papers with at least `min_citations` outgoing in-corpus citations;
/// each query's relevant set is exactly its citation targets.
QuerySet select_queries(const KnowledgeGraph& kg, std::size_t min_citations = 4);

/// `hits[i]` flags whether the document at rank i+1 is relevant. The list
/// may be shorter than k; the divisor stays k. Requires k >= 1.
double precision_at_k(std::span<const std::uint8_t> hits, std::size_t k);

/// Sum of precision at each relevant rank within the top k, divided by the
/// TOTAL relevant count for the query, not min(k, total). Requires k >= 1
/// and total_relevant >= 1 (an empty relevant set is an ill-posed query).
double average_precision_at_k(std::span<const std::uint8_t> hits, std::size_t total_relevant,
                              std::size_t k);

std::vector<std::uint8_t> relevance_flags(const RankedList& ranked,
                                          const std::unordered_set<std::string>& relevant);
double precision_at_k(const RankedList& ranked, const std::unordered_set<std::string>& relevant,
                      std::size_t k);
double average_precision_at_k(const RankedList& ranked,
                              const std::unordered_set<std::string>& relevant, std::size_t k);

/// Mean AP@k over the query set; every query weighs the same. Queries are
/// ranked against `index` with self-exclusion. Requires a non-empty query
/// set whose papers all exist in the index.
double map_at_k(const QuerySet& queries, const CorpusIndex& index, std::size_t k,
                const RankOptions& options = RankOptions{});

/// map_at_k at several depths sharing one ranking pass per query.
std::vector<double> map_at_ks(const QuerySet& queries, const CorpusIndex& index,
                              std::span<const std::size_t> ks,
                              const RankOptions& options = RankOptions{});

struct EvalRow {
  std::string label;
  std::vector<double> map_values;            // parallel to EvalReport::k_values
  std::optional<std::size_t> base_row;       // deltas are vs. this row's values
};

/// MAP matrix over vector configurations.
struct EvalReport {
  std::vector<std::size_t> k_values;
  std::vector<EvalRow> rows;
  std::size_t query_count = 0;
  std::size_t relevant_link_count = 0;
};

struct BenchmarkInputs {
  const KnowledgeGraph* in_domain = nullptr;
  const KnowledgeGraph* cross_domain = nullptr;
  // Label -> table, in presentation order. Missing vectors fail hard.
  std::vector<std::pair<std::string, const EmbeddingTable*>> embeddings;
};

struct BenchmarkOptions {
  std::vector<std::size_t> k_values = {10, 20, 50};
  std::size_t min_citations = 4;
  std::uint64_t seed = 0;
  std::size_t random_dim = 200;
  int workers = 0;  // 0 = hardware concurrency
  bool include_random = true;
  bool include_concept_rows = true;  // concept-only rows + per-type ablations
};

/// Runs the full configuration matrix: the random baseline; concept-only
/// rankings on both scoping variants with per-type ablations on the
/// in-domain variant; then each embedding alone and combined with each
/// variant's concept vectors, the combined rows carrying deltas against
/// the embedding-only row. Requires both graph variants.
EvalReport run_benchmark(const BenchmarkInputs& inputs, const BenchmarkOptions& options);

/// Raw values, tab-separated: label, then per k the MAP and the delta
/// (empty for base rows).
std::string format_report_tsv(const EvalReport& report);

/// Human-readable table with MAP as percentages to one decimal and
/// parenthesized deltas on combined rows.
std::string format_report_text(const EvalReport& report);

struct PairStats {
  std::string population;  // "citing" | "random"
  DistributionSummary summary;
};

struct PairStatsReport {
  PairStats citing;
  PairStats random;
};

/// Cosine similarity of concept vectors over (a) every citation edge and
/// (b) an equally sized seeded sample of random pairs. The random sample
/// keeps each edge's citing endpoint and redraws the partner, rejecting
/// self-pairs and true citation pairs. Requires >= 1 citation edge.
PairStatsReport pair_similarity_stats(const KnowledgeGraph& kg, std::uint64_t seed,
                                      int workers = 1);

/// One row per (variant label, population): count, mean, min, quartiles,
/// max, tab-separated.
std::string format_pair_stats_tsv(
    std::span<const std::pair<std::string, PairStatsReport>> reports);

}  // namespace concite
