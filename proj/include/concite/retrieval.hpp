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
#include <ostream>
#include <string>
#include <vector>

#include "concite/kg.hpp"
#include "concite/vectorizer.hpp"

namespace concite {

/// cos(a, b) over the concatenated sparse+dense parts. Both vectors must
/// agree on sparse_dims and dense size. Returns 0 when either norm is 0.
double hybrid_cosine(const HybridVector& a, const HybridVector& b);

/// Dot product of the dense parts, accumulated left to right.
double dense_dot(std::span<const double> a, std::span<const double> b);

/// Euclidean norm of a hybrid vector: sparse part accumulated in index
/// order, then the dense part left to right.
double hybrid_norm(const HybridVector& v);

struct RankOptions {
  int workers = 1;  // 0 = hardware concurrency
};

struct RankedItem {
  std::string doc_id;
  double score = 0.0;
};

struct RankedList {
  std::string query_id;
  std::size_t k = 0;              // requested depth
  std::vector<RankedItem> items;  // score desc, doc_id asc on ties
};

/// Fixed corpus of hybrid vectors supporting exact cosine ranking.
///
/// Two routes produce bit-identical ranked lists: the postings route walks
/// an inverted index over the sparse part (touching only documents that
/// share a nonzero dimension with the query) plus a dense scan, and the
/// brute-force route scores every document directly. Both accumulate the
/// sparse part in ascending dimension order and share the same dense and
/// norm kernels, which keeps the double arithmetic identical.
class CorpusIndex {
 public:
  /// Builds from per-document parts. `concepts[i]` and `embeddings[i]`
  /// belong to `doc_ids[i]`; a null embedding pointer means no dense part.
  /// All sparse parts must share dims, all dense parts must share size, and
  /// doc ids must be unique. Throws InputError on violations.
  static CorpusIndex build(std::vector<std::string> doc_ids,
                           const std::vector<const SparseVector*>& concepts,
                           const std::vector<const DenseVector*>& embeddings);

  std::size_t size() const { return doc_ids_.size(); }
  std::uint32_t sparse_dims() const { return sparse_dims_; }
  std::size_t dense_dims() const { return dense_dims_; }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  std::optional<std::size_t> find_doc(const std::string& doc_id) const;
  HybridVector vector_of(std::size_t ordinal) const;

  /// Exact ranking of the whole corpus against the query, score descending,
  /// doc id ascending on ties, zero-norm cosines scored 0. `exclude_doc`
  /// drops one document (a query ranking itself) from the result. `top_k`
  /// truncates after ordering; nullopt keeps every document.
  RankedList rank_all(const std::string& query_id, const HybridVector& query,
                      std::optional<std::size_t> top_k = std::nullopt,
                      std::optional<std::size_t> exclude_doc = std::nullopt,
                      const RankOptions& options = RankOptions{}) const;

  /// Reference route: scores each document with hybrid_cosine directly.
  RankedList rank_all_bruteforce(const std::string& query_id, const HybridVector& query,
                                 std::optional<std::size_t> top_k = std::nullopt,
                                 std::optional<std::size_t> exclude_doc = std::nullopt) const;

 private:
  CorpusIndex() = default;

  std::vector<double> score_postings(const HybridVector& query, int workers) const;

  std::uint32_t sparse_dims_ = 0;
  std::size_t dense_dims_ = 0;
  std::vector<std::string> doc_ids_;

  // Per-document sparse parts, CSR layout, entries in ascending index order.
  std::vector<std::size_t> sparse_offsets_;
  std::vector<SparseEntry> sparse_entries_;

  // Dense parts, row-major, size() * dense_dims_.
  std::vector<double> dense_;

  // Inverted index over the sparse part: postings_[d] lists (doc, value)
  // for every document with a nonzero at dimension d, docs ascending.
  std::vector<std::size_t> posting_offsets_;
  struct Posting {
    std::uint32_t doc = 0;
    double value = 0.0;
  };
  std::vector<Posting> postings_;

  std::vector<double> norms_;
};

/// Which vector parts an index carries.
struct IndexBuildConfig {
  bool use_concepts = true;
  TypeFilter type_filter = TypeFilter::all();
  bool use_dense = false;
};

/// Indexes every paper of the graph, ordered by ascending paper id. With
/// use_dense set, `embeddings` must cover every paper; a missing vector is
/// a hard InputError naming the paper, never a silent zero-fill. With both
/// parts disabled there is nothing to rank, also an error.
CorpusIndex build_index(const KnowledgeGraph& kg, const EmbeddingTable* embeddings,
                        const IndexBuildConfig& config);

/// Writes `query_id<TAB>rank<TAB>doc_id<TAB>score` rows, ranks from 1,
/// scores with 6 decimals.
void write_ranked_list(std::ostream& out, const RankedList& list);

}  // namespace concite
