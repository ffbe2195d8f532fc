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
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "concite/kg.hpp"
#include "concite/types.hpp"

namespace concite {

struct SparseEntry {
  std::uint32_t index = 0;
  double value = 0.0;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Sparse vector over the concept space: entries sorted by strictly
/// increasing index, values nonzero. Concept vectors are binary (all 1).
struct SparseVector {
  std::uint32_t dims = 0;
  std::vector<SparseEntry> entries;
  friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

using DenseVector = std::vector<double>;

/// Immutable paper-id -> dense vector table with one shared dimensionality.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(std::size_t dim, std::unordered_map<std::string, DenseVector> vectors);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  const DenseVector* find(const std::string& paper_id) const;
  const std::unordered_map<std::string, DenseVector>& vectors() const { return vectors_; }

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, DenseVector> vectors_;
};

/// View over a concept part and an embedding part, semantically the
/// concatenation of the two without materializing it. Either part may be
/// 0-dimensional. Non-owning: the underlying vectors must outlive the view.
struct HybridVector {
  std::uint32_t sparse_dims = 0;
  std::span<const SparseEntry> sparse;
  std::span<const double> dense;
};

/// Binary concept vector of a paper: ones exactly at the concept ids linked
/// to the paper whose type passes the filter; dims = size of the concept
/// space. Throws QueryError for an unknown paper id.
SparseVector concept_vector(PaperOrdinal paper, const KnowledgeGraph& kg,
                            const TypeFilter& filter = TypeFilter::all());
SparseVector concept_vector(std::string_view paper_id, const KnowledgeGraph& kg,
                            const TypeFilter& filter = TypeFilter::all());

/// Reads the embedding interchange format: a `count dim` header line, then
/// one `paper_id v1 ... v327` row per paper, space-separated. Throws
/// InputError with a line number on any malformed row.
EmbeddingTable load_embeddings(std::istream& in, const std::string& source_name = "<stream>");
EmbeddingTable load_embeddings_file(const std::filesystem::path& path);

/// One standard-normal vector per paper id, seeded per (seed, paper_id) so
/// the table is independent of input order and reproducible across runs.
EmbeddingTable random_embeddings(std::span<const std::string> paper_ids, std::size_t dim,
                                 std::uint64_t seed);

/// Wraps the given parts; a null part becomes 0-dimensional. Throws
/// std::invalid_argument when both parts are null.
HybridVector hybrid_vector(const SparseVector* concept_part, const DenseVector* embedding_part);

}  // namespace concite
