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
#include "concite/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "concite/util.hpp"

// The postings route and the brute-force route must produce bit-identical
// scores. Everything here preserves that: the sparse dot product is
// accumulated in ascending dimension order in both routes, the dense dot
// and the norms go through the same two functions, and the final score is
// the same expression dot / (query_norm * doc_norm). The build disables FP
// contraction so neither route picks up an FMA the other lacks.

namespace concite {

namespace {

void check_pair_shapes(const HybridVector& a, const HybridVector& b) {
  if (a.sparse_dims != b.sparse_dims) {
    throw std::invalid_argument("hybrid vectors disagree on sparse dimensionality");
  }
  if (a.dense.size() != b.dense.size()) {
    throw std::invalid_argument("hybrid vectors disagree on dense dimensionality");
  }
}

// Merge-style sparse dot; both entry lists are sorted by index, so the
// contributions accumulate in ascending dimension order.
double sparse_dot(std::span<const SparseEntry> a, std::span<const SparseEntry> b) {
  double sum = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].index < b[j].index) {
      ++i;
    } else if (b[j].index < a[i].index) {
      ++j;
    } else {
      sum += a[i].value * b[j].value;
      ++i;
      ++j;
    }
  }
  return sum;
}

}  // namespace

double dense_dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double hybrid_norm(const HybridVector& v) {
  double sum = 0.0;
  for (const SparseEntry& entry : v.sparse) sum += entry.value * entry.value;
  for (double component : v.dense) sum += component * component;
  return std::sqrt(sum);
}

double hybrid_cosine(const HybridVector& a, const HybridVector& b) {
  check_pair_shapes(a, b);
  const double norm_a = hybrid_norm(a);
  const double norm_b = hybrid_norm(b);
  if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
  const double dot = sparse_dot(a.sparse, b.sparse) + dense_dot(a.dense, b.dense);
  return dot / (norm_a * norm_b);
}

CorpusIndex CorpusIndex::build(std::vector<std::string> doc_ids,
                               const std::vector<const SparseVector*>& concepts,
                               const std::vector<const DenseVector*>& embeddings) {
  const std::size_t n = doc_ids.size();
  if (concepts.size() != n || embeddings.size() != n) {
    throw InputError("index parts do not match the document count");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (doc_ids[i] <= doc_ids[i - 1]) {
      throw InputError("index doc ids must be unique and ascending, offender '" + doc_ids[i] +
                       "'");
    }
  }

  CorpusIndex index;
  index.doc_ids_ = std::move(doc_ids);

  bool any_sparse = false;
  bool any_dense = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (concepts[i] != nullptr) any_sparse = true;
    if (embeddings[i] != nullptr) any_dense = true;
  }
  if (n > 0 && !any_sparse && !any_dense) {
    throw InputError("index needs a concept part or an embedding part");
  }

  if (any_sparse) {
    for (std::size_t i = 0; i < n; ++i) {
      if (concepts[i] == nullptr) {
        throw InputError("document '" + index.doc_ids_[i] + "' is missing its concept part");
      }
    }
    index.sparse_dims_ = concepts[0]->dims;
  }
  if (any_dense) {
    for (std::size_t i = 0; i < n; ++i) {
      if (embeddings[i] == nullptr) {
        throw InputError("no embedding for document '" + index.doc_ids_[i] + "'");
      }
    }
    index.dense_dims_ = embeddings[0]->size();
    if (index.dense_dims_ == 0) throw InputError("embeddings must have positive dimension");
  }

  index.sparse_offsets_.assign(n + 1, 0);
  if (any_sparse) {
    std::size_t total_entries = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const SparseVector& vector = *concepts[i];
      if (vector.dims != index.sparse_dims_) {
        throw InputError("document '" + index.doc_ids_[i] +
                         "' disagrees on concept dimensionality");
      }
      std::uint32_t previous = 0;
      bool first = true;
      for (const SparseEntry& entry : vector.entries) {
        if (entry.index >= vector.dims || entry.value == 0.0 ||
            (!first && entry.index <= previous)) {
          throw InputError("malformed sparse vector for document '" + index.doc_ids_[i] + "'");
        }
        previous = entry.index;
        first = false;
      }
      total_entries += vector.entries.size();
    }
    index.sparse_entries_.reserve(total_entries);
    for (std::size_t i = 0; i < n; ++i) {
      index.sparse_offsets_[i] = index.sparse_entries_.size();
      index.sparse_entries_.insert(index.sparse_entries_.end(), concepts[i]->entries.begin(),
                                   concepts[i]->entries.end());
    }
    index.sparse_offsets_[n] = index.sparse_entries_.size();
  }

  if (any_dense) {
    index.dense_.reserve(n * index.dense_dims_);
    for (std::size_t i = 0; i < n; ++i) {
      const DenseVector& vector = *embeddings[i];
      if (vector.size() != index.dense_dims_) {
        throw InputError("document '" + index.doc_ids_[i] +
                         "' disagrees on embedding dimensionality");
      }
      index.dense_.insert(index.dense_.end(), vector.begin(), vector.end());
    }
  }

  // Postings, counting sort by dimension; docs end up ascending per
  // dimension because documents are visited in ordinal order.
  index.posting_offsets_.assign(static_cast<std::size_t>(index.sparse_dims_) + 1, 0);
  if (!index.sparse_entries_.empty()) {
    for (const SparseEntry& entry : index.sparse_entries_) {
      ++index.posting_offsets_[entry.index + 1];
    }
    for (std::size_t d = 1; d < index.posting_offsets_.size(); ++d) {
      index.posting_offsets_[d] += index.posting_offsets_[d - 1];
    }
    index.postings_.resize(index.sparse_entries_.size());
    std::vector<std::size_t> cursor(index.posting_offsets_.begin(),
                                    index.posting_offsets_.end() - 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t e = index.sparse_offsets_[i]; e < index.sparse_offsets_[i + 1]; ++e) {
        const SparseEntry& entry = index.sparse_entries_[e];
        index.postings_[cursor[entry.index]++] =
            Posting{static_cast<std::uint32_t>(i), entry.value};
      }
    }
  }

  index.norms_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    index.norms_[i] = hybrid_norm(index.vector_of(i));
  }
  return index;
}

std::optional<std::size_t> CorpusIndex::find_doc(const std::string& doc_id) const {
  const auto it = std::lower_bound(doc_ids_.begin(), doc_ids_.end(), doc_id);
  if (it == doc_ids_.end() || *it != doc_id) return std::nullopt;
  return static_cast<std::size_t>(it - doc_ids_.begin());
}

HybridVector CorpusIndex::vector_of(std::size_t ordinal) const {
  HybridVector vector;
  vector.sparse_dims = sparse_dims_;
  if (!sparse_entries_.empty() || sparse_dims_ > 0) {
    vector.sparse = std::span<const SparseEntry>(
        sparse_entries_.data() + sparse_offsets_[ordinal],
        sparse_offsets_[ordinal + 1] - sparse_offsets_[ordinal]);
  }
  if (dense_dims_ > 0) {
    vector.dense = std::span<const double>(dense_.data() + ordinal * dense_dims_, dense_dims_);
  }
  return vector;
}

std::vector<double> CorpusIndex::score_postings(const HybridVector& query, int workers) const {
  const std::size_t n = size();
  std::vector<double> scores(n, 0.0);

  // Sparse contributions, one query dimension at a time in ascending
  // order. Each document's partial sum therefore grows in exactly the
  // order the merge in sparse_dot would produce.
  for (const SparseEntry& q : query.sparse) {
    const std::size_t begin = posting_offsets_[q.index];
    const std::size_t end = posting_offsets_[q.index + 1];
    for (std::size_t p = begin; p < end; ++p) {
      scores[postings_[p].doc] += q.value * postings_[p].value;
    }
  }

  const double query_norm = hybrid_norm(query);
  parallel_for(n, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (query_norm == 0.0 || norms_[i] == 0.0) {
        scores[i] = 0.0;
        continue;
      }
      double dot = scores[i];
      if (dense_dims_ > 0) {
        dot += dense_dot(query.dense,
                         std::span<const double>(dense_.data() + i * dense_dims_, dense_dims_));
      }
      scores[i] = dot / (query_norm * norms_[i]);
    }
  });
  return scores;
}

namespace {

// Shared ordering: score descending, ordinal (= doc id) ascending.
std::vector<std::uint32_t> order_candidates(const std::vector<double>& scores,
                                            std::optional<std::size_t> exclude_doc,
                                            std::optional<std::size_t> top_k) {
  std::vector<std::uint32_t> order;
  order.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (exclude_doc && *exclude_doc == i) continue;
    order.push_back(static_cast<std::uint32_t>(i));
  }
  const auto better = [&scores](std::uint32_t a, std::uint32_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  };
  // `better` is a strict total order, so the top-k prefix is unique and
  // partial_sort matches a full sort.
  if (top_k && *top_k < order.size()) {
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(*top_k),
                      order.end(), better);
    order.resize(*top_k);
  } else {
    std::sort(order.begin(), order.end(), better);
  }
  return order;
}

}  // namespace

RankedList CorpusIndex::rank_all(const std::string& query_id, const HybridVector& query,
                                 std::optional<std::size_t> top_k,
                                 std::optional<std::size_t> exclude_doc,
                                 const RankOptions& options) const {
  if (query.sparse_dims != sparse_dims_ || query.dense.size() != dense_dims_) {
    throw std::invalid_argument("query vector does not match the index dimensions");
  }
  if (top_k && *top_k == 0) throw std::invalid_argument("top_k must be positive");
  if (exclude_doc && *exclude_doc >= size()) {
    throw std::invalid_argument("excluded ordinal out of range");
  }
  const std::vector<double> scores = score_postings(query, options.workers);
  const std::vector<std::uint32_t> order = order_candidates(scores, exclude_doc, top_k);

  RankedList list;
  list.query_id = query_id;
  list.k = top_k ? *top_k : order.size();
  list.items.reserve(order.size());
  for (std::uint32_t ordinal : order) {
    list.items.push_back(RankedItem{doc_ids_[ordinal], scores[ordinal]});
  }
  return list;
}

RankedList CorpusIndex::rank_all_bruteforce(const std::string& query_id,
                                            const HybridVector& query,
                                            std::optional<std::size_t> top_k,
                                            std::optional<std::size_t> exclude_doc) const {
  if (query.sparse_dims != sparse_dims_ || query.dense.size() != dense_dims_) {
    throw std::invalid_argument("query vector does not match the index dimensions");
  }
  if (top_k && *top_k == 0) throw std::invalid_argument("top_k must be positive");
  if (exclude_doc && *exclude_doc >= size()) {
    throw std::invalid_argument("excluded ordinal out of range");
  }
  std::vector<double> scores(size());
  for (std::size_t i = 0; i < size(); ++i) {
    scores[i] = hybrid_cosine(query, vector_of(i));
  }
  const std::vector<std::uint32_t> order = order_candidates(scores, exclude_doc, top_k);

  RankedList list;
  list.query_id = query_id;
  list.k = top_k ? *top_k : order.size();
  list.items.reserve(order.size());
  for (std::uint32_t ordinal : order) {
    list.items.push_back(RankedItem{doc_ids_[ordinal], scores[ordinal]});
  }
  return list;
}

CorpusIndex build_index(const KnowledgeGraph& kg, const EmbeddingTable* embeddings,
                        const IndexBuildConfig& config) {
  if (!config.use_concepts && !config.use_dense) {
    throw InputError("index configuration enables neither concepts nor embeddings");
  }
  const std::size_t n = kg.papers().size();
  std::vector<std::string> doc_ids;
  doc_ids.reserve(n);
  for (const Paper& paper : kg.papers()) doc_ids.push_back(paper.id);

  std::vector<SparseVector> sparse_storage;
  std::vector<const SparseVector*> sparse_parts(n, nullptr);
  if (config.use_concepts) {
    sparse_storage.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      sparse_storage.push_back(
          concept_vector(static_cast<PaperOrdinal>(i), kg, config.type_filter));
    }
    for (std::size_t i = 0; i < n; ++i) sparse_parts[i] = &sparse_storage[i];
  }

  std::vector<const DenseVector*> dense_parts(n, nullptr);
  if (config.use_dense) {
    if (embeddings == nullptr) throw InputError("no embedding table supplied");
    for (std::size_t i = 0; i < n; ++i) {
      const DenseVector* vector = embeddings->find(kg.papers()[i].id);
      if (vector == nullptr) {
        throw InputError("no embedding for document '" + kg.papers()[i].id + "'");
      }
      dense_parts[i] = vector;
    }
  }
  return CorpusIndex::build(std::move(doc_ids), sparse_parts, dense_parts);
}

void write_ranked_list(std::ostream& out, const RankedList& list) {
  for (std::size_t i = 0; i < list.items.size(); ++i) {
    out << list.query_id << '\t' << (i + 1) << '\t' << list.items[i].doc_id << '\t'
        << format_fixed(list.items[i].score, 6) << '\n';
  }
}

}  // namespace concite
