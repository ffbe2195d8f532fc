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
#include "concite/vectorizer.hpp"

#include <fstream>
#include <stdexcept>

#include "concite/util.hpp"

namespace concite {

EmbeddingTable::EmbeddingTable(std::size_t dim,
                               std::unordered_map<std::string, DenseVector> vectors)
    : dim_(dim), vectors_(std::move(vectors)) {
  for (const auto& [id, vector] : vectors_) {
    if (vector.size() != dim_) {
      throw InputError("embedding for '" + id + "' has " + std::to_string(vector.size()) +
                       " components, expected " + std::to_string(dim_));
    }
  }
}

const DenseVector* EmbeddingTable::find(const std::string& paper_id) const {
  const auto it = vectors_.find(paper_id);
  return it == vectors_.end() ? nullptr : &it->second;
}

SparseVector concept_vector(PaperOrdinal paper, const KnowledgeGraph& kg,
                            const TypeFilter& filter) {
  if (paper >= kg.papers().size()) {
    throw QueryError("paper ordinal " + std::to_string(paper) + " out of range");
  }
  SparseVector vector;
  vector.dims = static_cast<std::uint32_t>(kg.concepts().size());
  const std::vector<ConceptId>& links = kg.links_of(paper);
  vector.entries.reserve(links.size());
  for (ConceptId entry : links) {  // ascending, so entries stay sorted
    if (!filter.contains(kg.concepts()[entry].type)) continue;
    vector.entries.push_back(SparseEntry{entry, 1.0});
  }
  return vector;
}

SparseVector concept_vector(std::string_view paper_id, const KnowledgeGraph& kg,
                            const TypeFilter& filter) {
  const std::optional<PaperOrdinal> paper = kg.find_paper(paper_id);
  if (!paper) throw QueryError("unknown paper id '" + std::string(paper_id) + "'");
  return concept_vector(*paper, kg, filter);
}

namespace {

// Tokens separated by runs of spaces or tabs.
std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

[[noreturn]] void fail_at(const std::string& source, std::size_t line, const std::string& what) {
  throw InputError(source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

EmbeddingTable load_embeddings(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t line_number = 0;

  std::uint64_t count = 0;
  std::uint64_t dim = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::vector<std::string_view> header = split_tokens(line);
    if (header.size() != 2 || !parse_uint64(header[0], count) || !parse_uint64(header[1], dim) ||
        dim == 0) {
      fail_at(source_name, line_number, "expected header 'count dim'");
    }
    break;
  }
  if (line_number == 0) throw InputError(source_name + ": empty embedding file");

  std::unordered_map<std::string, DenseVector> vectors;
  vectors.reserve(count);
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (vectors.size() == count) {
      fail_at(source_name, line_number,
              "more records than the declared count " + std::to_string(count));
    }
    const std::vector<std::string_view> tokens = split_tokens(line);
    if (tokens.size() != dim + 1) {
      fail_at(source_name, line_number,
              "expected id plus " + std::to_string(dim) + " components, got " +
                  std::to_string(tokens.size() == 0 ? 0 : tokens.size() - 1));
    }
    DenseVector vector(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (!parse_double(tokens[i + 1], vector[i])) {
        fail_at(source_name, line_number,
                "component " + std::to_string(i + 1) + " is not a finite number");
      }
    }
    if (!vectors.emplace(std::string(tokens[0]), std::move(vector)).second) {
      fail_at(source_name, line_number, "duplicate paper id '" + std::string(tokens[0]) + "'");
    }
  }
  if (vectors.size() != count) {
    throw InputError(source_name + ": declared " + std::to_string(count) + " records, found " +
                     std::to_string(vectors.size()));
  }
  return EmbeddingTable(dim, std::move(vectors));
}

EmbeddingTable load_embeddings_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file '" + path.string() + "'");
  return load_embeddings(in, path.string());
}

EmbeddingTable random_embeddings(std::span<const std::string> paper_ids, std::size_t dim,
                                 std::uint64_t seed) {
  if (dim == 0) throw std::invalid_argument("random_embeddings: dim must be positive");
  std::unordered_map<std::string, DenseVector> vectors;
  vectors.reserve(paper_ids.size());
  for (const std::string& id : paper_ids) {
    // Per-paper stream, so the table does not depend on id order.
    NormalSampler sampler(mix_seed(seed, id));
    DenseVector vector(dim);
    for (double& component : vector) component = sampler.next();
    vectors.emplace(id, std::move(vector));
  }
  return EmbeddingTable(dim, std::move(vectors));
}

HybridVector hybrid_vector(const SparseVector* concept_part, const DenseVector* embedding_part) {
  if (concept_part == nullptr && embedding_part == nullptr) {
    throw std::invalid_argument("hybrid_vector: both parts absent");
  }
  HybridVector hybrid;
  if (concept_part != nullptr) {
    hybrid.sparse_dims = concept_part->dims;
    hybrid.sparse = concept_part->entries;
  }
  if (embedding_part != nullptr) {
    hybrid.dense = *embedding_part;
  }
  return hybrid;
}

}  // namespace concite
