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
#include "concite/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

namespace concite {

std::size_t QuerySet::total_relevant_links() const {
  std::size_t total = 0;
  for (const QueryRelevance& query : queries) total += query.relevant.size();
  return total;
}

QuerySet select_queries(const KnowledgeGraph& kg, std::size_t min_citations) {
  QuerySet set;
  for (std::size_t paper = 0; paper < kg.papers().size(); ++paper) {
    const std::vector<PaperOrdinal>& targets = kg.outgoing_citations()[paper];
    if (targets.size() < min_citations) continue;
    QueryRelevance query;
    query.query_id = kg.papers()[paper].id;
    query.relevant.reserve(targets.size());
    // Ordinal order is id order, so the list comes out sorted.
    for (PaperOrdinal target : targets) query.relevant.push_back(kg.papers()[target].id);
    set.queries.push_back(std::move(query));
  }
  return set;
}

double precision_at_k(std::span<const std::uint8_t> hits, std::size_t k) {
  if (k == 0) throw std::invalid_argument("precision_at_k: k must be positive");
  std::size_t found = 0;
  const std::size_t depth = std::min(k, hits.size());
  for (std::size_t i = 0; i < depth; ++i) {
    if (hits[i]) ++found;
  }
  return static_cast<double>(found) / static_cast<double>(k);
}

double average_precision_at_k(std::span<const std::uint8_t> hits, std::size_t total_relevant,
                              std::size_t k) {
  if (k == 0) throw std::invalid_argument("average_precision_at_k: k must be positive");
  if (total_relevant == 0) {
    throw std::invalid_argument("average_precision_at_k: query has no relevant documents");
  }
  double sum = 0.0;
  std::size_t found = 0;
  const std::size_t depth = std::min(k, hits.size());
  for (std::size_t position = 1; position <= depth; ++position) {
    if (!hits[position - 1]) continue;
    ++found;
    sum += static_cast<double>(found) / static_cast<double>(position);
  }
  return sum / static_cast<double>(total_relevant);
}

std::vector<std::uint8_t> relevance_flags(const RankedList& ranked,
                                          const std::unordered_set<std::string>& relevant) {
  std::vector<std::uint8_t> hits;
  hits.reserve(ranked.items.size());
  for (const RankedItem& item : ranked.items) {
    hits.push_back(relevant.count(item.doc_id) != 0 ? 1 : 0);
  }
  return hits;
}

double precision_at_k(const RankedList& ranked, const std::unordered_set<std::string>& relevant,
                      std::size_t k) {
  return precision_at_k(relevance_flags(ranked, relevant), k);
}

double average_precision_at_k(const RankedList& ranked,
                              const std::unordered_set<std::string>& relevant, std::size_t k) {
  return average_precision_at_k(relevance_flags(ranked, relevant), relevant.size(), k);
}

std::vector<double> map_at_ks(const QuerySet& queries, const CorpusIndex& index,
                              std::span<const std::size_t> ks,
                              const RankOptions& options) {
  if (queries.queries.empty()) throw std::invalid_argument("map_at_ks: empty query set");
  if (ks.empty()) throw std::invalid_argument("map_at_ks: no k values");
  std::size_t max_k = 0;
  for (std::size_t k : ks) {
    if (k == 0) throw std::invalid_argument("map_at_ks: k must be positive");
    max_k = std::max(max_k, k);
  }

  // Resolve and validate up front; worker threads must not throw.
  const std::size_t count = queries.queries.size();
  std::vector<std::size_t> ordinals(count);
  for (std::size_t i = 0; i < count; ++i) {
    const QueryRelevance& query = queries.queries[i];
    const std::optional<std::size_t> ordinal = index.find_doc(query.query_id);
    if (!ordinal) throw QueryError("unknown paper id '" + query.query_id + "'");
    if (query.relevant.empty()) {
      throw std::invalid_argument("query '" + query.query_id + "' has no relevant documents");
    }
    ordinals[i] = *ordinal;
  }

  std::vector<double> ap(count * ks.size());
  parallel_for(count, options.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const QueryRelevance& query = queries.queries[i];
      const RankedList ranked =
          index.rank_all(query.query_id, index.vector_of(ordinals[i]), max_k, ordinals[i]);
      const std::unordered_set<std::string> relevant(query.relevant.begin(),
                                                     query.relevant.end());
      const std::vector<std::uint8_t> hits = relevance_flags(ranked, relevant);
      for (std::size_t j = 0; j < ks.size(); ++j) {
        ap[i * ks.size() + j] = average_precision_at_k(hits, query.relevant.size(), ks[j]);
      }
    }
  });

  // Deterministic reduction in query order.
  std::vector<double> map(ks.size(), 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < ks.size(); ++j) map[j] += ap[i * ks.size() + j];
  }
  for (double& value : map) value /= static_cast<double>(count);
  return map;
}

double map_at_k(const QuerySet& queries, const CorpusIndex& index, std::size_t k,
                const RankOptions& options) {
  const std::size_t ks[1] = {k};
  return map_at_ks(queries, index, ks, options)[0];
}

namespace {

void check_same_corpus(const KnowledgeGraph& a, const KnowledgeGraph& b) {
  bool same = a.papers().size() == b.papers().size() && a.citations() == b.citations();
  if (same) {
    for (std::size_t i = 0; i < a.papers().size(); ++i) {
      if (a.papers()[i].id != b.papers()[i].id) {
        same = false;
        break;
      }
    }
  }
  if (!same) {
    throw std::invalid_argument("the two scoping variants describe different corpora");
  }
}

}  // namespace

EvalReport run_benchmark(const BenchmarkInputs& inputs, const BenchmarkOptions& options) {
  if (inputs.in_domain == nullptr || inputs.cross_domain == nullptr) {
    throw std::invalid_argument("the benchmark needs both scoping variants");
  }
  if (inputs.in_domain->mode() != ScopingMode::InDomain ||
      inputs.cross_domain->mode() != ScopingMode::CrossDomain) {
    throw std::invalid_argument("benchmark variants have swapped scoping modes");
  }
  check_same_corpus(*inputs.in_domain, *inputs.cross_domain);
  for (const auto& [label, table] : inputs.embeddings) {
    if (table == nullptr) throw std::invalid_argument("missing embedding table '" + label + "'");
  }

  EvalReport report;
  report.k_values = options.k_values;
  const QuerySet queries = select_queries(*inputs.in_domain, options.min_citations);
  report.query_count = queries.queries.size();
  report.relevant_link_count = queries.total_relevant_links();
  if (queries.queries.empty()) {
    throw std::invalid_argument("no query papers reach the citation threshold");
  }

  const RankOptions run_options{options.workers};
  const auto add_row = [&report, &queries, &run_options](std::string label,
                                                         const CorpusIndex& index,
                                                         std::optional<std::size_t> base_row) {
    report.rows.push_back(EvalRow{std::move(label),
                                  map_at_ks(queries, index, report.k_values, run_options),
                                  base_row});
  };

  const KnowledgeGraph& in_domain = *inputs.in_domain;
  const KnowledgeGraph& cross_domain = *inputs.cross_domain;

  if (options.include_random) {
    std::vector<std::string> ids;
    ids.reserve(in_domain.papers().size());
    for (const Paper& paper : in_domain.papers()) ids.push_back(paper.id);
    const EmbeddingTable random_table = random_embeddings(ids, options.random_dim, options.seed);
    IndexBuildConfig config;
    config.use_concepts = false;
    config.use_dense = true;
    add_row("Random", build_index(in_domain, &random_table, config), std::nullopt);
  }

  if (options.include_concept_rows) {
    add_row("Concept vector (cross-domain KG)", build_index(cross_domain, nullptr, {}),
            std::nullopt);
    add_row("Concept vector (in-domain KG)", build_index(in_domain, nullptr, {}), std::nullopt);
    for (ConceptType type : {ConceptType::Material, ConceptType::Process, ConceptType::Data,
                             ConceptType::Method}) {
      IndexBuildConfig config;
      config.type_filter = TypeFilter::only(type);
      add_row("- " + std::string(to_string(type)), build_index(in_domain, nullptr, config),
              std::nullopt);
    }
  }

  for (const auto& [label, table] : inputs.embeddings) {
    IndexBuildConfig dense_only;
    dense_only.use_concepts = false;
    dense_only.use_dense = true;
    const std::size_t base_row = report.rows.size();
    add_row(label, build_index(in_domain, table, dense_only), std::nullopt);

    IndexBuildConfig combined;
    combined.use_dense = true;
    add_row(label + " + concept vector (cross-domain KG)",
            build_index(cross_domain, table, combined), base_row);
    add_row(label + " + concept vector (in-domain KG)", build_index(in_domain, table, combined),
            base_row);
  }
  return report;
}

namespace {

std::string percent_cell(double value, std::optional<double> delta) {
  char buffer[64];
  if (delta) {
    std::snprintf(buffer, sizeof buffer, "%.1f (%+.1f)", value * 100.0, *delta * 100.0);
  } else {
    std::snprintf(buffer, sizeof buffer, "%.1f", value * 100.0);
  }
  return buffer;
}

}  // namespace

std::string format_report_tsv(const EvalReport& report) {
  std::ostringstream out;
  out << "# queries\t" << report.query_count << '\n';
  out << "# relevant links\t" << report.relevant_link_count << '\n';
  out << "config";
  for (std::size_t k : report.k_values) out << "\tMAP@" << k << "\tdelta@" << k;
  out << '\n';
  for (const EvalRow& row : report.rows) {
    out << row.label;
    for (std::size_t j = 0; j < row.map_values.size(); ++j) {
      out << '\t' << format_fixed(row.map_values[j], 6);
      if (row.base_row) {
        out << '\t'
            << format_fixed(row.map_values[j] - report.rows[*row.base_row].map_values[j], 6);
      } else {
        out << "\t-";
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string format_report_text(const EvalReport& report) {
  std::size_t label_width = std::string_view("config").size();
  for (const EvalRow& row : report.rows) label_width = std::max(label_width, row.label.size());

  constexpr std::size_t kCellWidth = 14;
  std::ostringstream out;
  out << "config" << std::string(label_width - 6, ' ');
  for (std::size_t k : report.k_values) {
    const std::string header = "MAP@" + std::to_string(k);
    out << std::string(kCellWidth - std::min(kCellWidth, header.size()), ' ') << header;
  }
  out << '\n';

  for (const EvalRow& row : report.rows) {
    out << row.label << std::string(label_width - row.label.size(), ' ');
    for (std::size_t j = 0; j < row.map_values.size(); ++j) {
      std::optional<double> delta;
      if (row.base_row) {
        delta = row.map_values[j] - report.rows[*row.base_row].map_values[j];
      }
      const std::string cell = percent_cell(row.map_values[j], delta);
      out << std::string(kCellWidth - std::min(kCellWidth, cell.size()), ' ') << cell;
    }
    out << '\n';
  }
  out << '\n'
      << "queries: " << report.query_count << ", relevant links: " << report.relevant_link_count
      << " (values in percent, deltas vs. the embedding-only row)\n";
  return out.str();
}

PairStatsReport pair_similarity_stats(const KnowledgeGraph& kg, std::uint64_t seed, int workers) {
  const std::vector<CitationEdge>& edges = kg.citations();
  if (edges.empty()) {
    throw std::invalid_argument("pair statistics need at least one citation edge");
  }
  const std::size_t paper_count = kg.papers().size();

  std::vector<SparseVector> vectors;
  vectors.reserve(paper_count);
  for (std::size_t paper = 0; paper < paper_count; ++paper) {
    vectors.push_back(concept_vector(static_cast<PaperOrdinal>(paper), kg));
  }
  const auto pair_cosine = [&vectors](PaperOrdinal a, PaperOrdinal b) {
    return hybrid_cosine(hybrid_vector(&vectors[a], nullptr),
                         hybrid_vector(&vectors[b], nullptr));
  };

  std::vector<double> citing_sims(edges.size());
  parallel_for(edges.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      citing_sims[i] = pair_cosine(edges[i].citing, edges[i].cited);
    }
  });

  // Random partners: keep each edge's citing endpoint, redraw the cited
  // side. Sequential draws keep the stream independent of worker count.
  std::mt19937_64 engine(splitmix64(seed));
  const auto is_citation = [&edges](PaperOrdinal citing, PaperOrdinal cited) {
    return std::binary_search(edges.begin(), edges.end(), CitationEdge{citing, cited});
  };
  std::vector<PaperOrdinal> partners(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const PaperOrdinal citing = edges[i].citing;
    PaperOrdinal partner = citing;
    bool accepted = false;
    // A graph where some paper cites everything else would reject forever;
    // such inputs are degenerate, so after a bounded number of draws a
    // citation pair is tolerated. Self-pairs never are.
    for (int attempt = 0; attempt < 10000 && !accepted; ++attempt) {
      partner = static_cast<PaperOrdinal>(bounded_uniform(engine, paper_count));
      accepted = partner != citing && !is_citation(citing, partner);
    }
    if (!accepted) {
      partner = static_cast<PaperOrdinal>(bounded_uniform(engine, paper_count));
      while (partner == citing) {
        partner = static_cast<PaperOrdinal>((partner + 1) % paper_count);
      }
    }
    partners[i] = partner;
  }

  std::vector<double> random_sims(edges.size());
  parallel_for(edges.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      random_sims[i] = pair_cosine(edges[i].citing, partners[i]);
    }
  });

  PairStatsReport report;
  report.citing = PairStats{"citing", summarize(std::move(citing_sims))};
  report.random = PairStats{"random", summarize(std::move(random_sims))};
  return report;
}

std::string format_pair_stats_tsv(
    std::span<const std::pair<std::string, PairStatsReport>> reports) {
  std::ostringstream out;
  out << "variant\tpopulation\tcount\tmean\tmin\tq1\tmedian\tq3\tmax\n";
  const auto row = [&out](const std::string& variant, const PairStats& stats) {
    const DistributionSummary& s = stats.summary;
    out << variant << '\t' << stats.population << '\t' << s.count << '\t'
        << format_fixed(s.mean, 6) << '\t' << format_fixed(s.min, 6) << '\t'
        << format_fixed(s.q1, 6) << '\t' << format_fixed(s.median, 6) << '\t'
        << format_fixed(s.q3, 6) << '\t' << format_fixed(s.max, 6) << '\n';
  };
  for (const auto& [variant, report] : reports) {
    row(variant, report.citing);
    row(variant, report.random);
  }
  return out.str();
}

}  // namespace concite
