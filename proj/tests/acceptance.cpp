// Copyright 2026 The Concite Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance gate. Each criterion prints exactly one line:
//   [PASS] criterion N: <name> -- <evidence>
//   [FAIL] criterion N: <name> -- <what broke>
//   [SKIP] criterion N: <name> -- <missing input>
// Criteria 1-8 are self-contained. Criteria 9-12 reproduce published
// corpus numbers and need CONCITE_DATA_DIR to point at the released data
// (papers.jsonl, mentions.tsv, citations.tsv, and specter.txt for the
// benchmark rows); without it they skip with exit code 77.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include <concite/eval.hpp>
#include <concite/io.hpp>
#include <concite/kg.hpp>
#include <concite/retrieval.hpp>
#include <concite/util.hpp>
#include <concite/vectorizer.hpp>

#include "support/oracles.hpp"
#include "support/synthetic.hpp"

namespace {

using namespace concite;
namespace fs = std::filesystem;

struct Outcome {
  enum Kind { Pass, Fail, Skip } kind = Fail;
  std::string detail;
};

Outcome pass(std::string detail) { return Outcome{Outcome::Pass, std::move(detail)}; }
Outcome fail(std::string detail) { return Outcome{Outcome::Fail, std::move(detail)}; }
Outcome skip(std::string detail) { return Outcome{Outcome::Skip, std::move(detail)}; }

// ---------------------------------------------------------------- 1
// AP@k and MAP@k agree with an independent enumeration oracle on 1,000
// randomized instances of up to 20 docs and up to 8 relevant, to 1e-12.
Outcome criterion_metric_oracle() {
  std::mt19937_64 engine(20260816);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t docs = 2 + bounded_uniform(engine, 19);
    const std::uint64_t seed = engine();
    const testing::RandomVectors corpus =
        testing::random_vector_corpus(docs, 8 + bounded_uniform(engine, 16), 0, seed);
    const CorpusIndex index = testing::index_of(corpus);

    // A couple of queries per instance, each with 1..8 relevant targets.
    QuerySet queries;
    const std::size_t query_count = 1 + bounded_uniform(engine, std::min<std::size_t>(docs, 3));
    for (std::size_t q = 0; q < query_count; ++q) {
      QueryRelevance item;
      item.query_id = corpus.doc_ids[q];
      std::unordered_set<std::string> relevant;
      const std::size_t want =
          1 + bounded_uniform(engine, std::min<std::size_t>(8, docs - 1));
      while (relevant.size() < want) {
        const std::string candidate =
            corpus.doc_ids[bounded_uniform(engine, docs)];
        if (candidate != item.query_id) relevant.insert(candidate);
      }
      item.relevant.assign(relevant.begin(), relevant.end());
      std::sort(item.relevant.begin(), item.relevant.end());
      queries.queries.push_back(std::move(item));
    }

    const std::size_t k = 1 + bounded_uniform(engine, docs + 4);
    const double map = map_at_k(queries, index, k);

    // Oracle MAP: independent ordering and independent AP enumeration.
    double oracle_sum = 0.0;
    for (const QueryRelevance& query : queries.queries) {
      const std::size_t ordinal = *index.find_doc(query.query_id);
      const auto ranked =
          testing::oracle_rank(index, query.query_id, index.vector_of(ordinal), k, true);
      std::vector<std::string> ids;
      for (const auto& item : ranked) ids.push_back(item.doc_id);
      const std::unordered_set<std::string> relevant(query.relevant.begin(),
                                                     query.relevant.end());
      oracle_sum += testing::oracle_average_precision_at_k(ids, relevant, relevant.size(), k);

      // Direct AP equivalence on the same ranking.
      RankedList list;
      list.query_id = query.query_id;
      list.k = k;
      for (const auto& item : ranked) list.items.push_back({item.doc_id, item.score});
      const double ap = average_precision_at_k(list, relevant, k);
      const double oracle_ap =
          testing::oracle_average_precision_at_k(ids, relevant, relevant.size(), k);
      worst = std::max(worst, std::abs(ap - oracle_ap));
      if (std::abs(ap - oracle_ap) > 1e-12) {
        return fail("AP mismatch " + std::to_string(std::abs(ap - oracle_ap)) + " on trial " +
                    std::to_string(trial));
      }
    }
    const double oracle_map = oracle_sum / static_cast<double>(queries.queries.size());
    worst = std::max(worst, std::abs(map - oracle_map));
    if (std::abs(map - oracle_map) > 1e-12) {
      return fail("MAP mismatch " + std::to_string(std::abs(map - oracle_map)) + " on trial " +
                  std::to_string(trial));
    }
  }
  std::ostringstream detail;
  detail << "1000 instances, worst deviation " << worst;
  return pass(detail.str());
}

// ---------------------------------------------------------------- 2
// rank_all equals rank_all_bruteforce exactly, tie order included, on 100
// random corpora of up to 2,000 docs across sparse/dense/hybrid shapes.
Outcome criterion_retrieval_exactness() {
  std::mt19937_64 engine(77001);
  std::size_t compared = 0;
  for (int corpus_index = 0; corpus_index < 100; ++corpus_index) {
    const std::size_t docs = 2 + bounded_uniform(engine, 1999);
    std::uint32_t sparse_dims = 0;
    std::size_t dense_dims = 0;
    switch (corpus_index % 3) {
      case 0: sparse_dims = 1 + bounded_uniform(engine, 4000); break;
      case 1: dense_dims = 1 + bounded_uniform(engine, 32); break;
      default:
        sparse_dims = 1 + bounded_uniform(engine, 4000);
        dense_dims = 1 + bounded_uniform(engine, 32);
        break;
    }
    const testing::RandomVectors corpus =
        testing::random_vector_corpus(docs, sparse_dims, dense_dims, engine());
    const CorpusIndex index = testing::index_of(corpus);

    const int workers = static_cast<int>(corpus_index % 4);  // 0 = hardware concurrency
    for (const std::size_t k : {std::size_t{1}, std::size_t{25}, docs + 7}) {
      const std::size_t query = bounded_uniform(engine, docs);
      const HybridVector qv = index.vector_of(query);
      const std::string& query_id = corpus.doc_ids[query];
      const RankedList fast =
          index.rank_all(query_id, qv, k, query, RankOptions{workers});
      const RankedList brute = index.rank_all_bruteforce(query_id, qv, k, query);
      if (fast.items.size() != brute.items.size()) {
        return fail("length mismatch on corpus " + std::to_string(corpus_index));
      }
      for (std::size_t i = 0; i < fast.items.size(); ++i) {
        if (fast.items[i].doc_id != brute.items[i].doc_id ||
            fast.items[i].score != brute.items[i].score) {
          return fail("divergence at rank " + std::to_string(i + 1) + " of corpus " +
                      std::to_string(corpus_index) + " (doc " + fast.items[i].doc_id + " vs " +
                      brute.items[i].doc_id + ")");
        }
      }
      ++compared;
    }
  }
  return pass(std::to_string(compared) + " rankings bit-identical across both routes");
}

// ---------------------------------------------------------------- 3
// Hybrid cosine equals cosine over the materialized concatenation within
// 1e-9 on 10,000 random pairs.
Outcome criterion_hybrid_cosine() {
  std::mt19937_64 engine(33003);
  std::size_t pairs = 0;
  double worst = 0.0;
  while (pairs < 10000) {
    const std::uint32_t sparse_dims = bounded_uniform(engine, 2) == 0
                                          ? 0
                                          : 1 + bounded_uniform(engine, 64);
    const std::size_t dense_dims =
        sparse_dims == 0 ? 1 + bounded_uniform(engine, 16) : bounded_uniform(engine, 17);
    const testing::RandomVectors corpus =
        testing::random_vector_corpus(20, sparse_dims, dense_dims, engine());
    for (std::size_t i = 0; i < corpus.doc_ids.size() && pairs < 10000; ++i) {
      for (std::size_t j = 0; j < corpus.doc_ids.size() && pairs < 10000; ++j) {
        const HybridVector a = hybrid_vector(
            corpus.sparse.empty() ? nullptr : &corpus.sparse[i],
            corpus.dense.empty() ? nullptr : &corpus.dense[i]);
        const HybridVector b = hybrid_vector(
            corpus.sparse.empty() ? nullptr : &corpus.sparse[j],
            corpus.dense.empty() ? nullptr : &corpus.dense[j]);
        const double fast = hybrid_cosine(a, b);
        const double reference = testing::oracle_materialized_cosine(a, b);
        worst = std::max(worst, std::abs(fast - reference));
        if (std::abs(fast - reference) > 1e-9) {
          return fail("deviation " + std::to_string(std::abs(fast - reference)));
        }
        ++pairs;
      }
    }
  }
  std::ostringstream detail;
  detail << "10000 pairs, worst deviation " << worst;
  return pass(detail.str());
}

// ---------------------------------------------------------------- 4
// The two hand-expanded AP cases hold exactly.
Outcome criterion_ap_hand_checks() {
  const std::vector<std::uint8_t> two_hits = {1, 0, 1, 0, 0};
  const double ap1 = average_precision_at_k(two_hits, 2, 5);
  const double expected1 = (1.0 + 2.0 / 3.0) / 2.0;
  if (std::abs(ap1 - expected1) > 1e-15 || format_fixed(ap1, 6) != "0.833333") {
    return fail("relevant at ranks 1 and 3 gave " + format_fixed(ap1, 6));
  }
  std::vector<std::uint8_t> one_hit(50, 0);
  one_hit[0] = 1;
  const double ap2 = average_precision_at_k(one_hit, 5, 50);
  if (std::abs(ap2 - 0.2) > 1e-15 || format_fixed(ap2, 6) != "0.200000") {
    return fail("single hit over 5 relevant gave " + format_fixed(ap2, 6));
  }
  return pass("0.833333 and 0.200000 reproduced exactly");
}

// ---------------------------------------------------------------- 5
// On a 500-paper corpus with 2,000 surfaces and 1,500 planted citations,
// citing pairs beat random pairs by >= 0.2 mean concept cosine.
Outcome criterion_pair_gap() {
  testing::ClusteredConfig config;
  config.seed = 5;
  const testing::SyntheticCorpus corpus = testing::clustered_corpus(config);
  const KnowledgeGraph kg = KnowledgeGraph::build(ScopingMode::CrossDomain, corpus.papers,
                                                  corpus.mentions, corpus.citations);
  if (kg.papers().size() != 500 || kg.citations().size() != 1500) {
    return fail("generator produced " + std::to_string(kg.papers().size()) + " papers, " +
                std::to_string(kg.citations().size()) + " citations");
  }

  // The planting contract: each citation edge's endpoints overlap in at
  // least half of their concepts.
  for (const CitationEdge& edge : kg.citations()) {
    const auto& a = kg.links_of(edge.citing);
    const auto& b = kg.links_of(edge.cited);
    std::size_t shared = 0;
    for (ConceptId id : a) {
      if (std::binary_search(b.begin(), b.end(), id)) ++shared;
    }
    const std::size_t smaller = std::min(a.size(), b.size());
    if (shared * 2 < smaller) {
      return fail("an edge shares only " + std::to_string(shared) + " of " +
                  std::to_string(smaller) + " concepts");
    }
  }

  const PairStatsReport stats = pair_similarity_stats(kg, config.seed, 0);
  const double gap = stats.citing.summary.mean - stats.random.summary.mean;
  std::ostringstream detail;
  detail << "citing mean " << format_fixed(stats.citing.summary.mean, 4) << ", random mean "
         << format_fixed(stats.random.summary.mean, 4) << ", gap " << format_fixed(gap, 4);
  if (gap < 0.2) return fail(detail.str());
  return pass(detail.str());
}

// ---------------------------------------------------------------- 6
// With a weaker planted dense signal: hybrid beats dense-only, and
// concept-only beats random by at least 10x MAP@10, on 5 seeds.
Outcome criterion_directional_benefit() {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    testing::ClusteredConfig config;
    config.seed = seed;
    const testing::SyntheticCorpus corpus = testing::clustered_corpus(config);
    const KnowledgeGraph kg = KnowledgeGraph::build(ScopingMode::CrossDomain, corpus.papers,
                                                    corpus.mentions, corpus.citations);
    const QuerySet queries = select_queries(kg, 4);
    if (queries.queries.size() < 20) {
      return fail("seed " + std::to_string(seed) + " yields only " +
                  std::to_string(queries.queries.size()) + " queries");
    }

    const std::size_t dim = 16;
    const EmbeddingTable planted =
        testing::clustered_embeddings(corpus, config.papers_per_cluster, dim, 2.0, seed);
    const EmbeddingTable random_table = random_embeddings(corpus.paper_ids, dim, seed);

    IndexBuildConfig dense_only;
    dense_only.use_concepts = false;
    dense_only.use_dense = true;
    IndexBuildConfig concept_only;  // defaults: concepts on, dense off
    IndexBuildConfig hybrid;
    hybrid.use_dense = true;

    const RankOptions options{0};
    const double map_random =
        map_at_k(queries, build_index(kg, &random_table, dense_only), 10, options);
    const double map_dense =
        map_at_k(queries, build_index(kg, &planted, dense_only), 10, options);
    const double map_concept =
        map_at_k(queries, build_index(kg, nullptr, concept_only), 10, options);
    const double map_hybrid =
        map_at_k(queries, build_index(kg, &planted, hybrid), 10, options);

    if (!(map_hybrid > map_dense)) {
      return fail("seed " + std::to_string(seed) + ": hybrid " + format_fixed(map_hybrid, 4) +
                  " does not beat dense " + format_fixed(map_dense, 4));
    }
    if (!(map_concept >= 10.0 * map_random)) {
      return fail("seed " + std::to_string(seed) + ": concept " + format_fixed(map_concept, 4) +
                  " is under 10x random " + format_fixed(map_random, 4));
    }
  }
  return pass("hybrid > dense and concept >= 10x random on all 5 seeds");
}

// ---------------------------------------------------------------- 7
// 50,000 docs with 200-dim seeded random embeddings: MAP@50 below 0.1%.
Outcome criterion_random_baseline() {
  const testing::SyntheticCorpus corpus = testing::sparse_citation_corpus(50000, 120, 5, 7);
  const KnowledgeGraph kg = KnowledgeGraph::build(ScopingMode::CrossDomain, corpus.papers,
                                                  corpus.mentions, corpus.citations);
  const QuerySet queries = select_queries(kg, 4);
  if (queries.queries.size() != 120) {
    return fail("expected 120 queries, got " + std::to_string(queries.queries.size()));
  }
  const EmbeddingTable table = random_embeddings(corpus.paper_ids, 200, 7);
  IndexBuildConfig config;
  config.use_concepts = false;
  config.use_dense = true;
  const CorpusIndex index = build_index(kg, &table, config);
  const double map = map_at_k(queries, index, 50, RankOptions{0});
  std::ostringstream detail;
  detail << "MAP@50 = " << format_fixed(map * 100.0, 4) << "% over 120 queries of 50000 docs";
  if (map >= 0.001) return fail(detail.str());
  return pass(detail.str());
}

// ---------------------------------------------------------------- 8
// In-domain counts dominate cross-domain counts and stats rows always sum
// to the totals, across seeded corpora with shared surfaces.
Outcome criterion_stats_invariants() {
  std::size_t mix_seen = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const testing::SyntheticCorpus corpus = testing::shared_surface_corpus(60, 15, 6, seed);
    std::vector<std::pair<std::string, std::string>> citations;
    for (std::size_t i = 0; i + 1 < corpus.paper_ids.size(); i += 3) {
      citations.emplace_back(corpus.paper_ids[i], corpus.paper_ids[i + 1]);
    }
    const KnowledgeGraph cross = KnowledgeGraph::build(ScopingMode::CrossDomain, corpus.papers,
                                                       corpus.mentions, citations);
    const KnowledgeGraph in = KnowledgeGraph::build(ScopingMode::InDomain, corpus.papers,
                                                    corpus.mentions, citations);
    if (in.concepts().size() < cross.concepts().size()) {
      return fail("seed " + std::to_string(seed) + ": in-domain " +
                  std::to_string(in.concepts().size()) + " < cross-domain " +
                  std::to_string(cross.concepts().size()));
    }
    for (const KnowledgeGraph* kg : {&cross, &in}) {
      const KgStats stats = kg_stats(*kg);
      std::size_t papers = 0, cites = 0, concepts = 0;
      for (std::size_t d = 0; d < kNumDomains; ++d) {
        papers += stats.papers[d];
        cites += stats.citations[d];
        concepts += stats.concepts[d];
      }
      concepts += stats.mix_concepts;
      if (papers != kg->papers().size() || cites != kg->citations().size() ||
          concepts != kg->concepts().size()) {
        return fail("row sums diverge from totals at seed " + std::to_string(seed));
      }
    }
    mix_seen += kg_stats(cross).mix_concepts;
  }
  if (mix_seen == 0) return fail("no corpus exercised the MIX bucket");
  return pass("40 corpora: in-domain >= cross-domain, all row sums exact, " +
              std::to_string(mix_seen) + " MIX concepts seen");
}

// ------------------------------------------------------------ 9-12
// Reproduction criteria against the released corpus.

std::optional<fs::path> data_dir() {
  const char* raw = std::getenv("CONCITE_DATA_DIR");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  return fs::path(raw);
}

struct ReleasedData {
  std::vector<PaperRecord> papers;
  std::vector<MentionRecord> mentions;
  std::vector<std::pair<std::string, std::string>> citations;
};

// Loads the raw release files, or explains what is missing.
std::variant<ReleasedData, Outcome> load_released(const std::vector<std::string>& extra_files) {
  const std::optional<fs::path> dir = data_dir();
  if (!dir) return skip("CONCITE_DATA_DIR is not set; released corpus required");
  std::vector<std::string> required = {"papers.jsonl", "mentions.tsv", "citations.tsv"};
  required.insert(required.end(), extra_files.begin(), extra_files.end());
  for (const std::string& name : required) {
    if (!fs::exists(*dir / name)) {
      return skip("missing " + (*dir / name).string());
    }
  }
  ReleasedData data;
  data.papers = read_papers_file(*dir / "papers.jsonl");
  data.mentions = read_mentions_file(*dir / "mentions.tsv");
  data.citations = read_citations_file(*dir / "citations.tsv");
  return data;
}

Outcome criterion_corpus_totals() {
  auto loaded = load_released({});
  if (std::holds_alternative<Outcome>(loaded)) return std::get<Outcome>(loaded);
  ReleasedData& data = std::get<ReleasedData>(loaded);

  const KnowledgeGraph cross = KnowledgeGraph::build(ScopingMode::CrossDomain, data.papers,
                                                     data.mentions, data.citations);
  const KnowledgeGraph in = KnowledgeGraph::build(ScopingMode::InDomain, data.papers,
                                                  data.mentions, data.citations);
  const KgStats cross_stats = kg_stats(cross);
  const KgStats in_stats = kg_stats(in);

  std::ostringstream detail;
  detail << cross.papers().size() << " papers, " << cross.citations().size() << " citations, "
         << cross.concepts().size() << " cross-domain concepts (MIX "
         << cross_stats.mix_concepts << "), " << in.concepts().size()
         << " in-domain concepts";
  const bool ok = cross.papers().size() == 55485 && cross.citations().size() == 15395 &&
                  cross.concepts().size() == 994572 && cross_stats.mix_concepts == 70044 &&
                  in.concepts().size() == 1178480 &&
                  in_stats.papers[static_cast<std::size_t>(Domain::Med)] == 10818 &&
                  in_stats.citations[static_cast<std::size_t>(Domain::Med)] == 2116;
  if (!ok) {
    return fail(detail.str() +
                " (expected 55485 / 15395 / 994572 / MIX 70044 / 1178480, Med 10818 & 2116)");
  }
  return pass(detail.str());
}

Outcome criterion_query_selection() {
  auto loaded = load_released({});
  if (std::holds_alternative<Outcome>(loaded)) return std::get<Outcome>(loaded);
  ReleasedData& data = std::get<ReleasedData>(loaded);
  const KnowledgeGraph kg = KnowledgeGraph::build(ScopingMode::CrossDomain, data.papers,
                                                  data.mentions, data.citations);
  const QuerySet queries = select_queries(kg, 4);
  std::ostringstream detail;
  detail << queries.queries.size() << " queries, " << queries.total_relevant_links()
         << " relevant links at min_citations=4";
  if (queries.queries.size() != 720 || queries.total_relevant_links() != 4069) {
    return fail(detail.str() + " (expected 720 and 4069)");
  }
  return pass(detail.str());
}

const EvalRow* find_row(const EvalReport& report, const std::string& label) {
  for (const EvalRow& row : report.rows) {
    if (row.label == label) return &row;
  }
  return nullptr;
}

Outcome criterion_benchmark_rows() {
  auto loaded = load_released({"specter.txt"});
  if (std::holds_alternative<Outcome>(loaded)) return std::get<Outcome>(loaded);
  ReleasedData& data = std::get<ReleasedData>(loaded);
  const KnowledgeGraph cross = KnowledgeGraph::build(ScopingMode::CrossDomain, data.papers,
                                                     data.mentions, data.citations);
  const KnowledgeGraph in = KnowledgeGraph::build(ScopingMode::InDomain, data.papers,
                                                  data.mentions, data.citations);
  const EmbeddingTable specter = load_embeddings_file(*data_dir() / "specter.txt");

  BenchmarkInputs inputs;
  inputs.in_domain = &in;
  inputs.cross_domain = &cross;
  inputs.embeddings.emplace_back("SPECTER", &specter);
  BenchmarkOptions options;
  options.include_random = false;
  const EvalReport report = run_benchmark(inputs, options);

  const EvalRow* cross_row = find_row(report, "Concept vector (cross-domain KG)");
  const EvalRow* in_row = find_row(report, "Concept vector (in-domain KG)");
  const EvalRow* specter_row = find_row(report, "SPECTER");
  const EvalRow* combined_row = find_row(report, "SPECTER + concept vector (in-domain KG)");
  if (!cross_row || !in_row || !specter_row || !combined_row) {
    return fail("benchmark rows missing from the report");
  }
  // k_values = {10, 20, 50}; MAP@50 sits at index 2.
  const double cross50 = cross_row->map_values[2] * 100.0;
  const double in50 = in_row->map_values[2] * 100.0;
  const double specter50 = specter_row->map_values[2] * 100.0;
  const double combined50 = combined_row->map_values[2] * 100.0;

  std::ostringstream detail;
  detail << "MAP@50: concept cross " << format_fixed(cross50, 2) << "%, concept in "
         << format_fixed(in50, 2) << "%, SPECTER " << format_fixed(specter50, 2)
         << "%, SPECTER+in " << format_fixed(combined50, 2) << "%";

  if (std::abs(cross50 - 8.5) > 0.5) return fail(detail.str() + "; cross off 8.5 +/- 0.5");
  if (std::abs(in50 - 9.3) > 0.5) return fail(detail.str() + "; in off 9.3 +/- 0.5");
  if (std::abs(specter50 - 19.8) > 0.5) return fail(detail.str() + "; SPECTER off 19.8 +/- 0.5");
  if (std::abs(combined50 - 20.6) > 0.5) {
    return fail(detail.str() + "; combined off 20.6 +/- 0.5");
  }
  for (std::size_t j = 0; j < report.k_values.size(); ++j) {
    if (combined_row->map_values[j] <= specter_row->map_values[j]) {
      return fail(detail.str() + "; no positive delta at k=" +
                  std::to_string(report.k_values[j]));
    }
  }
  return pass(detail.str());
}

Outcome criterion_ablation_ordering() {
  auto loaded = load_released({});
  if (std::holds_alternative<Outcome>(loaded)) return std::get<Outcome>(loaded);
  ReleasedData& data = std::get<ReleasedData>(loaded);
  const KnowledgeGraph cross = KnowledgeGraph::build(ScopingMode::CrossDomain, data.papers,
                                                     data.mentions, data.citations);
  const KnowledgeGraph in = KnowledgeGraph::build(ScopingMode::InDomain, data.papers,
                                                  data.mentions, data.citations);
  BenchmarkInputs inputs;
  inputs.in_domain = &in;
  inputs.cross_domain = &cross;
  BenchmarkOptions options;
  options.include_random = false;
  const EvalReport report = run_benchmark(inputs, options);

  const EvalRow* material = find_row(report, "- Material");
  const EvalRow* process = find_row(report, "- Process");
  const EvalRow* data_row = find_row(report, "- Data");
  const EvalRow* method = find_row(report, "- Method");
  if (!material || !process || !data_row || !method) {
    return fail("ablation rows missing from the report");
  }
  const double m = material->map_values[2], p = process->map_values[2],
               d = data_row->map_values[2], me = method->map_values[2];
  std::ostringstream detail;
  detail << "MAP@50: Material " << format_fixed(m * 100, 2) << "% > Process "
         << format_fixed(p * 100, 2) << "% > Data " << format_fixed(d * 100, 2)
         << "% > Method " << format_fixed(me * 100, 2) << "%";
  if (!(m > p && p > d && d > me)) return fail(detail.str() + " (ordering violated)");
  return pass(detail.str());
}

struct Criterion {
  int number;
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "metric oracle equivalence", criterion_metric_oracle},
    {2, "retrieval exactness", criterion_retrieval_exactness},
    {3, "hybrid cosine equivalence", criterion_hybrid_cosine},
    {4, "average precision hand checks", criterion_ap_hand_checks},
    {5, "citing pair similarity gap", criterion_pair_gap},
    {6, "directional benefit of concept vectors", criterion_directional_benefit},
    {7, "random baseline at scale", criterion_random_baseline},
    {8, "statistics invariants", criterion_stats_invariants},
    {9, "corpus table totals (released data)", criterion_corpus_totals},
    {10, "query selection counts (released data)", criterion_query_selection},
    {11, "benchmark table rows (released data)", criterion_benchmark_rows},
    {12, "ablation ordering (released data)", criterion_ablation_ordering},
};

int run_one(const Criterion& criterion) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = criterion.run();
  } catch (const std::exception& e) {
    outcome = fail(std::string("unexpected exception: ") + e.what());
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const char* tag = outcome.kind == Outcome::Pass   ? "[PASS]"
                    : outcome.kind == Outcome::Skip ? "[SKIP]"
                                                    : "[FAIL]";
  std::printf("%s criterion %2d: %s -- %s (%.1f s)\n", tag, criterion.number, criterion.name,
              outcome.detail.c_str(), seconds);
  std::fflush(stdout);
  if (outcome.kind == Outcome::Pass) return 0;
  if (outcome.kind == Outcome::Skip) return 77;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 2) {
    std::fprintf(stderr, "usage: %s [criterion 1-12]\n", argv[0]);
    return 2;
  }
  if (argc == 2) {
    const int wanted = std::atoi(argv[1]);
    for (const Criterion& criterion : kCriteria) {
      if (criterion.number == wanted) return run_one(criterion);
    }
    std::fprintf(stderr, "no criterion %s\n", argv[1]);
    return 2;
  }
  int failures = 0;
  for (const Criterion& criterion : kCriteria) {
    if (run_one(criterion) == 1) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
