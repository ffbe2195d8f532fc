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
#include <ctime>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "concite/config.hpp"
#include "concite/eval.hpp"
#include "concite/io.hpp"
#include "concite/kg.hpp"
#include "concite/retrieval.hpp"
#include "concite/types.hpp"
#include "concite/util.hpp"
#include "concite/vectorizer.hpp"

namespace {

using namespace concite;

// Flag values that override keys of the loaded config. Strings stay
// unparsed here so every format error funnels through one code path.
struct Overrides {
  std::string config_path;
  std::string kg;
  std::string types;
  std::string k;
  std::string min_citations;
  std::string seed;
  std::string out;
  std::string embedding;
  bool embedding_set = false;
  bool no_concepts = false;
  std::string workers;
};

void add_common_flags(CLI::App* cmd, Overrides& overrides) {
  cmd->add_option("--config", overrides.config_path, "Run configuration file")
      ->required();
  cmd->add_option("--kg", overrides.kg,
                  "Scoping variant: in-domain, cross-domain or both");
  cmd->add_option("--types", overrides.types,
                  "Concept types to keep, e.g. m,p or material,process");
  cmd->add_option("--k", overrides.k, "Comma-separated ranking depths, ascending");
  cmd->add_option("--min-citations", overrides.min_citations,
                  "Outgoing in-corpus citations a query paper needs");
  cmd->add_option("--seed", overrides.seed, "Seed for all randomized steps");
  cmd->add_option("--out", overrides.out, "Output directory");
  cmd->add_option("--embedding", overrides.embedding,
                  "Label of the embedding table to rank with");
  cmd->add_flag("--no-concepts", overrides.no_concepts,
                "Rank with the embedding part only");
  cmd->add_option("--workers", overrides.workers, "Worker threads, 0 = all cores");
}

RunConfig effective_config(const Overrides& overrides) {
  RunConfig config = load_run_config(overrides.config_path);
  if (!overrides.kg.empty()) {
    const std::optional<KgSelection> selection = kg_selection_from_string(overrides.kg);
    if (!selection) throw ConfigError("unknown --kg value '" + overrides.kg + "'");
    config.kg = *selection;
  }
  if (!overrides.types.empty()) config.types = TypeFilter::parse(overrides.types);
  if (!overrides.k.empty()) {
    config.k_values.clear();
    for (std::string_view token : split_fields(overrides.k, ',')) {
      std::uint64_t k = 0;
      if (!parse_uint64(token, k) || k == 0) {
        throw ConfigError("invalid --k value '" + std::string(token) + "'");
      }
      config.k_values.push_back(static_cast<std::size_t>(k));
    }
  }
  if (!overrides.min_citations.empty()) {
    std::uint64_t value = 0;
    if (!parse_uint64(overrides.min_citations, value)) {
      throw ConfigError("invalid --min-citations value");
    }
    config.min_citations = static_cast<std::size_t>(value);
  }
  if (!overrides.seed.empty()) {
    if (!parse_uint64(overrides.seed, config.seed)) throw ConfigError("invalid --seed value");
  }
  if (!overrides.out.empty()) config.out = overrides.out;
  if (overrides.embedding_set) config.embedding = overrides.embedding;
  if (overrides.no_concepts) config.use_concepts = false;
  if (!overrides.workers.empty()) {
    long long value = 0;
    if (!parse_int(overrides.workers, value) || value < 0 || value > 4096) {
      throw ConfigError("--workers must be an integer in [0, 4096]");
    }
    config.workers = static_cast<int>(value);
  }
  validate_run_config(config);
  return config;
}

std::vector<ScopingMode> selected_modes(KgSelection selection) {
  switch (selection) {
    case KgSelection::InDomain: return {ScopingMode::InDomain};
    case KgSelection::CrossDomain: return {ScopingMode::CrossDomain};
    case KgSelection::Both: return {ScopingMode::CrossDomain, ScopingMode::InDomain};
  }
  return {};
}

std::filesystem::path require_path(const std::filesystem::path& path, const char* what) {
  if (path.empty()) {
    throw ConfigError(std::string("config does not set the ") + what + " file");
  }
  return path;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm parts{};
  gmtime_r(&now, &parts);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &parts);
  return buffer;
}

// Reproducibility record accompanying generated reports. Timestamps live
// only here; the data files themselves must be byte-identical across
// reruns.
void write_run_manifest(const std::filesystem::path& path, const std::string& command,
                        const RunConfig& config,
                        const std::vector<std::filesystem::path>& inputs) {
  nlohmann::json manifest;
  manifest["command"] = command;
  manifest["config_digest"] = to_hex(config_digest(config));
  manifest["seed"] = config.seed;
  manifest["generated_at"] = utc_timestamp();
  nlohmann::json checksums;
  for (const std::filesystem::path& input : inputs) {
    checksums[input.string()] = to_hex(file_checksum(input));
  }
  manifest["input_checksums"] = std::move(checksums);
  write_text_file(path, manifest.dump(2) + "\n");
}

KnowledgeGraph load_variant(const RunConfig& config, ScopingMode mode) {
  const std::filesystem::path dir = snapshot_dir(config.out, mode);
  if (!std::filesystem::exists(dir / "manifest.json")) {
    throw InputError("no " + std::string(to_string(mode)) + " snapshot under '" +
                     config.out.string() + "'; run ingest first");
  }
  return load_snapshot(dir);
}

int cmd_ingest(const RunConfig& config) {
  const std::vector<PaperRecord> records =
      read_papers_file(require_path(config.papers, "papers"));
  const std::vector<MentionRecord> mentions =
      read_mentions_file(require_path(config.mentions, "mentions"));
  const std::vector<std::pair<std::string, std::string>> citations =
      read_citations_file(require_path(config.citations, "citations"));

  for (ScopingMode mode : selected_modes(config.kg)) {
    const KnowledgeGraph kg = KnowledgeGraph::build(mode, records, mentions, citations);
    const std::filesystem::path dir = snapshot_dir(config.out, mode);
    save_snapshot(kg, dir);
    std::cout << "knowledge graph (" << to_string(mode) << ") -> " << dir.string() << '\n'
              << stats_table_string(kg_stats(kg)) << "dropped citations: "
              << kg.dropped_citations() << ", skipped mentions: " << kg.skipped_mentions()
              << "\n\n";
  }
  write_run_manifest(config.out / "ingest.manifest.json", "ingest", config,
                     {config.papers, config.mentions, config.citations});
  return 0;
}

int cmd_query(const RunConfig& config, const std::string& query_id) {
  const std::vector<ScopingMode> modes = selected_modes(config.kg);
  if (modes.size() != 1) {
    throw ConfigError("query needs one scoping variant; pass --kg in-domain or cross-domain");
  }
  if (config.k_values.size() != 1) {
    throw ConfigError("query needs exactly one ranking depth; pass --k <depth>");
  }
  if (!config.use_concepts && config.embedding.empty()) {
    throw ConfigError("query needs the concept part, an embedding, or both");
  }

  const KnowledgeGraph kg = load_variant(config, modes.front());

  EmbeddingTable table;
  IndexBuildConfig build_config;
  build_config.use_concepts = config.use_concepts;
  build_config.type_filter = config.types;
  if (!config.embedding.empty()) {
    table = load_embeddings_file(*config.embedding_path(config.embedding));
    build_config.use_dense = true;
  }
  const CorpusIndex index = build_index(kg, &table, build_config);

  const std::optional<std::size_t> ordinal = index.find_doc(query_id);
  if (!ordinal) throw QueryError("unknown paper id '" + query_id + "'");
  const RankedList ranked =
      index.rank_all(query_id, index.vector_of(*ordinal), config.k_values.front(), ordinal,
                     RankOptions{config.workers});
  write_ranked_list(std::cout, ranked);
  return 0;
}

int cmd_evaluate(const RunConfig& config) {
  const KnowledgeGraph in_domain = load_variant(config, ScopingMode::InDomain);
  const KnowledgeGraph cross_domain = load_variant(config, ScopingMode::CrossDomain);

  std::vector<EmbeddingTable> tables;
  tables.reserve(config.embeddings.size());
  BenchmarkInputs inputs;
  inputs.in_domain = &in_domain;
  inputs.cross_domain = &cross_domain;
  for (const auto& [label, path] : config.embeddings) {
    tables.push_back(load_embeddings_file(path));
    inputs.embeddings.emplace_back(label, &tables.back());
  }

  BenchmarkOptions options;
  options.k_values = config.k_values;
  options.min_citations = config.min_citations;
  options.seed = config.seed;
  options.workers = config.workers;
  const EvalReport report = run_benchmark(inputs, options);

  const std::string text = format_report_text(report);
  write_text_file(config.out / "report.tsv", format_report_tsv(report));
  write_text_file(config.out / "report.txt", text);

  std::vector<std::filesystem::path> manifest_inputs = {
      snapshot_dir(config.out, ScopingMode::InDomain) / "manifest.json",
      snapshot_dir(config.out, ScopingMode::CrossDomain) / "manifest.json"};
  for (const auto& [label, path] : config.embeddings) manifest_inputs.push_back(path);
  write_run_manifest(config.out / "evaluate.manifest.json", "evaluate", config,
                     manifest_inputs);

  std::cout << text;
  return 0;
}

int cmd_stats(const RunConfig& config) {
  std::vector<std::pair<std::string, PairStatsReport>> reports;
  std::vector<std::filesystem::path> manifest_inputs;
  for (ScopingMode mode : selected_modes(config.kg)) {
    const KnowledgeGraph kg = load_variant(config, mode);
    reports.emplace_back(std::string(to_string(mode)),
                         pair_similarity_stats(kg, config.seed, config.workers));
    manifest_inputs.push_back(snapshot_dir(config.out, mode) / "manifest.json");
  }
  const std::string table = format_pair_stats_tsv(reports);
  write_text_file(config.out / "pair_stats.tsv", table);
  write_run_manifest(config.out / "stats.manifest.json", "stats", config, manifest_inputs);
  std::cout << table;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Citation recommendation over a scientific knowledge graph"};
  app.require_subcommand(1);

  Overrides ingest_overrides;
  CLI::App* ingest = app.add_subcommand(
      "ingest", "Build knowledge-graph snapshots from the input files");
  add_common_flags(ingest, ingest_overrides);

  Overrides query_overrides;
  std::string query_id;
  CLI::App* query =
      app.add_subcommand("query", "Print ranked citation recommendations for one paper");
  add_common_flags(query, query_overrides);
  query->add_option("query_id", query_id, "Paper id to recommend citations for")->required();

  Overrides evaluate_overrides;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Run the full benchmark matrix and write reports");
  add_common_flags(evaluate, evaluate_overrides);

  Overrides stats_overrides;
  CLI::App* stats = app.add_subcommand(
      "stats", "Compare concept similarity of citing pairs against random pairs");
  add_common_flags(stats, stats_overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 4;
  }

  // An --embedding given as the empty string overrides a configured label
  // away, so presence has to be tracked separately from the value.
  ingest_overrides.embedding_set = ingest->count("--embedding") > 0;
  query_overrides.embedding_set = query->count("--embedding") > 0;
  evaluate_overrides.embedding_set = evaluate->count("--embedding") > 0;
  stats_overrides.embedding_set = stats->count("--embedding") > 0;

  try {
    if (app.got_subcommand(ingest)) return cmd_ingest(effective_config(ingest_overrides));
    if (app.got_subcommand(query)) {
      return cmd_query(effective_config(query_overrides), query_id);
    }
    if (app.got_subcommand(evaluate)) return cmd_evaluate(effective_config(evaluate_overrides));
    if (app.got_subcommand(stats)) return cmd_stats(effective_config(stats_overrides));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 4;
  } catch (const QueryError& e) {
    std::cerr << "query error: " << e.what() << '\n';
    return 3;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 4;
}
