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
#include "concite/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "concite/util.hpp"

namespace concite {

std::string_view to_string(KgSelection selection) {
  switch (selection) {
    case KgSelection::InDomain: return "in-domain";
    case KgSelection::CrossDomain: return "cross-domain";
    case KgSelection::Both: return "both";
  }
  return "?";
}

std::optional<KgSelection> kg_selection_from_string(std::string_view name) {
  const std::string lowered = normalize_surface(name);
  if (lowered == "in-domain") return KgSelection::InDomain;
  if (lowered == "cross-domain") return KgSelection::CrossDomain;
  if (lowered == "both") return KgSelection::Both;
  return std::nullopt;
}

const std::filesystem::path* RunConfig::embedding_path(const std::string& label) const {
  for (const auto& [name, path] : embeddings) {
    if (name == label) return &path;
  }
  return nullptr;
}

namespace {

[[noreturn]] void fail_at(const std::string& source, std::size_t line, const std::string& what) {
  throw ConfigError(source + ":" + std::to_string(line) + ": " + what);
}

std::filesystem::path resolve(const std::filesystem::path& base_dir, std::string_view value) {
  std::filesystem::path path(std::string{value});
  if (path.is_absolute() || base_dir.empty()) return path;
  return base_dir / path;
}

std::vector<std::size_t> parse_k_list(std::string_view value, const std::string& source,
                                      std::size_t line) {
  std::vector<std::size_t> ks;
  for (std::string_view token : split_fields(value, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    std::uint64_t k = 0;
    if (!parse_uint64(token, k) || k == 0) {
      fail_at(source, line, "invalid k value '" + std::string(token) + "'");
    }
    ks.push_back(static_cast<std::size_t>(k));
  }
  return ks;
}

bool parse_bool(std::string_view value, const std::string& source, std::size_t line) {
  const std::string lowered = normalize_surface(value);
  if (lowered == "true" || lowered == "1" || lowered == "yes") return true;
  if (lowered == "false" || lowered == "0" || lowered == "no") return false;
  fail_at(source, line, "expected a boolean, got '" + std::string(value) + "'");
}

}  // namespace

RunConfig parse_run_config(std::istream& in, const std::filesystem::path& base_dir,
                           const std::string& source_name) {
  RunConfig config;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_number = 0;

  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;

    const std::size_t equals = text.find('=');
    if (equals == std::string_view::npos) {
      fail_at(source_name, line_number, "expected 'key = value'");
    }
    const std::string key(trim(text.substr(0, equals)));
    const std::string_view value = trim(text.substr(equals + 1));
    if (key.empty()) fail_at(source_name, line_number, "empty key");
    if (!seen.insert(key).second) {
      fail_at(source_name, line_number, "duplicate key '" + key + "'");
    }

    if (key == "papers") {
      config.papers = resolve(base_dir, value);
    } else if (key == "mentions") {
      config.mentions = resolve(base_dir, value);
    } else if (key == "citations") {
      config.citations = resolve(base_dir, value);
    } else if (key.rfind("embedding.", 0) == 0) {
      const std::string label = key.substr(std::string_view("embedding.").size());
      if (label.empty()) fail_at(source_name, line_number, "embedding entry without a label");
      config.embeddings.emplace_back(label, resolve(base_dir, value));
    } else if (key == "kg") {
      const std::optional<KgSelection> selection = kg_selection_from_string(value);
      if (!selection) {
        fail_at(source_name, line_number,
                "kg must be in-domain, cross-domain or both, got '" + std::string(value) + "'");
      }
      config.kg = *selection;
    } else if (key == "types") {
      try {
        config.types = TypeFilter::parse(value);
      } catch (const ConfigError& e) {
        fail_at(source_name, line_number, e.what());
      }
    } else if (key == "k") {
      config.k_values = parse_k_list(value, source_name, line_number);
    } else if (key == "min_citations") {
      std::uint64_t parsed = 0;
      if (!parse_uint64(value, parsed)) {
        fail_at(source_name, line_number, "invalid min_citations");
      }
      config.min_citations = static_cast<std::size_t>(parsed);
    } else if (key == "seed") {
      if (!parse_uint64(value, config.seed)) fail_at(source_name, line_number, "invalid seed");
    } else if (key == "out") {
      config.out = resolve(base_dir, value);
    } else if (key == "workers") {
      long long parsed = 0;
      if (!parse_int(value, parsed) || parsed < 0 || parsed > 4096) {
        fail_at(source_name, line_number, "workers must be an integer in [0, 4096]");
      }
      config.workers = static_cast<int>(parsed);
    } else if (key == "embedding") {
      config.embedding = std::string(value);
    } else if (key == "use_concepts") {
      config.use_concepts = parse_bool(value, source_name, line_number);
    } else {
      fail_at(source_name, line_number, "unknown key '" + key + "'");
    }
  }

  validate_run_config(config);
  return config;
}

void validate_run_config(const RunConfig& config) {
  if (config.k_values.empty()) throw ConfigError("k list must not be empty");
  for (std::size_t i = 0; i < config.k_values.size(); ++i) {
    if (config.k_values[i] == 0) throw ConfigError("k values must be positive");
    if (i > 0 && config.k_values[i] <= config.k_values[i - 1]) {
      throw ConfigError("k values must be strictly ascending");
    }
  }
  if (config.min_citations == 0) throw ConfigError("min_citations must be at least 1");
  if (config.workers < 0) throw ConfigError("workers must be >= 0");
  std::set<std::string> labels;
  for (const auto& [label, path] : config.embeddings) {
    if (!labels.insert(label).second) {
      throw ConfigError("duplicate embedding label '" + label + "'");
    }
  }
  if (!config.embedding.empty() && config.embedding_path(config.embedding) == nullptr) {
    throw ConfigError("embedding '" + config.embedding + "' is not configured");
  }
  if (config.out.empty()) throw ConfigError("output directory must not be empty");
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_run_config(in, path.parent_path(), path.string());
}

std::uint64_t config_digest(const RunConfig& config) {
  std::ostringstream out;
  out << "papers=" << config.papers.string() << '\n'
      << "mentions=" << config.mentions.string() << '\n'
      << "citations=" << config.citations.string() << '\n';
  for (const auto& [label, path] : config.embeddings) {
    out << "embedding." << label << '=' << path.string() << '\n';
  }
  out << "kg=" << to_string(config.kg) << '\n'
      << "types=" << config.types.to_string() << '\n';
  out << "k=";
  for (std::size_t i = 0; i < config.k_values.size(); ++i) {
    if (i > 0) out << ',';
    out << config.k_values[i];
  }
  out << '\n'
      << "min_citations=" << config.min_citations << '\n'
      << "seed=" << config.seed << '\n'
      << "out=" << config.out.string() << '\n'
      << "workers=" << config.workers << '\n'
      << "embedding=" << config.embedding << '\n'
      << "use_concepts=" << (config.use_concepts ? "true" : "false") << '\n';
  return fnv1a64(out.str());
}

}  // namespace concite
