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
#include "concite/types.hpp"

#include "concite/util.hpp"

namespace concite {

const std::array<Domain, kNumDomains>& all_domains() {
  static const std::array<Domain, kNumDomains> domains = {
      Domain::Agr, Domain::Ast, Domain::Bio, Domain::CS,  Domain::Che,
      Domain::ES,  Domain::Eng, Domain::MS,  Domain::Mat, Domain::Med};
  return domains;
}

std::string_view to_code(Domain domain) {
  switch (domain) {
    case Domain::Agr: return "Agr";
    case Domain::Ast: return "Ast";
    case Domain::Bio: return "Bio";
    case Domain::CS: return "CS";
    case Domain::Che: return "Che";
    case Domain::ES: return "ES";
    case Domain::Eng: return "Eng";
    case Domain::MS: return "MS";
    case Domain::Mat: return "Mat";
    case Domain::Med: return "Med";
  }
  return "?";
}

std::optional<Domain> domain_from_code(std::string_view code) {
  for (Domain domain : all_domains()) {
    if (to_code(domain) == code) return domain;
  }
  return std::nullopt;
}

const std::array<ConceptType, kNumConceptTypes>& all_concept_types() {
  static const std::array<ConceptType, kNumConceptTypes> types = {
      ConceptType::Material, ConceptType::Method, ConceptType::Process, ConceptType::Data};
  return types;
}

std::string_view to_string(ConceptType type) {
  switch (type) {
    case ConceptType::Material: return "Material";
    case ConceptType::Method: return "Method";
    case ConceptType::Process: return "Process";
    case ConceptType::Data: return "Data";
  }
  return "?";
}

std::optional<ConceptType> concept_type_from_string(std::string_view name) {
  std::string lowered = normalize_surface(name);
  if (lowered == "material") return ConceptType::Material;
  if (lowered == "method") return ConceptType::Method;
  if (lowered == "process") return ConceptType::Process;
  if (lowered == "data") return ConceptType::Data;
  return std::nullopt;
}

std::string_view to_string(ScopingMode mode) {
  return mode == ScopingMode::InDomain ? "in-domain" : "cross-domain";
}

std::optional<ScopingMode> scoping_mode_from_string(std::string_view name) {
  std::string lowered = normalize_surface(name);
  if (lowered == "in-domain") return ScopingMode::InDomain;
  if (lowered == "cross-domain") return ScopingMode::CrossDomain;
  return std::nullopt;
}

TypeFilter TypeFilter::of(std::initializer_list<ConceptType> types) {
  unsigned mask = 0;
  for (ConceptType type : types) mask |= 1u << static_cast<unsigned>(type);
  if (mask == 0) throw ConfigError("concept type filter must not be empty");
  return TypeFilter(mask);
}

TypeFilter TypeFilter::parse(std::string_view spec) {
  unsigned mask = 0;
  for (std::string_view token : split_fields(spec, ',')) {
    std::string name = normalize_surface(token);
    if (name.empty()) continue;
    ConceptType type;
    if (name == "m" || name == "material") {
      type = ConceptType::Material;
    } else if (name == "me" || name == "method") {
      type = ConceptType::Method;
    } else if (name == "p" || name == "process") {
      type = ConceptType::Process;
    } else if (name == "d" || name == "data") {
      type = ConceptType::Data;
    } else {
      throw ConfigError("unknown concept type '" + std::string(token) + "'");
    }
    mask |= 1u << static_cast<unsigned>(type);
  }
  if (mask == 0) throw ConfigError("concept type filter must not be empty");
  return TypeFilter(mask);
}

std::string TypeFilter::to_string() const {
  std::string out;
  for (ConceptType type : all_concept_types()) {
    if (!contains(type)) continue;
    if (!out.empty()) out += ',';
    out += concite::to_string(type);
  }
  return out;
}

}  // namespace concite
