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

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace concite {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Unreadable files, malformed records, broken references in input data.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A query document that cannot be resolved against the corpus.
class QueryError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The ten corpus domains: Agriculture, Astronomy, Biology, Computer
/// Science, Chemistry, Earth Science, Engineering, Materials Science,
/// Mathematics, Medicine.
enum class Domain : std::uint8_t { Agr, Ast, Bio, CS, Che, ES, Eng, MS, Mat, Med };

inline constexpr int kNumDomains = 10;

const std::array<Domain, kNumDomains>& all_domains();
std::string_view to_code(Domain domain);
std::optional<Domain> domain_from_code(std::string_view code);

/// The four scientific concept classes.
enum class ConceptType : std::uint8_t { Material, Method, Process, Data };

inline constexpr int kNumConceptTypes = 4;

const std::array<ConceptType, kNumConceptTypes>& all_concept_types();
std::string_view to_string(ConceptType type);
std::optional<ConceptType> concept_type_from_string(std::string_view name);

/// Concept identity scoping: shared across all domains, or split per domain.
enum class ScopingMode : std::uint8_t { InDomain, CrossDomain };

std::string_view to_string(ScopingMode mode);
std::optional<ScopingMode> scoping_mode_from_string(std::string_view name);

/// Non-empty subset of the four concept types, used to restrict which
/// concept links contribute to a concept vector.
class TypeFilter {
 public:
  constexpr TypeFilter() : mask_(kFullMask) {}

  static constexpr TypeFilter all() { return TypeFilter(); }
  static TypeFilter of(std::initializer_list<ConceptType> types);
  static TypeFilter only(ConceptType type) { return of({type}); }

  /// Parses a comma-separated list of codes or names: m/material,
  /// me/method, p/process, d/data. Throws ConfigError on unknown tokens
  /// or an empty result.
  static TypeFilter parse(std::string_view spec);

  bool contains(ConceptType type) const {
    return (mask_ & (1u << static_cast<unsigned>(type))) != 0;
  }
  bool is_all() const { return mask_ == kFullMask; }
  unsigned mask() const { return mask_; }

  std::string to_string() const;

  friend bool operator==(TypeFilter a, TypeFilter b) { return a.mask_ == b.mask_; }

 private:
  static constexpr unsigned kFullMask = 0xFu;
  explicit constexpr TypeFilter(unsigned mask) : mask_(mask) {}
  unsigned mask_;
};

}  // namespace concite
