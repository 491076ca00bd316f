#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nilj/graph.hpp"

namespace nilj {

struct DeformationSpec {
  std::string name;
  ClassId base;
  DeformationDirection direction;
  std::string label;
  std::optional<ClassId> expect;  // class of the t = 1 law
};

struct FixtureSet {
  std::vector<FamilySpec> j3, j4, real;
  std::vector<DeformationSpec> deformations;
};

/// Directory of the fixtures shipped with the sources.
std::filesystem::path default_fixture_dir();

/// Every `*.fam` file below `dir`, sorted by path. Each needs `source` and
/// `target` metadata; `label` and `expect` are optional.
std::vector<FamilySpec> load_families(const std::filesystem::path& dir);
std::vector<DeformationSpec> load_deformations(const std::filesystem::path& dir);
/// families/{j3,j4,real} and deformations/ below `root`.
FixtureSet load_fixtures(const std::filesystem::path& root);

enum class CheckStatus { Pass, Fail, Erratum };
const char* to_string(CheckStatus s);

struct Check {
  std::string section;
  std::string id;
  CheckStatus status;
  std::string detail;
};

struct Report {
  std::vector<Check> checks;
  std::vector<RigidityRow> rigidity_j3, rigidity_j4;
  std::vector<std::string> reduction_j4;        // edges of the computed transitive reduction
  std::vector<std::string> diagram_only;        // published arrows missing from it
  std::vector<std::string> reduction_only;      // computed arrows missing from the published diagram

  /// No check failed; errata do not count as failures.
  bool ok() const;
  std::size_t count(CheckStatus s) const;
  std::string text() const;
  /// Stable key order; identical input gives identical bytes.
  std::string json() const;
};

/// Recomputes the tables, the orbit example, every family and deformation
/// in the fixtures, the squaring images, the real-field remark and the
/// component structure. A check whose result disagrees with the published
/// value is an erratum when that disagreement is a known, analysed one and
/// a failure otherwise; a known disagreement that stops reproducing fails.
Report reproduce(const FixtureSet& fixtures);

}  // namespace nilj
