#pragma once

#include "emodyn/corpus.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace emodyn {

// A named user group defined by self-identification hashtags (lowercase,
// '#' included).
struct CohortDefinition {
  std::string name;
  std::set<std::string> hashtags;
};

struct CohortError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Definition file: one cohort per line, "name: #tag1 #tag2 ...".
std::vector<CohortDefinition> load_cohort_definitions(
    const std::filesystem::path& path);
std::vector<CohortDefinition> parse_cohort_definitions(std::string_view text);

// Membership sets per named cohort plus the implicit "all" group covering
// every profiled user. Immutable after construction.
struct CohortMembership {
  std::vector<std::string> names;  // definition order
  std::map<std::string, std::set<std::string>> members;
  std::set<std::string> all;

  const std::set<std::string>& group(const std::string& name) const;
  bool has_group(const std::string& name) const;
};

// A user joins a cohort iff their biography contains one of its hashtags as
// a whole hashtag token (case-insensitive, no substring matches).
CohortMembership assign_cohorts(const std::vector<UserProfile>& profiles,
                                const std::vector<CohortDefinition>& defs);

enum class OverlapDenominator { min_size, union_size };

// 100*|A∩B| / min(|A|,|B|) or /|A∪B|. nullopt when a cohort is empty.
std::optional<double> overlap_pct(const CohortMembership& m,
                                  const std::string& a, const std::string& b,
                                  OverlapDenominator denom =
                                      OverlapDenominator::min_size);

// Removes every user belonging to more than one named cohort from all named
// cohorts; "all" is untouched.
CohortMembership exclusive_members(const CohortMembership& m);

}  // namespace emodyn
