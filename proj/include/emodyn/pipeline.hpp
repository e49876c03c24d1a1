#pragma once

#include "emodyn/corpus.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace emodyn {

// Everything a run needs, resolvable from flags and/or a key-value config
// file. The full configuration (minus execution details like the thread
// count) is hashed and echoed into every output's metadata header.
struct RunConfig {
  // inputs
  std::string posts_path;
  std::string posts_format = "ndjson";  // ndjson | csv
  std::string posts_b_path;             // compare: second corpus
  std::string platform;                 // default for records lacking one
  std::string platform_b;
  std::string profiles_path;
  std::string profiles_format = "ndjson";
  std::string annotations_path;
  std::string scores_path;  // analyze from a scored file (needs meta columns)
  std::string lexicon_path;
  std::string lexicon_format = "nrc_flags";  // nrc_flags | category_list
  std::string cohorts_path;
  std::string negators_path;
  std::string keywords_path;

  // analysis options (EST wall-clock period bounds)
  std::string before_end = "2021-01-06 11:00";
  std::string during_end = "2021-01-06 19:30";
  std::int64_t bucket_width = 3600;
  double loess_span = 0.25;
  bool negation = false;
  int negation_window = 3;
  bool shared_denominator = false;
  bool mean_dyads = false;
  // Overrides of the standard dyad pairs, e.g.
  // "outrage=anger+surprise,guilt=joy+fear". Empty keeps the defaults.
  std::string dyads;
  bool exclusive_cohorts = false;
  std::string weighting = "posts";  // posts | users
  std::string strictness = "skip";  // skip | abort
  std::string window_start;         // UTC ISO-8601 corpus window, optional
  std::string window_end;
  std::int64_t min_weight = 10;
  std::string dimension = "all";  // validate: one dimension or all annotated

  // outputs
  std::string out_path = "-";   // score/graph; "-" writes to stdout
  std::string out_dir = ".";    // analyze/compare/validate/cohorts
  std::string out_format = "csv";  // csv | ndjson (score output)
  bool include_meta = false;    // score: add author/created_at/neg_count

  // execution (never part of the config hash or echo)
  int threads = 0;
};

// Sorted key=value serialization of everything that affects results.
std::string canonical_config(const RunConfig& config);

// Exhaustive, disjoint split of posts by case-insensitive substring match
// of any keyword phrase against the raw body.
struct KeywordPartition {
  std::vector<std::string> keywords;
  std::set<std::string> matched;
  std::set<std::string> unmatched;
};

KeywordPartition partition_by_keywords(const std::vector<Post>& posts,
                                       const std::vector<std::string>& keywords);

std::vector<std::string> load_keywords(const std::filesystem::path& path);
const std::vector<std::string>& default_storming_keywords();

// Subcommand entry points. Each returns a process exit code; user-level
// failures are reported on stderr rather than thrown.
int cmd_score(const RunConfig& config);
int cmd_analyze(const RunConfig& config);
int cmd_compare(const RunConfig& config);
int cmd_validate(const RunConfig& config);
int cmd_graph(const RunConfig& config);
int cmd_cohorts(const RunConfig& config);

}  // namespace emodyn
