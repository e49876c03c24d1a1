#pragma once

#include "emodyn/types.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace emodyn {

enum class Platform { parler, twitter };

std::string_view platform_name(Platform p);
std::optional<Platform> parse_platform(std::string_view name);

struct Post {
  std::string id;
  std::string author;
  std::int64_t created_at = 0;  // UTC epoch seconds
  std::string body;
  std::string parent;  // replied-to / reposted post id; empty if none
  Platform platform = Platform::parler;
};

struct UserProfile {
  std::string user_id;
  std::string biography;  // stored verbatim
};

struct AnnotationRecord {
  std::string item_id;
  std::string rater_id;
  Metric dimension;  // sentiment, a basic emotion, or a dyad
  int rating;        // Likert, in [-3, +3]
};

struct InteractionEdge {
  std::string from_user;
  std::string to_user;
  std::int64_t weight;
};

enum class CorpusFormat { ndjson, csv };
enum class Strictness { skip, abort };

struct IngestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IngestReport {
  static constexpr std::size_t kMaxReasons = 10;

  std::size_t records = 0;  // physical records seen
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t duplicates = 0;  // accepted records that replaced an earlier one
  std::vector<std::string> reasons;

  void reject(std::size_t line, const std::string& why) {
    ++rejected;
    if (reasons.size() < kMaxReasons)
      reasons.push_back("line " + std::to_string(line) + ": " + why);
  }
};

struct LoadOptions {
  // Inclusive-start, exclusive-end UTC window; records outside are rejected.
  std::optional<std::int64_t> window_start;
  std::optional<std::int64_t> window_end;
  // Fills a missing platform field; records stay rejected when neither the
  // record nor this default provides one.
  std::optional<Platform> default_platform;
};

struct PostsResult {
  std::vector<Post> posts;  // unique ids, last record wins
  IngestReport report;
};

struct ProfilesResult {
  std::vector<UserProfile> profiles;  // unique user_ids, last record wins
  IngestReport report;
};

struct AnnotationsResult {
  std::vector<AnnotationRecord> records;
  IngestReport report;
};

// NDJSON fields: id, author, created_at (ISO-8601), body, parent (optional),
// platform. CSV carries the same columns with a required header row.
PostsResult load_posts(const std::filesystem::path& path, CorpusFormat format,
                       Strictness strictness, const LoadOptions& opts = {});

ProfilesResult load_profiles(const std::filesystem::path& path,
                             CorpusFormat format,
                             Strictness strictness = Strictness::skip);

// CSV columns: item_id,rater_id,dimension,rating. Out-of-range ratings,
// unknown dimensions and duplicate (item, rater, dimension) keys are
// rejected with their line numbers.
AnnotationsResult load_annotations(const std::filesystem::path& path);

struct GraphResult {
  std::vector<InteractionEdge> edges;  // sorted by (from, to)
  std::size_t unresolved_refs = 0;     // parents with no known author
  std::size_t self_loops = 0;          // dropped unless keep_self_loops
};

GraphResult build_interaction_graph(const std::vector<Post>& posts,
                                    std::int64_t min_weight,
                                    bool keep_self_loops = false);

struct CohortMembership;

struct GroupSummary {
  std::string name;
  std::size_t users = 0;
  std::size_t posts = 0;
  double share_pct = 0.0;  // users relative to the "all" group
  std::optional<double> posts_per_user;  // 2-decimal rounded; nullopt if no users
};

// One row per group ("all" first, then named cohorts in definition order).
std::vector<GroupSummary> summarize(const std::vector<Post>& posts,
                                    const CohortMembership& membership);

}  // namespace emodyn
