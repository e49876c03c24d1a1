#include "emodyn/corpus.hpp"

#include "emodyn/cohort.hpp"
#include "emodyn/csv.hpp"
#include "emodyn/text.hpp"
#include "emodyn/timeutil.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace emodyn {

std::string_view platform_name(Platform p) {
  return p == Platform::parler ? "parler" : "twitter";
}

std::optional<Platform> parse_platform(std::string_view name) {
  if (name == "parler") return Platform::parler;
  if (name == "twitter") return Platform::twitter;
  return std::nullopt;
}

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open file: " + path.string());
  return in;
}

struct RawRecord {
  std::string id, author, created_at, body, parent, platform;
};

// Returns nullopt and a reason string when the record is malformed.
std::optional<Post> to_post(const RawRecord& r, const LoadOptions& opts,
                            std::string& why) {
  if (r.id.empty()) {
    why = "missing id";
    return std::nullopt;
  }
  if (r.author.empty()) {
    why = "missing author";
    return std::nullopt;
  }
  const auto ts = parse_iso8601(r.created_at);
  if (!ts) {
    why = "bad created_at '" + r.created_at + "'";
    return std::nullopt;
  }
  if ((opts.window_start && *ts < *opts.window_start) ||
      (opts.window_end && *ts >= *opts.window_end)) {
    why = "outside corpus window";
    return std::nullopt;
  }
  Post p;
  p.id = r.id;
  p.author = r.author;
  p.created_at = *ts;
  p.body = r.body;
  p.parent = r.parent;
  if (!r.platform.empty()) {
    const auto pf = parse_platform(r.platform);
    if (!pf) {
      why = "unknown platform '" + r.platform + "'";
      return std::nullopt;
    }
    p.platform = *pf;
  } else if (opts.default_platform) {
    p.platform = *opts.default_platform;
  } else {
    why = "missing platform";
    return std::nullopt;
  }
  return p;
}

[[noreturn]] void abort_ingest(const std::filesystem::path& path,
                               std::size_t line, const std::string& why) {
  throw IngestError(path.string() + ":" + std::to_string(line) + ": " + why);
}

std::string get_json_string(const nlohmann::json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  if (it->is_string()) return it->get<std::string>();
  return it->dump();
}

// Walks records of either format, invoking fn(record, line). fn returns a
// reject reason or empty on success.
template <class Fn>
IngestReport walk_records(const std::filesystem::path& path,
                          CorpusFormat format, Strictness strictness, Fn fn) {
  IngestReport report;
  auto in = open_or_throw(path);

  if (format == CorpusFormat::ndjson) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (trim(line).empty()) continue;
      ++report.records;
      const auto j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) {
        if (strictness == Strictness::abort)
          abort_ingest(path, lineno, "invalid JSON");
        report.reject(lineno, "invalid JSON");
        continue;
      }
      RawRecord r{get_json_string(j, "id"),        get_json_string(j, "author"),
                  get_json_string(j, "created_at"), get_json_string(j, "body"),
                  get_json_string(j, "parent"),     get_json_string(j, "platform")};
      const std::string why = fn(r, lineno);
      if (why.empty()) {
        ++report.accepted;
      } else {
        if (strictness == Strictness::abort) abort_ingest(path, lineno, why);
        report.reject(lineno, why);
      }
    }
    return report;
  }

  CsvReader reader(in);
  std::vector<std::string> row;
  std::string err;
  if (!reader.next(row, &err)) {
    if (!err.empty()) throw IngestError(path.string() + ": " + err);
    throw IngestError(path.string() + ": missing CSV header row");
  }
  std::unordered_map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < row.size(); ++i)
    col[to_lower_ascii(trim(row[i]))] = i;
  auto cell = [&](const std::vector<std::string>& fields,
                  const char* name) -> std::string {
    const auto it = col.find(name);
    if (it == col.end() || it->second >= fields.size()) return {};
    return fields[it->second];
  };
  for (;;) {
    err.clear();
    if (!reader.next(row, &err)) {
      if (!err.empty()) {
        ++report.records;
        if (strictness == Strictness::abort)
          abort_ingest(path, reader.record_line(), err);
        report.reject(reader.record_line(), err);
      }
      break;
    }
    if (row.size() == 1 && trim(row[0]).empty()) continue;
    ++report.records;
    RawRecord r{cell(row, "id"),     cell(row, "author"),
                cell(row, "created_at"), cell(row, "body"),
                cell(row, "parent"), cell(row, "platform")};
    const std::string why = fn(r, reader.record_line());
    if (why.empty()) {
      ++report.accepted;
    } else {
      if (strictness == Strictness::abort)
        abort_ingest(path, reader.record_line(), why);
      report.reject(reader.record_line(), why);
    }
  }
  return report;
}

}  // namespace

PostsResult load_posts(const std::filesystem::path& path, CorpusFormat format,
                       Strictness strictness, const LoadOptions& opts) {
  PostsResult result;
  std::unordered_map<std::string, std::size_t> index;  // id -> position
  std::size_t dup = 0;
  result.report =
      walk_records(path, format, strictness,
                   [&](const RawRecord& r, std::size_t) -> std::string {
                     std::string why;
                     auto post = to_post(r, opts, why);
                     if (!post) return why;
                     const auto [it, inserted] =
                         index.emplace(post->id, result.posts.size());
                     if (inserted) {
                       result.posts.push_back(std::move(*post));
                     } else {
                       result.posts[it->second] = std::move(*post);
                       ++dup;
                     }
                     return {};
                   });
  result.report.duplicates = dup;
  return result;
}

ProfilesResult load_profiles(const std::filesystem::path& path,
                             CorpusFormat format, Strictness strictness) {
  ProfilesResult result;
  std::unordered_map<std::string, std::size_t> index;
  std::size_t dup = 0;
  result.report = walk_records(
      path, format, strictness,
      [&](const RawRecord& r, std::size_t) -> std::string {
        // Profile files reuse the id/author columns: user_id in `id` (or
        // `author` when `id` is absent), biography in `body`.
        const std::string& uid = r.id.empty() ? r.author : r.id;
        if (uid.empty()) return "missing user id";
        const auto [it, inserted] = index.emplace(uid, result.profiles.size());
        if (inserted) {
          result.profiles.push_back({uid, r.body});
        } else {
          result.profiles[it->second] = {uid, r.body};
          ++dup;
        }
        return {};
      });
  result.report.duplicates = dup;
  return result;
}

AnnotationsResult load_annotations(const std::filesystem::path& path) {
  AnnotationsResult result;
  auto in = open_or_throw(path);
  CsvReader reader(in);
  std::vector<std::string> row;
  std::string err;
  if (!reader.next(row, &err))
    throw IngestError(path.string() + ": missing CSV header row");
  std::set<std::tuple<std::string, std::string, int>> seen;
  for (;;) {
    err.clear();
    if (!reader.next(row, &err)) {
      if (!err.empty()) {
        ++result.report.records;
        result.report.reject(reader.record_line(), err);
      }
      break;
    }
    if (row.size() == 1 && trim(row[0]).empty()) continue;
    ++result.report.records;
    const std::size_t line = reader.record_line();
    if (row.size() < 4) {
      result.report.reject(line, "expected item_id,rater_id,dimension,rating");
      continue;
    }
    const std::string item = std::string(trim(row[0]));
    const std::string rater = std::string(trim(row[1]));
    const auto dim = parse_metric(to_lower_ascii(trim(row[2])));
    if (item.empty() || rater.empty()) {
      result.report.reject(line, "empty item_id or rater_id");
      continue;
    }
    if (!dim || *dim == Metric::neg_words) {
      result.report.reject(line, "unknown dimension '" + row[2] + "'");
      continue;
    }
    int rating = 0;
    try {
      std::size_t used = 0;
      rating = std::stoi(std::string(trim(row[3])), &used);
      if (used != trim(row[3]).size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      result.report.reject(line, "rating not an integer: '" + row[3] + "'");
      continue;
    }
    if (rating < -3 || rating > 3) {
      result.report.reject(line,
                           "rating out of range [-3,3]: " + std::to_string(rating));
      continue;
    }
    if (!seen.emplace(item, rater, static_cast<int>(*dim)).second) {
      result.report.reject(line, "duplicate (item,rater,dimension)");
      continue;
    }
    ++result.report.accepted;
    result.records.push_back({item, rater, *dim, rating});
  }
  return result;
}

GraphResult build_interaction_graph(const std::vector<Post>& posts,
                                    std::int64_t min_weight,
                                    bool keep_self_loops) {
  GraphResult result;
  std::unordered_map<std::string_view, std::string_view> author_of;
  author_of.reserve(posts.size());
  for (const auto& p : posts) author_of.emplace(p.id, p.author);

  std::map<std::pair<std::string_view, std::string_view>, std::int64_t> counts;
  for (const auto& p : posts) {
    if (p.parent.empty()) continue;
    const auto it = author_of.find(p.parent);
    if (it == author_of.end()) {
      ++result.unresolved_refs;
      continue;
    }
    if (!keep_self_loops && it->second == p.author) {
      ++result.self_loops;
      continue;
    }
    ++counts[{p.author, it->second}];
  }
  for (const auto& [pair, weight] : counts)
    if (weight >= min_weight)
      result.edges.push_back(
          {std::string(pair.first), std::string(pair.second), weight});
  return result;
}

std::vector<GroupSummary> summarize(const std::vector<Post>& posts,
                                    const CohortMembership& membership) {
  std::unordered_map<std::string_view, std::size_t> posts_by_user;
  for (const auto& p : posts) ++posts_by_user[p.author];

  auto row = [&](const std::string& name,
                 const std::set<std::string>& users) {
    GroupSummary s;
    s.name = name;
    s.users = users.size();
    for (const auto& u : users) {
      const auto it = posts_by_user.find(u);
      if (it != posts_by_user.end()) s.posts += it->second;
    }
    if (s.users > 0)
      s.posts_per_user = std::round(
          static_cast<double>(s.posts) / static_cast<double>(s.users) * 100.0) /
          100.0;
    return s;
  };

  std::vector<GroupSummary> out;
  out.push_back(row("all", membership.all));
  for (const auto& name : membership.names)
    out.push_back(row(name, membership.members.at(name)));
  const double all_users = static_cast<double>(out.front().users);
  for (auto& s : out)
    s.share_pct =
        all_users > 0 ? 100.0 * static_cast<double>(s.users) / all_users : 0.0;
  return out;
}

}  // namespace emodyn
