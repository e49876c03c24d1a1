#include "emodyn/pipeline.hpp"

#include "emodyn/affect.hpp"
#include "emodyn/cohort.hpp"
#include "emodyn/csv.hpp"
#include "emodyn/dynamics.hpp"
#include "emodyn/lexicon.hpp"
#include "emodyn/report.hpp"
#include "emodyn/stats.hpp"
#include "emodyn/text.hpp"
#include "emodyn/timeutil.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace emodyn {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string canonical_config(const RunConfig& c) {
  std::map<std::string, std::string> kv;
  kv["annotations"] = c.annotations_path;
  kv["before_end"] = c.before_end;
  kv["bucket_width"] = std::to_string(c.bucket_width);
  kv["cohorts"] = c.cohorts_path;
  kv["dimension"] = c.dimension;
  kv["during_end"] = c.during_end;
  kv["dyads"] = c.dyads;
  kv["exclusive_cohorts"] = bool_str(c.exclusive_cohorts);
  kv["include_meta"] = bool_str(c.include_meta);
  kv["keywords"] = c.keywords_path;
  kv["lexicon"] = c.lexicon_path;
  kv["lexicon_format"] = c.lexicon_format;
  kv["loess_span"] = format_double(c.loess_span);
  kv["mean_dyads"] = bool_str(c.mean_dyads);
  kv["min_weight"] = std::to_string(c.min_weight);
  kv["negation"] = bool_str(c.negation);
  kv["negation_window"] = std::to_string(c.negation_window);
  kv["negators"] = c.negators_path;
  kv["out_format"] = c.out_format;
  kv["platform"] = c.platform;
  kv["platform_b"] = c.platform_b;
  kv["posts"] = c.posts_path;
  kv["posts_b"] = c.posts_b_path;
  kv["posts_format"] = c.posts_format;
  kv["profiles"] = c.profiles_path;
  kv["profiles_format"] = c.profiles_format;
  kv["scores"] = c.scores_path;
  kv["shared_denominator"] = bool_str(c.shared_denominator);
  kv["strictness"] = c.strictness;
  kv["weighting"] = c.weighting;
  kv["window_end"] = c.window_end;
  kv["window_start"] = c.window_start;
  std::string out;
  for (const auto& [k, v] : kv) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

KeywordPartition partition_by_keywords(
    const std::vector<Post>& posts, const std::vector<std::string>& keywords) {
  KeywordPartition part;
  part.keywords = keywords;
  for (const auto& p : posts) {
    const bool hit =
        std::any_of(keywords.begin(), keywords.end(),
                    [&](const std::string& kw) {
                      return !kw.empty() && contains_ci(p.body, kw);
                    });
    (hit ? part.matched : part.unmatched).insert(p.id);
  }
  return part;
}

std::vector<std::string> load_keywords(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open keyword list: " + path.string());
  std::vector<std::string> keywords;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string_view t = trim(line);
    if (!t.empty()) keywords.push_back(to_lower_ascii(t));
  }
  return keywords;
}

const std::vector<std::string>& default_storming_keywords() {
  static const std::vector<std::string> kKeywords = {
      "riot",  "rally",   "capitol",   "speech",
      "potus", "america", "god bless", "civil war"};
  return kKeywords;
}

namespace {

// ---------------------------------------------------------------------------
// config plumbing

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CorpusFormat parse_format_or_throw(const std::string& s) {
  if (s == "ndjson") return CorpusFormat::ndjson;
  if (s == "csv") return CorpusFormat::csv;
  throw ConfigError("unknown corpus format '" + s + "'");
}

Strictness parse_strictness_or_throw(const std::string& s) {
  if (s == "skip") return Strictness::skip;
  if (s == "abort") return Strictness::abort;
  throw ConfigError("unknown strictness '" + s + "'");
}

LexiconFormat parse_lexicon_format_or_throw(const std::string& s) {
  if (s == "nrc_flags") return LexiconFormat::nrc_flags;
  if (s == "category_list") return LexiconFormat::category_list;
  throw ConfigError("unknown lexicon format '" + s + "'");
}

std::optional<Platform> parse_platform_or_throw(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const auto p = parse_platform(s);
  if (!p) throw ConfigError("unknown platform '" + s + "'");
  return p;
}

LoadOptions load_options_from(const RunConfig& c, const std::string& platform) {
  LoadOptions opts;
  opts.default_platform = parse_platform_or_throw(platform);
  if (!c.window_start.empty()) {
    const auto t = parse_iso8601(c.window_start);
    if (!t) throw ConfigError("bad window_start '" + c.window_start + "'");
    opts.window_start = *t;
  }
  if (!c.window_end.empty()) {
    const auto t = parse_iso8601(c.window_end);
    if (!t) throw ConfigError("bad window_end '" + c.window_end + "'");
    opts.window_end = *t;
  }
  return opts;
}

PeriodSpec period_from(const RunConfig& c) {
  const auto before = parse_wall_clock(c.before_end);
  const auto during = parse_wall_clock(c.during_end);
  if (!before) throw ConfigError("bad before_end '" + c.before_end + "'");
  if (!during) throw ConfigError("bad during_end '" + c.during_end + "'");
  return PeriodSpec::from_est(*before, *during);
}

// "name=emotion+emotion" entries, comma separated, patching the standard
// dyad table.
DyadTable dyad_table_from(const std::string& spec) {
  DyadTable table = DyadTable::standard();
  std::string_view rest = spec;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view entry = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view()
                                           : rest.substr(comma + 1);
    if (entry.empty()) continue;
    const auto eq = entry.find('=');
    const auto plus = entry.find('+');
    if (eq == std::string_view::npos || plus == std::string_view::npos ||
        plus < eq)
      throw ConfigError("bad dyad entry '" + std::string(entry) +
                        "', expected name=emotion+emotion");
    const auto dyad = parse_dyad(trim(entry.substr(0, eq)));
    const auto a = parse_emotion(trim(entry.substr(eq + 1, plus - eq - 1)));
    const auto b = parse_emotion(trim(entry.substr(plus + 1)));
    if (!dyad || !a || !b)
      throw ConfigError("bad dyad entry '" + std::string(entry) +
                        "', expected name=emotion+emotion");
    table.pairs[static_cast<std::size_t>(*dyad)] = {*a, *b};
  }
  return table;
}

ScoreOptions score_options_from(const RunConfig& c) {
  ScoreOptions opts;
  opts.negation = c.negation;
  opts.negation_window = c.negation_window;
  if (!c.negators_path.empty()) opts.negators = load_negators(c.negators_path);
  opts.shared_denominator = c.shared_denominator;
  opts.mean_dyads = c.mean_dyads;
  opts.dyad_table = dyad_table_from(c.dyads);
  return opts;
}

EmotionLexicon lexicon_from(const RunConfig& c) {
  if (c.lexicon_path.empty())
    throw ConfigError("a lexicon is required (--lexicon or EMODYN_LEXICON)");
  return load_lexicon(c.lexicon_path,
                      parse_lexicon_format_or_throw(c.lexicon_format));
}

void print_ingest(const std::string& label, const IngestReport& r) {
  std::cerr << label << ": " << r.accepted << " accepted, " << r.rejected
            << " rejected";
  if (r.duplicates) std::cerr << ", " << r.duplicates << " duplicates";
  std::cerr << " (" << r.records << " records)\n";
  for (const auto& reason : r.reasons) std::cerr << "  " << reason << '\n';
}

MetaHeader base_meta(const RunConfig& c, const EmotionLexicon* lex) {
  MetaHeader meta;
  meta.set("tool", std::string(kToolName) + " " + std::string(kToolVersion));
  const std::string canonical = canonical_config(c);
  meta.set("config_hash", fnv1a_hex(canonical));
  if (lex) {
    meta.set("lexicon_name", lex->name);
    meta.set("lexicon_hash", lex->file_hash);
  }
  std::istringstream lines(canonical);
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find('=');
    meta.set("cfg." + line.substr(0, eq), line.substr(eq + 1));
  }
  return meta;
}

// ---------------------------------------------------------------------------
// corpus assembly

struct Corpus {
  std::vector<Post> posts;
  std::vector<DocumentScore> scores;
};

// A profile per distinct author: the supplied biography when one exists,
// empty otherwise. Keeps "all" equal to the set of posting users.
std::vector<UserProfile> posting_profiles(
    const std::vector<Post>& posts, const std::vector<UserProfile>& profiles) {
  std::unordered_map<std::string_view, const UserProfile*> by_id;
  for (const auto& p : profiles) by_id[p.user_id] = &p;
  std::set<std::string> authors;
  for (const auto& p : posts) authors.insert(p.author);
  std::vector<UserProfile> out;
  out.reserve(authors.size());
  for (const auto& a : authors) {
    const auto it = by_id.find(a);
    out.push_back(it != by_id.end() ? *it->second : UserProfile{a, ""});
  }
  return out;
}

CohortMembership membership_from(const RunConfig& c,
                                 const std::vector<Post>& posts) {
  std::vector<UserProfile> profiles;
  if (!c.profiles_path.empty()) {
    auto loaded =
        load_profiles(c.profiles_path, parse_format_or_throw(c.profiles_format),
                      parse_strictness_or_throw(c.strictness));
    print_ingest("profiles", loaded.report);
    profiles = std::move(loaded.profiles);
  }
  std::vector<CohortDefinition> defs;
  if (!c.cohorts_path.empty()) defs = load_cohort_definitions(c.cohorts_path);
  auto membership = assign_cohorts(posting_profiles(posts, profiles), defs);
  if (c.exclusive_cohorts) membership = exclusive_members(membership);
  return membership;
}

Corpus load_and_score(const RunConfig& c, const EmotionLexicon& lex,
                      const std::string& path, const std::string& platform,
                      const std::string& label) {
  Corpus corpus;
  auto loaded = load_posts(path, parse_format_or_throw(c.posts_format),
                           parse_strictness_or_throw(c.strictness),
                           load_options_from(c, platform));
  print_ingest(label, loaded.report);
  corpus.posts = std::move(loaded.posts);
  corpus.scores = score_posts(corpus.posts, lex, score_options_from(c), c.threads);
  return corpus;
}

// ---------------------------------------------------------------------------
// scored output / input

std::string opt_str(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

void write_scored_csv(std::ostream& out, const MetaHeader& meta,
                      const Corpus& corpus, bool include_meta) {
  meta.write_csv(out);
  std::vector<std::string> header = {"post_id"};
  for (int i = 0; i < kNumEmotions; ++i)
    header.emplace_back(emotion_name(static_cast<Emotion>(i)));
  header.emplace_back("sentiment");
  for (int i = 0; i < kNumDyads; ++i)
    header.emplace_back(dyad_name(static_cast<Dyad>(i)));
  header.insert(header.end(), {"emotion_total", "valence_total", "rho_signal",
                               "sentiment_signal"});
  if (include_meta)
    header.insert(header.end(), {"author", "created_at", "neg_count"});
  write_csv_row(out, header);

  for (std::size_t idx = 0; idx < corpus.scores.size(); ++idx) {
    const auto& s = corpus.scores[idx];
    std::vector<std::string> row = {s.post_id};
    for (int i = 0; i < kNumEmotions; ++i)
      row.push_back(s.rho.has_signal ? format_double(s.rho.rho[i])
                                     : std::string());
    row.push_back(opt_str(s.sentiment));
    for (int i = 0; i < kNumDyads; ++i)
      row.push_back(s.dyads ? format_double((*s.dyads)[i]) : std::string());
    row.push_back(std::to_string(s.raw.emotion_total()));
    row.push_back(std::to_string(s.raw.valence_total()));
    row.push_back(s.rho.has_signal ? "1" : "0");
    row.push_back(s.sentiment ? "1" : "0");
    if (include_meta) {
      row.push_back(corpus.posts[idx].author);
      row.push_back(format_iso8601_utc(corpus.posts[idx].created_at));
      row.push_back(std::to_string(s.raw.negative));
    }
    write_csv_row(out, row);
  }
}

void write_scored_ndjson(std::ostream& out, const MetaHeader& meta,
                         const Corpus& corpus, bool include_meta) {
  ordered_json meta_obj;
  for (const auto& [k, v] : meta.entries()) meta_obj[k] = v;
  out << ordered_json{{"meta", meta_obj}}.dump() << '\n';

  for (std::size_t idx = 0; idx < corpus.scores.size(); ++idx) {
    const auto& s = corpus.scores[idx];
    ordered_json j;
    j["post_id"] = s.post_id;
    if (s.rho.has_signal) {
      ordered_json rho;
      for (int i = 0; i < kNumEmotions; ++i)
        rho[std::string(emotion_name(static_cast<Emotion>(i)))] = s.rho.rho[i];
      j["rho"] = rho;
    } else {
      j["rho"] = nullptr;
    }
    if (s.sentiment)
      j["sentiment"] = *s.sentiment;
    else
      j["sentiment"] = nullptr;
    if (s.dyads) {
      ordered_json dyads;
      for (int i = 0; i < kNumDyads; ++i)
        dyads[std::string(dyad_name(static_cast<Dyad>(i)))] = (*s.dyads)[i];
      j["dyads"] = dyads;
    } else {
      j["dyads"] = nullptr;
    }
    j["emotion_total"] = s.raw.emotion_total();
    j["valence_total"] = s.raw.valence_total();
    if (include_meta) {
      j["author"] = corpus.posts[idx].author;
      j["created_at"] = format_iso8601_utc(corpus.posts[idx].created_at);
      j["neg_count"] = s.raw.negative;
    }
    out << j.dump() << '\n';
  }
}

// Reads a scored NDJSON file written with include_meta; reconstructs just
// enough of the corpus for downstream analysis.
Corpus read_scored_ndjson(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open scored file: " + path.string());
  Corpus corpus;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw IngestError(path.string() + ":" + std::to_string(lineno) +
                        ": invalid JSON");
    if (j.contains("meta")) continue;
    if (!j.contains("author") || !j.contains("created_at"))
      throw IngestError(
          path.string() +
          ": scored input lacks author/created_at; rerun score with "
          "--include-meta");
    Post post;
    post.id = j.value("post_id", "");
    post.author = j.value("author", "");
    const auto ts = parse_iso8601(j.value("created_at", ""));
    if (!ts)
      throw IngestError(path.string() + ":" + std::to_string(lineno) +
                        ": bad created_at");
    post.created_at = *ts;

    DocumentScore score;
    score.post_id = post.id;
    if (j.contains("rho") && j["rho"].is_object()) {
      score.rho.has_signal = true;
      for (int i = 0; i < kNumEmotions; ++i)
        score.rho.rho[i] =
            j["rho"].value(std::string(emotion_name(static_cast<Emotion>(i))), 0.0);
    }
    if (j.contains("sentiment") && j["sentiment"].is_number())
      score.sentiment = j["sentiment"].get<double>();
    if (j.contains("dyads") && j["dyads"].is_object()) {
      DyadArray<double> d;
      for (int i = 0; i < kNumDyads; ++i)
        d[i] = j["dyads"].value(std::string(dyad_name(static_cast<Dyad>(i))), 0.0);
      score.dyads = d;
    }
    score.raw.negative = j.value("neg_count", 0);
    corpus.posts.push_back(std::move(post));
    corpus.scores.push_back(std::move(score));
  }
  return corpus;
}

// ---------------------------------------------------------------------------
// report writers

void write_ks_header(std::ostream& out) {
  write_csv_row(out, {"comparison", "cohort", "metric", "d", "p", "n1", "n2"});
}

void write_ks_row(std::ostream& out, const std::string& comparison,
                  const std::string& cohort, const std::string& metric,
                  const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<std::string> row = {comparison, cohort, metric};
  if (!a.empty() && !b.empty()) {
    const auto r = ks_two_sample(
        Eigen::Map<const Eigen::VectorXd>(a.data(),
                                          static_cast<Eigen::Index>(a.size())),
        Eigen::Map<const Eigen::VectorXd>(b.data(),
                                          static_cast<Eigen::Index>(b.size())));
    row.push_back(format_double(r.d));
    row.push_back(format_double(r.p));
  } else {
    row.emplace_back();
    row.emplace_back();
  }
  row.push_back(std::to_string(a.size()));
  row.push_back(std::to_string(b.size()));
  write_csv_row(out, row);
}

std::string est_label(std::int64_t start_est) {
  return format_est(est_to_utc(start_est));
}

}  // namespace

// ---------------------------------------------------------------------------
// subcommands

int cmd_score(const RunConfig& config) {
  try {
    const EmotionLexicon lex = lexicon_from(config);
    const Corpus corpus = load_and_score(config, lex, config.posts_path,
                                         config.platform, "posts");
    const MetaHeader meta = base_meta(config, &lex);
    OutputStream out(config.out_path);
    if (config.out_format == "ndjson")
      write_scored_ndjson(out.stream(), meta, corpus, config.include_meta);
    else if (config.out_format == "csv")
      write_scored_csv(out.stream(), meta, corpus, config.include_meta);
    else
      throw ConfigError("unknown output format '" + config.out_format + "'");
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "score: " << e.what() << '\n';
    return 1;
  }
}

int cmd_graph(const RunConfig& config) {
  try {
    auto loaded = load_posts(config.posts_path,
                             parse_format_or_throw(config.posts_format),
                             parse_strictness_or_throw(config.strictness),
                             load_options_from(config, config.platform));
    print_ingest("posts", loaded.report);
    const auto graph = build_interaction_graph(loaded.posts, config.min_weight);
    std::cerr << "graph: " << graph.edges.size() << " edges, "
              << graph.unresolved_refs << " unresolved refs, "
              << graph.self_loops << " self loops dropped\n";

    MetaHeader meta = base_meta(config, nullptr);
    meta.set("unresolved_refs", std::to_string(graph.unresolved_refs));
    meta.set("self_loops_dropped", std::to_string(graph.self_loops));
    OutputStream out(config.out_path);
    meta.write_csv(out.stream());
    write_csv_row(out.stream(), {"from", "to", "weight"});
    for (const auto& e : graph.edges)
      write_csv_row(out.stream(),
                    {e.from_user, e.to_user, std::to_string(e.weight)});
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "graph: " << e.what() << '\n';
    return 1;
  }
}

int cmd_cohorts(const RunConfig& config) {
  try {
    auto loaded = load_posts(config.posts_path,
                             parse_format_or_throw(config.posts_format),
                             parse_strictness_or_throw(config.strictness),
                             load_options_from(config, config.platform));
    print_ingest("posts", loaded.report);
    const auto membership = membership_from(config, loaded.posts);
    const MetaHeader meta = base_meta(config, nullptr);
    const std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);

    {
      OutputStream out((dir / "membership.csv").string());
      meta.write_csv(out.stream());
      write_csv_row(out.stream(), {"user_id", "cohort"});
      for (const auto& name : membership.names)
        for (const auto& user : membership.members.at(name))
          write_csv_row(out.stream(), {user, name});
    }
    {
      OutputStream out((dir / "summary.csv").string());
      meta.write_csv(out.stream());
      write_csv_row(out.stream(),
                    {"group", "users", "share_pct", "posts", "posts_per_user"});
      for (const auto& s : summarize(loaded.posts, membership)) {
        char share[32], ppu[32];
        std::snprintf(share, sizeof(share), "%.1f", s.share_pct);
        if (s.posts_per_user)
          std::snprintf(ppu, sizeof(ppu), "%.2f", *s.posts_per_user);
        write_csv_row(out.stream(),
                      {s.name, std::to_string(s.users), share,
                       std::to_string(s.posts),
                       s.posts_per_user ? std::string(ppu) : "NA"});
      }
    }
    {
      OutputStream out((dir / "overlap.csv").string());
      meta.write_csv(out.stream());
      write_csv_row(out.stream(),
                    {"cohort_a", "cohort_b", "pct_of_smaller", "pct_of_union"});
      const auto& names = membership.names;
      for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j) {
          const auto pmin = overlap_pct(membership, names[i], names[j],
                                        OverlapDenominator::min_size);
          const auto puni = overlap_pct(membership, names[i], names[j],
                                        OverlapDenominator::union_size);
          write_csv_row(out.stream(),
                        {names[i], names[j],
                         pmin ? format_double(*pmin) : "NA",
                         puni ? format_double(*puni) : "NA"});
        }
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "cohorts: " << e.what() << '\n';
    return 1;
  }
}

int cmd_analyze(const RunConfig& config) {
  try {
    std::optional<EmotionLexicon> lex;
    Corpus corpus;
    if (!config.scores_path.empty()) {
      corpus = read_scored_ndjson(config.scores_path);
      std::cerr << "scores: " << corpus.posts.size() << " rows\n";
    } else {
      lex = lexicon_from(config);
      corpus = load_and_score(config, *lex, config.posts_path, config.platform,
                              "posts");
    }
    const auto membership = membership_from(config, corpus.posts);
    const PeriodSpec period = period_from(config);
    const Weighting weighting =
        config.weighting == "users" ? Weighting::users : Weighting::posts;

    std::vector<std::string> cohorts = {"all"};
    cohorts.insert(cohorts.end(), membership.names.begin(),
                   membership.names.end());

    MetaHeader meta = base_meta(config, lex ? &*lex : nullptr);
    meta.set("loess_span", format_double(config.loess_span));
    const std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);

    std::map<std::string, CohortIndex> index_by;
    for (const auto& cohort : cohorts)
      index_by.emplace(cohort,
                       make_cohort_index(corpus.posts, membership, cohort));

    // Per-cohort/metric series, reused by the series file and the heatmaps.
    std::map<std::pair<std::string, std::string>, TimeBucketSeries> series_by;
    std::map<std::pair<std::string, std::string>, Eigen::VectorXd> smoothed_by;
    for (const auto& cohort : cohorts) {
      for (const Metric metric : kReportMetrics) {
        auto series = bucket_series(corpus.posts, corpus.scores,
                                    index_by.at(cohort), metric,
                                    config.bucket_width, weighting);
        const auto key = std::make_pair(cohort,
                                        std::string(metric_name(metric)));
        std::size_t filled = 0;
        for (const auto& b : series.buckets)
          if (!b.empty()) ++filled;
        if (filled >= 3)
          smoothed_by[key] = loess_smooth(series, config.loess_span);
        series_by[key] = std::move(series);
      }
    }

    {
      OutputStream out((dir / "series.csv").string());
      meta.write_csv(out.stream());
      write_csv_row(out.stream(), {"bucket_start", "cohort", "metric", "mean",
                                   "n_posts", "smoothed"});
      for (const auto& cohort : cohorts)
        for (const Metric metric : kReportMetrics) {
          const auto key = std::make_pair(cohort,
                                          std::string(metric_name(metric)));
          const auto& series = series_by.at(key);
          const auto smoothed = smoothed_by.find(key);
          for (std::size_t i = 0; i < series.buckets.size(); ++i) {
            const auto& b = series.buckets[i];
            std::string fit;
            if (smoothed != smoothed_by.end() && !b.empty())
              fit = format_double(
                  smoothed->second[static_cast<Eigen::Index>(i)]);
            write_csv_row(out.stream(),
                          {est_label(b.start_est), cohort,
                           std::string(metric_name(metric)),
                           b.empty() ? std::string() : format_double(b.mean),
                           std::to_string(b.n_posts), fit});
          }
        }
    }

    // Heatmaps: one matrix per metric, cohorts x hours.
    for (const Metric metric : kReportMetrics) {
      std::int64_t lo = 0, hi = 0;
      bool any = false;
      for (const auto& cohort : cohorts) {
        const auto& s = series_by.at(
            {cohort, std::string(metric_name(metric))});
        if (s.buckets.empty()) continue;
        const std::int64_t first = s.buckets.front().start_est;
        const std::int64_t last = s.buckets.back().start_est;
        if (!any || first < lo) lo = first;
        if (!any || last > hi) hi = last;
        any = true;
      }
      OutputStream out(
          (dir / ("heatmap_" + std::string(metric_name(metric)) + ".csv"))
              .string());
      meta.write_csv(out.stream());
      std::vector<std::string> header = {"cohort"};
      if (any)
        for (std::int64_t t = lo; t <= hi; t += config.bucket_width)
          header.push_back(est_label(t));
      write_csv_row(out.stream(), header);
      if (!any) continue;
      for (const auto& cohort : cohorts) {
        const auto& s = series_by.at(
            {cohort, std::string(metric_name(metric))});
        std::map<std::int64_t, const Bucket*> by_start;
        for (const auto& b : s.buckets) by_start[b.start_est] = &b;
        std::vector<std::string> row = {cohort};
        for (std::int64_t t = lo; t <= hi; t += config.bucket_width) {
          const auto it = by_start.find(t);
          row.push_back(it != by_start.end() && !it->second->empty()
                            ? format_double(it->second->mean)
                            : std::string());
        }
        write_csv_row(out.stream(), row);
      }
    }

    {
      OutputStream out((dir / "ks_report.csv").string());
      meta.write_csv(out.stream());
      write_ks_header(out.stream());
      for (const auto& cohort : cohorts)
        for (const Metric metric : kReportMetrics) {
          const auto samples = partition_periods(
              corpus.posts, corpus.scores, index_by.at(cohort), metric, period);
          const std::string name(metric_name(metric));
          write_ks_row(out.stream(), "before_vs_during", cohort, name,
                       samples.before, samples.during);
          write_ks_row(out.stream(), "before_vs_after", cohort, name,
                       samples.before, samples.after);
          write_ks_row(out.stream(), "during_vs_after", cohort, name,
                       samples.during, samples.after);
        }
    }

    {
      OutputStream out((dir / "change_report.csv").string());
      meta.write_csv(out.stream());
      write_csv_row(out.stream(),
                    {"cohort", "statistic", "comparison", "pct_change"});
      for (const auto& cohort : cohorts) {
        std::array<Metric, 2> stats = {Metric::neg_words, Metric::sentiment};
        for (const Metric metric : stats) {
          const auto samples = partition_periods(
              corpus.posts, corpus.scores, index_by.at(cohort), metric, period);
          const auto bd = percent_change(samples.before, samples.during);
          const auto ba = percent_change(samples.before, samples.after);
          const std::string stat =
              metric == Metric::neg_words ? "neg_word_count" : "mean_sentiment";
          write_csv_row(out.stream(),
                        {cohort, stat, "before_vs_during",
                         bd ? format_double(*bd) : "NA"});
          write_csv_row(out.stream(),
                        {cohort, stat, "before_vs_after",
                         ba ? format_double(*ba) : "NA"});
        }
      }
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "analyze: " << e.what() << '\n';
    return 1;
  }
}

int cmd_compare(const RunConfig& config) {
  try {
    const EmotionLexicon lex = lexicon_from(config);
    const Corpus a = load_and_score(config, lex, config.posts_path,
                                    config.platform, "corpus_a");
    const Corpus b = load_and_score(config, lex, config.posts_b_path,
                                    config.platform_b, "corpus_b");
    const std::vector<std::string> keywords =
        config.keywords_path.empty() ? default_storming_keywords()
                                     : load_keywords(config.keywords_path);

    MetaHeader meta = base_meta(config, &lex);
    meta.set("corpus_a", config.posts_path);
    meta.set("corpus_b", config.posts_b_path);
    const std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);

    // Trivial memberships covering each corpus.
    CohortMembership all_a, all_b;
    for (const auto& p : a.posts) all_a.all.insert(p.author);
    for (const auto& p : b.posts) all_b.all.insert(p.author);
    const CohortIndex index_a = make_cohort_index(a.posts, all_a, "all");
    const CohortIndex index_b = make_cohort_index(b.posts, all_b, "all");

    auto per_post_values = [](const Corpus& corpus, Metric metric) {
      std::vector<double> values;
      for (const auto& s : corpus.scores)
        if (const auto v = metric_value(s, metric)) values.push_back(*v);
      return values;
    };
    auto hourly_means = [&](const Corpus& corpus, const CohortIndex& index,
                            Metric metric) {
      const auto series = bucket_series(corpus.posts, corpus.scores, index,
                                        metric, config.bucket_width);
      std::vector<double> means;
      for (const auto& bucket : series.buckets)
        if (!bucket.empty()) means.push_back(bucket.mean);
      return means;
    };

    {
      OutputStream out((dir / "compare_report.csv").string());
      meta.write_csv(out.stream());
      write_csv_row(out.stream(), {"comparison", "granularity", "metric", "d",
                                   "p", "n1", "n2"});
      auto emit = [&](const std::string& comparison,
                      const std::string& granularity, Metric metric,
                      const std::vector<double>& va,
                      const std::vector<double>& vb) {
        std::vector<std::string> row = {comparison, granularity,
                                        std::string(metric_name(metric))};
        if (!va.empty() && !vb.empty()) {
          const auto r = ks_two_sample(
              Eigen::Map<const Eigen::VectorXd>(
                  va.data(), static_cast<Eigen::Index>(va.size())),
              Eigen::Map<const Eigen::VectorXd>(
                  vb.data(), static_cast<Eigen::Index>(vb.size())));
          row.push_back(format_double(r.d));
          row.push_back(format_double(r.p));
        } else {
          row.emplace_back();
          row.emplace_back();
        }
        row.push_back(std::to_string(va.size()));
        row.push_back(std::to_string(vb.size()));
        write_csv_row(out.stream(), row);
      };

      for (const Metric metric : kReportMetrics) {
        emit("a_vs_b", "per_post", metric, per_post_values(a, metric),
             per_post_values(b, metric));
        emit("a_vs_b", "hourly_mean", metric, hourly_means(a, index_a, metric),
             hourly_means(b, index_b, metric));
      }

      // Keyword split within each corpus (storming-related vs the rest).
      for (const auto& [label, corpus] :
           {std::make_pair(std::string("keywords_vs_rest_a"), &a),
            std::make_pair(std::string("keywords_vs_rest_b"), &b)}) {
        const auto part = partition_by_keywords(corpus->posts, keywords);
        for (const Metric metric : kReportMetrics) {
          std::vector<double> matched, unmatched;
          for (std::size_t i = 0; i < corpus->posts.size(); ++i) {
            const auto v = metric_value(corpus->scores[i], metric);
            if (!v) continue;
            (part.matched.count(corpus->posts[i].id) ? matched : unmatched)
                .push_back(*v);
          }
          emit(label, "per_post", metric, matched, unmatched);
        }
      }
    }
    {
      OutputStream out((dir / "keyword_partition.csv").string());
      meta.write_csv(out.stream());
      write_csv_row(out.stream(), {"corpus", "matched", "unmatched"});
      const auto part_a = partition_by_keywords(a.posts, keywords);
      const auto part_b = partition_by_keywords(b.posts, keywords);
      write_csv_row(out.stream(), {"a", std::to_string(part_a.matched.size()),
                                   std::to_string(part_a.unmatched.size())});
      write_csv_row(out.stream(), {"b", std::to_string(part_b.matched.size()),
                                   std::to_string(part_b.unmatched.size())});
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "compare: " << e.what() << '\n';
    return 1;
  }
}

int cmd_validate(const RunConfig& config) {
  try {
    const EmotionLexicon lex = lexicon_from(config);
    const Corpus corpus = load_and_score(config, lex, config.posts_path,
                                         config.platform, "posts");
    auto annotations = load_annotations(config.annotations_path);
    print_ingest("annotations", annotations.report);

    std::vector<Metric> dimensions;
    if (config.dimension == "all") {
      std::set<int> seen;
      for (const auto& a : annotations.records)
        seen.insert(static_cast<int>(a.dimension));
      for (const Metric m : kReportMetrics)
        if (seen.count(static_cast<int>(m))) dimensions.push_back(m);
    } else {
      const auto m = parse_metric(config.dimension);
      if (!m || *m == Metric::neg_words)
        throw ConfigError("unknown dimension '" + config.dimension + "'");
      dimensions.push_back(*m);
    }

    const MetaHeader meta = base_meta(config, &lex);
    const std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);
    OutputStream out((dir / "validation_report.csv").string());
    meta.write_csv(out.stream());
    write_csv_row(out.stream(), {"dimension", "items", "raters", "w", "chi2",
                                 "p_w", "r_s", "p_rs"});
    for (const Metric dim : dimensions) {
      const auto report =
          validate_against_annotations(annotations.records, corpus.scores, dim);
      write_csv_row(
          out.stream(),
          {std::string(metric_name(dim)), std::to_string(report.agreement.items),
           std::to_string(report.agreement.raters),
           format_double(report.agreement.w), format_double(report.agreement.chi2),
           format_double(report.agreement.p),
           report.corr ? format_double(report.corr->rs) : "NA",
           report.corr ? format_double(report.corr->p) : "NA"});
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "validate: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace emodyn
