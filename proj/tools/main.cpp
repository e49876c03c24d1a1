#include "emodyn/pipeline.hpp"
#include "emodyn/types.hpp"

#include <CLI11.hpp>

#include <functional>
#include <string>

namespace {

using emodyn::RunConfig;

void add_common(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--threads", config.threads,
                  "Worker threads for scoring (0 = auto)");
  cmd->add_option("--strictness", config.strictness,
                  "Malformed-record handling: skip | abort")
      ->check(CLI::IsMember({"skip", "abort"}));
}

void add_corpus(CLI::App* cmd, RunConfig& config, bool required = true) {
  auto* opt = cmd->add_option("--posts", config.posts_path,
                              "Posts file (NDJSON or CSV)");
  if (required) opt->required();
  cmd->add_option("--posts-format", config.posts_format,
                  "Posts file format: ndjson | csv")
      ->check(CLI::IsMember({"ndjson", "csv"}));
  cmd->add_option("--platform", config.platform,
                  "Platform for records lacking one: parler | twitter");
  cmd->add_option("--window-start", config.window_start,
                  "Corpus window start (UTC ISO-8601, inclusive)");
  cmd->add_option("--window-end", config.window_end,
                  "Corpus window end (UTC ISO-8601, exclusive)");
}

void add_lexicon(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--lexicon", config.lexicon_path, "Emotion lexicon file")
      ->envname("EMODYN_LEXICON");
  cmd->add_option("--lexicon-format", config.lexicon_format,
                  "Lexicon format: nrc_flags | category_list")
      ->check(CLI::IsMember({"nrc_flags", "category_list"}));
}

void add_scoring(CLI::App* cmd, RunConfig& config) {
  cmd->add_flag("--negation", config.negation,
                "Invert the valence of terms following a negator");
  cmd->add_option("--negation-window", config.negation_window,
                  "Tokens a negation reaches past the negator")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--negators", config.negators_path,
                  "Negator word list (one per line, # comments)");
  cmd->add_flag("--shared-denominator", config.shared_denominator,
                "Normalize by the all-category total instead of per family");
  cmd->add_flag("--mean-dyads", config.mean_dyads,
                "Average instead of sum the two components of each dyad");
  cmd->add_option("--dyads", config.dyads,
                  "Override dyad pairs, e.g. outrage=anger+surprise,...");
}

void add_cohorts(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--profiles", config.profiles_path,
                  "User profile file (user id + biography)");
  cmd->add_option("--profiles-format", config.profiles_format,
                  "Profiles file format: ndjson | csv")
      ->check(CLI::IsMember({"ndjson", "csv"}));
  cmd->add_option("--cohorts", config.cohorts_path,
                  "Cohort definitions: 'name: #tag1 #tag2 ...' per line");
  cmd->add_flag("--exclusive", config.exclusive_cohorts,
                "Drop users belonging to more than one cohort");
}

void add_periods(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--before-end", config.before_end,
                  "End of the 'before' period (EST wall clock)");
  cmd->add_option("--during-end", config.during_end,
                  "End of the 'during' period (EST wall clock)");
  cmd->add_option("--bucket-width", config.bucket_width,
                  "Time bucket width in seconds")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--span", config.loess_span,
                  "LOESS span as a fraction of the series");
  cmd->add_option("--weighting", config.weighting,
                  "Bucket means weight: posts | users")
      ->check(CLI::IsMember({"posts", "users"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexicon-based emotion scoring and event-window analysis for "
               "social media corpora"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(emodyn::kToolName) + " " +
                                        std::string(emodyn::kToolVersion));
  // Key-value config file; keys live in a [subcommand] section (or use
  // dotted keys like score.posts). Flags override file values.
  app.set_config("--config", "", "Config file with [subcommand] sections");

  RunConfig config;
  std::function<int()> run;

  auto* score = app.add_subcommand(
      "score", "Score each post into emotions, sentiment, and dyads");
  add_common(score, config);
  add_corpus(score, config);
  add_lexicon(score, config);
  add_scoring(score, config);
  score->add_option("--out", config.out_path, "Output file ('-' = stdout)");
  score->add_option("--out-format", config.out_format,
                    "Output format: csv | ndjson")
      ->check(CLI::IsMember({"csv", "ndjson"}));
  score->add_flag("--include-meta", config.include_meta,
                  "Add author/created_at/neg_count columns for later analysis");
  score->callback([&] { run = [&] { return emodyn::cmd_score(config); }; });

  auto* analyze = app.add_subcommand(
      "analyze", "Series, heatmaps, period KS tests and change report");
  add_common(analyze, config);
  add_corpus(analyze, config, /*required=*/false);
  add_lexicon(analyze, config);
  add_scoring(analyze, config);
  add_cohorts(analyze, config);
  add_periods(analyze, config);
  analyze->add_option("--scores", config.scores_path,
                      "Scored NDJSON from 'score --include-meta' instead of raw posts");
  analyze->add_option("--outdir", config.out_dir, "Output directory");
  analyze->callback([&] { run = [&] { return emodyn::cmd_analyze(config); }; });

  auto* compare = app.add_subcommand(
      "compare", "Cross-corpus KS comparison plus keyword partition");
  add_common(compare, config);
  add_corpus(compare, config);
  add_lexicon(compare, config);
  add_scoring(compare, config);
  add_periods(compare, config);
  compare->add_option("--posts-b", config.posts_b_path, "Second corpus")
      ->required();
  compare->add_option("--platform-b", config.platform_b,
                      "Platform default for the second corpus");
  compare->add_option("--keywords", config.keywords_path,
                      "Keyword phrases file for the topical partition");
  compare->add_option("--outdir", config.out_dir, "Output directory");
  compare->callback([&] { run = [&] { return emodyn::cmd_compare(config); }; });

  auto* validate = app.add_subcommand(
      "validate", "Agreement between human annotations and tool scores");
  add_common(validate, config);
  add_corpus(validate, config);
  add_lexicon(validate, config);
  add_scoring(validate, config);
  validate->add_option("--annotations", config.annotations_path,
                       "Annotation CSV: item_id,rater_id,dimension,rating")
      ->required();
  validate->add_option("--dimension", config.dimension,
                       "Dimension to validate (default: all annotated)");
  validate->add_option("--outdir", config.out_dir, "Output directory");
  validate->callback(
      [&] { run = [&] { return emodyn::cmd_validate(config); }; });

  auto* graph = app.add_subcommand(
      "graph", "Interaction edge list from replies and reposts");
  add_common(graph, config);
  add_corpus(graph, config);
  graph->add_option("--min-weight", config.min_weight,
                    "Emit edges with at least this many interactions");
  graph->add_option("--out", config.out_path, "Output file ('-' = stdout)");
  graph->callback([&] { run = [&] { return emodyn::cmd_graph(config); }; });

  auto* cohorts = app.add_subcommand(
      "cohorts", "Cohort membership, summary table, and overlap matrix");
  add_common(cohorts, config);
  add_corpus(cohorts, config);
  add_cohorts(cohorts, config);
  cohorts->add_option("--outdir", config.out_dir, "Output directory");
  cohorts->callback(
      [&] { run = [&] { return emodyn::cmd_cohorts(config); }; });

  CLI11_PARSE(app, argc, argv);
  return run ? run() : 1;
}
