#pragma once

#include "emodyn/affect.hpp"
#include "emodyn/cohort.hpp"
#include "emodyn/corpus.hpp"
#include "emodyn/types.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace emodyn {

// Event period boundaries; posts fall into half-open intervals
// [..., before_end), [before_end, during_end), [during_end, ...).
struct PeriodSpec {
  std::int64_t before_end_utc = 0;
  std::int64_t during_end_utc = 0;

  // January 6, 2021: 11:00 and 19:30 EST.
  static PeriodSpec jan6_default();
  static PeriodSpec from_est(std::int64_t before_end_est,
                             std::int64_t during_end_est);
};

struct Bucket {
  std::int64_t start_est = 0;  // EST epoch seconds of the bucket start
  double mean = 0.0;           // meaningless when n_posts == 0
  int n_posts = 0;             // contributing (signal) posts

  bool empty() const { return n_posts == 0; }
};

struct TimeBucketSeries {
  Metric metric = Metric::sentiment;
  std::string cohort;
  std::int64_t width = 3600;
  std::vector<Bucket> buckets;  // contiguous, sorted by start
};

enum class Weighting { posts, users };

// Post indices of one cohort in (created_at, post_id) order; building it
// once per cohort keeps repeated aggregations cheap and order-stable.
struct CohortIndex {
  std::string cohort;
  std::vector<std::size_t> order;
};

CohortIndex make_cohort_index(const std::vector<Post>& posts,
                              const CohortMembership& membership,
                              const std::string& cohort);

// Per-bucket arithmetic mean of the metric over a cohort's signal posts,
// on an EST-aligned grid. Buckets without signal stay explicit gaps.
// Aggregation runs in (created_at, post_id) order so results do not depend
// on input order or scoring parallelism. With Weighting::users each user
// contributes their within-bucket mean once.
TimeBucketSeries bucket_series(const std::vector<Post>& posts,
                               const std::vector<DocumentScore>& scores,
                               const CohortMembership& membership,
                               const std::string& cohort, Metric metric,
                               std::int64_t width = 3600,
                               Weighting weighting = Weighting::posts);
TimeBucketSeries bucket_series(const std::vector<Post>& posts,
                               const std::vector<DocumentScore>& scores,
                               const CohortIndex& index, Metric metric,
                               std::int64_t width = 3600,
                               Weighting weighting = Weighting::posts);

struct PeriodSamples {
  std::vector<double> before;
  std::vector<double> during;
  std::vector<double> after;
};

// Per-post metric values of a cohort split by event period. Posts without
// signal for the metric are excluded (neg_words always has signal).
PeriodSamples partition_periods(const std::vector<Post>& posts,
                                const std::vector<DocumentScore>& scores,
                                const CohortMembership& membership,
                                const std::string& cohort, Metric metric,
                                const PeriodSpec& spec);
PeriodSamples partition_periods(const std::vector<Post>& posts,
                                const std::vector<DocumentScore>& scores,
                                const CohortIndex& index, Metric metric,
                                const PeriodSpec& spec);

// Degree-1 locally weighted regression with tricube weights over the
// q = ceil(span * m) nearest non-empty buckets, evaluated at each non-empty
// bucket. Gaps stay NaN. Reproduces constant and linear series exactly.
Eigen::VectorXd loess_smooth(const TimeBucketSeries& series, double span);

// The regression core: fit at each x_eval from (x, y) neighborhoods of q
// points. x must be strictly increasing.
Eigen::VectorXd loess_fit(const Eigen::Ref<const Eigen::VectorXd>& x,
                          const Eigen::Ref<const Eigen::VectorXd>& y,
                          const Eigen::Ref<const Eigen::VectorXd>& x_eval,
                          int q);

enum class ChangeStatistic { mean, neg_word_count };

// 100 * (mean(b) - mean(a)) / mean(a). For neg_word_count the inputs are
// per-post raw negative-term counts, so the statistic is their per-post
// mean. nullopt when mean(a) is zero or a sample is empty.
std::optional<double> percent_change(const std::vector<double>& a,
                                     const std::vector<double>& b,
                                     ChangeStatistic statistic =
                                         ChangeStatistic::mean);

}  // namespace emodyn
