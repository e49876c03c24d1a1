#include "emodyn/dynamics.hpp"

#include "emodyn/timeutil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace emodyn {

PeriodSpec PeriodSpec::jan6_default() {
  const std::int64_t day = days_from_civil(2021, 1, 6) * 86400;
  return from_est(day + 11 * 3600, day + 19 * 3600 + 30 * 60);
}

PeriodSpec PeriodSpec::from_est(std::int64_t before_end_est,
                                std::int64_t during_end_est) {
  if (before_end_est >= during_end_est)
    throw std::invalid_argument("PeriodSpec: before_end must precede during_end");
  PeriodSpec s;
  s.before_end_utc = est_to_utc(before_end_est);
  s.during_end_utc = est_to_utc(during_end_est);
  return s;
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

CohortIndex make_cohort_index(const std::vector<Post>& posts,
                              const CohortMembership& membership,
                              const std::string& cohort) {
  const std::set<std::string>& group = membership.group(cohort);
  CohortIndex index;
  index.cohort = cohort;
  for (std::size_t i = 0; i < posts.size(); ++i)
    if (group.count(posts[i].author)) index.order.push_back(i);
  std::sort(index.order.begin(), index.order.end(),
            [&](std::size_t a, std::size_t b) {
              if (posts[a].created_at != posts[b].created_at)
                return posts[a].created_at < posts[b].created_at;
              return posts[a].id < posts[b].id;
            });
  return index;
}

TimeBucketSeries bucket_series(const std::vector<Post>& posts,
                               const std::vector<DocumentScore>& scores,
                               const CohortMembership& membership,
                               const std::string& cohort, Metric metric,
                               std::int64_t width, Weighting weighting) {
  return bucket_series(posts, scores, make_cohort_index(posts, membership, cohort),
                       metric, width, weighting);
}

TimeBucketSeries bucket_series(const std::vector<Post>& posts,
                               const std::vector<DocumentScore>& scores,
                               const CohortIndex& index, Metric metric,
                               std::int64_t width, Weighting weighting) {
  if (width <= 0) throw std::invalid_argument("bucket_series: width must be > 0");
  if (posts.size() != scores.size())
    throw std::invalid_argument("bucket_series: posts/scores size mismatch");

  TimeBucketSeries series;
  series.metric = metric;
  series.cohort = index.cohort;
  series.width = width;

  struct Cell {
    double sum = 0.0;
    int n = 0;
    // per-user accumulation for Weighting::users
    std::map<std::string, std::pair<double, int>> per_user;
  };
  std::map<std::int64_t, Cell> cells;  // bucket start (EST) -> accumulators

  for (const std::size_t i : index.order) {
    const auto value = metric_value(scores[i], metric);
    if (!value) continue;
    const std::int64_t est = utc_to_est(posts[i].created_at);
    const std::int64_t start = floor_div(est, width) * width;
    Cell& cell = cells[start];
    cell.sum += *value;
    ++cell.n;
    if (weighting == Weighting::users) {
      auto& [usum, un] = cell.per_user[posts[i].author];
      usum += *value;
      ++un;
    }
  }
  if (cells.empty()) return series;

  const std::int64_t first = cells.begin()->first;
  const std::int64_t last = cells.rbegin()->first;
  for (std::int64_t start = first; start <= last; start += width) {
    Bucket b;
    b.start_est = start;
    const auto it = cells.find(start);
    if (it != cells.end()) {
      b.n_posts = it->second.n;
      if (weighting == Weighting::posts) {
        b.mean = it->second.sum / static_cast<double>(it->second.n);
      } else {
        double sum = 0.0;
        for (const auto& [user, acc] : it->second.per_user)
          sum += acc.first / static_cast<double>(acc.second);
        b.mean = sum / static_cast<double>(it->second.per_user.size());
      }
    }
    series.buckets.push_back(b);
  }
  return series;
}

PeriodSamples partition_periods(const std::vector<Post>& posts,
                                const std::vector<DocumentScore>& scores,
                                const CohortMembership& membership,
                                const std::string& cohort, Metric metric,
                                const PeriodSpec& spec) {
  return partition_periods(posts, scores,
                           make_cohort_index(posts, membership, cohort), metric,
                           spec);
}

PeriodSamples partition_periods(const std::vector<Post>& posts,
                                const std::vector<DocumentScore>& scores,
                                const CohortIndex& index, Metric metric,
                                const PeriodSpec& spec) {
  if (posts.size() != scores.size())
    throw std::invalid_argument("partition_periods: posts/scores size mismatch");
  PeriodSamples samples;
  for (const std::size_t i : index.order) {
    const auto value = metric_value(scores[i], metric);
    if (!value) continue;
    const std::int64_t t = posts[i].created_at;
    if (t < spec.before_end_utc)
      samples.before.push_back(*value);
    else if (t < spec.during_end_utc)
      samples.during.push_back(*value);
    else
      samples.after.push_back(*value);
  }
  return samples;
}

Eigen::VectorXd loess_fit(const Eigen::Ref<const Eigen::VectorXd>& x,
                          const Eigen::Ref<const Eigen::VectorXd>& y,
                          const Eigen::Ref<const Eigen::VectorXd>& x_eval,
                          int q) {
  const Eigen::Index m = x.size();
  if (m != y.size()) throw std::invalid_argument("loess_fit: x/y size mismatch");
  if (m < 3) throw std::invalid_argument("loess_fit: need at least 3 points");
  q = std::clamp<int>(q, 2, static_cast<int>(m));

  Eigen::VectorXd out(x_eval.size());
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  for (Eigen::Index e = 0; e < x_eval.size(); ++e) {
    const double xe = x_eval[e];
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + q, order.end(),
                      [&](Eigen::Index a, Eigen::Index b) {
                        const double da = std::fabs(x[a] - xe);
                        const double db = std::fabs(x[b] - xe);
                        if (da != db) return da < db;
                        return a < b;
                      });
    const double d_max = std::fabs(x[order[static_cast<std::size_t>(q) - 1]] - xe);

    // Weighted least squares of y on (x - xe); the intercept is the fit.
    double sw = 0.0, swx = 0.0, swxx = 0.0, swy = 0.0, swxy = 0.0;
    for (int k = 0; k < q; ++k) {
      const Eigen::Index idx = order[static_cast<std::size_t>(k)];
      const double dx = x[idx] - xe;
      double w = 1.0;
      if (d_max > 0.0) {
        const double u = std::fabs(dx) / d_max;
        const double t = 1.0 - u * u * u;
        w = t * t * t;
      }
      if (w <= 0.0) continue;
      sw += w;
      swx += w * dx;
      swxx += w * dx * dx;
      swy += w * y[idx];
      swxy += w * dx * y[idx];
    }
    const double det = sw * swxx - swx * swx;
    if (det > 1e-12 * std::max(sw * swxx, 1e-300)) {
      out[e] = (swxx * swy - swx * swxy) / det;
    } else {
      // Neighborhood degenerated to (numerically) one location; fall back
      // to the weighted mean.
      out[e] = swy / sw;
    }
  }
  return out;
}

Eigen::VectorXd loess_smooth(const TimeBucketSeries& series, double span) {
  if (!(span > 0.0) || span > 1.0)
    throw std::invalid_argument("loess_smooth: span must be in (0,1]");

  std::vector<Eigen::Index> filled;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(series.buckets.size()); ++i)
    if (!series.buckets[static_cast<std::size_t>(i)].empty()) filled.push_back(i);
  const Eigen::Index m = static_cast<Eigen::Index>(filled.size());
  if (m < 3)
    throw std::invalid_argument("loess_smooth: need at least 3 non-empty buckets");

  Eigen::VectorXd x(m), y(m);
  const double origin = static_cast<double>(series.buckets.front().start_est);
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto& b = series.buckets[static_cast<std::size_t>(filled[k])];
    x[k] = (static_cast<double>(b.start_est) - origin) /
           static_cast<double>(series.width);
    y[k] = b.mean;
  }
  const int q = static_cast<int>(std::ceil(span * static_cast<double>(m)));
  const Eigen::VectorXd fitted = loess_fit(x, y, x, q);

  Eigen::VectorXd out = Eigen::VectorXd::Constant(
      static_cast<Eigen::Index>(series.buckets.size()),
      std::numeric_limits<double>::quiet_NaN());
  for (Eigen::Index k = 0; k < m; ++k) out[filled[k]] = fitted[k];
  return out;
}

std::optional<double> percent_change(const std::vector<double>& a,
                                     const std::vector<double>& b,
                                     ChangeStatistic) {
  if (a.empty() || b.empty()) return std::nullopt;
  const double mean_a =
      std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(a.size());
  const double mean_b =
      std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(b.size());
  if (mean_a == 0.0) return std::nullopt;
  return 100.0 * (mean_b - mean_a) / mean_a;
}

}  // namespace emodyn
