#include <doctest.h>

#include "emodyn/dynamics.hpp"
#include "emodyn/timeutil.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numeric>
#include <random>

using namespace emodyn;

namespace {

std::int64_t est(const char* wall) {
  const auto t = parse_wall_clock(wall);
  REQUIRE(t.has_value());
  return est_to_utc(*t);
}

struct Fixture {
  std::vector<Post> posts;
  std::vector<DocumentScore> scores;
  CohortMembership membership;

  void add(const std::string& id, std::int64_t utc, double sentiment_value,
           const std::string& author = "u1") {
    Post p;
    p.id = id;
    p.author = author;
    p.created_at = utc;
    posts.push_back(p);
    DocumentScore s;
    s.post_id = id;
    s.sentiment = sentiment_value;
    scores.push_back(s);
    membership.all.insert(author);
  }

  void add_silent(const std::string& id, std::int64_t utc) {
    Post p;
    p.id = id;
    p.author = "u1";
    p.created_at = utc;
    posts.push_back(p);
    DocumentScore s;
    s.post_id = id;
    scores.push_back(s);
    membership.all.insert("u1");
  }
};

// Reference LOESS written independently of the implementation: uncentered
// weighted design matrix solved by QR on the sqrt-weighted system.
Eigen::VectorXd loess_reference(const Eigen::VectorXd& x,
                                const Eigen::VectorXd& y, int q) {
  const Eigen::Index m = x.size();
  Eigen::VectorXd out(m);
  for (Eigen::Index e = 0; e < m; ++e) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(m));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
      const double da = std::fabs(x[a] - x[e]);
      const double db = std::fabs(x[b] - x[e]);
      if (da != db) return da < db;
      return a < b;
    });
    idx.resize(static_cast<std::size_t>(q));
    const double dmax = std::fabs(x[idx.back()] - x[e]);
    Eigen::MatrixXd design(q, 2);
    Eigen::VectorXd target(q);
    for (int r = 0; r < q; ++r) {
      const Eigen::Index j = idx[static_cast<std::size_t>(r)];
      double w = 1.0;
      if (dmax > 0.0) {
        const double u = std::fabs(x[j] - x[e]) / dmax;
        const double t = 1.0 - u * u * u;
        w = t * t * t;
      }
      const double sw = std::sqrt(w);
      design(r, 0) = sw;
      design(r, 1) = sw * x[j];
      target[r] = sw * y[j];
    }
    const Eigen::Vector2d beta =
        design.colPivHouseholderQr().solve(target);
    out[e] = beta[0] + beta[1] * x[e];
  }
  return out;
}

TimeBucketSeries series_from(const Eigen::VectorXd& y) {
  TimeBucketSeries s;
  s.width = 3600;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    Bucket b;
    b.start_est = i * 3600;
    b.mean = y[i];
    b.n_posts = 1;
    s.buckets.push_back(b);
  }
  return s;
}

}  // namespace

TEST_SUITE("periods") {
  TEST_CASE("defaults and the half-open boundaries") {
    const auto spec = PeriodSpec::jan6_default();
    Fixture f;
    f.add("exact_before_end", est("2021-01-06 11:00:00"), 0.1);
    f.add("just_before_during_end", est("2021-01-06 19:29:59"), 0.2);
    f.add("exact_during_end", est("2021-01-06 19:30:00"), 0.3);
    f.add("early", est("2021-01-06 02:00:00"), 0.4);
    const auto s = partition_periods(f.posts, f.scores, f.membership, "all",
                                     Metric::sentiment, spec);
    CHECK(s.before == std::vector<double>{0.4});
    CHECK(s.during == std::vector<double>{0.1, 0.2});
    CHECK(s.after == std::vector<double>{0.3});
  }

  TEST_CASE("3/4/5 fixture") {
    const auto spec = PeriodSpec::jan6_default();
    Fixture f;
    int n = 0;
    for (int i = 0; i < 3; ++i)
      f.add("b" + std::to_string(i), est("2021-01-06 08:00") + 60 * n++, 0.0);
    for (int i = 0; i < 4; ++i)
      f.add("d" + std::to_string(i), est("2021-01-06 12:00") + 60 * n++, 0.0);
    for (int i = 0; i < 5; ++i)
      f.add("a" + std::to_string(i), est("2021-01-06 21:00") + 60 * n++, 0.0);
    const auto s = partition_periods(f.posts, f.scores, f.membership, "all",
                                     Metric::sentiment, spec);
    CHECK(s.before.size() == 3);
    CHECK(s.during.size() == 4);
    CHECK(s.after.size() == 5);
  }

  TEST_CASE("property: assignment is a partition of signal posts") {
    std::mt19937 rng(67);
    std::uniform_int_distribution<std::int64_t> at(
        est("2021-01-06 00:00"), est("2021-01-06 23:59"));
    std::uniform_real_distribution<double> val(-1, 1);
    std::bernoulli_distribution silent(0.3);
    const auto spec = PeriodSpec::jan6_default();
    for (int trial = 0; trial < 30; ++trial) {
      Fixture f;
      std::size_t signal = 0;
      for (int i = 0; i < 100; ++i) {
        if (silent(rng)) {
          f.add_silent("s" + std::to_string(i), at(rng));
        } else {
          f.add("p" + std::to_string(i), at(rng), val(rng));
          ++signal;
        }
      }
      const auto s = partition_periods(f.posts, f.scores, f.membership, "all",
                                       Metric::sentiment, spec);
      REQUIRE(s.before.size() + s.during.size() + s.after.size() == signal);
    }
  }

  TEST_CASE("invalid spec rejected") {
    CHECK_THROWS_AS(
        PeriodSpec::from_est(*parse_wall_clock("2021-01-06 19:30"),
                             *parse_wall_clock("2021-01-06 11:00")),
        std::invalid_argument);
  }
}

TEST_SUITE("bucket_series") {
  TEST_CASE("no posts yields an empty series") {
    Fixture f;
    f.membership.all.insert("u1");
    const auto s = bucket_series(f.posts, f.scores, f.membership, "all",
                                 Metric::sentiment);
    CHECK(s.buckets.empty());
  }

  TEST_CASE("hand mean: two posts in the 10:00 bucket") {
    Fixture f;
    f.add("p1", est("2021-01-06 10:05"), 1.0);
    f.add("p2", est("2021-01-06 10:40"), 0.0);
    const auto s = bucket_series(f.posts, f.scores, f.membership, "all",
                                 Metric::sentiment);
    REQUIRE(s.buckets.size() == 1);
    CHECK(s.buckets[0].mean == 0.5);
    CHECK(s.buckets[0].n_posts == 2);
    CHECK(format_est(est_to_utc(s.buckets[0].start_est)) == "2021-01-06 10:00");
  }

  TEST_CASE("gaps stay explicit, never 0.0") {
    Fixture f;
    f.add("p1", est("2021-01-06 08:10"), 0.5);
    f.add("p2", est("2021-01-06 11:10"), -0.5);
    f.add_silent("p3", est("2021-01-06 09:10"));  // no signal -> still a gap
    const auto s = bucket_series(f.posts, f.scores, f.membership, "all",
                                 Metric::sentiment);
    REQUIRE(s.buckets.size() == 4);
    CHECK_FALSE(s.buckets[0].empty());
    CHECK(s.buckets[1].empty());
    CHECK(s.buckets[2].empty());
    CHECK_FALSE(s.buckets[3].empty());
  }

  TEST_CASE("duplicating every post leaves bucket means unchanged") {
    std::mt19937 rng(71);
    std::uniform_int_distribution<std::int64_t> at(
        est("2021-01-06 00:00"), est("2021-01-06 23:59"));
    std::uniform_real_distribution<double> val(-1, 1);
    Fixture once;
    Fixture twice;
    for (int i = 0; i < 200; ++i) {
      const auto t = at(rng);
      const auto v = val(rng);
      once.add("p" + std::to_string(i), t, v);
      twice.add("p" + std::to_string(i), t, v);
      twice.add("dup" + std::to_string(i), t, v);
    }
    const auto s1 = bucket_series(once.posts, once.scores, once.membership,
                                  "all", Metric::sentiment);
    const auto s2 = bucket_series(twice.posts, twice.scores, twice.membership,
                                  "all", Metric::sentiment);
    REQUIRE(s1.buckets.size() == s2.buckets.size());
    for (std::size_t i = 0; i < s1.buckets.size(); ++i) {
      REQUIRE(s1.buckets[i].empty() == s2.buckets[i].empty());
      if (!s1.buckets[i].empty())
        REQUIRE(s1.buckets[i].mean ==
                doctest::Approx(s2.buckets[i].mean).epsilon(1e-12));
    }
  }

  TEST_CASE("unknown cohort is an error") {
    Fixture f;
    f.add("p1", est("2021-01-06 10:05"), 1.0);
    CHECK_THROWS_AS(bucket_series(f.posts, f.scores, f.membership, "ghosts",
                                  Metric::sentiment),
                    CohortError);
  }

  TEST_CASE("per-user weighting counts each user once") {
    Fixture f;
    // u1 posts twice (1.0, 1.0), u2 once (0.0): post-weighted 2/3, user 0.5
    f.add("p1", est("2021-01-06 10:05"), 1.0, "u1");
    f.add("p2", est("2021-01-06 10:15"), 1.0, "u1");
    f.add("p3", est("2021-01-06 10:25"), 0.0, "u2");
    const auto by_post = bucket_series(f.posts, f.scores, f.membership, "all",
                                       Metric::sentiment);
    const auto by_user = bucket_series(f.posts, f.scores, f.membership, "all",
                                       Metric::sentiment, 3600,
                                       Weighting::users);
    CHECK(by_post.buckets[0].mean == doctest::Approx(2.0 / 3.0));
    CHECK(by_user.buckets[0].mean == 0.5);
  }
}

TEST_SUITE("loess") {
  TEST_CASE("constant series reproduces itself for any span") {
    auto s = series_from(Eigen::VectorXd::Constant(12, 3.25));
    for (double span : {0.2, 0.5, 1.0}) {
      const auto fit = loess_smooth(s, span);
      for (Eigen::Index i = 0; i < fit.size(); ++i)
        CHECK(fit[i] == doctest::Approx(3.25).epsilon(1e-12));
    }
  }

  TEST_CASE("linear series reproduces itself for any span") {
    Eigen::VectorXd y(15);
    for (Eigen::Index i = 0; i < y.size(); ++i)
      y[i] = 2.0 * static_cast<double>(i) - 7.0;
    auto s = series_from(y);
    for (double span : {0.2, 0.34, 0.8, 1.0}) {
      const auto fit = loess_smooth(s, span);
      for (Eigen::Index i = 0; i < fit.size(); ++i)
        REQUIRE(fit[i] == doctest::Approx(y[i]).epsilon(1e-10));
    }
  }

  TEST_CASE("agrees with an independent reference on a 48-point noisy fixture") {
    std::mt19937 rng(73);
    std::normal_distribution<double> noise(0.0, 0.15);
    Eigen::VectorXd x(48), y(48);
    for (Eigen::Index i = 0; i < 48; ++i) {
      x[i] = static_cast<double>(i);
      y[i] = std::sin(static_cast<double>(i) / 6.0) + noise(rng);
    }
    auto s = series_from(y);
    for (double span : {0.25, 0.5}) {
      const int q = static_cast<int>(std::ceil(span * 48.0));
      const auto fit = loess_smooth(s, span);
      const auto ref = loess_reference(x, y, q);
      for (Eigen::Index i = 0; i < 48; ++i)
        REQUIRE(fit[i] == doctest::Approx(ref[i]).epsilon(1e-6));
    }
  }

  TEST_CASE("gaps are skipped and remain NaN") {
    Eigen::VectorXd y(10);
    for (Eigen::Index i = 0; i < y.size(); ++i)
      y[i] = static_cast<double>(i);
    auto s = series_from(y);
    s.buckets[4].n_posts = 0;  // introduce a gap
    const auto fit = loess_smooth(s, 0.5);
    CHECK(std::isnan(fit[4]));
    // linear data still reproduced exactly at the non-gap points
    for (Eigen::Index i = 0; i < fit.size(); ++i) {
      if (i == 4) continue;
      REQUIRE(fit[i] == doctest::Approx(y[i]).epsilon(1e-10));
    }
  }

  TEST_CASE("too few points or bad span is an error") {
    auto s = series_from(Eigen::VectorXd::Constant(2, 1.0));
    CHECK_THROWS_AS(loess_smooth(s, 0.5), std::invalid_argument);
    auto ok = series_from(Eigen::VectorXd::Constant(5, 1.0));
    CHECK_THROWS_AS(loess_smooth(ok, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(loess_smooth(ok, 1.5), std::invalid_argument);
  }
}

TEST_SUITE("percent_change") {
  TEST_CASE("identical samples change by zero") {
    const std::vector<double> s = {1.0, 2.0, 3.0};
    CHECK(percent_change(s, s) == 0.0);
  }

  TEST_CASE("mean 2 to 3 is +50%") {
    CHECK(percent_change({2.0, 2.0}, {3.0}) == 50.0);
  }

  TEST_CASE("zero baseline is undefined") {
    CHECK_FALSE(percent_change({0.0, 0.0}, {1.0}).has_value());
    CHECK_FALSE(percent_change({}, {1.0}).has_value());
  }
}
