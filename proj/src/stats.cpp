#include "emodyn/stats.hpp"

#include "emodyn/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace emodyn {

KsResult ks_two_sample(const Eigen::Ref<const Eigen::VectorXd>& a,
                       const Eigen::Ref<const Eigen::VectorXd>& b) {
  const Eigen::Index n1 = a.size();
  const Eigen::Index n2 = b.size();
  if (n1 < 1 || n2 < 1)
    throw std::invalid_argument("ks_two_sample: empty sample");

  std::vector<double> sa(a.data(), a.data() + n1);
  std::vector<double> sb(b.data(), b.data() + n2);
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());

  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < sa.size() || j < sb.size()) {
    const double v = (j >= sb.size() || (i < sa.size() && sa[i] <= sb[j]))
                         ? sa[i]
                         : sb[j];
    while (i < sa.size() && sa[i] == v) ++i;
    while (j < sb.size() && sb[j] == v) ++j;
    const double diff =
        std::fabs(static_cast<double>(i) / static_cast<double>(n1) -
                  static_cast<double>(j) / static_cast<double>(n2));
    d = std::max(d, diff);
  }

  KsResult r;
  r.d = d;
  r.n1 = n1;
  r.n2 = n2;
  if (d == 0.0) {
    r.p = 1.0;
  } else {
    const double ne = static_cast<double>(n1) * static_cast<double>(n2) /
                      static_cast<double>(n1 + n2);
    const double sqrt_ne = std::sqrt(ne);
    const double lambda = (sqrt_ne + 0.12 + 0.11 / sqrt_ne) * d;
    r.p = kolmogorov_q(lambda);
  }
  return r;
}

Eigen::VectorXd average_ranks(const Eigen::Ref<const Eigen::VectorXd>& v) {
  const Eigen::Index n = v.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index l, Eigen::Index r) { return v[l] < v[r]; });
  Eigen::VectorXd ranks(n);
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

std::optional<SpearmanResult> spearman(
    const Eigen::Ref<const Eigen::VectorXd>& x,
    const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("spearman: samples differ in length");
  const Eigen::Index n = x.size();
  if (n < 3) throw std::invalid_argument("spearman: need at least 3 pairs");

  const Eigen::VectorXd rx = average_ranks(x);
  const Eigen::VectorXd ry = average_ranks(y);
  const Eigen::VectorXd cx = rx.array() - rx.mean();
  const Eigen::VectorXd cy = ry.array() - ry.mean();
  const double vx = cx.squaredNorm();
  const double vy = cy.squaredNorm();
  if (vx == 0.0 || vy == 0.0) return std::nullopt;

  SpearmanResult r;
  r.n = n;
  r.rs = cx.dot(cy) / std::sqrt(vx * vy);
  r.rs = std::clamp(r.rs, -1.0, 1.0);
  const double df = static_cast<double>(n - 2);
  if (std::fabs(r.rs) >= 1.0) {
    r.p = 0.0;
  } else {
    const double t = r.rs * std::sqrt(df / (1.0 - r.rs * r.rs));
    r.p = student_t_two_sided_p(t, df);
  }
  return r;
}

AgreementResult kendalls_w(const Eigen::Ref<const Eigen::MatrixXd>& ratings) {
  const Eigen::Index k = ratings.rows();  // items
  const Eigen::Index m = ratings.cols();  // raters
  if (k < 2) throw std::invalid_argument("kendalls_w: need at least 2 items");
  if (m < 2) throw std::invalid_argument("kendalls_w: need at least 2 raters");

  Eigen::VectorXd rank_sums = Eigen::VectorXd::Zero(k);
  double tie_correction = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    const Eigen::VectorXd ranks = average_ranks(ratings.col(j));
    rank_sums += ranks;
    // Sum of t^3 - t over tie groups of this rater.
    std::map<double, int> groups;
    for (Eigen::Index i = 0; i < k; ++i) ++groups[ranks[i]];
    for (const auto& [rank, t] : groups)
      tie_correction += static_cast<double>(t) * t * t - t;
  }

  const double mean_sum = rank_sums.mean();
  const double s = (rank_sums.array() - mean_sum).square().sum();
  const double md = static_cast<double>(m);
  const double kd = static_cast<double>(k);
  const double denom = md * md * (kd * kd * kd - kd) - md * tie_correction;
  if (denom <= 0.0)
    throw std::invalid_argument(
        "kendalls_w: degenerate ratings (every rater ties all items)");

  AgreementResult r;
  r.raters = static_cast<int>(m);
  r.items = static_cast<int>(k);
  r.w = 12.0 * s / denom;
  r.w = std::clamp(r.w, 0.0, 1.0);
  r.chi2 = md * (kd - 1.0) * r.w;
  r.p = chi_squared_upper_p(r.chi2, kd - 1.0);
  return r;
}

ValidationReport validate_against_annotations(
    const std::vector<AnnotationRecord>& annotations,
    const std::vector<DocumentScore>& scores, Metric dimension) {
  std::map<std::string, std::map<std::string, int>> by_item;  // item -> rater -> rating
  std::map<std::string, int> rater_index;
  for (const auto& a : annotations) {
    if (a.dimension != dimension) continue;
    by_item[a.item_id][a.rater_id] = a.rating;
    rater_index.emplace(a.rater_id, 0);
  }
  if (by_item.size() < 2)
    throw std::invalid_argument(
        "validate_against_annotations: need at least 2 annotated items");
  {
    int idx = 0;
    for (auto& [rater, i] : rater_index) i = idx++;
  }

  std::unordered_map<std::string, const DocumentScore*> score_by_id;
  for (const auto& s : scores) score_by_id.emplace(s.post_id, &s);

  const Eigen::Index k = static_cast<Eigen::Index>(by_item.size());
  const Eigen::Index m = static_cast<Eigen::Index>(rater_index.size());
  Eigen::MatrixXd ratings(k, m);
  Eigen::VectorXd mean_human(k);
  Eigen::VectorXd tool(k);

  ValidationReport report;
  std::string missing_scores;
  std::string missing_cells;
  Eigen::Index row = 0;
  for (const auto& [item, raters] : by_item) {
    report.item_ids.push_back(item);
    double sum = 0.0;
    for (const auto& [rater, idx] : rater_index) {
      const auto it = raters.find(rater);
      if (it == raters.end()) {
        missing_cells += (missing_cells.empty() ? "" : ", ") + item + "/" + rater;
        continue;
      }
      ratings(row, idx) = it->second;
      sum += it->second;
    }
    mean_human[row] = sum / static_cast<double>(m);
    const auto sit = score_by_id.find(item);
    std::optional<double> value;
    if (sit != score_by_id.end()) value = metric_value(*sit->second, dimension);
    if (!value) {
      missing_scores += (missing_scores.empty() ? "" : ", ") + item;
    } else {
      tool[row] = *value;
    }
    ++row;
  }
  if (!missing_cells.empty())
    throw std::invalid_argument(
        "validate_against_annotations: incomplete rating design, missing " +
        missing_cells);
  if (!missing_scores.empty())
    throw std::invalid_argument(
        "validate_against_annotations: no tool score for items: " +
        missing_scores);

  report.agreement = kendalls_w(ratings);
  if (k >= 3) report.corr = spearman(mean_human, tool);
  return report;
}

}  // namespace emodyn
