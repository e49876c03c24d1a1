#pragma once

#include "emodyn/corpus.hpp"
#include "emodyn/affect.hpp"
#include "emodyn/types.hpp"

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace emodyn {

struct KsResult {
  double d = 0.0;
  double p = 1.0;
  Eigen::Index n1 = 0;
  Eigen::Index n2 = 0;
};

// Two-sample Kolmogorov-Smirnov statistic, computed exactly by merging the
// sorted samples and evaluating both ECDFs after each run of equal values
// (ties need no continuity assumption). The p-value is the asymptotic
// Kolmogorov tail at lambda = (sqrt(ne) + 0.12 + 0.11/sqrt(ne)) * d with
// ne = n1*n2/(n1+n2); with ties it is conservative.
KsResult ks_two_sample(const Eigen::Ref<const Eigen::VectorXd>& a,
                       const Eigen::Ref<const Eigen::VectorXd>& b);

// Average ranks (1-based); tied values share the mean of their positions.
Eigen::VectorXd average_ranks(const Eigen::Ref<const Eigen::VectorXd>& v);

struct SpearmanResult {
  double rs = 0.0;
  double p = 1.0;
  Eigen::Index n = 0;
};

// Pearson correlation of average ranks; p from the t approximation with
// n-2 degrees of freedom. nullopt when either variable has zero rank
// variance.
std::optional<SpearmanResult> spearman(
    const Eigen::Ref<const Eigen::VectorXd>& x,
    const Eigen::Ref<const Eigen::VectorXd>& y);

struct AgreementResult {
  double w = 0.0;
  double chi2 = 0.0;
  double p = 1.0;
  int raters = 0;
  int items = 0;
};

// Kendall's coefficient of concordance with the standard tie correction:
// W = 12 S / (m^2 (k^3 - k) - m T). chi2 = m (k-1) W with k-1 degrees of
// freedom. ratings is items x raters.
AgreementResult kendalls_w(const Eigen::Ref<const Eigen::MatrixXd>& ratings);

struct ValidationReport {
  AgreementResult agreement;             // interrater agreement on the human ratings
  std::optional<SpearmanResult> corr;    // mean human rating vs tool score
  std::vector<std::string> item_ids;     // items entering the computation
};

// Compares human annotations on one dimension against tool scores.
// Annotations must form a complete items x raters design and every item
// needs a signal-bearing tool score; violations raise an error naming ids.
ValidationReport validate_against_annotations(
    const std::vector<AnnotationRecord>& annotations,
    const std::vector<DocumentScore>& scores, Metric dimension);

}  // namespace emodyn
