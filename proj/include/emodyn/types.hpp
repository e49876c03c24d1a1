#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace emodyn {

inline constexpr std::string_view kToolName = "emodyn";
inline constexpr std::string_view kToolVersion = "0.1.0";

inline constexpr int kNumEmotions = 8;
inline constexpr int kNumDyads = 4;
inline constexpr int kNumCategories = 10;

// Fixed-size dense types used throughout the scoring core.
template <class Scalar>
using EmotionArray = Eigen::Array<Scalar, kNumEmotions, 1>;

template <class Scalar>
using DyadArray = Eigen::Array<Scalar, kNumDyads, 1>;

// The eight basic emotions, in canonical index order.
enum class Emotion : int {
  anger = 0,
  anticipation,
  disgust,
  fear,
  joy,
  sadness,
  surprise,
  trust,
};

// Lexicon categories: the basic emotions plus the two valence classes.
enum class Category : int {
  anger = 0,
  anticipation,
  disgust,
  fear,
  joy,
  sadness,
  surprise,
  trust,
  positive,
  negative,
};

// Compound emotions, each the combination of two basic emotions.
enum class Dyad : int {
  disapproval = 0,
  unbelief,
  outrage,
  guilt,
};

std::string_view emotion_name(Emotion e);
std::string_view category_name(Category c);
std::string_view dyad_name(Dyad d);

std::optional<Emotion> parse_emotion(std::string_view name);
std::optional<Category> parse_category(std::string_view name);
std::optional<Dyad> parse_dyad(std::string_view name);

// Opposite on the emotion wheel; used when a negation flips a matched term.
Emotion opposite(Emotion e);

// Which pair of basic emotions each dyad sums. Configurable so alternative
// dyad definitions can be swapped in.
struct DyadTable {
  std::array<std::pair<Emotion, Emotion>, kNumDyads> pairs;

  static DyadTable standard();
};

// Everything that can be measured per post. neg_words is the raw count of
// negative-valence terms (always defined), the rest are rate metrics that
// may carry no signal for a given post.
enum class Metric : int {
  sentiment = 0,
  anger,
  anticipation,
  disgust,
  fear,
  joy,
  sadness,
  surprise,
  trust,
  disapproval,
  unbelief,
  outrage,
  guilt,
  neg_words,
};

std::string_view metric_name(Metric m);
std::optional<Metric> parse_metric(std::string_view name);

// The 13 rate metrics reported in analyses (excludes neg_words).
inline constexpr std::array<Metric, 13> kReportMetrics = {
    Metric::sentiment,   Metric::anger,    Metric::anticipation,
    Metric::disgust,     Metric::fear,     Metric::joy,
    Metric::sadness,     Metric::surprise, Metric::trust,
    Metric::disapproval, Metric::unbelief, Metric::outrage,
    Metric::guilt,
};

}  // namespace emodyn
