#include "emodyn/types.hpp"

namespace emodyn {

namespace {

constexpr std::array<std::string_view, kNumEmotions> kEmotionNames = {
    "anger", "anticipation", "disgust", "fear",
    "joy",   "sadness",      "surprise", "trust"};

constexpr std::array<std::string_view, kNumDyads> kDyadNames = {
    "disapproval", "unbelief", "outrage", "guilt"};

}  // namespace

std::string_view emotion_name(Emotion e) {
  return kEmotionNames[static_cast<int>(e)];
}

std::string_view category_name(Category c) {
  const int i = static_cast<int>(c);
  if (i < kNumEmotions) return kEmotionNames[i];
  return c == Category::positive ? "positive" : "negative";
}

std::string_view dyad_name(Dyad d) { return kDyadNames[static_cast<int>(d)]; }

std::optional<Emotion> parse_emotion(std::string_view name) {
  for (int i = 0; i < kNumEmotions; ++i)
    if (name == kEmotionNames[i]) return static_cast<Emotion>(i);
  return std::nullopt;
}

std::optional<Category> parse_category(std::string_view name) {
  if (auto e = parse_emotion(name)) return static_cast<Category>(*e);
  if (name == "positive") return Category::positive;
  if (name == "negative") return Category::negative;
  return std::nullopt;
}

std::optional<Dyad> parse_dyad(std::string_view name) {
  for (int i = 0; i < kNumDyads; ++i)
    if (name == kDyadNames[i]) return static_cast<Dyad>(i);
  return std::nullopt;
}

Emotion opposite(Emotion e) {
  switch (e) {
    case Emotion::joy: return Emotion::sadness;
    case Emotion::sadness: return Emotion::joy;
    case Emotion::trust: return Emotion::disgust;
    case Emotion::disgust: return Emotion::trust;
    case Emotion::fear: return Emotion::anger;
    case Emotion::anger: return Emotion::fear;
    case Emotion::surprise: return Emotion::anticipation;
    case Emotion::anticipation: return Emotion::surprise;
  }
  return e;  // unreachable
}

DyadTable DyadTable::standard() {
  DyadTable t;
  t.pairs[static_cast<int>(Dyad::disapproval)] = {Emotion::surprise, Emotion::sadness};
  t.pairs[static_cast<int>(Dyad::unbelief)] = {Emotion::disgust, Emotion::surprise};
  t.pairs[static_cast<int>(Dyad::outrage)] = {Emotion::anger, Emotion::surprise};
  t.pairs[static_cast<int>(Dyad::guilt)] = {Emotion::joy, Emotion::fear};
  return t;
}

std::string_view metric_name(Metric m) {
  const int i = static_cast<int>(m);
  if (m == Metric::sentiment) return "sentiment";
  if (m == Metric::neg_words) return "neg_words";
  if (i >= 1 && i <= kNumEmotions) return kEmotionNames[i - 1];
  return kDyadNames[i - 1 - kNumEmotions];
}

std::optional<Metric> parse_metric(std::string_view name) {
  if (name == "sentiment") return Metric::sentiment;
  if (name == "neg_words") return Metric::neg_words;
  if (auto e = parse_emotion(name))
    return static_cast<Metric>(static_cast<int>(*e) + 1);
  if (auto d = parse_dyad(name))
    return static_cast<Metric>(static_cast<int>(*d) + 1 + kNumEmotions);
  return std::nullopt;
}

}  // namespace emodyn
