#include "emodyn/cohort.hpp"

#include "emodyn/text.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace emodyn {

std::vector<CohortDefinition> parse_cohort_definitions(std::string_view text) {
  std::vector<CohortDefinition> defs;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view t = trim(line);
    if (t.empty()) continue;
    const auto colon = t.find(':');
    if (colon == std::string_view::npos)
      throw CohortError("line " + std::to_string(lineno) +
                        ": expected 'name: #tag1 #tag2 ...'");
    CohortDefinition def;
    def.name = std::string(trim(t.substr(0, colon)));
    if (def.name.empty())
      throw CohortError("line " + std::to_string(lineno) + ": empty cohort name");
    if (def.name == "all")
      throw CohortError("line " + std::to_string(lineno) +
                        ": 'all' is a reserved group name");
    for (const auto& tag : extract_hashtags(t.substr(colon + 1)))
      def.hashtags.insert(tag);
    if (def.hashtags.empty())
      throw CohortError("line " + std::to_string(lineno) +
                        ": cohort '" + def.name + "' has no hashtags");
    for (const auto& d : defs)
      if (d.name == def.name)
        throw CohortError("line " + std::to_string(lineno) +
                          ": duplicate cohort name '" + def.name + "'");
    defs.push_back(std::move(def));
  }
  return defs;
}

std::vector<CohortDefinition> load_cohort_definitions(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CohortError("cannot open cohort file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cohort_definitions(buf.str());
}

const std::set<std::string>& CohortMembership::group(
    const std::string& name) const {
  if (name == "all") return all;
  const auto it = members.find(name);
  if (it == members.end()) throw CohortError("unknown cohort '" + name + "'");
  return it->second;
}

bool CohortMembership::has_group(const std::string& name) const {
  return name == "all" || members.count(name) > 0;
}

CohortMembership assign_cohorts(const std::vector<UserProfile>& profiles,
                                const std::vector<CohortDefinition>& defs) {
  CohortMembership m;
  for (const auto& def : defs) {
    m.names.push_back(def.name);
    m.members[def.name];
  }
  for (const auto& profile : profiles) {
    m.all.insert(profile.user_id);
    if (profile.biography.empty()) continue;
    const auto tags = extract_hashtags(profile.biography);
    if (tags.empty()) continue;
    for (const auto& def : defs) {
      const bool hit = std::any_of(tags.begin(), tags.end(),
                                   [&](const std::string& tag) {
                                     return def.hashtags.count(tag) > 0;
                                   });
      if (hit) m.members[def.name].insert(profile.user_id);
    }
  }
  return m;
}

std::optional<double> overlap_pct(const CohortMembership& m,
                                  const std::string& a, const std::string& b,
                                  OverlapDenominator denom) {
  const auto& sa = m.group(a);
  const auto& sb = m.group(b);
  if (sa.empty() || sb.empty()) return std::nullopt;
  std::size_t inter = 0;
  const auto& small = sa.size() <= sb.size() ? sa : sb;
  const auto& large = sa.size() <= sb.size() ? sb : sa;
  for (const auto& u : small) inter += large.count(u);
  const std::size_t den = denom == OverlapDenominator::min_size
                              ? small.size()
                              : sa.size() + sb.size() - inter;
  return 100.0 * static_cast<double>(inter) / static_cast<double>(den);
}

CohortMembership exclusive_members(const CohortMembership& m) {
  std::unordered_map<std::string, int> cohort_count;
  for (const auto& [name, users] : m.members)
    for (const auto& u : users) ++cohort_count[u];

  CohortMembership out;
  out.names = m.names;
  out.all = m.all;
  for (const auto& [name, users] : m.members) {
    auto& dst = out.members[name];
    for (const auto& u : users)
      if (cohort_count[u] == 1) dst.insert(u);
  }
  return out;
}

}  // namespace emodyn
