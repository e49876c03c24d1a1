#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace emodyn {

// Storage is always UTC epoch seconds. Analyses run in EST (UTC-5, fixed
// offset, no DST handling); conversion is a pure shift applied on demand.
inline constexpr std::int64_t kEstOffsetSeconds = -5 * 3600;

inline std::int64_t utc_to_est(std::int64_t utc) { return utc + kEstOffsetSeconds; }
inline std::int64_t est_to_utc(std::int64_t est) { return est - kEstOffsetSeconds; }

std::int64_t days_from_civil(int y, int m, int d);
void civil_from_days(std::int64_t z, int& y, int& m, int& d);

// ISO-8601 timestamps: "YYYY-MM-DD[T ]HH:MM[:SS[.frac]][Z|+HH:MM|-HH:MM]".
// Missing zone designator is read as UTC; fractional seconds are dropped.
std::optional<std::int64_t> parse_iso8601(std::string_view s);

// Wall-clock string "YYYY-MM-DD HH:MM[:SS]" with no zone; returns the epoch
// of that wall time, to be shifted by the caller's zone convention.
std::optional<std::int64_t> parse_wall_clock(std::string_view s);

std::string format_iso8601_utc(std::int64_t utc);

// "YYYY-MM-DD HH:MM" of the EST wall clock for a UTC instant.
std::string format_est(std::int64_t utc);

}  // namespace emodyn
