#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace pivotal
{

/// Limits for the enumeration and closure engines. Exceeding any of them
/// raises BudgetExceeded instead of returning a truncated answer.
struct Budget
{
  std::uint64_t max_set_size = 1'000'000;      ///< tables in one fixpoint set
  std::uint64_t max_rounds = 64;               ///< fixpoint rounds
  std::uint64_t max_compositions = 100'000'000; ///< composition evaluations (fixpoint and exhaustive closure)
  std::uint64_t max_candidates = 10'000'000;    ///< tables enumerated by membership sweeps and oracles
  std::uint64_t sample_count = 20'000;          ///< closure samples once exhaustive checking is over budget
  std::uint64_t seed = 0x5eed'0001;             ///< sampling seed

  /// Comma-separated `key=value` list over the field names above, e.g.
  /// `max_set_size=5000,max_rounds=8`. A bare integer sets max_set_size.
  /// Throws FormatError on unknown keys or malformed numbers.
  static Budget parse( std::string_view spec, Budget base );
  static Budget parse( std::string_view spec );

  /// Defaults overridden by the PIVOTAL_BUDGET environment variable when set.
  static Budget from_environment();

  std::string to_string() const;
};

} // namespace pivotal
