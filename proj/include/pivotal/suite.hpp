#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "pivotal/budget.hpp"
#include "pivotal/identities.hpp"

namespace pivotal
{

struct SuiteOptions
{
  /// Replaces med (and pi0) by the table with med(0,0,1) flipped to 1.
  bool inject_fault = false;
  unsigned arity_cap = 3;
  Budget budget;
};

struct SuiteRow
{
  std::string label;
  std::string statement;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct SuiteReport
{
  bool fault_injected = false;
  std::vector<SuiteRow> rows;

  bool passed() const noexcept;
};

/// The builtin under the suite's fault setting.
PivotalOperation suite_builtin( std::string_view name, bool inject_fault );

/// Runs every row in a fixed order. A row that throws is reported as failed
/// with the exception message as detail.
SuiteReport run_suite( const SuiteOptions& options = {} );

nlohmann::json to_json( const SuiteReport& report );
std::string format_table( const SuiteReport& report );

} // namespace pivotal
