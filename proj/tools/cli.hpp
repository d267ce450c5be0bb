#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pivotal::cli
{

/// Exit codes shared by every subcommand.
enum Exit : int
{
  ok = 0,
  property_fails = 1,
  usage_error = 2,
  budget_exceeded = 3
};

/// Runs `pivotal <args...>`; args excludes the program name.
int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err );

} // namespace pivotal::cli
