#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "pivotal/operation.hpp"

namespace pivotal
{

/// Text table format, one directive per line, `#` lines are comments:
///
///   domain <m>
///   zero <idx>
///   one <idx>
///   arity <n>
///   table <m^n entries>
///
/// Throws FormatError on any deviation.
Operation parse_table( std::string_view text );
Operation read_table_file( const std::filesystem::path& path );

/// Canonical serialization; parse_table(serialize_table(op)) == op and the
/// output is byte-identical to any comment-free canonical input.
std::string serialize_table( const Operation& op );
void write_table_file( const std::filesystem::path& path, const Operation& op );

} // namespace pivotal
