#include "pivotal/table_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace pivotal
{

namespace
{

std::vector<std::string_view> split_words( std::string_view line )
{
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while ( i < line.size() )
  {
    while ( i < line.size() && ( line[i] == ' ' || line[i] == '\t' || line[i] == '\r' ) )
    {
      ++i;
    }
    auto start = i;
    while ( i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' )
    {
      ++i;
    }
    if ( i > start )
    {
      words.push_back( line.substr( start, i - start ) );
    }
  }
  return words;
}

unsigned parse_number( std::string_view word, std::string_view what )
{
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars( word.data(), word.data() + word.size(), value );
  if ( ec != std::errc{} || ptr != word.data() + word.size() )
  {
    throw FormatError( "invalid number '" + std::string( word ) + "' for " + std::string( what ) );
  }
  return value;
}

} // namespace

Operation parse_table( std::string_view text )
{
  static constexpr std::string_view keys[] = { "domain", "zero", "one", "arity", "table" };
  std::vector<std::vector<std::string_view>> directives;
  std::size_t pos = 0;
  while ( pos <= text.size() )
  {
    auto end = text.find( '\n', pos );
    if ( end == std::string_view::npos )
    {
      end = text.size();
    }
    auto line = text.substr( pos, end - pos );
    pos = end + 1;
    if ( !line.empty() && line.front() == '#' )
    {
      continue;
    }
    auto words = split_words( line );
    if ( words.empty() )
    {
      continue;
    }
    directives.push_back( std::move( words ) );
  }
  if ( directives.size() != 5 )
  {
    throw FormatError( "expected 5 directives (domain, zero, one, arity, table), found " +
                       std::to_string( directives.size() ) );
  }
  for ( std::size_t i = 0; i < 5; ++i )
  {
    if ( directives[i].front() != keys[i] )
    {
      throw FormatError( "line " + std::to_string( i + 1 ) + ": expected '" + std::string( keys[i] ) + "', found '" +
                         std::string( directives[i].front() ) + "'" );
    }
    if ( i < 4 && directives[i].size() != 2 )
    {
      throw FormatError( "directive '" + std::string( keys[i] ) + "' takes exactly one value" );
    }
  }
  const auto m = parse_number( directives[0][1], "domain" );
  const auto zero = parse_number( directives[1][1], "zero" );
  const auto one = parse_number( directives[2][1], "one" );
  const auto arity = parse_number( directives[3][1], "arity" );
  if ( m < 2 || m > 255 || zero >= m || one >= m || zero == one )
  {
    throw FormatError( "invalid domain header" );
  }
  const Domain domain( m, static_cast<Element>( zero ), static_cast<Element>( one ) );
  std::uint64_t expected = 0;
  try
  {
    expected = domain.power( arity );
  }
  catch ( const ArgumentError& )
  {
    throw FormatError( "arity too large" );
  }
  if ( directives[4].size() - 1 != expected )
  {
    throw FormatError( "table has " + std::to_string( directives[4].size() - 1 ) + " entries, expected " +
                       std::to_string( expected ) );
  }
  std::vector<Element> table;
  table.reserve( expected );
  for ( std::size_t i = 1; i < directives[4].size(); ++i )
  {
    const auto v = parse_number( directives[4][i], "table entry" );
    if ( v >= m )
    {
      throw FormatError( "table entry " + std::to_string( v ) + " outside domain" );
    }
    table.push_back( static_cast<Element>( v ) );
  }
  return Operation( domain, arity, std::move( table ) );
}

Operation read_table_file( const std::filesystem::path& path )
{
  std::ifstream in( path );
  if ( !in )
  {
    throw FormatError( "cannot open table file " + path.string() );
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_table( buffer.str() );
}

std::string serialize_table( const Operation& op )
{
  std::string out;
  out += "domain " + std::to_string( op.domain().size() ) + "\n";
  out += "zero " + std::to_string( op.domain().zero() ) + "\n";
  out += "one " + std::to_string( op.domain().one() ) + "\n";
  out += "arity " + std::to_string( op.arity() ) + "\n";
  out += "table";
  for ( auto e : op.table() )
  {
    out += ' ';
    out += std::to_string( e );
  }
  out += '\n';
  return out;
}

void write_table_file( const std::filesystem::path& path, const Operation& op )
{
  std::ofstream out( path );
  if ( !out )
  {
    throw FormatError( "cannot write table file " + path.string() );
  }
  out << serialize_table( op );
}

} // namespace pivotal
