#include "pivotal/budget.hpp"

#include <charconv>
#include <cstdlib>

#include "pivotal/errors.hpp"

namespace pivotal
{

namespace
{

std::uint64_t to_number( std::string_view text )
{
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars( text.data(), text.data() + text.size(), value );
  if ( text.empty() || ec != std::errc{} || ptr != text.data() + text.size() )
  {
    throw FormatError( "budget: invalid number '" + std::string( text ) + "'" );
  }
  return value;
}

} // namespace

Budget Budget::parse( std::string_view spec, Budget base )
{
  if ( spec.find( '=' ) == std::string_view::npos )
  {
    base.max_set_size = to_number( spec );
    return base;
  }
  while ( !spec.empty() )
  {
    auto comma = spec.find( ',' );
    auto item = spec.substr( 0, comma );
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr( comma + 1 );
    auto eq = item.find( '=' );
    if ( eq == std::string_view::npos )
    {
      throw FormatError( "budget: expected key=value, got '" + std::string( item ) + "'" );
    }
    auto key = item.substr( 0, eq );
    auto value = to_number( item.substr( eq + 1 ) );
    if ( key == "max_set_size" )
      base.max_set_size = value;
    else if ( key == "max_rounds" )
      base.max_rounds = value;
    else if ( key == "max_compositions" )
      base.max_compositions = value;
    else if ( key == "max_candidates" )
      base.max_candidates = value;
    else if ( key == "sample_count" )
      base.sample_count = value;
    else if ( key == "seed" )
      base.seed = value;
    else
      throw FormatError( "budget: unknown key '" + std::string( key ) + "'" );
  }
  return base;
}

Budget Budget::parse( std::string_view spec )
{
  return parse( spec, Budget{} );
}

Budget Budget::from_environment()
{
  if ( const char* env = std::getenv( "PIVOTAL_BUDGET" ); env != nullptr && *env != '\0' )
  {
    return parse( env );
  }
  return {};
}

std::string Budget::to_string() const
{
  return "max_set_size=" + std::to_string( max_set_size ) + ",max_rounds=" + std::to_string( max_rounds ) +
         ",max_compositions=" + std::to_string( max_compositions ) + ",max_candidates=" +
         std::to_string( max_candidates ) + ",sample_count=" + std::to_string( sample_count ) +
         ",seed=" + std::to_string( seed );
}

} // namespace pivotal
