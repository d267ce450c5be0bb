#include "pivotal/identities.hpp"

#include <algorithm>

namespace pivotal
{

std::optional<std::pair<Element, Element>> pivotal_violation( TernaryView pi ) noexcept
{
  for ( unsigned x = 0; x < pi.m; ++x )
  {
    for ( unsigned y = 0; y < pi.m; ++y )
    {
      if ( pi( x, y, y ) != y )
      {
        return std::pair{ static_cast<Element>( x ), static_cast<Element>( y ) };
      }
    }
  }
  return std::nullopt;
}

PivotalOperation::PivotalOperation( Operation op ) : op_( std::move( op ) )
{
  if ( op_.arity() != 3 )
  {
    throw ArgumentError( "pivotal operations are ternary, got arity " + std::to_string( op_.arity() ) );
  }
  if ( auto bad = pivotal_violation( view() ) )
  {
    const auto [x, y] = *bad;
    throw NotPivotalError( x, y, view()( x, y, y ) );
  }
}

PivotalOperation make_pivotal( Operation op )
{
  return PivotalOperation( std::move( op ) );
}

namespace
{

struct IdentityInfo
{
  IdentityId id;
  std::string_view name;
  std::string_view text;
  unsigned variables;
  unsigned equations;
};

constexpr IdentityInfo catalog[] = {
    { IdentityId::pri, "pri", "P(x,y,y) = y", 2, 1 },
    { IdentityId::sym01, "sym01", "P(x,y,z) = P(z,x,y)", 3, 1 },
    { IdentityId::sym02, "sym02", "P(x,y,z) = P(z,y,x)", 3, 1 },
    { IdentityId::sym23, "sym23", "P(x,y,z) = P(x,z,y)", 3, 1 },
    { IdentityId::sym12, "sym12", "P(x,y,z) = P(y,x,z)", 3, 1 },
    { IdentityId::ex01, "ex01", "P(x,1,0) = x", 1, 1 },
    { IdentityId::ex04, "ex04", "P(P(x,y,z),t,u) = P(x,P(y,t,u),P(z,t,u))", 5, 1 },
    { IdentityId::fine01, "fine01", "P(P(1,0,1),0,1) = P(1,P(0,0,1),P(1,0,1))", 0, 1 },
    { IdentityId::fine02, "fine02", "P(P(0,0,1),0,1) = P(0,P(0,0,1),P(1,0,1))", 0, 1 },
    { IdentityId::symmetry_pair, "thm28", "P(0,1,0) = P(0,0,1)\nP(1,1,0) = P(1,0,1)", 0, 2 },
    { IdentityId::derived, "derived", "P(0,1,z) = z\nP(1,1,z) = 1\nP(0,y,0) = 0\nP(1,y,0) = y", 1, 4 },
};

const IdentityInfo& info( IdentityId id ) noexcept
{
  return catalog[static_cast<std::size_t>( id )];
}

// values must hold identity_variables(id) entries
std::pair<Element, Element> sides( TernaryView p, IdentityId id, unsigned equation, const Element* v ) noexcept
{
  const Element o = p.zero;
  const Element l = p.one;
  switch ( id )
  {
  case IdentityId::pri:
    return { p( v[0], v[1], v[1] ), v[1] };
  case IdentityId::sym01:
    return { p( v[0], v[1], v[2] ), p( v[2], v[0], v[1] ) };
  case IdentityId::sym02:
    return { p( v[0], v[1], v[2] ), p( v[2], v[1], v[0] ) };
  case IdentityId::sym23:
    return { p( v[0], v[1], v[2] ), p( v[0], v[2], v[1] ) };
  case IdentityId::sym12:
    return { p( v[0], v[1], v[2] ), p( v[1], v[0], v[2] ) };
  case IdentityId::ex01:
    return { p( v[0], l, o ), v[0] };
  case IdentityId::ex04:
    return { p( p( v[0], v[1], v[2] ), v[3], v[4] ), p( v[0], p( v[1], v[3], v[4] ), p( v[2], v[3], v[4] ) ) };
  case IdentityId::fine01:
    return { p( p( l, o, l ), o, l ), p( l, p( o, o, l ), p( l, o, l ) ) };
  case IdentityId::fine02:
    return { p( p( o, o, l ), o, l ), p( o, p( o, o, l ), p( l, o, l ) ) };
  case IdentityId::symmetry_pair:
    return equation == 0 ? std::pair{ p( o, l, o ), p( o, o, l ) } : std::pair{ p( l, l, o ), p( l, o, l ) };
  case IdentityId::derived:
    switch ( equation )
    {
    case 0:
      return { p( o, l, v[0] ), v[0] };
    case 1:
      return { p( l, l, v[0] ), l };
    case 2:
      return { p( o, v[0], o ), o };
    default:
      return { p( l, v[0], o ), v[0] };
    }
  }
  return { 0, 0 };
}

// Lexicographic successor, last position fastest. False after the final tuple.
bool advance( Element* v, unsigned count, unsigned m ) noexcept
{
  for ( unsigned k = count; k-- > 0; )
  {
    if ( ++v[k] < m )
    {
      return true;
    }
    v[k] = 0;
  }
  return false;
}

template<typename OnFailure>
bool scan( TernaryView pi, IdentityId id, OnFailure&& on_failure )
{
  const auto& meta = info( id );
  std::array<Element, 5> v{};
  for ( unsigned eq = 0; eq < meta.equations; ++eq )
  {
    v.fill( 0 );
    do
    {
      const auto [lhs, rhs] = sides( pi, id, eq, v.data() );
      if ( lhs != rhs )
      {
        on_failure( eq, v.data(), lhs, rhs );
        return false;
      }
    } while ( advance( v.data(), meta.variables, pi.m ) );
  }
  return true;
}

} // namespace

std::string_view identity_name( IdentityId id ) noexcept
{
  return info( id ).name;
}

std::optional<IdentityId> parse_identity( std::string_view name ) noexcept
{
  for ( const auto& entry : catalog )
  {
    if ( entry.name == name )
    {
      return entry.id;
    }
  }
  return std::nullopt;
}

std::string_view identity_text( IdentityId id ) noexcept
{
  return info( id ).text;
}

unsigned identity_variables( IdentityId id ) noexcept
{
  return info( id ).variables;
}

unsigned identity_equations( IdentityId id ) noexcept
{
  return info( id ).equations;
}

std::pair<Element, Element> evaluate_identity( TernaryView pi, IdentityId id, unsigned equation,
                                               std::span<const Element> values )
{
  if ( equation >= identity_equations( id ) || values.size() != identity_variables( id ) )
  {
    throw ArgumentError( "identity " + std::string( identity_name( id ) ) + ": bad equation index or value count" );
  }
  for ( auto e : values )
  {
    if ( e >= pi.m )
    {
      throw FormatError( "identity value outside domain" );
    }
  }
  return sides( pi, id, equation, values.data() );
}

IdentityReport check_identity( TernaryView pi, IdentityId id )
{
  IdentityReport report{ id, true, std::nullopt };
  report.holds = scan( pi, id, [&]( unsigned eq, const Element* v, Element lhs, Element rhs ) {
    report.witness = IdentityWitness{ eq, Tuple( v, v + identity_variables( id ) ), lhs, rhs };
  } );
  return report;
}

bool satisfies( TernaryView pi, IdentityId id ) noexcept
{
  return scan( pi, id, []( unsigned, const Element*, Element, Element ) noexcept {} );
}

bool is_symmetric( TernaryView pi ) noexcept
{
  // (x,y,z) -> (y,x,z) and (x,y,z) -> (y,z,x) generate all permutations
  for ( unsigned x = 0; x < pi.m; ++x )
  {
    for ( unsigned y = 0; y < pi.m; ++y )
    {
      for ( unsigned z = 0; z < pi.m; ++z )
      {
        const auto v = pi( x, y, z );
        if ( v != pi( y, x, z ) || v != pi( y, z, x ) )
        {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<std::pair<Element, Element>> delta_pairs( const Domain& domain )
{
  std::vector<std::pair<Element, Element>> pairs;
  for ( unsigned y = 0; y < domain.size(); ++y )
  {
    for ( unsigned z = 0; z < domain.size(); ++z )
    {
      if ( y != z && !( y == domain.one() && z == domain.zero() ) )
      {
        pairs.emplace_back( static_cast<Element>( y ), static_cast<Element>( z ) );
      }
    }
  }
  return pairs;
}

PivotalOperation from_delta_function( const Domain& domain, const DeltaMap& f )
{
  const auto m = domain.size();
  std::vector<Element> table( domain.power( 3 ) );
  for ( unsigned x = 0; x < m; ++x )
  {
    for ( unsigned y = 0; y < m; ++y )
    {
      for ( unsigned z = 0; z < m; ++z )
      {
        Element value;
        if ( y == z )
        {
          value = static_cast<Element>( y );
        }
        else if ( y == domain.one() && z == domain.zero() )
        {
          value = static_cast<Element>( x );
        }
        else
        {
          auto it = f.find( { static_cast<Element>( y ), static_cast<Element>( z ) } );
          if ( it == f.end() )
          {
            throw FormatError( "delta map has no value at (" + std::to_string( y ) + "," + std::to_string( z ) + ")" );
          }
          if ( !domain.contains( it->second ) )
          {
            throw FormatError( "delta map value outside domain" );
          }
          value = it->second;
        }
        table[( x * m + y ) * m + z] = value;
      }
    }
  }
  return PivotalOperation( Operation( domain, 3, std::move( table ) ) );
}

namespace
{

template<typename Fn>
PivotalOperation boolean_pivotal( Fn&& fn )
{
  std::vector<Element> table( 8 );
  for ( unsigned i = 0; i < 8; ++i )
  {
    const bool x = i & 4, y = i & 2, z = i & 1;
    table[i] = fn( x, y, z ) ? 1 : 0;
  }
  return PivotalOperation( Operation( Domain( 2 ), 3, std::move( table ) ) );
}

PivotalOperation three_element_example()
{
  // carrier {0, a, 1} encoded 0->0, a->1, 1->2
  constexpr Element o = 0, a = 1, l = 2;
  const Domain domain( 3, o, l );
  const auto negation = []( Element x ) -> Element { return x == o ? l : x == l ? o : a; };
  std::vector<Element> table( 27 );
  for ( Element x = 0; x < 3; ++x )
  {
    const auto at = [&]( Element y, Element z ) -> Element& { return table[( x * 3 + y ) * 3 + z]; };
    for ( Element y = 0; y < 3; ++y )
    {
      at( y, y ) = y;
    }
    at( l, o ) = x;
    at( o, l ) = negation( x );
    at( l, a ) = l;
    at( o, a ) = l;
    at( a, l ) = o;
    at( a, o ) = o;
  }
  return PivotalOperation( Operation( domain, 3, std::move( table ) ) );
}

} // namespace

std::vector<std::string> builtin_names()
{
  return { "med", "pi0", "pi1", "pi2", "pi3", "example3elem", "delta-zero" };
}

PivotalOperation builtin( std::string_view name )
{
  if ( name == "med" || name == "pi0" )
  {
    return boolean_pivotal( []( bool x, bool y, bool z ) { return ( x && y ) || ( x && z ) || ( y && z ); } );
  }
  if ( name == "pi1" )
  {
    return boolean_pivotal( []( bool x, bool y, bool z ) { return ( x && y ) || ( !x && z ); } );
  }
  if ( name == "pi2" )
  {
    return boolean_pivotal( []( bool x, bool y, bool z ) { return y && ( x || z ); } );
  }
  if ( name == "pi3" )
  {
    return boolean_pivotal( []( bool x, bool y, bool z ) { return z || ( x && y ); } );
  }
  if ( name == "example3elem" )
  {
    return three_element_example();
  }
  if ( name == "delta-zero" )
  {
    const Domain domain( 3 );
    DeltaMap f;
    for ( auto p : delta_pairs( domain ) )
    {
      f[p] = 0;
    }
    return from_delta_function( domain, f );
  }
  throw FormatError( "unknown builtin '" + std::string( name ) + "'" );
}

} // namespace pivotal
