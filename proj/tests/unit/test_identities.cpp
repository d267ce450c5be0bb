#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "pivotal/census.hpp"
#include "pivotal/errors.hpp"
#include "pivotal/identities.hpp"

using namespace pivotal;

namespace
{

const Domain B( 2 );

// Both sides of each identity written against Operation::evaluate.
bool oracle_holds( const Operation& p, IdentityId id )
{
  const auto& d = p.domain();
  const Element o = d.zero();
  const Element l = d.one();
  auto P = [&]( Element x, Element y, Element z ) { return p.evaluate( { x, y, z } ); };
  for ( const auto& v : oracle::all_tuples( d.size(), 5 ) )
  {
    const Element x = v[0], y = v[1], z = v[2], t = v[3], u = v[4];
    bool ok = true;
    switch ( id )
    {
    case IdentityId::pri:
      ok = P( x, y, y ) == y;
      break;
    case IdentityId::sym01:
      ok = P( x, y, z ) == P( z, x, y );
      break;
    case IdentityId::sym02:
      ok = P( x, y, z ) == P( z, y, x );
      break;
    case IdentityId::sym23:
      ok = P( x, y, z ) == P( x, z, y );
      break;
    case IdentityId::sym12:
      ok = P( x, y, z ) == P( y, x, z );
      break;
    case IdentityId::ex01:
      ok = P( x, l, o ) == x;
      break;
    case IdentityId::ex04:
      ok = P( P( x, y, z ), t, u ) == P( x, P( y, t, u ), P( z, t, u ) );
      break;
    case IdentityId::fine01:
      ok = P( P( l, o, l ), o, l ) == P( l, P( o, o, l ), P( l, o, l ) );
      break;
    case IdentityId::fine02:
      ok = P( P( o, o, l ), o, l ) == P( o, P( o, o, l ), P( l, o, l ) );
      break;
    case IdentityId::symmetry_pair:
      ok = P( o, l, o ) == P( o, o, l ) && P( l, l, o ) == P( l, o, l );
      break;
    case IdentityId::derived:
      ok = P( o, l, z ) == z && P( l, l, z ) == l && P( o, y, o ) == o && P( l, y, o ) == y;
      break;
    }
    if ( !ok )
    {
      return false;
    }
  }
  return true;
}

bool oracle_symmetric( const Operation& p )
{
  for ( const auto& v : oracle::all_tuples( p.domain().size(), 3 ) )
  {
    const Element x = v[0], y = v[1], z = v[2];
    const auto a = p.evaluate( { x, y, z } );
    for ( const Tuple& q : { Tuple{ x, z, y }, Tuple{ y, x, z }, Tuple{ y, z, x }, Tuple{ z, x, y }, Tuple{ z, y, x } } )
    {
      if ( p.evaluate( q ) != a )
      {
        return false;
      }
    }
  }
  return true;
}

std::vector<PivotalOperation> random_ternary( std::size_t count, bool ex01, std::uint64_t seed )
{
  const PivotalSpace space( Domain( 3 ), ex01 );
  std::mt19937_64 rng( seed );
  std::vector<PivotalOperation> out;
  for ( std::size_t i = 0; i < count; ++i )
  {
    out.push_back( space[rng() % space.count()] );
  }
  return out;
}

} // namespace

TEST_CASE( "pivotal validation" )
{
  CHECK_NOTHROW( make_pivotal( oracle::med() ) );
  CHECK_NOTHROW( make_pivotal( oracle::shannon() ) );
  try
  {
    make_pivotal( projection( B, 3, 1 ) );
    FAIL( "first projection accepted" );
  }
  catch ( const NotPivotalError& e )
  {
    // first failure in (x,y) order; (1,0) with value 1 is another
    CHECK( e.x == 0 );
    CHECK( e.y == 1 );
    CHECK( e.value == 0 );
  }
  CHECK( projection( B, 3, 1 ).evaluate( { 1, 0, 0 } ) == 1 );
  CHECK_THROWS_AS( make_pivotal( Operation( B, 2, { 0, 0, 1, 1 } ) ), ArgumentError );

  // corrupted med: med(1,0,0) flipped to 1
  const auto med = oracle::med();
  std::vector<Element> t( med.table().begin(), med.table().end() );
  t[4] = 1;
  CHECK_THROWS_AS( PivotalOperation( Operation( B, 3, t ) ), NotPivotalError );
}

TEST_CASE( "identity catalog" )
{
  CHECK( all_identities.size() == 11 );
  for ( auto id : all_identities )
  {
    CHECK( parse_identity( identity_name( id ) ) == id );
    CHECK_FALSE( identity_text( id ).empty() );
  }
  CHECK( parse_identity( "thm28" ) == IdentityId::symmetry_pair );
  CHECK_FALSE( parse_identity( "bogus" ) );
  CHECK( identity_variables( IdentityId::ex04 ) == 5 );
  CHECK( identity_equations( IdentityId::derived ) == 4 );
}

TEST_CASE( "identity examples" )
{
  const auto med = builtin( "med" );
  const auto pi1 = builtin( "pi1" );
  CHECK( check_identity( med, IdentityId::ex04 ).holds );
  CHECK( check_identity( pi1, IdentityId::ex01 ).holds );

  // Π(0,0,1)=1, Π(1,0,1)=0: sym01 fails at (0,0,1)
  const auto r = check_identity( pi1, IdentityId::sym01 );
  REQUIRE_FALSE( r.holds );
  REQUIRE( r.witness );
  CHECK( r.witness->values == Tuple{ 0, 0, 1 } );
  CHECK( r.witness->lhs == 1 );
  CHECK( r.witness->rhs == 0 );
  const auto again = evaluate_identity( pi1.view(), IdentityId::sym01, r.witness->equation, r.witness->values );
  CHECK( again.first == r.witness->lhs );
  CHECK( again.second == r.witness->rhs );
}

TEST_CASE( "identity checks agree with the oracle" )
{
  auto ops = enumerate_pivotal( B, false );
  for ( auto& p : random_ternary( 60, true, 1 ) )
  {
    ops.push_back( p );
  }
  for ( auto& p : random_ternary( 60, false, 2 ) )
  {
    ops.push_back( p );
  }
  ops.push_back( builtin( "example3elem" ) );
  ops.push_back( builtin( "delta-zero" ) );
  for ( const auto& p : ops )
  {
    for ( auto id : all_identities )
    {
      const auto r = check_identity( p, id );
      CHECK( r.holds == oracle_holds( p.op(), id ) );
      CHECK( r.holds == satisfies( p.view(), id ) );
      CHECK( r.holds != r.witness.has_value() );
      if ( r.witness )
      {
        const auto sides = evaluate_identity( p.view(), id, r.witness->equation, r.witness->values );
        CHECK( sides.first != sides.second );
      }
    }
    CHECK( check_identity( p, IdentityId::pri ).holds );
    CHECK( is_symmetric( p ) == oracle_symmetric( p.op() ) );
    CHECK( is_symmetric( p ) == ( satisfies( p.view(), IdentityId::sym01 ) && satisfies( p.view(), IdentityId::sym02 ) ) );
  }
}

TEST_CASE( "fine equations are instances of ex04" )
{
  auto ops = enumerate_pivotal( B, false );
  for ( auto& p : random_ternary( 3000, true, 3 ) )
  {
    ops.push_back( p );
  }
  for ( const auto& p : ops )
  {
    if ( satisfies( p.view(), IdentityId::ex04 ) )
    {
      CHECK( satisfies( p.view(), IdentityId::fine01 ) );
      CHECK( satisfies( p.view(), IdentityId::fine02 ) );
    }
    if ( is_symmetric( p ) && satisfies( p.view(), IdentityId::ex01 ) )
    {
      CHECK( satisfies( p.view(), IdentityId::fine01 ) );
      CHECK( satisfies( p.view(), IdentityId::fine02 ) );
    }
  }
}

TEST_CASE( "builtins" )
{
  CHECK( builtin( "med" ).op() == oracle::med() );
  CHECK( builtin( "pi0" ).op() == oracle::med() );
  CHECK( builtin( "pi1" ).op() == oracle::shannon() );
  CHECK( builtin( "pi2" ).op() == oracle::pi2() );
  CHECK( builtin( "pi3" ).op() == oracle::pi3() );
  CHECK( builtin( "med" )( 1, 1, 0 ) == 1 );
  CHECK_THROWS_AS( builtin( "nope" ), FormatError );
  CHECK( builtin_names().size() == 7 );
  for ( const auto& name : builtin_names() )
  {
    CHECK_NOTHROW( builtin( name ) );
  }

  CHECK( is_symmetric( builtin( "med" ) ) );
  CHECK_FALSE( is_symmetric( builtin( "pi1" ) ) );

  SUBCASE( "three-element example with labels 0, a, 1" )
  {
    const auto p = builtin( "example3elem" );
    const Element zero = 0, a = 1, one = 2;
    CHECK( p.domain().zero() == zero );
    CHECK( p.domain().one() == one );
    const Element N[] = { one, a, zero };
    for ( Element x = 0; x < 3; ++x )
    {
      CHECK( p( x, zero, one ) == N[x] );
      CHECK( p( x, one, a ) == one );
      CHECK( p( x, zero, a ) == one );
      CHECK( p( x, a, one ) == zero );
      CHECK( p( x, a, zero ) == zero );
      CHECK( p( x, one, zero ) == x );
      for ( Element y = 0; y < 3; ++y )
      {
        CHECK( p( x, y, y ) == y );
      }
    }
    CHECK( check_identity( p, IdentityId::ex01 ).holds );
  }
}

TEST_CASE( "delta construction" )
{
  const Domain T( 3 );
  const auto pairs = delta_pairs( T );
  const std::vector<std::pair<Element, Element>> expected{ { 0, 1 }, { 0, 2 }, { 1, 2 }, { 2, 0 }, { 2, 1 } };
  CHECK( pairs == expected );
  CHECK( delta_pairs( B ).size() == 1 );

  DeltaMap f;
  for ( auto p : pairs )
  {
    f[p] = 0;
  }
  const auto p = from_delta_function( T, f );
  CHECK( p == builtin( "delta-zero" ) );
  CHECK( check_identity( p, IdentityId::ex01 ).holds );
  CHECK( check_identity( p, IdentityId::ex04 ).holds );
  for ( Element x = 0; x < 3; ++x )
  {
    for ( auto [y, z] : pairs )
    {
      CHECK( p( x, y, z ) == 0 );
    }
  }

  f.erase( { 2, 1 } );
  CHECK_THROWS_AS( from_delta_function( T, f ), FormatError );
  f[{ 2, 1 }] = 3;
  CHECK_THROWS_AS( from_delta_function( T, f ), FormatError );

  SUBCASE( "two-element domain" )
  {
    // A_Δ = {(0,1)}: f(0,1) = 0 gives Π₂, f(0,1) = 1 gives Π₃
    CHECK( from_delta_function( B, { { { 0, 1 }, 0 } } ) == builtin( "pi2" ) );
    CHECK( from_delta_function( B, { { { 0, 1 }, 1 } } ) == builtin( "pi3" ) );
  }
}
