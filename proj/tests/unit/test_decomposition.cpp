#include "doctest.h"

#include <ranges>

#include "oracles.hpp"
#include "pivotal/census.hpp"
#include "pivotal/decomposition.hpp"
#include "pivotal/errors.hpp"

using namespace pivotal;

namespace
{

const Domain B( 2 );

Operation negation()
{
  return Operation( B, 1, { 1, 0 } );
}

} // namespace

TEST_CASE( "membership examples" )
{
  const auto med = builtin( "med" );
  const auto pi1 = builtin( "pi1" );

  for ( unsigned n = 0; n <= 2; ++n )
  {
    for ( const auto& f : oracle::all_operations( B, n ) )
    {
      CHECK( is_pi_decomposable( f, pi1 ).member );
    }
  }

  const auto r = is_pi_decomposable( negation(), med );
  REQUIRE_FALSE( r.member );
  REQUIRE( r.witness );
  CHECK( r.witness->position == 1 );
  CHECK( r.witness->tuple == Tuple{ 0 } );
  CHECK( r.witness->value == 1 );
  CHECK( r.witness->high == 0 );
  CHECK( r.witness->low == 1 );
  CHECK( r.witness->recombined == 0 );

  const auto ternary = enumerate_pivotal( Domain( 3 ), true );
  for ( const auto& pi : ternary | std::views::take( 50 ) )
  {
    for ( unsigned n = 0; n <= 3; ++n )
    {
      for ( Element c = 0; c < 3; ++c )
      {
        CHECK( is_pi_decomposable( constant_op( pi.domain(), n, c ), pi ).member );
      }
    }
  }

  CHECK_THROWS_AS( is_pi_decomposable( constant_op( Domain( 3 ), 1, 0 ), med ), ArgumentError );
}

TEST_CASE( "membership agrees with the oracle" )
{
  for ( const auto& pi : enumerate_pivotal( B, false ) )
  {
    for ( unsigned n = 0; n <= 3; ++n )
    {
      for ( const auto& f : oracle::all_operations( B, n ) )
      {
        const auto r = is_pi_decomposable( f, pi );
        CHECK( r.member == oracle::decomposable( f, pi.op() ) );
        CHECK( r.member == is_decomposable( f.table(), n, pi.view() ) );
        CHECK( r.member != r.witness.has_value() );
        if ( r.witness )
        {
          const auto again = decomposition_point( f, pi, r.witness->position, r.witness->tuple );
          CHECK_FALSE( again.holds() );
          CHECK( again.value == r.witness->value );
          CHECK( again.recombined == r.witness->recombined );
        }
      }
    }
  }
}

TEST_CASE( "inessential arguments do not affect membership" )
{
  for ( const auto& pi : enumerate_pivotal( B, false ) )
  {
    for ( unsigned n = 0; n <= 2; ++n )
    {
      for ( const auto& f : oracle::all_operations( B, n ) )
      {
        if ( is_pi_decomposable( f, pi ).member )
        {
          CHECK( is_pi_decomposable( add_dummy_argument( f ), pi ).member );
        }
      }
    }
  }
}

TEST_CASE( "self-decomposability" )
{
  CHECK( is_self_decomposable( builtin( "med" ) ).member );
  CHECK( is_self_decomposable( builtin( "pi1" ) ).member );

  const auto dz = builtin( "delta-zero" );
  const auto r = is_self_decomposable( dz );
  CHECK_FALSE( r.member );
  CHECK_FALSE( is_self_decomposable( dz.view() ) );
  // Π(1,2,2) = 2 but Π(2, Π(1,2,1), Π(1,2,0)) = Π(2,0,0) = 0
  const Element x[] = { 1, 2, 2 };
  const auto p = decomposition_point( dz.op(), dz, 3, x );
  CHECK( p.value == 2 );
  CHECK( p.high == 0 );
  CHECK( p.low == 0 );
  CHECK( p.recombined == 0 );

  const auto e = builtin( "example3elem" );
  const auto w = is_self_decomposable( e );
  REQUIRE_FALSE( w.member );
  // the (x,a,a) section at pivot 2: Π(x,a,a) = a, while Π(a, Π(x,1,a), Π(x,0,a)) = Π(a,1,1) = 1
  for ( Element v = 0; v < 3; ++v )
  {
    const Element t[] = { v, 1, 1 };
    const auto q = decomposition_point( e.op(), e, 2, t );
    CHECK( q.value == 1 );
    CHECK( q.high == 2 );
    CHECK( q.low == 2 );
    CHECK( q.recombined == 2 );
  }
  CHECK( w.witness->position == 2 );
  CHECK( w.witness->tuple == Tuple{ 0, 1, 1 } );
}

TEST_CASE( "symmetry statements" )
{
  const auto med = builtin( "med" );
  const auto pi1 = builtin( "pi1" );
  CHECK( check_cyclic_implies_symmetric( med ).status == TheoremStatus::holds );
  CHECK( check_cyclic_implies_symmetric( pi1 ).status == TheoremStatus::vacuous );
  CHECK( check_symmetry_characterization( med ).status == TheoremStatus::holds );
  CHECK( check_symmetry_characterization( pi1 ).status == TheoremStatus::holds );
  CHECK( pi1( 0, 1, 0 ) == 0 );
  CHECK( pi1( 0, 0, 1 ) == 1 );
  CHECK( check_symmetry_characterization( builtin( "delta-zero" ) ).status == TheoremStatus::vacuous );

  for ( const auto& pi : enumerate_pivotal( B, false ) )
  {
    CHECK( check_cyclic_implies_symmetric( pi ).status != TheoremStatus::violated );
    CHECK( check_symmetry_characterization( pi ).status != TheoremStatus::violated );
  }
  CHECK( to_string( TheoremStatus::inconclusive ) == "inconclusive" );
}
