#include "pivotal/decomposition.hpp"

namespace pivotal
{

namespace
{

// First violating (position, index) in the documented order, or nullopt.
std::optional<std::pair<unsigned, std::size_t>> first_violation( std::span<const Element> table, unsigned arity,
                                                                 TernaryView pi ) noexcept
{
  const std::size_t size = table.size();
  std::size_t stride = size;
  for ( unsigned i = 1; i <= arity; ++i )
  {
    stride /= pi.m; // m^(n-i)
    for ( std::size_t x = 0; x < size; ++x )
    {
      const auto digit = static_cast<Element>( ( x / stride ) % pi.m );
      const auto base = x - digit * stride;
      const auto high = table[base + pi.one * stride];
      const auto low = table[base + pi.zero * stride];
      if ( table[x] != pi( digit, high, low ) )
      {
        return std::pair{ i, x };
      }
    }
  }
  return std::nullopt;
}

} // namespace

DecompositionPoint decomposition_point( const Operation& f, const PivotalOperation& pi, unsigned position,
                                        std::span<const Element> tuple )
{
  if ( f.domain() != pi.domain() )
  {
    throw ArgumentError( "operation and pivotal operation live on different domains" );
  }
  if ( position < 1 || position > f.arity() )
  {
    throw ArgumentError( "pivot position out of range" );
  }
  DecompositionPoint p;
  p.position = position;
  p.tuple.assign( tuple.begin(), tuple.end() );
  p.value = f.evaluate( tuple );
  auto t = p.tuple;
  t[position - 1] = pi.domain().one();
  p.high = f.evaluate( t );
  t[position - 1] = pi.domain().zero();
  p.low = f.evaluate( t );
  p.recombined = pi( tuple[position - 1], p.high, p.low );
  return p;
}

MembershipReport is_pi_decomposable( const Operation& f, const PivotalOperation& pi )
{
  if ( f.domain() != pi.domain() )
  {
    throw ArgumentError( "operation and pivotal operation live on different domains" );
  }
  auto bad = first_violation( f.table(), f.arity(), pi.view() );
  if ( !bad )
  {
    return {};
  }
  const auto tuple = decode_index( f.domain(), f.arity(), bad->second );
  return { false, decomposition_point( f, pi, bad->first, tuple ) };
}

bool is_decomposable( std::span<const Element> table, unsigned arity, TernaryView pi ) noexcept
{
  return !first_violation( table, arity, pi ).has_value();
}

MembershipReport is_self_decomposable( const PivotalOperation& pi )
{
  return is_pi_decomposable( pi.op(), pi );
}

bool is_self_decomposable( TernaryView pi ) noexcept
{
  const std::size_t size = std::size_t{ pi.m } * pi.m * pi.m;
  return is_decomposable( std::span<const Element>( pi.table, size ), 3, pi );
}

std::string_view to_string( TheoremStatus status ) noexcept
{
  switch ( status )
  {
  case TheoremStatus::holds:
    return "holds";
  case TheoremStatus::violated:
    return "violated";
  case TheoremStatus::vacuous:
    return "vacuous";
  case TheoremStatus::inconclusive:
    return "inconclusive";
  }
  return "?";
}

TheoremCheck check_cyclic_implies_symmetric( const PivotalOperation& pi )
{
  const auto v = pi.view();
  const bool self = is_self_decomposable( v );
  const bool ex01 = satisfies( v, IdentityId::ex01 );
  const bool sym01 = satisfies( v, IdentityId::sym01 );
  if ( !( self && ex01 && sym01 ) )
  {
    std::string missing;
    if ( !self )
    {
      missing += " self-decomposable";
    }
    if ( !ex01 )
    {
      missing += " ex01";
    }
    if ( !sym01 )
    {
      missing += " sym01";
    }
    return { TheoremStatus::vacuous, "premises fail:" + missing };
  }
  const bool sym02 = satisfies( v, IdentityId::sym02 );
  const bool symmetric = is_symmetric( v );
  if ( sym02 && symmetric )
  {
    return { TheoremStatus::holds, "sym02 and full symmetry hold" };
  }
  return { TheoremStatus::violated, sym02 ? "sym02 holds but not symmetric" : "sym02 fails" };
}

TheoremCheck check_symmetry_characterization( const PivotalOperation& pi )
{
  const auto v = pi.view();
  const bool self = is_self_decomposable( v );
  const bool ex01 = satisfies( v, IdentityId::ex01 );
  if ( !( self && ex01 ) )
  {
    return { TheoremStatus::vacuous, self ? "premises fail: ex01" : "premises fail: self-decomposable" };
  }
  const bool symmetric = is_symmetric( v );
  const bool pair = satisfies( v, IdentityId::symmetry_pair );
  const std::string detail =
      std::string( "symmetric=" ) + ( symmetric ? "true" : "false" ) + " pair=" + ( pair ? "true" : "false" );
  return { symmetric == pair ? TheoremStatus::holds : TheoremStatus::violated, detail };
}

} // namespace pivotal
