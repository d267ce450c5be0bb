#include "pivotal/operation.hpp"

#include <algorithm>
#include <limits>

namespace pivotal
{

NotPivotalError::NotPivotalError( std::uint8_t x_, std::uint8_t y_, std::uint8_t value_ )
    : Error( "not pivotal: Pi(" + std::to_string( x_ ) + "," + std::to_string( y_ ) + "," +
             std::to_string( y_ ) + ") = " + std::to_string( value_ ) + " != " + std::to_string( y_ ) ),
      x( x_ ), y( y_ ), value( value_ )
{
}

BudgetExceeded::BudgetExceeded( std::string what_limit, std::uint64_t limit_, std::uint64_t requested_ )
    : Error( "budget exceeded: " + what_limit + " limit " + std::to_string( limit_ ) + ", needed at least " +
             std::to_string( requested_ ) ),
      limit_name( std::move( what_limit ) ), limit( limit_ ), requested( requested_ )
{
}

Domain::Domain( unsigned size, Element zero, Element one ) : size_( size ), zero_( zero ), one_( one )
{
  if ( size < 2 || size > 255 )
  {
    throw ArgumentError( "domain size must lie in [2, 255], got " + std::to_string( size ) );
  }
  if ( zero >= size || one >= size || zero == one )
  {
    throw ArgumentError( "designated elements must be distinct indices below the domain size" );
  }
}

std::uint64_t Domain::power( unsigned n ) const
{
  std::uint64_t r = 1;
  for ( unsigned i = 0; i < n; ++i )
  {
    if ( r > std::numeric_limits<std::uint64_t>::max() / size_ )
    {
      throw ArgumentError( "m^n overflows 64 bits" );
    }
    r *= size_;
  }
  return r;
}

std::size_t encode_tuple( const Domain& domain, std::span<const Element> tuple )
{
  std::size_t index = 0;
  for ( auto e : tuple )
  {
    if ( !domain.contains( e ) )
    {
      throw FormatError( "element " + std::to_string( e ) + " outside domain of size " +
                         std::to_string( domain.size() ) );
    }
    index = index * domain.size() + e;
  }
  return index;
}

Tuple decode_index( const Domain& domain, unsigned arity, std::size_t index )
{
  if ( index >= domain.power( arity ) )
  {
    throw ArgumentError( "index " + std::to_string( index ) + " out of range for arity " + std::to_string( arity ) );
  }
  Tuple t( arity );
  for ( unsigned i = arity; i-- > 0; )
  {
    t[i] = static_cast<Element>( index % domain.size() );
    index /= domain.size();
  }
  return t;
}

Operation::Operation( Domain domain, unsigned arity, std::vector<Element> table )
    : domain_( domain ), arity_( arity ), table_( std::move( table ) )
{
  if ( table_.size() != domain_.power( arity_ ) )
  {
    throw FormatError( "table has " + std::to_string( table_.size() ) + " entries, expected " +
                       std::to_string( domain_.power( arity_ ) ) );
  }
  for ( auto e : table_ )
  {
    if ( !domain_.contains( e ) )
    {
      throw FormatError( "table entry " + std::to_string( e ) + " outside domain" );
    }
  }
}

Element Operation::evaluate( std::span<const Element> tuple ) const
{
  if ( tuple.size() != arity_ )
  {
    throw ArgumentError( "tuple of length " + std::to_string( tuple.size() ) + " for arity " +
                         std::to_string( arity_ ) );
  }
  return table_[encode_tuple( domain_, tuple )];
}

bool Operation::is_constant() const noexcept
{
  return std::all_of( table_.begin(), table_.end(), [this]( Element e ) { return e == table_.front(); } );
}

Operation projection( const Domain& domain, unsigned n, unsigned i )
{
  if ( i < 1 || i > n )
  {
    throw ArgumentError( "projection index " + std::to_string( i ) + " outside [1, " + std::to_string( n ) + "]" );
  }
  const auto size = domain.power( n );
  const auto stride = domain.power( n - i );
  std::vector<Element> table( size );
  for ( std::size_t x = 0; x < size; ++x )
  {
    table[x] = static_cast<Element>( ( x / stride ) % domain.size() );
  }
  return Operation( domain, n, std::move( table ) );
}

Operation constant_op( const Domain& domain, unsigned n, Element c )
{
  if ( !domain.contains( c ) )
  {
    throw FormatError( "constant " + std::to_string( c ) + " outside domain" );
  }
  return Operation( domain, n, std::vector<Element>( domain.power( n ), c ) );
}

Operation compose( const Operation& f, std::span<const Operation> gs )
{
  if ( gs.size() != f.arity() )
  {
    throw ArgumentError( "compose: " + std::to_string( gs.size() ) + " inner operations for arity " +
                         std::to_string( f.arity() ) );
  }
  if ( gs.empty() )
  {
    return f;
  }
  const auto& domain = f.domain();
  const auto arity = gs.front().arity();
  for ( const auto& g : gs )
  {
    if ( g.domain() != domain || g.arity() != arity )
    {
      throw ArgumentError( "compose: inner operations must share the domain and arity" );
    }
  }
  const auto size = gs.front().size();
  std::vector<Element> table( size );
  for ( std::size_t x = 0; x < size; ++x )
  {
    std::size_t index = 0;
    for ( const auto& g : gs )
    {
      index = index * domain.size() + g[x];
    }
    table[x] = f[index];
  }
  return Operation( domain, arity, std::move( table ) );
}

Operation section( const Operation& f, std::span<const unsigned> free_positions, std::span<const Element> frozen )
{
  const auto n = f.arity();
  if ( frozen.size() != n )
  {
    throw ArgumentError( "section: base tuple has length " + std::to_string( frozen.size() ) + ", expected " +
                         std::to_string( n ) );
  }
  std::vector<bool> is_free( n, false );
  for ( auto p : free_positions )
  {
    if ( p < 1 || p > n )
    {
      throw ArgumentError( "section: position " + std::to_string( p ) + " out of range" );
    }
    is_free[p - 1] = true;
  }
  std::vector<unsigned> order;
  for ( unsigned p = 0; p < n; ++p )
  {
    if ( is_free[p] )
    {
      order.push_back( p );
    }
  }
  const auto& domain = f.domain();
  const auto k = static_cast<unsigned>( order.size() );
  const auto size = domain.power( k );
  std::vector<Element> table( size );
  Tuple full( frozen.begin(), frozen.end() );
  for ( std::size_t y = 0; y < size; ++y )
  {
    auto rest = y;
    for ( unsigned j = k; j-- > 0; )
    {
      full[order[j]] = static_cast<Element>( rest % domain.size() );
      rest /= domain.size();
    }
    table[y] = f.evaluate( full );
  }
  return Operation( domain, k, std::move( table ) );
}

EssentialReport is_essential( const Operation& f, unsigned k )
{
  if ( k < 1 || k > f.arity() )
  {
    throw ArgumentError( "argument position " + std::to_string( k ) + " out of range" );
  }
  const auto& domain = f.domain();
  const auto stride = domain.power( f.arity() - k );
  const auto m = domain.size();
  for ( std::size_t x = 0; x < f.size(); ++x )
  {
    // only tuples whose k-th coordinate is 0 serve as section bases
    if ( ( x / stride ) % m != 0 )
    {
      continue;
    }
    for ( unsigned c = 1; c < m; ++c )
    {
      if ( f[x + c * stride] != f[x] )
      {
        auto witness = decode_index( domain, f.arity(), x );
        return { true, std::move( witness ) };
      }
    }
  }
  return {};
}

Operation identify_args( const Operation& f, std::span<const unsigned> targets )
{
  if ( targets.size() != f.arity() )
  {
    throw ArgumentError( "identify_args: assignment must cover all " + std::to_string( f.arity() ) + " positions" );
  }
  unsigned width = 0;
  for ( auto t : targets )
  {
    if ( t < 1 )
    {
      throw ArgumentError( "identify_args: targets are 1-based" );
    }
    width = std::max( width, t );
  }
  std::vector<bool> hit( width, false );
  for ( auto t : targets )
  {
    hit[t - 1] = true;
  }
  if ( !std::all_of( hit.begin(), hit.end(), []( bool b ) { return b; } ) )
  {
    throw ArgumentError( "identify_args: targets must cover 1.." + std::to_string( width ) );
  }
  const auto& domain = f.domain();
  const auto size = domain.power( width );
  std::vector<Element> table( size );
  Tuple args( f.arity() );
  for ( std::size_t y = 0; y < size; ++y )
  {
    const auto ys = decode_index( domain, width, y );
    for ( std::size_t p = 0; p < targets.size(); ++p )
    {
      args[p] = ys[targets[p] - 1];
    }
    table[y] = f.evaluate( args );
  }
  return Operation( domain, width, std::move( table ) );
}

Operation add_dummy_argument( const Operation& f )
{
  const auto m = f.domain().size();
  std::vector<Element> table;
  table.reserve( f.size() * m );
  for ( auto v : f.table() )
  {
    table.insert( table.end(), m, v );
  }
  return Operation( f.domain(), f.arity() + 1, std::move( table ) );
}

Operation relabel( const Operation& f, const Domain& target, std::span<const Element> sigma )
{
  const auto m = f.domain().size();
  if ( target.size() != m || sigma.size() != m )
  {
    throw ArgumentError( "relabel: carrier sizes differ" );
  }
  std::vector<bool> seen( m, false );
  for ( auto e : sigma )
  {
    if ( e >= m || seen[e] )
    {
      throw ArgumentError( "relabel: map is not a bijection" );
    }
    seen[e] = true;
  }
  if ( sigma[f.domain().zero()] != target.zero() || sigma[f.domain().one()] != target.one() )
  {
    throw ArgumentError( "relabel: map does not preserve zero and one" );
  }
  std::vector<Element> table( f.size() );
  Tuple image( f.arity() );
  for ( std::size_t i = 0; i < f.size(); ++i )
  {
    const auto x = decode_index( f.domain(), f.arity(), i );
    for ( unsigned k = 0; k < f.arity(); ++k )
    {
      image[k] = sigma[x[k]];
    }
    table[encode_tuple( target, image )] = sigma[f[i]];
  }
  return Operation( target, f.arity(), std::move( table ) );
}

} // namespace pivotal
