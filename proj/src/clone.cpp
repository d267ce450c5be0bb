#include "pivotal/clone.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <random>
#include <unordered_map>

#include "json.hpp"
#include "pivotal/table_io.hpp"

namespace pivotal
{

std::string_view to_string( Provenance p ) noexcept
{
  switch ( p )
  {
  case Provenance::generated:
    return "generated";
  case Provenance::enumerated:
    return "enumerated";
  case Provenance::provided:
    return "provided";
  }
  return "?";
}

std::string_view to_string( BoundedVerdict v ) noexcept
{
  switch ( v )
  {
  case BoundedVerdict::bounded_verified:
    return "bounded-verified";
  case BoundedVerdict::sampled:
    return "sampled";
  case BoundedVerdict::refuted:
    return "refuted";
  case BoundedVerdict::unverified:
    return "unverified";
  }
  return "?";
}

std::optional<bool> clone_evidence( BoundedVerdict v ) noexcept
{
  switch ( v )
  {
  case BoundedVerdict::bounded_verified:
  case BoundedVerdict::sampled:
    return true;
  case BoundedVerdict::refuted:
    return false;
  case BoundedVerdict::unverified:
    break;
  }
  return std::nullopt;
}

Fragment::Fragment( Domain domain, unsigned arity_cap, Provenance provenance )
    : domain_( domain ), arity_cap_( arity_cap ), provenance_( provenance ), members_( arity_cap )
{
}

const std::set<Operation>& Fragment::members( unsigned arity ) const
{
  if ( arity < 1 || arity > arity_cap_ )
  {
    throw ArgumentError( "fragment has no arity " + std::to_string( arity ) );
  }
  return members_[arity - 1];
}

bool Fragment::contains( const Operation& op ) const
{
  if ( op.domain() != domain_ || op.arity() < 1 || op.arity() > arity_cap_ )
  {
    return false;
  }
  return members_[op.arity() - 1].count( op ) > 0;
}

bool Fragment::insert( Operation op )
{
  if ( op.domain() != domain_ )
  {
    throw ArgumentError( "fragment member on a different domain" );
  }
  if ( op.arity() < 1 || op.arity() > arity_cap_ )
  {
    throw ArgumentError( "fragment member arity " + std::to_string( op.arity() ) + " outside [1, " +
                         std::to_string( arity_cap_ ) + "]" );
  }
  return members_[op.arity() - 1].insert( std::move( op ) ).second;
}

bool Fragment::is_full( unsigned arity ) const
{
  const auto entries = domain_.power( arity );
  std::uint64_t total = 1;
  for ( std::uint64_t i = 0; i < entries; ++i )
  {
    if ( total > std::numeric_limits<std::uint64_t>::max() / domain_.size() )
    {
      return false;
    }
    total *= domain_.size();
  }
  return members( arity ).size() == total;
}

namespace
{

using Table = std::vector<Element>;

std::uint64_t saturating_mul( std::uint64_t a, std::uint64_t b ) noexcept
{
  if ( a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a )
  {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t saturating_pow( std::uint64_t base, std::uint64_t exp ) noexcept
{
  std::uint64_t r = 1;
  for ( std::uint64_t i = 0; i < exp; ++i )
  {
    r = saturating_mul( r, base );
  }
  return r;
}

// out[x] = outer[sum_j inner_j[x] * m^(k-j)]
void compose_into( const Element* outer, const std::vector<const Table*>& inner, unsigned m, std::size_t size,
                   Element* out ) noexcept
{
  for ( std::size_t x = 0; x < size; ++x )
  {
    std::size_t index = 0;
    for ( const auto* g : inner )
    {
      index = index * m + ( *g )[x];
    }
    out[x] = outer[index];
  }
}

std::vector<Operation> sorted_operations( const Domain& domain, unsigned arity, const std::vector<Table>& tables )
{
  std::vector<Operation> ops;
  ops.reserve( tables.size() );
  for ( const auto& t : tables )
  {
    ops.emplace_back( domain, arity, t );
  }
  std::sort( ops.begin(), ops.end() );
  return ops;
}

// Odometer over the box [lo, hi), last position fastest.
bool next_pick( std::vector<std::size_t>& pick, const std::vector<std::size_t>& lo,
                const std::vector<std::size_t>& hi ) noexcept
{
  for ( std::size_t j = pick.size(); j-- > 0; )
  {
    if ( ++pick[j] < hi[j] )
    {
      return true;
    }
    pick[j] = lo[j];
  }
  return false;
}

} // namespace

GeneratedSet generate_fragment( const Domain& domain, std::span<const Operation> generators, unsigned arity,
                                bool include_constants, const Budget& budget )
{
  for ( const auto& g : generators )
  {
    if ( g.domain() != domain )
    {
      throw ArgumentError( "generators must share the domain" );
    }
  }
  const auto m = domain.size();
  const auto size = static_cast<std::size_t>( domain.power( arity ) );

  std::vector<Table> members;
  std::unordered_map<std::string, std::size_t> index;
  auto add = [&]( const Element* table ) {
    std::string key( reinterpret_cast<const char*>( table ), size );
    if ( index.count( key ) )
    {
      return;
    }
    if ( members.size() >= budget.max_set_size )
    {
      throw BudgetExceeded( "max_set_size", budget.max_set_size, members.size() + 1 );
    }
    index.emplace( std::move( key ), members.size() );
    members.emplace_back( table, table + size );
  };

  for ( unsigned i = 1; i <= arity; ++i )
  {
    add( projection( domain, arity, i ).table().data() );
  }
  if ( include_constants )
  {
    for ( unsigned c = 0; c < m; ++c )
    {
      add( constant_op( domain, arity, static_cast<Element>( c ) ).table().data() );
    }
  }
  for ( const auto& g : generators )
  {
    if ( g.arity() == 0 )
    {
      add( constant_op( domain, arity, g[0] ).table().data() );
    }
  }

  BudgetUsage usage;
  Table buffer( size );
  std::size_t previous_end = 0;
  // once every table is present no composition can add anything
  const auto all_tables = saturating_pow( m, size );
  while ( members.size() > previous_end && members.size() < all_tables )
  {
    if ( usage.rounds >= budget.max_rounds )
    {
      throw BudgetExceeded( "max_rounds", budget.max_rounds, usage.rounds + 1 );
    }
    ++usage.rounds;
    const std::size_t old_end = previous_end;
    const std::size_t end = members.size();
    previous_end = end;
    for ( const auto& g : generators )
    {
      const unsigned k = g.arity();
      if ( k == 0 )
      {
        continue;
      }
      // tuples over [0,end)^k with at least one position in [old_end,end):
      // the first such position is `lead`, earlier ones are old, later ones anything.
      for ( unsigned lead = 0; lead < k && members.size() < all_tables; ++lead )
      {
        std::vector<std::size_t> lo( k ), hi( k );
        for ( unsigned j = 0; j < k; ++j )
        {
          lo[j] = 0;
          hi[j] = j < lead ? old_end : end;
        }
        lo[lead] = old_end;
        bool empty = false;
        for ( unsigned j = 0; j < k; ++j )
        {
          empty = empty || lo[j] >= hi[j];
        }
        if ( empty )
        {
          continue;
        }
        std::vector<std::size_t> pick( lo );
        std::vector<const Table*> inner( k );
        while ( true )
        {
          if ( ++usage.compositions > budget.max_compositions )
          {
            throw BudgetExceeded( "max_compositions", budget.max_compositions, usage.compositions );
          }
          for ( unsigned j = 0; j < k; ++j )
          {
            inner[j] = &members[pick[j]];
          }
          compose_into( g.table().data(), inner, m, size, buffer.data() );
          add( buffer.data() );
          if ( members.size() == all_tables || !next_pick( pick, lo, hi ) )
          {
            break;
          }
        }
      }
    }
  }
  return { sorted_operations( domain, arity, members ), usage };
}

Fragment generate_fragment_up_to( const Domain& domain, std::span<const Operation> generators, unsigned arity_cap,
                                  bool include_constants, const Budget& budget )
{
  Fragment fragment( domain, arity_cap, Provenance::generated );
  for ( unsigned n = 1; n <= arity_cap; ++n )
  {
    auto set = generate_fragment( domain, generators, n, include_constants, budget );
    fragment.budget_used += set.usage;
    for ( auto& op : set.members )
    {
      fragment.insert( std::move( op ) );
    }
  }
  return fragment;
}

GeneratedSet lambda_fragment( const PivotalOperation& pi, unsigned arity, const Budget& budget )
{
  const auto& domain = pi.domain();
  const auto m = domain.size();
  const auto size = static_cast<std::size_t>( domain.power( arity ) );
  const auto candidates = saturating_pow( m, size );
  if ( candidates > budget.max_candidates )
  {
    throw BudgetExceeded( "max_candidates", budget.max_candidates, candidates );
  }
  const auto view = pi.view();
  std::vector<Table> members;
  Table table( size, 0 );
  for ( std::uint64_t c = 0; c < candidates; ++c )
  {
    if ( is_decomposable( table, arity, view ) )
    {
      members.push_back( table );
    }
    for ( std::size_t i = size; i-- > 0; )
    {
      if ( ++table[i] < m )
      {
        break;
      }
      table[i] = 0;
    }
  }
  BudgetUsage usage;
  usage.candidates = candidates;
  return { sorted_operations( domain, arity, members ), usage };
}

Fragment lambda_fragment_up_to( const PivotalOperation& pi, unsigned arity_cap, const Budget& budget )
{
  Fragment fragment( pi.domain(), arity_cap, Provenance::enumerated );
  for ( unsigned n = 1; n <= arity_cap; ++n )
  {
    auto set = lambda_fragment( pi, n, budget );
    fragment.budget_used += set.usage;
    for ( auto& op : set.members )
    {
      fragment.insert( std::move( op ) );
    }
  }
  return fragment;
}

namespace
{

struct CompositionSpace
{
  const Fragment& fragment;
  std::vector<std::vector<Table>> tables; // index = arity - 1

  explicit CompositionSpace( const Fragment& f ) : fragment( f ), tables( f.arity_cap() )
  {
    for ( unsigned n = 1; n <= f.arity_cap(); ++n )
    {
      for ( const auto& op : f.members( n ) )
      {
        tables[n - 1].emplace_back( op.table().begin(), op.table().end() );
      }
    }
  }

  CompositionCounterexample counterexample( unsigned k, std::size_t outer, unsigned n,
                                            const std::vector<std::size_t>& inner, const Table& result ) const
  {
    const auto& d = fragment.domain();
    std::vector<Operation> gs;
    for ( auto i : inner )
    {
      gs.emplace_back( d, n, tables[n - 1][i] );
    }
    return { Operation( d, k, tables[k - 1][outer] ), std::move( gs ), Operation( d, n, result ) };
  }
};

// accept(arity, table) decides whether a composed table stays in the class
template<typename Accept>
CompositionReport check_compositions( const Fragment& fragment, const Budget& budget, CheckMode mode,
                                      bool skip_full_targets, Accept&& accept )
{
  const CompositionSpace space( fragment );
  const auto cap = fragment.arity_cap();
  const auto m = fragment.domain().size();
  CompositionReport report;

  std::vector<bool> full( cap + 1, false );
  std::uint64_t total = 0;
  std::uint64_t skipped = 0;
  for ( unsigned k = 1; k <= cap; ++k )
  {
    for ( unsigned n = 1; n <= cap; ++n )
    {
      const auto count = saturating_mul( space.tables[k - 1].size(), saturating_pow( space.tables[n - 1].size(), k ) );
      if ( skip_full_targets && fragment.is_full( n ) )
      {
        full[n] = true;
        skipped += count;
      }
      else
      {
        total = std::min( std::numeric_limits<std::uint64_t>::max() - count, total ) + count;
      }
    }
  }

  const bool exhaustive = mode == CheckMode::exhaustive || ( mode == CheckMode::automatic && total <= budget.max_compositions );
  if ( mode == CheckMode::exhaustive && total > budget.max_compositions )
  {
    throw BudgetExceeded( "max_compositions", budget.max_compositions, total );
  }

  if ( exhaustive )
  {
    report.skipped_full = skipped;
    for ( unsigned k = 1; k <= cap; ++k )
    {
      const auto& outers = space.tables[k - 1];
      for ( unsigned n = 1; n <= cap; ++n )
      {
        const auto& inners = space.tables[n - 1];
        if ( full[n] || inners.empty() )
        {
          continue;
        }
        const auto size = static_cast<std::size_t>( fragment.domain().power( n ) );
        Table result( size );
        std::vector<std::size_t> pick( k, 0 );
        std::vector<const Table*> inner( k );
        for ( std::size_t o = 0; o < outers.size(); ++o )
        {
          std::fill( pick.begin(), pick.end(), 0 );
          bool more = true;
          while ( more )
          {
            for ( unsigned j = 0; j < k; ++j )
            {
              inner[j] = &inners[pick[j]];
            }
            compose_into( outers[o].data(), inner, m, size, result.data() );
            ++report.checked;
            if ( !accept( n, result ) )
            {
              report.closed = false;
              report.counterexample = space.counterexample( k, o, n, pick, result );
              return report;
            }
            more = false;
            for ( unsigned j = k; j-- > 0; )
            {
              if ( ++pick[j] < inners.size() )
              {
                more = true;
                break;
              }
              pick[j] = 0;
            }
          }
        }
      }
    }
    return report;
  }

  report.sampled = true;
  report.seed = budget.seed;
  std::vector<std::pair<unsigned, unsigned>> shapes;
  for ( unsigned k = 1; k <= cap; ++k )
  {
    for ( unsigned n = 1; n <= cap; ++n )
    {
      if ( !space.tables[k - 1].empty() && !space.tables[n - 1].empty() )
      {
        shapes.emplace_back( k, n );
      }
    }
  }
  if ( shapes.empty() )
  {
    return report;
  }
  std::mt19937_64 rng( budget.seed );
  std::vector<std::size_t> pick;
  std::vector<const Table*> inner;
  for ( std::uint64_t s = 0; s < budget.sample_count; ++s )
  {
    const auto [k, n] = shapes[rng() % shapes.size()];
    const auto& outers = space.tables[k - 1];
    const auto& inners = space.tables[n - 1];
    const auto o = static_cast<std::size_t>( rng() % outers.size() );
    pick.resize( k );
    inner.resize( k );
    for ( unsigned j = 0; j < k; ++j )
    {
      pick[j] = static_cast<std::size_t>( rng() % inners.size() );
      inner[j] = &inners[pick[j]];
    }
    const auto size = static_cast<std::size_t>( fragment.domain().power( n ) );
    Table result( size );
    compose_into( outers[o].data(), inner, m, size, result.data() );
    ++report.checked;
    if ( !accept( n, result ) )
    {
      report.closed = false;
      report.counterexample = space.counterexample( k, o, n, pick, result );
      return report;
    }
  }
  return report;
}

} // namespace

CompositionReport is_closed_under_composition( const Fragment& fragment, const Budget& budget, CheckMode mode )
{
  // per-arity lookup sets keyed by raw table bytes
  std::vector<std::unordered_map<std::string, bool>> lookup( fragment.arity_cap() );
  for ( unsigned n = 1; n <= fragment.arity_cap(); ++n )
  {
    for ( const auto& op : fragment.members( n ) )
    {
      lookup[n - 1].emplace( std::string( reinterpret_cast<const char*>( op.table().data() ), op.size() ), true );
    }
  }
  std::string key;
  return check_compositions( fragment, budget, mode, true, [&]( unsigned n, const Table& t ) {
    key.assign( reinterpret_cast<const char*>( t.data() ), t.size() );
    return lookup[n - 1].count( key ) > 0;
  } );
}

std::optional<Operation> missing_projection( const Fragment& fragment )
{
  for ( unsigned n = 1; n <= fragment.arity_cap(); ++n )
  {
    for ( unsigned i = 1; i <= n; ++i )
    {
      auto p = projection( fragment.domain(), n, i );
      if ( !fragment.contains( p ) )
      {
        return p;
      }
    }
  }
  return std::nullopt;
}

BoundedCloneCheck bounded_clone_check( const PivotalOperation& pi, unsigned arity_cap, const Budget& budget )
{
  BoundedCloneCheck check;
  try
  {
    const auto fragment = lambda_fragment_up_to( pi, arity_cap, budget );
    for ( unsigned n = 1; n <= arity_cap; ++n )
    {
      check.lambda_sizes.push_back( fragment.size( n ) );
    }
    check.missing_projection = missing_projection( fragment );
    if ( check.missing_projection )
    {
      check.verdict = BoundedVerdict::refuted;
      return check;
    }
    check.closure = is_closed_under_composition( fragment, budget );
    if ( !check.closure->closed )
    {
      check.verdict = BoundedVerdict::refuted;
    }
    else
    {
      check.verdict = check.closure->sampled ? BoundedVerdict::sampled : BoundedVerdict::bounded_verified;
    }
  }
  catch ( const BudgetExceeded& e )
  {
    check = BoundedCloneCheck{};
    check.verdict = BoundedVerdict::unverified;
    check.note = e.what();
  }
  return check;
}

std::string_view CloneCertificate::verdict() const noexcept
{
  return certified ? std::string_view( "certified" ) : to_string( bounded.verdict );
}

namespace
{

TheoremStatus biconditional( bool premises, std::optional<bool> lhs, bool rhs )
{
  if ( !premises )
  {
    return TheoremStatus::vacuous;
  }
  if ( !lhs )
  {
    return TheoremStatus::inconclusive;
  }
  return *lhs == rhs ? TheoremStatus::holds : TheoremStatus::violated;
}

} // namespace

CloneCertificate clone_certificate( const PivotalOperation& pi, unsigned arity_cap, const Budget& budget )
{
  CloneCertificate c;
  c.arity_cap = arity_cap;
  c.ex01 = check_identity( pi, IdentityId::ex01 );
  c.ex04 = check_identity( pi, IdentityId::ex04 );
  c.fine01 = check_identity( pi, IdentityId::fine01 );
  c.fine02 = check_identity( pi, IdentityId::fine02 );
  c.self_decomposable = is_self_decomposable( pi );
  c.symmetric = is_symmetric( pi );
  c.certified = c.ex01.holds && c.ex04.holds;
  c.unary_projection_member = is_pi_decomposable( projection( pi.domain(), 1, 1 ), pi ).member;
  c.bounded = bounded_clone_check( pi, arity_cap, budget );

  const auto clone = clone_evidence( c.bounded.verdict );
  const bool self = c.self_decomposable.member;
  const bool fines = c.fine01.holds && c.fine02.holds;
  c.ex01_criterion = biconditional( c.ex04.holds, clone, c.ex01.holds );
  c.characterization = biconditional( self && fines, clone, c.certified );
  std::optional<bool> lhs = fines ? clone : std::optional<bool>( false );
  c.fine_characterization = biconditional( self, lhs, c.certified );
  c.symmetric_characterization = biconditional( c.symmetric && self && c.ex01.holds, clone, c.ex04.holds );
  return c;
}

GeneratedEqualityReport check_generated_equals_lambda( const PivotalOperation& pi, unsigned arity_cap,
                                                       const Budget& budget )
{
  GeneratedEqualityReport report;
  const bool self = is_self_decomposable( pi.view() );
  const auto bounded = bounded_clone_check( pi, arity_cap, budget );
  const auto clone = clone_evidence( bounded.verdict );
  const bool premises = self && clone.value_or( false );

  std::string budget_note;
  const std::vector<Operation> generators{ pi.op() };
  for ( unsigned n = 1; n <= arity_cap; ++n )
  {
    try
    {
      const auto generated = generate_fragment( pi.domain(), generators, n, true, budget );
      const auto lambda = lambda_fragment( pi, n, budget );
      ArityComparison cmp;
      cmp.arity = n;
      cmp.generated_size = generated.members.size();
      cmp.lambda_size = lambda.members.size();
      cmp.equal = generated.members == lambda.members;
      cmp.generated_subset = std::includes( lambda.members.begin(), lambda.members.end(), generated.members.begin(),
                                            generated.members.end() );
      report.arities.push_back( cmp );
    }
    catch ( const BudgetExceeded& e )
    {
      budget_note = "arity " + std::to_string( n ) + ": " + e.what();
      break;
    }
  }

  const bool all_equal = std::all_of( report.arities.begin(), report.arities.end(), []( const auto& a ) { return a.equal; } );
  const bool all_subset =
      std::all_of( report.arities.begin(), report.arities.end(), []( const auto& a ) { return a.generated_subset; } );
  const bool complete = report.arities.size() == arity_cap;

  if ( !clone.has_value() && self )
  {
    report.status = TheoremStatus::inconclusive;
    report.detail = "clone check unverified: " + bounded.note;
  }
  else if ( !premises )
  {
    report.status = TheoremStatus::vacuous;
    report.detail = std::string( "premises fail:" ) + ( self ? "" : " self-decomposable" ) +
                    ( clone.value_or( true ) ? "" : " clone" ) + "; generated subset of lambda: " +
                    ( all_subset ? "yes" : "no" );
  }
  else if ( !all_equal )
  {
    report.status = TheoremStatus::violated;
    report.detail = "generated clone differs from lambda";
  }
  else if ( !complete )
  {
    report.status = TheoremStatus::inconclusive;
    report.detail = budget_note;
  }
  else
  {
    report.status = TheoremStatus::holds;
    report.detail = "equal at every arity up to the cap";
  }
  if ( !budget_note.empty() && report.status != TheoremStatus::inconclusive )
  {
    report.detail += "; " + budget_note;
  }
  return report;
}

DerivedEquationsReport check_derived_equations( const PivotalOperation& pi )
{
  DerivedEquationsReport r;
  r.equations = check_identity( pi, IdentityId::derived );
  r.ex01 = satisfies( pi.view(), IdentityId::ex01 );
  r.self_decomposable = is_self_decomposable( pi.view() );
  const auto grade = [&]( bool premises ) {
    if ( !premises )
    {
      return TheoremStatus::vacuous;
    }
    return r.equations.holds ? TheoremStatus::holds : TheoremStatus::violated;
  };
  r.under_ex01 = grade( r.ex01 );
  r.under_ex01_and_decomposition = grade( r.ex01 && r.self_decomposable );
  return r;
}

PreservationReport check_composition_preservation( const PivotalOperation& pi, unsigned arity_cap,
                                                   const Budget& budget, CheckMode mode )
{
  PreservationReport report;
  if ( !satisfies( pi.view(), IdentityId::ex04 ) )
  {
    return report;
  }
  const auto fragment = lambda_fragment_up_to( pi, arity_cap, budget );
  const auto view = pi.view();
  report.compositions = check_compositions(
      fragment, budget, mode, false, [&]( unsigned n, const Table& t ) { return is_decomposable( t, n, view ); } );
  report.status = report.compositions.closed ? TheoremStatus::holds : TheoremStatus::violated;
  return report;
}

void export_fragment( const Fragment& fragment, const std::filesystem::path& directory, std::string_view verdict )
{
  std::filesystem::create_directories( directory );
  nlohmann::json files = nlohmann::json::array();
  nlohmann::json counts = nlohmann::json::object();
  std::size_t total = 0;
  for ( unsigned n = 1; n <= fragment.arity_cap(); ++n )
  {
    std::size_t i = 0;
    for ( const auto& op : fragment.members( n ) )
    {
      char name[32];
      std::snprintf( name, sizeof name, "a%u_%06zu.tbl", n, i++ );
      write_table_file( directory / name, op );
      files.push_back( name );
    }
    counts[std::to_string( n )] = fragment.size( n );
    total += fragment.size( n );
  }
  const auto& d = fragment.domain();
  nlohmann::json manifest = {
      { "domain", { { "size", d.size() }, { "zero", d.zero() }, { "one", d.one() } } },
      { "arity", fragment.arity_cap() },
      { "count", total },
      { "count_per_arity", counts },
      { "provenance", to_string( fragment.provenance() ) },
      { "budget_used",
        { { "candidates", fragment.budget_used.candidates },
          { "compositions", fragment.budget_used.compositions },
          { "rounds", fragment.budget_used.rounds } } },
      { "verdict", verdict },
      { "files", files } };
  std::ofstream out( directory / "manifest.json" );
  if ( !out )
  {
    throw FormatError( "cannot write manifest in " + directory.string() );
  }
  out << manifest.dump( 2 ) << '\n';
}

} // namespace pivotal
