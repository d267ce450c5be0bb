#include "pivotal/census.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <condition_variable>
#include <map>
#include <mutex>
#include <thread>

#include "pivotal/decomposition.hpp"

namespace pivotal
{

PivotalSpace::PivotalSpace( Domain domain, bool require_ex01 )
    : domain_( domain ), require_ex01_( require_ex01 ), count_( 1 )
{
  const auto m = domain.size();
  if ( m > 3 )
  {
    throw ArgumentError( "pivotal census supports domains of size 2 and 3, got " + std::to_string( m ) );
  }
  fixed_.assign( m * m * m, 0 );
  for ( unsigned x = 0; x < m; ++x )
  {
    for ( unsigned y = 0; y < m; ++y )
    {
      for ( unsigned z = 0; z < m; ++z )
      {
        const std::size_t i = ( x * m + y ) * m + z;
        if ( y == z )
        {
          fixed_[i] = static_cast<Element>( y );
        }
        else if ( require_ex01 && y == domain.one() && z == domain.zero() )
        {
          fixed_[i] = static_cast<Element>( x );
        }
        else
        {
          free_.push_back( i );
          count_ *= m;
        }
      }
    }
  }
}

void PivotalSpace::fill( std::uint64_t id, Element* out ) const
{
  if ( id >= count_ )
  {
    throw ArgumentError( "candidate id " + std::to_string( id ) + " outside space of " + std::to_string( count_ ) );
  }
  std::copy( fixed_.begin(), fixed_.end(), out );
  const auto m = domain_.size();
  for ( std::size_t j = free_.size(); j-- > 0; )
  {
    out[free_[j]] = static_cast<Element>( id % m );
    id /= m;
  }
}

bool PivotalSpace::advance( Element* table ) const noexcept
{
  const auto m = domain_.size();
  for ( std::size_t j = free_.size(); j-- > 0; )
  {
    auto& e = table[free_[j]];
    if ( ++e < m )
    {
      return true;
    }
    e = 0;
  }
  return false;
}

PivotalOperation PivotalSpace::operator[]( std::uint64_t id ) const
{
  std::vector<Element> table( fixed_.size() );
  fill( id, table.data() );
  return PivotalOperation( Operation( domain_, 3, std::move( table ) ) );
}

std::optional<std::uint64_t> PivotalSpace::id_of( const Operation& op ) const
{
  if ( op.domain() != domain_ || op.arity() != 3 )
  {
    return std::nullopt;
  }
  std::vector<bool> is_free( fixed_.size(), false );
  for ( auto i : free_ )
  {
    is_free[i] = true;
  }
  for ( std::size_t i = 0; i < fixed_.size(); ++i )
  {
    if ( !is_free[i] && op[i] != fixed_[i] )
    {
      return std::nullopt;
    }
  }
  std::uint64_t id = 0;
  for ( auto i : free_ )
  {
    id = id * domain_.size() + op[i];
  }
  return id;
}

std::vector<PivotalOperation> enumerate_pivotal( const Domain& domain, bool require_ex01 )
{
  const PivotalSpace space( domain, require_ex01 );
  std::vector<PivotalOperation> all;
  all.reserve( space.count() );
  for ( std::uint64_t id = 0; id < space.count(); ++id )
  {
    all.push_back( space[id] );
  }
  return all;
}

namespace
{

bool is_delta_shaped( TernaryView pi ) noexcept
{
  for ( unsigned y = 0; y < pi.m; ++y )
  {
    for ( unsigned z = 0; z < pi.m; ++z )
    {
      if ( y == z || ( y == pi.one && z == pi.zero ) )
      {
        continue;
      }
      for ( unsigned x = 1; x < pi.m; ++x )
      {
        if ( pi( x, y, z ) != pi( 0, y, z ) )
        {
          return false;
        }
      }
    }
  }
  return true;
}

} // namespace

CensusFlags compute_flags( TernaryView pi ) noexcept
{
  CensusFlags f;
  f.ex01 = satisfies( pi, IdentityId::ex01 );
  f.sym01 = satisfies( pi, IdentityId::sym01 );
  f.sym02 = satisfies( pi, IdentityId::sym02 );
  f.symmetric = f.sym01 && f.sym02;
  f.ex04 = satisfies( pi, IdentityId::ex04 );
  f.fine01 = satisfies( pi, IdentityId::fine01 );
  f.fine02 = satisfies( pi, IdentityId::fine02 );
  f.symmetry_pair = satisfies( pi, IdentityId::symmetry_pair );
  f.derived = satisfies( pi, IdentityId::derived );
  f.self_decomposable = is_self_decomposable( pi );
  f.delta_shaped = f.ex01 && is_delta_shaped( pi );
  return f;
}

const std::vector<std::string_view>& flag_names()
{
  static const std::vector<std::string_view> names = { "ex01",   "sym01",  "sym02", "symmetric",
                                                       "ex04",   "fine01", "fine02", "thm28",
                                                       "derived", "self_decomposable", "delta_shaped" };
  return names;
}

namespace
{

template<typename Flags>
auto* flag_field( Flags& f, std::string_view name ) noexcept
{
  using Ptr = decltype( &f.ex01 );
  if ( name == "ex01" )
    return Ptr{ &f.ex01 };
  if ( name == "sym01" )
    return Ptr{ &f.sym01 };
  if ( name == "sym02" )
    return Ptr{ &f.sym02 };
  if ( name == "symmetric" )
    return Ptr{ &f.symmetric };
  if ( name == "ex04" )
    return Ptr{ &f.ex04 };
  if ( name == "fine01" )
    return Ptr{ &f.fine01 };
  if ( name == "fine02" )
    return Ptr{ &f.fine02 };
  if ( name == "thm28" )
    return Ptr{ &f.symmetry_pair };
  if ( name == "derived" )
    return Ptr{ &f.derived };
  if ( name == "self_decomposable" )
    return Ptr{ &f.self_decomposable };
  if ( name == "delta_shaped" )
    return Ptr{ &f.delta_shaped };
  return Ptr{ nullptr };
}

} // namespace

std::optional<bool> flag_value( const CensusFlags& flags, std::string_view name ) noexcept
{
  if ( const auto* p = flag_field( flags, name ) )
  {
    return *p;
  }
  return std::nullopt;
}

nlohmann::json to_json( const ClassificationRecord& record )
{
  nlohmann::json flags = nlohmann::json::object();
  for ( auto name : flag_names() )
  {
    flags[std::string( name )] = *flag_value( record.flags, name );
  }
  nlohmann::json j = { { "id", record.id }, { "table", record.table }, { "flags", flags },
                       { "clone", record.clone_verdict } };
  if ( !record.lambda_sizes.empty() )
  {
    j["lambda_sizes"] = record.lambda_sizes;
  }
  return j;
}

ClassificationRecord record_from_json( const nlohmann::json& j )
{
  try
  {
    ClassificationRecord r;
    r.id = j.at( "id" ).get<std::uint64_t>();
    r.table = j.at( "table" ).get<std::vector<Element>>();
    for ( auto name : flag_names() )
    {
      *flag_field( r.flags, name ) = j.at( "flags" ).at( std::string( name ) ).get<bool>();
    }
    r.clone_verdict = j.at( "clone" ).get<std::string>();
    if ( j.contains( "lambda_sizes" ) )
    {
      r.lambda_sizes = j.at( "lambda_sizes" ).get<std::vector<std::size_t>>();
    }
    return r;
  }
  catch ( const nlohmann::json::exception& e )
  {
    throw FormatError( std::string( "census record: " ) + e.what() );
  }
}

ClassificationRecord classify( const PivotalOperation& pi, unsigned arity_cap, const Budget& budget, std::uint64_t id )
{
  ClassificationRecord r;
  r.id = id;
  r.table.assign( pi.op().table().begin(), pi.op().table().end() );
  r.flags = compute_flags( pi.view() );
  const bool certified = r.flags.ex01 && r.flags.ex04;
  if ( arity_cap > 0 )
  {
    const auto bounded = bounded_clone_check( pi, arity_cap, budget );
    r.lambda_sizes = bounded.lambda_sizes;
    r.clone_verdict = certified ? "certified" : std::string( to_string( bounded.verdict ) );
  }
  else
  {
    r.clone_verdict = certified ? "certified" : "none";
  }
  return r;
}

std::vector<Operation> monotone_boolean_functions( unsigned arity )
{
  const Domain domain( 2 );
  const std::size_t size = std::size_t{ 1 } << arity;
  std::vector<Operation> result;
  std::vector<Element> table( size );
  for ( std::uint64_t bits = 0; bits < ( std::uint64_t{ 1 } << size ); ++bits )
  {
    for ( std::size_t x = 0; x < size; ++x )
    {
      table[x] = static_cast<Element>( ( bits >> ( size - 1 - x ) ) & 1 );
    }
    bool monotone = true;
    for ( std::size_t a = 0; a < size && monotone; ++a )
    {
      for ( std::size_t b = 0; b < size && monotone; ++b )
      {
        // a <= b componentwise iff a's bits are a subset of b's
        if ( ( a & b ) == a && table[a] > table[b] )
        {
          monotone = false;
        }
      }
    }
    if ( monotone )
    {
      result.emplace_back( domain, arity, table );
    }
  }
  return result;
}

void BooleanCensus::Tally::add( TheoremStatus s ) noexcept
{
  switch ( s )
  {
  case TheoremStatus::holds:
    ++holds;
    break;
  case TheoremStatus::violated:
    ++violated;
    break;
  case TheoremStatus::vacuous:
    ++vacuous;
    break;
  case TheoremStatus::inconclusive:
    ++inconclusive;
    break;
  }
}

BooleanCensus boolean_census( unsigned arity_cap, const Budget& budget )
{
  BooleanCensus census;
  census.arity_cap = arity_cap;
  const Domain domain( 2 );
  const PivotalSpace space( domain, false );
  const std::vector<std::string> closed_forms = { "pi0", "pi1", "pi2", "pi3" };

  for ( std::uint64_t id = 0; id < space.count(); ++id )
  {
    const auto pi = space[id];
    census.records.push_back( classify( pi, arity_cap, budget, id ) );
    const auto& rec = census.records.back();

    census.cyclic_implies_symmetric.add( check_cyclic_implies_symmetric( pi ).status );
    census.symmetry_characterization.add( check_symmetry_characterization( pi ).status );

    // ex01 <=> unary projection in Λ <=> every projection up to the cap in Λ
    const bool unary = is_pi_decomposable( projection( domain, 1, 1 ), pi ).member;
    bool all_projections = true;
    for ( unsigned n = 1; n <= std::max( arity_cap, 1u ); ++n )
    {
      for ( unsigned i = 1; i <= n; ++i )
      {
        all_projections = all_projections && is_pi_decomposable( projection( domain, n, i ), pi ).member;
      }
    }
    census.projections_iff_ex01.add( rec.flags.ex01 == unary && unary == all_projections ? TheoremStatus::holds
                                                                                         : TheoremStatus::violated );

    const auto cert = clone_certificate( pi, std::max( arity_cap, 1u ), budget );
    census.ex01_criterion.add( cert.ex01_criterion );
    census.fine_characterization.add( cert.fine_characterization );
    census.derived_under_ex01.add( check_derived_equations( pi ).under_ex01 );

    if ( !rec.flags.ex01 )
    {
      continue;
    }
    BooleanClassEntry entry;
    entry.id = id;
    for ( const auto& name : closed_forms )
    {
      if ( builtin( name ) == pi )
      {
        entry.closed_form = name;
        break;
      }
    }
    const auto s0 = pi( 0, 0, 1 );
    const auto s1 = pi( 1, 0, 1 );
    entry.section_0_1 = s0 == 0 && s1 == 1 ? "x" : s0 == 1 && s1 == 0 ? "not x" : s0 == 0 ? "0" : "1";
    for ( unsigned n = 1; n <= arity_cap; ++n )
    {
      const auto lambda = lambda_fragment( pi, n, budget ).members;
      if ( lambda == monotone_boolean_functions( n ) )
      {
        entry.lambda_class.push_back( "monotone" );
      }
      else if ( lambda.size() == ( std::size_t{ 1 } << ( std::size_t{ 1 } << n ) ) )
      {
        entry.lambda_class.push_back( "all" );
      }
      else
      {
        entry.lambda_class.push_back( "other" );
      }
    }
    census.ex01_entries.push_back( std::move( entry ) );
  }
  return census;
}

namespace
{

nlohmann::json to_json( const BooleanCensus::Tally& t )
{
  return { { "holds", t.holds }, { "violated", t.violated }, { "vacuous", t.vacuous },
           { "inconclusive", t.inconclusive } };
}

} // namespace

nlohmann::json to_json( const BooleanCensus& census )
{
  nlohmann::json records = nlohmann::json::array();
  for ( const auto& r : census.records )
  {
    records.push_back( to_json( r ) );
  }
  nlohmann::json entries = nlohmann::json::array();
  for ( const auto& e : census.ex01_entries )
  {
    entries.push_back( { { "id", e.id },
                         { "closed_form", e.closed_form },
                         { "section_0_1", e.section_0_1 },
                         { "lambda_class", e.lambda_class } } );
  }
  return { { "arity_cap", census.arity_cap },
           { "records", records },
           { "ex01", entries },
           { "sweeps",
             { { "cyclic_implies_symmetric", to_json( census.cyclic_implies_symmetric ) },
               { "symmetry_characterization", to_json( census.symmetry_characterization ) },
               { "projections_iff_ex01", to_json( census.projections_iff_ex01 ) },
               { "ex01_criterion", to_json( census.ex01_criterion ) },
               { "fine_characterization", to_json( census.fine_characterization ) },
               { "derived_under_ex01", to_json( census.derived_under_ex01 ) } } } };
}

CensusCounts& CensusCounts::operator+=( const CensusCounts& o ) noexcept
{
  total += o.total;
  ex01 += o.ex01;
  ex04 += o.ex04;
  self_decomposable += o.self_decomposable;
  ex04_not_self_decomposable += o.ex04_not_self_decomposable;
  ex01_ex04 += o.ex01_ex04;
  ex01_ex04_not_self_decomposable += o.ex01_ex04_not_self_decomposable;
  symmetric += o.symmetric;
  sym01 += o.sym01;
  sym02 += o.sym02;
  fine01 += o.fine01;
  fine02 += o.fine02;
  symmetry_pair += o.symmetry_pair;
  derived += o.derived;
  derived_violations_ex01 += o.derived_violations_ex01;
  derived_violations_ex01_self += o.derived_violations_ex01_self;
  delta_shaped += o.delta_shaped;
  delta_shaped_ex04 += o.delta_shaped_ex04;
  cyclic_symmetry_violations += o.cyclic_symmetry_violations;
  symmetry_characterization_violations += o.symmetry_characterization_violations;
  certified += o.certified;
  emitted += o.emitted;
  return *this;
}

void CensusCounts::add( const CensusFlags& f ) noexcept
{
  ++total;
  ex01 += f.ex01;
  ex04 += f.ex04;
  self_decomposable += f.self_decomposable;
  ex04_not_self_decomposable += f.ex04 && !f.self_decomposable;
  ex01_ex04 += f.ex01 && f.ex04;
  ex01_ex04_not_self_decomposable += f.ex01 && f.ex04 && !f.self_decomposable;
  symmetric += f.symmetric;
  sym01 += f.sym01;
  sym02 += f.sym02;
  fine01 += f.fine01;
  fine02 += f.fine02;
  symmetry_pair += f.symmetry_pair;
  derived += f.derived;
  derived_violations_ex01 += f.ex01 && !f.derived;
  derived_violations_ex01_self += f.ex01 && f.self_decomposable && !f.derived;
  delta_shaped += f.delta_shaped;
  delta_shaped_ex04 += f.delta_shaped && f.ex04;
  cyclic_symmetry_violations += f.self_decomposable && f.ex01 && f.sym01 && !f.symmetric;
  symmetry_characterization_violations += f.self_decomposable && f.ex01 && f.symmetric != f.symmetry_pair;
  certified += f.ex01 && f.ex04;
}

nlohmann::json to_json( const CensusCounts& c )
{
  return { { "total", c.total },
           { "ex01", c.ex01 },
           { "ex04", c.ex04 },
           { "self_decomposable", c.self_decomposable },
           { "ex04_not_self_decomposable", c.ex04_not_self_decomposable },
           { "ex01_ex04", c.ex01_ex04 },
           { "ex01_ex04_not_self_decomposable", c.ex01_ex04_not_self_decomposable },
           { "symmetric", c.symmetric },
           { "sym01", c.sym01 },
           { "sym02", c.sym02 },
           { "fine01", c.fine01 },
           { "fine02", c.fine02 },
           { "thm28", c.symmetry_pair },
           { "derived", c.derived },
           { "derived_violations_ex01", c.derived_violations_ex01 },
           { "derived_violations_ex01_self_decomposable", c.derived_violations_ex01_self },
           { "delta_shaped", c.delta_shaped },
           { "delta_shaped_ex04", c.delta_shaped_ex04 },
           { "cyclic_symmetry_violations", c.cyclic_symmetry_violations },
           { "symmetry_characterization_violations", c.symmetry_characterization_violations },
           { "certified", c.certified },
           { "emitted", c.emitted } };
}

nlohmann::json to_json( const CensusSummary& s )
{
  nlohmann::json j = { { "domain", { { "size", s.domain.size() }, { "zero", s.domain.zero() }, { "one", s.domain.one() } } },
                       { "require_ex01", s.require_ex01 },
                       { "space_size", s.space_size },
                       { "start", s.start },
                       { "next_cursor", s.next_cursor },
                       { "complete", s.complete },
                       { "counts", to_json( s.counts ) } };
  j["first_ex04_not_self_decomposable"] =
      s.first_ex04_not_self_decomposable ? nlohmann::json( *s.first_ex04_not_self_decomposable ) : nlohmann::json();
  j["first_derived_violation_ex01"] =
      s.first_derived_violation_ex01 ? nlohmann::json( *s.first_derived_violation_ex01 ) : nlohmann::json();
  return j;
}

namespace
{

void append_number( std::string& out, std::uint64_t v )
{
  char buf[24];
  auto [ptr, ec] = std::to_chars( buf, buf + sizeof buf, v );
  out.append( buf, ptr );
}

// Same content as to_json(record).dump(), written without building a json value.
void append_flags_line( std::string& out, std::uint64_t id, const Element* table, std::size_t size,
                        const CensusFlags& f, bool certified )
{
  out += "{\"clone\":\"";
  out += certified ? "certified" : "none";
  out += "\",\"flags\":{";
  const std::pair<std::string_view, bool> ordered[] = {
      { "delta_shaped", f.delta_shaped }, { "derived", f.derived },     { "ex01", f.ex01 },
      { "ex04", f.ex04 },                 { "fine01", f.fine01 },       { "fine02", f.fine02 },
      { "self_decomposable", f.self_decomposable }, { "sym01", f.sym01 }, { "sym02", f.sym02 },
      { "symmetric", f.symmetric },       { "thm28", f.symmetry_pair } };
  bool first = true;
  for ( const auto& [name, value] : ordered )
  {
    if ( !first )
    {
      out += ',';
    }
    first = false;
    out += '"';
    out += name;
    out += "\":";
    out += value ? "true" : "false";
  }
  out += "},\"id\":";
  append_number( out, id );
  out += ",\"table\":[";
  for ( std::size_t i = 0; i < size; ++i )
  {
    if ( i )
    {
      out += ',';
    }
    out += static_cast<char>( '0' + table[i] );
  }
  out += "]}\n";
}

struct ChunkResult
{
  CensusCounts counts;
  std::string lines;
  std::optional<std::uint64_t> first_ex04_not_self;
  std::optional<std::uint64_t> first_derived_violation;
};

} // namespace

CensusSummary run_census( const Domain& domain, const CensusOptions& options, const RecordSink& sink )
{
  const PivotalSpace space( domain, options.require_ex01 );
  for ( const auto& name : options.emit_only )
  {
    if ( !flag_value( CensusFlags{}, name ) )
    {
      throw FormatError( "unknown flag '" + name + "'" );
    }
  }
  if ( options.resume > space.count() )
  {
    throw ArgumentError( "resume cursor " + std::to_string( options.resume ) + " beyond space of " +
                         std::to_string( space.count() ) );
  }
  const std::uint64_t start = options.resume;
  const std::uint64_t remaining = space.count() - start;
  const std::uint64_t span = options.limit ? std::min( *options.limit, remaining ) : remaining;
  const std::uint64_t end = start + span;
  const std::uint64_t chunk = std::max<std::uint64_t>( options.chunk_size, 1 );
  const std::uint64_t chunks = ( span + chunk - 1 ) / chunk;
  const std::size_t table_size = domain.power( 3 );

  auto process = [&]( std::uint64_t c ) {
    ChunkResult result;
    const std::uint64_t lo = start + c * chunk;
    const std::uint64_t hi = std::min( end, lo + chunk );
    std::vector<Element> table( table_size );
    space.fill( lo, table.data() );
    const TernaryView view{ table.data(), domain.size(), domain.zero(), domain.one() };
    for ( std::uint64_t id = lo; id < hi; ++id )
    {
      const auto flags = compute_flags( view );
      result.counts.add( flags );
      if ( flags.ex04 && !flags.self_decomposable && !result.first_ex04_not_self )
      {
        result.first_ex04_not_self = id;
      }
      if ( flags.ex01 && !flags.derived && !result.first_derived_violation )
      {
        result.first_derived_violation = id;
      }
      const bool emit = std::all_of( options.emit_only.begin(), options.emit_only.end(),
                                     [&]( const std::string& n ) { return *flag_value( flags, n ); } );
      if ( emit )
      {
        ++result.counts.emitted;
        if ( sink )
        {
          if ( options.flags_only )
          {
            append_flags_line( result.lines, id, table.data(), table_size, flags, flags.ex01 && flags.ex04 );
          }
          else
          {
            const PivotalOperation pi( Operation( domain, 3, table ) );
            result.lines += to_json( classify( pi, options.arity_cap, options.budget, id ) ).dump();
            result.lines += '\n';
          }
        }
      }
      space.advance( table.data() );
    }
    return result;
  };

  CensusSummary summary;
  summary.domain = domain;
  summary.require_ex01 = options.require_ex01;
  summary.space_size = space.count();
  summary.start = start;
  summary.next_cursor = end;
  summary.complete = end == space.count();

  auto merge = [&]( ChunkResult& r ) {
    summary.counts += r.counts;
    if ( !summary.first_ex04_not_self_decomposable )
    {
      summary.first_ex04_not_self_decomposable = r.first_ex04_not_self;
    }
    if ( !summary.first_derived_violation_ex01 )
    {
      summary.first_derived_violation_ex01 = r.first_derived_violation;
    }
    if ( sink && !r.lines.empty() )
    {
      sink( r.lines );
    }
  };

  unsigned threads = options.threads ? options.threads : std::max( 1u, std::thread::hardware_concurrency() );
  threads = static_cast<unsigned>( std::min<std::uint64_t>( threads, std::max<std::uint64_t>( chunks, 1 ) ) );
  if ( threads <= 1 )
  {
    for ( std::uint64_t c = 0; c < chunks; ++c )
    {
      auto r = process( c );
      merge( r );
    }
    return summary;
  }

  // workers claim chunks in order; the caller merges them back in chunk order
  std::atomic<std::uint64_t> next{ 0 };
  std::mutex mutex;
  std::condition_variable ready;
  std::map<std::uint64_t, ChunkResult> done;
  std::exception_ptr failure;
  std::vector<std::thread> pool;
  const std::size_t window = threads * 4;
  std::uint64_t merged = 0;
  for ( unsigned t = 0; t < threads; ++t )
  {
    pool.emplace_back( [&] {
      while ( true )
      {
        const auto c = next.fetch_add( 1 );
        if ( c >= chunks )
        {
          return;
        }
        {
          // bound memory: wait until the chunk is within the merge window
          std::unique_lock lock( mutex );
          ready.wait( lock, [&] { return c < merged + window || failure; } );
          if ( failure )
          {
            return;
          }
        }
        try
        {
          auto r = process( c );
          std::lock_guard lock( mutex );
          done.emplace( c, std::move( r ) );
        }
        catch ( ... )
        {
          std::lock_guard lock( mutex );
          failure = std::current_exception();
        }
        ready.notify_all();
      }
    } );
  }
  {
    std::unique_lock lock( mutex );
    while ( merged < chunks && !failure )
    {
      ready.wait( lock, [&] { return done.count( merged ) > 0 || failure; } );
      if ( failure )
      {
        break;
      }
      auto node = done.extract( merged );
      lock.unlock();
      merge( node.mapped() );
      lock.lock();
      ++merged;
      ready.notify_all();
    }
  }
  for ( auto& th : pool )
  {
    th.join();
  }
  if ( failure )
  {
    std::rethrow_exception( failure );
  }
  return summary;
}

} // namespace pivotal
