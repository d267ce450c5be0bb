#include "pivotal/suite.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "pivotal/census.hpp"
#include "pivotal/clone.hpp"
#include "pivotal/decomposition.hpp"
#include "pivotal/normal_form.hpp"

namespace pivotal
{

bool SuiteReport::passed() const noexcept
{
  return std::all_of( rows.begin(), rows.end(), []( const SuiteRow& r ) { return r.passed; } );
}

PivotalOperation suite_builtin( std::string_view name, bool inject_fault )
{
  auto pi = builtin( name );
  if ( !inject_fault || ( name != "med" && name != "pi0" ) )
  {
    return pi;
  }
  std::vector<Element> table( pi.op().table().begin(), pi.op().table().end() );
  table[1] ^= 1; // med(0,0,1)
  return PivotalOperation( Operation( pi.domain(), 3, std::move( table ) ) );
}

namespace
{

struct Outcome
{
  bool passed = true;
  std::string detail;
};

// Accumulates failures; the first few are kept as detail.
class Findings
{
public:
  void require( bool ok, const std::string& what )
  {
    if ( !ok )
    {
      ++failures_;
      if ( failures_ <= 3 )
      {
        out_ << ( failures_ > 1 ? "; " : "" ) << what;
      }
    }
  }
  void note( const std::string& what ) { notes_ << ( notes_.tellp() > 0 ? "; " : "" ) << what; }

  Outcome outcome() const
  {
    if ( failures_ > 0 )
    {
      auto d = out_.str();
      if ( failures_ > 3 )
      {
        d += "; " + std::to_string( failures_ - 3 ) + " more";
      }
      return { false, d };
    }
    return { true, notes_.str() };
  }

private:
  std::size_t failures_ = 0;
  std::ostringstream out_;
  std::ostringstream notes_;
};

std::string tally_text( const BooleanCensus::Tally& t )
{
  return std::to_string( t.holds ) + " hold, " + std::to_string( t.violated ) + " violated, " +
         std::to_string( t.vacuous ) + " vacuous, " + std::to_string( t.inconclusive ) + " inconclusive";
}

std::string tuple_text( std::span<const Element> t )
{
  std::string s = "(";
  for ( std::size_t i = 0; i < t.size(); ++i )
  {
    s += ( i ? "," : "" ) + std::to_string( t[i] );
  }
  return s + ")";
}

class Suite
{
public:
  explicit Suite( const SuiteOptions& options ) : opt_( options ) {}

  SuiteReport run()
  {
    SuiteReport report;
    report.fault_injected = opt_.inject_fault;
    const std::pair<const char*, const char*> rows[] = {
        { "constants-decomposable", "every constant operation is decomposable" },
        { "normal-form-inclusion", "decomposable operations are recovered from their normal form" },
        { "cyclic-symmetry-implies-symmetric", "self-decomposable, ex01 and sym01 imply symmetric" },
        { "symmetry-characterization", "self-decomposable with ex01: symmetric iff thm28 pair" },
        { "composition-preservation", "with ex04, compositions of decomposable operations stay decomposable" },
        { "projections-iff-ex01", "ex01 iff the unary projection is a member iff all projections are" },
        { "clone-iff-ex01", "with ex04, the class is a clone iff ex01" },
        { "boolean-classification", "Boolean clones of decomposable functions are monotone or all" },
        { "generated-equals-lambda", "the class equals the clone generated by the operation and constants" },
        { "derived-equations", "the four derived equations hold" },
        { "clone-characterization", "self-decomposable with fine01, fine02: clone iff ex01 and ex04" },
        { "clone-characterization-fine", "self-decomposable: clone with fine01, fine02 iff ex01 and ex04" },
        { "symmetric-clone-characterization", "symmetric self-decomposable with ex01: clone iff ex04" },
        { "delta-construction", "operations built from a delta map satisfy ex04" },
        { "clone-without-pi", "the 3-element example gives a clone not containing the operation" },
    };
    const std::function<Outcome()> checks[] = {
        [this] { return constants_decomposable(); },   [this] { return normal_form_inclusion(); },
        [this] { return cyclic_symmetry(); },          [this] { return symmetry_characterization(); },
        [this] { return composition_preservation(); }, [this] { return projections(); },
        [this] { return clone_iff_ex01(); },           [this] { return boolean_classification(); },
        [this] { return generated_equals_lambda(); },  [this] { return derived_equations(); },
        [this] { return characterization(); },         [this] { return fine_characterization(); },
        [this] { return symmetric_characterization(); }, [this] { return delta_construction(); },
        [this] { return clone_without_pi(); },
    };
    static_assert( std::size( rows ) == std::size( checks ) );
    for ( std::size_t i = 0; i < std::size( rows ); ++i )
    {
      SuiteRow row;
      row.label = rows[i].first;
      row.statement = rows[i].second;
      const auto t0 = std::chrono::steady_clock::now();
      try
      {
        const auto out = checks[i]();
        row.passed = out.passed;
        row.detail = out.detail;
      }
      catch ( const std::exception& e )
      {
        row.passed = false;
        row.detail = std::string( "error: " ) + e.what();
      }
      row.seconds = std::chrono::duration<double>( std::chrono::steady_clock::now() - t0 ).count();
      report.rows.push_back( std::move( row ) );
    }
    return report;
  }

private:
  const BooleanCensus& census()
  {
    if ( !census_ )
    {
      census_ = boolean_census( opt_.arity_cap, opt_.budget );
    }
    return *census_;
  }

  PivotalOperation named( std::string_view name ) const { return suite_builtin( name, opt_.inject_fault ); }

  std::vector<PivotalOperation> boolean_space() const { return enumerate_pivotal( Domain( 2 ), false ); }

  std::vector<PivotalOperation> ternary_builtins() const
  {
    return { named( "example3elem" ), named( "delta-zero" ) };
  }

  static Outcome from_tally( const BooleanCensus::Tally& t )
  {
    return { t.violated == 0 && t.inconclusive == 0, "m=2 census: " + tally_text( t ) };
  }

  Outcome constants_decomposable()
  {
    Findings f;
    auto ops = boolean_space();
    for ( auto& p : ternary_builtins() )
    {
      ops.push_back( p );
    }
    std::size_t checked = 0;
    for ( const auto& pi : ops )
    {
      for ( unsigned n = 1; n <= opt_.arity_cap; ++n )
      {
        for ( unsigned c = 0; c < pi.domain().size(); ++c )
        {
          const auto k = constant_op( pi.domain(), n, static_cast<Element>( c ) );
          f.require( is_pi_decomposable( k, pi ).member, "constant " + std::to_string( c ) + " of arity " +
                                                             std::to_string( n ) + " is not decomposable" );
          ++checked;
        }
      }
    }
    f.note( std::to_string( checked ) + " constants over " + std::to_string( ops.size() ) + " operations" );
    return f.outcome();
  }

  Outcome normal_form_inclusion()
  {
    Findings f;
    std::size_t checked = 0;
    for ( const auto& pi : boolean_space() )
    {
      for ( unsigned n = 1; n <= opt_.arity_cap; ++n )
      {
        for ( const auto& g : lambda_fragment( pi, n, opt_.budget ).members )
        {
          f.require( nf_to_operation( build_normal_form( g ), pi, n ) == g, "normal form does not reproduce a member" );
          ++checked;
        }
      }
    }
    for ( const auto& pi : ternary_builtins() )
    {
      for ( unsigned n = 1; n <= 2; ++n )
      {
        for ( const auto& g : lambda_fragment( pi, n, opt_.budget ).members )
        {
          f.require( nf_to_operation( build_normal_form( g ), pi, n ) == g, "normal form does not reproduce a member" );
          ++checked;
        }
      }
    }
    f.note( std::to_string( checked ) + " members round-tripped" );
    return f.outcome();
  }

  Outcome cyclic_symmetry() { return from_tally( census().cyclic_implies_symmetric ); }
  Outcome symmetry_characterization() { return from_tally( census().symmetry_characterization ); }

  Outcome composition_preservation()
  {
    Findings f;
    std::size_t with_ex04 = 0;
    std::uint64_t compositions = 0;
    for ( const auto& pi : boolean_space() )
    {
      const auto r = check_composition_preservation( pi, 2, opt_.budget, CheckMode::exhaustive );
      if ( r.status == TheoremStatus::vacuous )
      {
        continue;
      }
      ++with_ex04;
      compositions += r.compositions.checked;
      f.require( r.status == TheoremStatus::holds, "a composition leaves the class" );
    }
    const auto dz = named( "delta-zero" );
    auto sampled = opt_.budget;
    sampled.sample_count = std::max<std::uint64_t>( sampled.sample_count, 10'000 );
    const auto r = check_composition_preservation( dz, 2, sampled, CheckMode::sampled );
    f.require( r.status == TheoremStatus::holds, "delta-zero: a sampled composition leaves the class" );
    f.note( std::to_string( with_ex04 ) + " Boolean operations with ex04, " + std::to_string( compositions ) +
            " exhaustive compositions; delta-zero " + std::to_string( r.compositions.checked ) + " sampled" );
    return f.outcome();
  }

  Outcome projections() { return from_tally( census().projections_iff_ex01 ); }
  Outcome clone_iff_ex01() { return from_tally( census().ex01_criterion ); }

  Outcome boolean_classification()
  {
    Findings f;
    const auto& c = census();
    f.require( c.records.size() == 16, std::to_string( c.records.size() ) + " Boolean pivotal operations, expected 16" );
    f.require( c.ex01_entries.size() == 4, std::to_string( c.ex01_entries.size() ) + " satisfy ex01, expected 4" );
    const Domain b( 2 );
    const PivotalSpace space( b, false );
    const std::pair<const char*, const char*> expected[] = {
        { "pi0", "x" }, { "pi1", "not x" }, { "pi2", "0" }, { "pi3", "1" } };
    for ( const auto& [name, section] : expected )
    {
      const auto pi = named( name );
      const auto id = space.id_of( pi.op() );
      const auto it = std::find_if( c.ex01_entries.begin(), c.ex01_entries.end(),
                                    [&]( const BooleanClassEntry& e ) { return e.section_0_1 == section; } );
      f.require( it != c.ex01_entries.end() && id && it->id == *id,
                 std::string( name ) + " does not match the census entry with section " + section );
      const bool full = std::string_view( name ) == "pi1";
      for ( unsigned n = 1; n <= c.arity_cap && it != c.ex01_entries.end(); ++n )
      {
        f.require( it->lambda_class[n - 1] == ( full ? "all" : "monotone" ),
                   std::string( name ) + " at arity " + std::to_string( n ) + " is " + it->lambda_class[n - 1] );
      }
    }
    f.note( "sections x, not x, 0, 1 match pi0..pi3; classes checked up to arity " + std::to_string( c.arity_cap ) );
    return f.outcome();
  }

  Outcome generated_equals_lambda()
  {
    Findings f;
    for ( const char* name : { "pi0", "pi1", "pi2", "pi3" } )
    {
      const auto r = check_generated_equals_lambda( named( name ), opt_.arity_cap, opt_.budget );
      f.require( r.status == TheoremStatus::holds, std::string( name ) + ": " + r.detail );
    }
    std::size_t vacuous = 0;
    for ( const auto& pi : boolean_space() )
    {
      const auto r = check_generated_equals_lambda( pi, opt_.arity_cap, opt_.budget );
      f.require( r.status != TheoremStatus::violated && r.status != TheoremStatus::inconclusive, r.detail );
      vacuous += r.status == TheoremStatus::vacuous;
    }
    f.note( "pi0..pi3 equal up to arity " + std::to_string( opt_.arity_cap ) + "; " + std::to_string( vacuous ) +
            " of 16 vacuous" );
    return f.outcome();
  }

  Outcome derived_equations()
  {
    Findings f;
    const auto& t = census().derived_under_ex01;
    f.require( t.violated == 0, "m=2 census: " + tally_text( t ) );
    f.note( "m=2 census: " + tally_text( t ) );
    for ( const char* name : { "example3elem", "delta-zero" } )
    {
      const auto r = check_derived_equations( named( name ) );
      f.require( r.under_ex01_and_decomposition != TheoremStatus::violated,
                 std::string( name ) + " is self-decomposable with ex01 but violates them" );
      if ( r.under_ex01 == TheoremStatus::violated )
      {
        f.note( std::string( name ) + " violates them with ex01 alone" );
      }
    }
    return f.outcome();
  }

  Outcome certificate_sweep( TheoremStatus CloneCertificate::*field )
  {
    BooleanCensus::Tally t;
    for ( const auto& pi : boolean_space() )
    {
      t.add( clone_certificate( pi, opt_.arity_cap, opt_.budget ).*field );
    }
    return from_tally( t );
  }

  Outcome characterization() { return certificate_sweep( &CloneCertificate::characterization ); }
  Outcome fine_characterization() { return certificate_sweep( &CloneCertificate::fine_characterization ); }
  Outcome symmetric_characterization() { return certificate_sweep( &CloneCertificate::symmetric_characterization ); }

  Outcome delta_construction()
  {
    Findings f;
    const Domain d( 3 );
    const auto pairs = delta_pairs( d );
    std::vector<Element> digits( pairs.size(), 0 );
    std::size_t maps = 0;
    std::size_t witnessed = 0;
    do
    {
      DeltaMap map;
      for ( std::size_t i = 0; i < pairs.size(); ++i )
      {
        map[pairs[i]] = digits[i];
      }
      const auto pi = from_delta_function( d, map );
      ++maps;
      f.require( satisfies( pi.view(), IdentityId::ex01 ) && satisfies( pi.view(), IdentityId::ex04 ),
                 "a delta-built operation fails ex04" );
      // f(2,2) reads as Π(x,2,2) = 2
      if ( map[{ 2, 0 }] == map[{ 2, 1 }] && map[{ 2, 0 }] != 2 )
      {
        const Element x[] = { 1, 2, 2 };
        const auto p = decomposition_point( pi.op(), pi, 3, x );
        f.require( !p.holds() && p.value == 2 && p.recombined == map[{ 2, 0 }],
                   "no violation at pivot 3, tuple (1,2,2)" );
        f.require( !is_self_decomposable( pi.view() ), "operation is self-decomposable" );
        ++witnessed;
      }
    } while ( [&] {
      for ( std::size_t k = digits.size(); k-- > 0; )
      {
        if ( ++digits[k] < 3 )
        {
          return true;
        }
        digits[k] = 0;
      }
      return false;
    }() );
    const auto dz = named( "delta-zero" );
    const auto w = is_self_decomposable( dz );
    f.require( !w.member, "delta-zero is self-decomposable" );
    f.note( std::to_string( maps ) + " delta maps; " + std::to_string( witnessed ) +
            " with f(2,0)=f(2,1)!=2 fail at pivot 3, tuple (1,2,2)" );
    return f.outcome();
  }

  Outcome clone_without_pi()
  {
    Findings f;
    const auto pi = named( "example3elem" );
    const auto ex01 = check_identity( pi, IdentityId::ex01 );
    const auto ex04 = check_identity( pi, IdentityId::ex04 );
    f.require( ex01.holds, "ex01 fails" );
    if ( !ex04.holds )
    {
      f.require( false, "ex04 fails at " + tuple_text( ex04.witness->values ) + ": " +
                            std::to_string( ex04.witness->lhs ) + " != " + std::to_string( ex04.witness->rhs ) );
    }
    // (x,a,a) at pivot 2: Π(x,1,1) = 1 but Π(1, Π(x,2,1), Π(x,0,1)) = Π(1,2,2) = 2
    for ( Element x = 0; x < 3; ++x )
    {
      const Element t[] = { x, 1, 1 };
      f.require( !decomposition_point( pi.op(), pi, 2, t ).holds(), "section (x,a,a) decomposes" );
    }
    const auto bounded = bounded_clone_check( pi, 2, opt_.budget );
    f.require( bounded.verdict == BoundedVerdict::bounded_verified,
               "arity <= 2 fragment is " + std::string( to_string( bounded.verdict ) ) );
    const auto dz = named( "delta-zero" );
    if ( satisfies( dz.view(), IdentityId::ex04 ) && !is_self_decomposable( dz.view() ) )
    {
      f.note( "delta-zero satisfies ex01 and ex04 and is not self-decomposable" );
    }
    return f.outcome();
  }

  SuiteOptions opt_;
  std::optional<BooleanCensus> census_;
};

} // namespace

SuiteReport run_suite( const SuiteOptions& options )
{
  return Suite( options ).run();
}

nlohmann::json to_json( const SuiteReport& report )
{
  nlohmann::json rows = nlohmann::json::array();
  for ( const auto& r : report.rows )
  {
    rows.push_back( { { "label", r.label },
                      { "statement", r.statement },
                      { "passed", r.passed },
                      { "detail", r.detail },
                      { "seconds", r.seconds } } );
  }
  return { { "passed", report.passed() }, { "fault_injected", report.fault_injected }, { "rows", rows } };
}

std::string format_table( const SuiteReport& report )
{
  std::size_t width = 0;
  for ( const auto& r : report.rows )
  {
    width = std::max( width, r.label.size() );
  }
  std::ostringstream out;
  for ( const auto& r : report.rows )
  {
    out << ( r.passed ? "PASS  " : "FAIL  " ) << r.label << std::string( width - r.label.size() + 2, ' ' );
    char secs[16];
    std::snprintf( secs, sizeof secs, "%7.3fs", r.seconds );
    out << secs << "  " << r.detail << "\n";
  }
  const auto failed = std::count_if( report.rows.begin(), report.rows.end(), []( const SuiteRow& r ) { return !r.passed; } );
  out << report.rows.size() - failed << "/" << report.rows.size() << " rows pass\n";
  return out.str();
}

} // namespace pivotal
