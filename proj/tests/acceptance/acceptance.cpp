// One line per acceptance criterion. Reference values come from formulas
// written here, not from the library's own enumerators.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <ostream>
#include <set>
#include <sstream>
#include <streambuf>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"
#include "pivotal/census.hpp"
#include "pivotal/clone.hpp"
#include "pivotal/decomposition.hpp"
#include "pivotal/errors.hpp"
#include "pivotal/identities.hpp"
#include "pivotal/normal_form.hpp"

using namespace pivotal;

namespace
{

const Domain B( 2 );
const Domain T( 3 );

struct Outcome
{
  bool passed = false;
  std::string detail;
};

Operation boolean_op( unsigned n, const std::function<bool( unsigned )>& bits_to_value )
{
  std::vector<Element> t( std::size_t{ 1 } << n );
  for ( unsigned x = 0; x < t.size(); ++x )
  {
    t[x] = bits_to_value( x ) ? 1 : 0;
  }
  return Operation( B, n, t );
}

// bit k of the index is argument n-k
bool arg( unsigned x, unsigned n, unsigned i )
{
  return ( x >> ( n - i ) ) & 1u;
}

Operation closed_form( int k )
{
  return boolean_op( 3, [k]( unsigned v ) {
    const bool x = arg( v, 3, 1 ), y = arg( v, 3, 2 ), z = arg( v, 3, 3 );
    switch ( k )
    {
    case 0:
      return ( x && y ) || ( y && z ) || ( x && z );
    case 1:
      return ( x && y ) || ( !x && z );
    case 2:
      return y && ( x || z );
    default:
      return z || ( x && y );
    }
  } );
}

// Monotone iff f(u) <= f(v) whenever u <= v bitwise, over every pair.
std::set<Operation> monotone_oracle( unsigned n )
{
  std::set<Operation> out;
  const unsigned rows = 1u << n;
  for ( unsigned long long code = 0; code < ( 1ull << rows ); ++code )
  {
    auto f = boolean_op( n, [code]( unsigned x ) { return ( code >> x ) & 1u; } );
    bool mono = true;
    for ( unsigned u = 0; u < rows && mono; ++u )
    {
      for ( unsigned v = 0; v < rows && mono; ++v )
      {
        if ( ( u & v ) == u && f.table()[u] > f.table()[v] )
        {
          mono = false;
        }
      }
    }
    if ( mono )
    {
      out.insert( f );
    }
  }
  return out;
}

std::string sizes_text( const std::vector<std::size_t>& s )
{
  std::string out;
  for ( auto v : s )
  {
    out += ( out.empty() ? "" : "," ) + std::to_string( v );
  }
  return "(" + out + ")";
}

Outcome boolean_census_shape()
{
  const auto all = enumerate_pivotal( B, false );
  std::vector<PivotalOperation> ex01;
  for ( const auto& p : all )
  {
    if ( p( 0, 1, 0 ) == 0 && p( 1, 1, 0 ) == 1 )
    {
      ex01.push_back( p );
    }
  }
  if ( all.size() != 16 || ex01.size() != 4 )
  {
    return { false, std::to_string( all.size() ) + " pivotal, " + std::to_string( ex01.size() ) + " with ex01" };
  }
  // expected sections Π(x,0,1) as (value at 0, value at 1): x, not x, 0, 1
  const Element section[4][2] = { { 0, 1 }, { 1, 0 }, { 0, 0 }, { 1, 1 } };
  for ( int k = 0; k < 4; ++k )
  {
    const auto form = closed_form( k );
    bool found = false;
    for ( const auto& p : ex01 )
    {
      if ( p.op() == form )
      {
        found = p( 0, 0, 1 ) == section[k][0] && p( 1, 0, 1 ) == section[k][1];
      }
    }
    if ( !found )
    {
      return { false, "closed form pi" + std::to_string( k ) + " missing or wrong section" };
    }
    if ( builtin( "pi" + std::to_string( k ) ).op() != form )
    {
      return { false, "builtin pi" + std::to_string( k ) + " differs from its closed form" };
    }
  }
  const auto c = boolean_census( 1 );
  const char* names[4] = { "x", "not x", "0", "1" };
  for ( const auto& e : c.ex01_entries )
  {
    const int k = e.closed_form.back() - '0';
    if ( e.section_0_1 != names[k] )
    {
      return { false, "census labels pi" + std::to_string( k ) + " with section " + e.section_0_1 };
    }
  }
  return { true, "16 pivotal, 4 with ex01, sections x, not x, 0, 1 match pi0..pi3" };
}

Outcome clone_identities()
{
  std::vector<std::size_t> mono_sizes;
  for ( unsigned n = 1; n <= 3; ++n )
  {
    const auto mono = monotone_oracle( n );
    mono_sizes.push_back( mono.size() );
    for ( const char* name : { "pi0", "pi2", "pi3" } )
    {
      const auto g = lambda_fragment( builtin( name ), n );
      if ( std::set<Operation>( g.members.begin(), g.members.end() ) != mono )
      {
        return { false, std::string( name ) + " differs from the monotone functions at arity " + std::to_string( n ) };
      }
    }
    const auto all = lambda_fragment( builtin( "pi1" ), n );
    if ( all.members.size() != ( std::size_t{ 1 } << ( 1u << n ) ) )
    {
      return { false, "pi1 class is not every function at arity " + std::to_string( n ) };
    }
  }
  if ( mono_sizes != std::vector<std::size_t>{ 3, 6, 20 } )
  {
    return { false, "monotone oracle sizes " + sizes_text( mono_sizes ) };
  }
  return { true, "pi0, pi2, pi3 give monotone (3,6,20); pi1 gives all (4,16,256)" };
}

Outcome generated_equality()
{
  for ( int k = 0; k < 4; ++k )
  {
    const auto pi = builtin( "pi" + std::to_string( k ) );
    const std::vector<Operation> gens{ pi.op() };
    for ( unsigned n = 1; n <= 3; ++n )
    {
      if ( generate_fragment( B, gens, n, true ).members != lambda_fragment( pi, n ).members )
      {
        return { false, "pi" + std::to_string( k ) + " differs at arity " + std::to_string( n ) };
      }
    }
  }
  return { true, "generated clone equals the class for pi0..pi3 at arities 1-3" };
}

Outcome normal_form_round_trip()
{
  std::size_t checked = 0, failures = 0;
  for ( const auto& pi : enumerate_pivotal( B, false ) )
  {
    for ( unsigned n = 0; n <= 3; ++n )
    {
      std::vector<Operation> members;
      if ( n == 0 )
      {
        members = { constant_op( B, 0, 0 ), constant_op( B, 0, 1 ) };
      }
      else
      {
        members = lambda_fragment( pi, n ).members;
      }
      for ( const auto& f : members )
      {
        ++checked;
        failures += nf_to_operation( build_normal_form( f ), pi, n ) == f ? 0 : 1;
      }
    }
  }
  return { failures == 0, std::to_string( checked ) + " members, " + std::to_string( failures ) + " failures" };
}

Outcome statement_sweeps()
{
  const auto c = boolean_census( 3 );
  std::string detail;
  bool ok = true;
  const std::pair<const char*, const BooleanCensus::Tally*> rows[] = {
      { "cyclic", &c.cyclic_implies_symmetric },   { "symmetry", &c.symmetry_characterization },
      { "projections", &c.projections_iff_ex01 }, { "ex01-criterion", &c.ex01_criterion },
      { "fine", &c.fine_characterization },       { "derived", &c.derived_under_ex01 } };
  for ( const auto& [name, t] : rows )
  {
    ok = ok && t->violated == 0 && t->inconclusive == 0 && t->holds + t->vacuous == 16;
    detail += std::string( detail.empty() ? "" : "; " ) + name + " " + std::to_string( t->holds ) + " holds/" +
              std::to_string( t->vacuous ) + " vacuous/" + std::to_string( t->violated ) + " violated";
  }
  return { ok, detail };
}

Outcome composition_closure()
{
  std::size_t ex04_count = 0;
  std::uint64_t compositions = 0;
  for ( const auto& pi : enumerate_pivotal( B, false ) )
  {
    if ( !check_identity( pi, IdentityId::ex04 ).holds )
    {
      continue;
    }
    ++ex04_count;
    const auto r = is_closed_under_composition( lambda_fragment_up_to( pi, 2 ), {}, CheckMode::exhaustive );
    compositions += r.checked + r.skipped_full;
    if ( !r.closed )
    {
      return { false, "a Boolean class with ex04 is not closed" };
    }
  }
  std::string detail = std::to_string( ex04_count ) + " Boolean ex04 operations closed (" +
                       std::to_string( compositions ) + " compositions)";
  Budget b;
  b.sample_count = 10'000;
  const auto r = is_closed_under_composition( lambda_fragment_up_to( builtin( "example3elem" ), 2 ), b,
                                              CheckMode::sampled );
  detail += "; 3-element example: " + std::to_string( r.checked ) + " sampled compositions, ";
  if ( !r.closed )
  {
    detail += "a composition of arity " + std::to_string( r.counterexample->result.arity() ) +
              " leaves the class (the table violates ex04)";
    return { false, detail };
  }
  return { r.checked >= 10'000, detail + "all inside" };
}

Outcome delta_construction()
{
  const auto pairs = delta_pairs( T );
  std::vector<Element> digits( pairs.size(), 0 );
  std::size_t good = 0;
  for ( int k = 0; k < 243; ++k )
  {
    DeltaMap f;
    for ( std::size_t i = 0; i < pairs.size(); ++i )
    {
      f[pairs[i]] = digits[i];
    }
    const auto p = from_delta_function( T, f );
    good += check_identity( p, IdentityId::ex01 ).holds && check_identity( p, IdentityId::ex04 ).holds ? 1 : 0;
    for ( std::size_t i = digits.size(); i-- > 0; )
    {
      if ( ++digits[i] < 3 )
      {
        break;
      }
      digits[i] = 0;
    }
  }
  const auto dz = builtin( "delta-zero" );
  const auto self = is_self_decomposable( dz );
  // Π(1,2,2) reads as Π(x,y,y) = y = 2; the recombination reads f(2,0) = 0
  const Element x[] = { 1, 2, 2 };
  const auto p = decomposition_point( dz.op(), dz, 3, x );
  const bool point = p.value == 2 && p.high == dz( 1, 2, 1 ) && p.low == dz( 1, 2, 0 ) && p.recombined == 0 &&
                     dz( 2, p.high, p.low ) == 0;
  const bool ok = good == 243 && !self.member && point;
  return { ok, std::to_string( good ) + "/243 delta maps satisfy ex01 and ex04; f=0 not self-decomposable; " +
                   "pivot 3 at (1,2,2): value " + std::to_string( p.value ) + ", recombined " +
                   std::to_string( p.recombined ) };
}

Outcome three_element_example()
{
  const auto e = builtin( "example3elem" );
  const auto ex01 = check_identity( e, IdentityId::ex01 );
  const auto ex04 = check_identity( e, IdentityId::ex04 );
  const auto self = is_self_decomposable( e );
  // the (x,a,a) section with a = 1, tested at pivot 2
  const Element t[] = { 0, 1, 1 };
  const auto q = decomposition_point( e.op(), e, 2, t );
  const auto bounded = bounded_clone_check( e, 2 );
  std::string detail = std::string( "ex01 " ) + ( ex01.holds ? "holds" : "fails" ) + ", ex04 " +
                       ( ex04.holds ? "holds" : "fails" );
  if ( ex04.witness )
  {
    std::string v;
    for ( auto x : ex04.witness->values )
    {
      v += ( v.empty() ? "" : "," ) + std::to_string( x );
    }
    detail += " at (" + v + "): " + std::to_string( ex04.witness->lhs ) + " != " + std::to_string( ex04.witness->rhs );
  }
  detail += std::string( "; self-decomposable " ) + ( self.member ? "yes" : "no" ) + ", (x,a,a) point " +
            ( q.holds() ? "holds" : "fails" ) + "; arity<=2 fragment " + std::string( to_string( bounded.verdict ) ) +
            " sizes " + sizes_text( bounded.lambda_sizes );
  const bool ok = ex01.holds && ex04.holds && !self.member && !q.holds() &&
                  bounded.verdict == BoundedVerdict::bounded_verified;
  return { ok, detail };
}

/// Counts newlines without keeping the text.
class LineCounter : public std::streambuf
{
public:
  std::uint64_t lines = 0;

protected:
  int_type overflow( int_type c ) override
  {
    if ( c == '\n' )
      ++lines;
    return c;
  }
  std::streamsize xsputn( const char* s, std::streamsize n ) override
  {
    for ( std::streamsize i = 0; i < n; ++i )
    {
      lines += s[i] == '\n';
    }
    return n;
  }
};

Outcome ternary_census()
{
  LineCounter counter;
  std::ostream out( &counter );
  std::ostringstream err;
  const int code = cli::run( { "census", "--m", "3", "--require", "ex01", "--flags-only" }, out, err );
  if ( code != 0 )
  {
    return { false, "census exit " + std::to_string( code ) + ": " + err.str() };
  }
  const auto summary = nlohmann::json::parse( err.str() );
  const std::uint64_t expected = 14'348'907;
  std::string detail = std::to_string( counter.lines ) + " records";
  bool ok = counter.lines == expected && summary["complete"] == true && summary["counts"]["total"] == expected;

  // same counts with four workers, split in two resumed halves
  CensusOptions o;
  o.threads = 4;
  o.limit = expected / 2;
  const auto first = run_census( T, o );
  o.resume = first.next_cursor;
  o.limit.reset();
  const auto second = run_census( T, o );
  auto merged = first.counts;
  merged += second.counts;
  const bool stable = to_json( merged ) == summary["counts"] && second.complete;
  ok = ok && stable;
  detail += std::string( ", ex04 " ) + summary["counts"]["ex04"].dump() + ", self-decomposable " +
            summary["counts"]["self_decomposable"].dump() + ", ex04 without self-decomposability " +
            summary["counts"]["ex04_not_self_decomposable"].dump() + ", delta-shaped " +
            summary["counts"]["delta_shaped"].dump() + "; 4 threads in resumed halves " +
            ( stable ? "agree" : "disagree" );
  return { ok, detail };
}

Outcome negative_controls()
{
  const Operation negation( B, 1, { 1, 0 } );
  const auto r = is_pi_decomposable( negation, builtin( "med" ) );
  bool ok = !r.member && r.witness.has_value();

  const auto med = builtin( "med" ).op();
  std::vector<Element> t( med.table().begin(), med.table().end() );
  t[4] = 1; // med(1,0,0)
  bool rejected = false;
  try
  {
    PivotalOperation corrupted( Operation( B, 3, t ) );
  }
  catch ( const NotPivotalError& )
  {
    rejected = true;
  }
  std::ostringstream out, err;
  const int code = cli::run( { "paper-suite", "--inject-fault" }, out, err );
  const bool fault_seen = out.str().find( "FAIL  boolean-classification" ) != std::string::npos;
  ok = ok && rejected && code == 1 && fault_seen;
  return { ok, std::string( "negation vs med " ) + ( r.member ? "member" : "non-member with witness" ) +
                   ", corrupted med " + ( rejected ? "rejected" : "accepted" ) + ", faulted suite exit " +
                   std::to_string( code ) + ( fault_seen ? " with boolean-classification failing" : "" ) };
}

} // namespace

int main()
{
  struct Criterion
  {
    int number;
    double limit_seconds;
    Outcome ( *check )();
  };
  const Criterion criteria[] = { { 1, 1.0, boolean_census_shape },   { 2, 10.0, clone_identities },
                                 { 3, 30.0, generated_equality },    { 4, 30.0, normal_form_round_trip },
                                 { 5, 10.0, statement_sweeps },        { 6, 60.0, composition_closure },
                                 { 7, 1.0, delta_construction },     { 8, 60.0, three_element_example },
                                 { 9, 900.0, ternary_census },       { 10, 1.0, negative_controls } };
  int failed = 0;
  for ( const auto& c : criteria )
  {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try
    {
      o = c.check();
    }
    catch ( const std::exception& e )
    {
      o = { false, std::string( "exception: " ) + e.what() };
    }
    const double s = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
    const bool in_time = s <= c.limit_seconds;
    const bool pass = o.passed && in_time;
    failed += pass ? 0 : 1;
    std::printf( "criterion %d: %s (%.2f s, limit %.0f s) %s%s\n", c.number, pass ? "PASS" : "FAIL", s,
                 c.limit_seconds, o.detail.c_str(), in_time ? "" : " [over time]" );
    std::fflush( stdout );
  }
  std::printf( "%d/10 criteria pass\n", 10 - failed );
  return failed == 0 ? 0 : 1;
}
