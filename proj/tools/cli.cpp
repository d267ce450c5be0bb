#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pivotal/budget.hpp"
#include "pivotal/census.hpp"
#include "pivotal/clone.hpp"
#include "pivotal/decomposition.hpp"
#include "pivotal/errors.hpp"
#include "pivotal/identities.hpp"
#include "pivotal/normal_form.hpp"
#include "pivotal/suite.hpp"
#include "pivotal/table_io.hpp"

namespace pivotal::cli
{

namespace
{

using nlohmann::json;

std::string tuple_text( std::span<const Element> t )
{
  std::string s = "(";
  for ( std::size_t i = 0; i < t.size(); ++i )
  {
    s += ( i ? "," : "" ) + std::to_string( t[i] );
  }
  return s + ")";
}

json domain_json( const Domain& d )
{
  return { { "size", d.size() }, { "zero", d.zero() }, { "one", d.one() } };
}

/// --op FILE / --builtin NAME pair, resolved after parsing.
struct OperationSource
{
  std::string file;
  std::string builtin_name;

  void attach( CLI::App* cmd, const std::string& file_flag, const std::string& builtin_flag )
  {
    auto* f = cmd->add_option( file_flag, file, "table file" );
    auto* b = cmd->add_option( builtin_flag, builtin_name, "builtin table name" );
    f->excludes( b );
  }

  Operation load() const
  {
    if ( !file.empty() )
    {
      return read_table_file( file );
    }
    if ( !builtin_name.empty() )
    {
      return builtin( builtin_name ).op();
    }
    throw ArgumentError( "an operation is required (table file or builtin name)" );
  }

  PivotalOperation load_pivotal() const { return PivotalOperation( load() ); }
};

Operation boolean_function( const std::string& name )
{
  const Domain b( 2 );
  if ( name == "and" )
    return Operation( b, 2, { 0, 0, 0, 1 } );
  if ( name == "or" )
    return Operation( b, 2, { 0, 1, 1, 1 } );
  if ( name == "xor" )
    return Operation( b, 2, { 0, 1, 1, 0 } );
  if ( name == "implies" )
    return Operation( b, 2, { 1, 1, 0, 1 } );
  if ( name == "not" )
    return Operation( b, 1, { 1, 0 } );
  if ( name == "id" )
    return Operation( b, 1, { 0, 1 } );
  throw FormatError( "unknown Boolean function '" + name + "' (and, or, xor, implies, not, id)" );
}

void write_json_file( const std::string& path, const json& j )
{
  std::ofstream f( path );
  if ( !f )
  {
    throw ArgumentError( "cannot write " + path );
  }
  f << j.dump( 2 ) << "\n";
}

json identity_json( const IdentityReport& r )
{
  json j = { { "identity", identity_name( r.identity ) }, { "holds", r.holds } };
  if ( r.witness )
  {
    j["witness"] = { { "equation", r.witness->equation },
                     { "values", r.witness->values },
                     { "lhs", r.witness->lhs },
                     { "rhs", r.witness->rhs } };
  }
  else
  {
    j["witness"] = nullptr;
  }
  return j;
}

json point_json( const DecompositionPoint& p )
{
  return { { "position", p.position }, { "tuple", p.tuple },     { "value", p.value },
           { "high", p.high },         { "low", p.low },         { "recombined", p.recombined } };
}

std::string point_text( const DecompositionPoint& p )
{
  return "position " + std::to_string( p.position ) + ", x = " + tuple_text( p.tuple ) + ": f(x) = " +
         std::to_string( p.value ) + " but P(" + std::to_string( p.tuple[p.position - 1] ) + ", " +
         std::to_string( p.high ) + ", " + std::to_string( p.low ) + ") = " + std::to_string( p.recombined );
}

// ---- check-identity ----

struct CheckIdentity
{
  OperationSource source;
  std::string id;
  bool as_json = false;

  void attach( CLI::App& app )
  {
    auto* cmd = app.add_subcommand( "check-identity", "check one identity on a ternary table" );
    source.attach( cmd, "--op", "--builtin" );
    cmd->add_option( "--id", id, "identity name" )->required();
    cmd->add_flag( "--json", as_json, "print a JSON report" );
  }

  int run( std::ostream& out ) const
  {
    const auto which = parse_identity( id );
    if ( !which )
    {
      std::string names;
      for ( auto i : all_identities )
      {
        names += ( names.empty() ? "" : ", " ) + std::string( identity_name( i ) );
      }
      throw FormatError( "unknown identity '" + id + "' (" + names + ")" );
    }
    const auto op = source.load();
    if ( op.arity() != 3 )
    {
      throw ArgumentError( "identities are checked on ternary tables, got arity " + std::to_string( op.arity() ) );
    }
    const TernaryView view{ op.table().data(), op.domain().size(), op.domain().zero(), op.domain().one() };
    const auto r = check_identity( view, *which );
    if ( as_json )
    {
      out << identity_json( r ).dump( 2 ) << "\n";
    }
    else if ( r.holds )
    {
      out << id << ": holds\n";
    }
    else
    {
      out << id << ": fails\n"
          << "  equation " << r.witness->equation << ", values " << tuple_text( r.witness->values ) << ": lhs "
          << int( r.witness->lhs ) << ", rhs " << int( r.witness->rhs ) << "\n";
    }
    return r.holds ? ok : property_fails;
  }
};

// ---- decompose ----

struct Decompose
{
  OperationSource f_source;
  std::string f_builtin;
  OperationSource pi_source;
  bool as_json = false;

  void attach( CLI::App& app )
  {
    auto* cmd = app.add_subcommand( "decompose", "test membership of f in the class of a pivotal operation" );
    auto* f = cmd->add_option( "--f", f_source.file, "table file of f" );
    cmd->add_option( "--f-builtin", f_builtin, "Boolean f: and, or, xor, implies, not, id" )->excludes( f );
    pi_source.attach( cmd, "--pi", "--builtin" );
    cmd->add_flag( "--json", as_json, "print a JSON report" );
  }

  int run( std::ostream& out ) const
  {
    const auto f = f_builtin.empty() ? f_source.load() : boolean_function( f_builtin );
    const auto pi = pi_source.load_pivotal();
    const auto r = is_pi_decomposable( f, pi );
    json j = { { "member", r.member } };
    if ( r.member )
    {
      const auto nf = simplify( build_normal_form( f ) ).to_string();
      j["normal_form"] = nf;
      j["witness"] = nullptr;
      if ( !as_json )
      {
        out << "member\nnormal form: " << nf << "\n";
      }
    }
    else
    {
      j["witness"] = point_json( *r.witness );
      if ( !as_json )
      {
        out << "not a member\n  " << point_text( *r.witness ) << "\n";
      }
    }
    if ( as_json )
    {
      out << j.dump( 2 ) << "\n";
    }
    return r.member ? ok : property_fails;
  }
};

// ---- clone ----

std::string status_text( TheoremStatus s )
{
  return std::string( to_string( s ) );
}

json certificate_json( const CloneCertificate& c )
{
  json bounded = { { "verdict", to_string( c.bounded.verdict ) }, { "lambda_sizes", c.bounded.lambda_sizes },
                   { "note", c.bounded.note } };
  bounded["missing_projection"] =
      c.bounded.missing_projection ? json( serialize_table( *c.bounded.missing_projection ) ) : json();
  if ( c.bounded.closure )
  {
    const auto& cl = *c.bounded.closure;
    bounded["closure"] = { { "closed", cl.closed },
                           { "sampled", cl.sampled },
                           { "checked", cl.checked },
                           { "skipped_full", cl.skipped_full },
                           { "seed", cl.seed } };
    if ( cl.counterexample )
    {
      json inner = json::array();
      for ( const auto& g : cl.counterexample->inner )
      {
        inner.push_back( serialize_table( g ) );
      }
      bounded["closure"]["counterexample"] = { { "outer", serialize_table( cl.counterexample->outer ) },
                                               { "inner", inner },
                                               { "result", serialize_table( cl.counterexample->result ) } };
    }
  }
  else
  {
    bounded["closure"] = nullptr;
  }
  json self = { { "member", c.self_decomposable.member } };
  self["witness"] = c.self_decomposable.witness ? point_json( *c.self_decomposable.witness ) : json();
  return { { "arity_cap", c.arity_cap },
           { "verdict", c.verdict() },
           { "certified", c.certified },
           { "ex01", identity_json( c.ex01 ) },
           { "ex04", identity_json( c.ex04 ) },
           { "fine01", identity_json( c.fine01 ) },
           { "fine02", identity_json( c.fine02 ) },
           { "self_decomposable", self },
           { "symmetric", c.symmetric },
           { "unary_projection_member", c.unary_projection_member },
           { "bounded", bounded },
           { "checks",
             { { "clone-iff-ex01", status_text( c.ex01_criterion ) },
               { "clone-characterization", status_text( c.characterization ) },
               { "clone-characterization-fine", status_text( c.fine_characterization ) },
               { "symmetric-clone-characterization", status_text( c.symmetric_characterization ) } } } };
}

struct Clone
{
  OperationSource source;
  unsigned cap = 2;
  bool generate = false;
  std::string export_dir;
  bool as_json = false;

  void attach( CLI::App& app )
  {
    auto* cmd = app.add_subcommand( "clone", "clone certificate and bounded clone check" );
    source.attach( cmd, "--pi", "--builtin" );
    cmd->add_option( "--cap", cap, "arity cap" )->check( CLI::Range( 1u, 8u ) );
    cmd->add_flag( "--generate", generate, "compare the generated clone with the class" );
    cmd->add_option( "--export", export_dir, "write the class fragment to a directory" );
    cmd->add_flag( "--json", as_json, "print a JSON report" );
  }

  int run( std::ostream& out, const Budget& budget ) const
  {
    const auto pi = source.load_pivotal();
    const auto c = clone_certificate( pi, cap, budget );
    auto j = certificate_json( c );
    j["domain"] = domain_json( pi.domain() );
    std::optional<GeneratedEqualityReport> gen;
    if ( generate )
    {
      gen = check_generated_equals_lambda( pi, cap, budget );
      json arities = json::array();
      for ( const auto& a : gen->arities )
      {
        arities.push_back( { { "arity", a.arity },
                             { "generated", a.generated_size },
                             { "lambda", a.lambda_size },
                             { "equal", a.equal },
                             { "generated_subset", a.generated_subset } } );
      }
      j["generated"] = { { "status", to_string( gen->status ) }, { "detail", gen->detail }, { "arities", arities } };
    }
    if ( !export_dir.empty() )
    {
      const auto fragment = lambda_fragment_up_to( pi, cap, budget );
      export_fragment( fragment, export_dir, c.verdict() );
    }

    if ( as_json )
    {
      out << j.dump( 2 ) << "\n";
    }
    else
    {
      auto yes = []( bool b ) { return b ? "yes" : "no"; };
      out << "verdict: " << c.verdict() << "\n"
          << "certified (ex01 and ex04): " << yes( c.certified ) << "\n"
          << "bounded check up to arity " << cap << ": " << to_string( c.bounded.verdict ) << "\n";
      if ( !c.bounded.lambda_sizes.empty() )
      {
        out << "class sizes:";
        for ( auto s : c.bounded.lambda_sizes )
        {
          out << " " << s;
        }
        out << "\n";
      }
      if ( !c.bounded.note.empty() )
      {
        out << "note: " << c.bounded.note << "\n";
      }
      out << "ex01: " << yes( c.ex01.holds ) << "\nex04: " << yes( c.ex04.holds ) << "\nfine01: " << yes( c.fine01.holds )
          << "\nfine02: " << yes( c.fine02.holds ) << "\nself-decomposable: " << yes( c.self_decomposable.member )
          << "\nsymmetric: " << yes( c.symmetric ) << "\n";
      if ( c.self_decomposable.witness )
      {
        out << "  " << point_text( *c.self_decomposable.witness ) << "\n";
      }
      if ( c.ex04.witness )
      {
        out << "  ex04 fails at " << tuple_text( c.ex04.witness->values ) << ": lhs " << int( c.ex04.witness->lhs )
            << ", rhs " << int( c.ex04.witness->rhs ) << "\n";
      }
      if ( c.bounded.missing_projection )
      {
        out << "  missing projection:\n" << serialize_table( *c.bounded.missing_projection );
      }
      if ( c.bounded.closure && c.bounded.closure->counterexample )
      {
        const auto& ce = *c.bounded.closure->counterexample;
        out << "  composition leaves the class; outer:\n" << serialize_table( ce.outer );
        for ( const auto& g : ce.inner )
        {
          out << "  inner:\n" << serialize_table( g );
        }
        out << "  result:\n" << serialize_table( ce.result );
      }
      if ( gen )
      {
        out << "generated equals class: " << to_string( gen->status ) << " (" << gen->detail << ")\n";
      }
    }
    if ( c.bounded.verdict == BoundedVerdict::refuted )
    {
      return property_fails;
    }
    if ( c.bounded.verdict == BoundedVerdict::unverified )
    {
      return budget_exceeded;
    }
    return gen && gen->status == TheoremStatus::violated ? property_fails : ok;
  }
};

// ---- census ----

struct Census
{
  unsigned m = 2;
  std::string require;
  bool flags_only = false;
  unsigned cap = 0;
  std::uint64_t resume = 0;
  std::optional<std::uint64_t> limit;
  unsigned threads = 0;
  std::uint64_t chunk = 1 << 16;
  std::string records = "-";
  bool no_records = false;
  std::string summary_path;
  std::vector<std::string> only;

  void attach( CLI::App& app )
  {
    auto* cmd = app.add_subcommand( "census", "classify every pivotal operation on a 2- or 3-element domain" );
    cmd->add_option( "--m", m, "domain size" )->required();
    cmd->add_option( "--require", require, "fix the (1,0) section by this identity (ex01)" );
    cmd->add_flag( "--flags-only", flags_only, "identity flags only, no class sizes" );
    cmd->add_option( "--cap", cap, "arity cap for class sizes" );
    cmd->add_option( "--resume", resume, "first candidate id" );
    cmd->add_option( "--limit", limit, "number of candidates to process" );
    cmd->add_option( "--threads", threads, "worker threads (0 = all cores)" );
    cmd->add_option( "--chunk", chunk, "candidates per work unit" )->check( CLI::PositiveNumber );
    cmd->add_option( "--records", records, "NDJSON record output, - for stdout" );
    cmd->add_flag( "--no-records", no_records, "do not write records" );
    cmd->add_option( "--summary", summary_path, "summary JSON path (default stderr)" );
    cmd->add_option( "--only", only, "emit only records with all these flags set" )->delimiter( ',' );
  }

  int run( std::ostream& out, std::ostream& err, const Budget& budget ) const
  {
    if ( m < 2 || m > 3 )
    {
      throw ArgumentError( "census supports --m 2 or --m 3, got " + std::to_string( m ) );
    }
    if ( !require.empty() && require != "ex01" )
    {
      throw FormatError( "--require accepts ex01 only" );
    }
    const Domain domain( m );
    CensusOptions options;
    options.require_ex01 = require == "ex01";
    options.flags_only = flags_only || cap == 0;
    options.arity_cap = cap;
    options.resume = resume;
    options.limit = limit;
    options.threads = threads;
    options.chunk_size = chunk;
    options.emit_only = only;
    options.budget = budget;

    std::unique_ptr<std::ofstream> file;
    std::ostream* sink_stream = nullptr;
    if ( !no_records )
    {
      if ( records == "-" )
      {
        sink_stream = &out;
      }
      else
      {
        file = std::make_unique<std::ofstream>( records );
        if ( !*file )
        {
          throw ArgumentError( "cannot write " + records );
        }
        sink_stream = file.get();
      }
    }
    RecordSink sink;
    if ( sink_stream )
    {
      sink = [sink_stream]( std::string_view lines ) {
        sink_stream->write( lines.data(), static_cast<std::streamsize>( lines.size() ) );
      };
    }
    const auto summary = run_census( domain, options, sink );
    auto j = to_json( summary );
    if ( m == 2 )
    {
      const auto boolean = boolean_census( cap, budget );
      auto b = to_json( boolean );
      b.erase( "records" );
      j["boolean"] = b;
    }
    if ( sink_stream )
    {
      sink_stream->flush();
    }
    if ( summary_path.empty() )
    {
      err << j.dump( 2 ) << "\n";
    }
    else
    {
      write_json_file( summary_path, j );
    }
    return ok;
  }
};

// ---- paper-suite ----

struct SuiteCommand
{
  std::string json_path;
  bool inject_fault = false;
  unsigned cap = 3;

  void attach( CLI::App& app )
  {
    auto* cmd = app.add_subcommand( "paper-suite", "re-verify every statement at desk scale" );
    cmd->add_option( "--json", json_path, "write a JSON payload" );
    cmd->add_flag( "--inject-fault", inject_fault, "negative control: flip med(0,0,1)" );
    cmd->add_option( "--cap", cap, "arity cap" )->check( CLI::Range( 1u, 3u ) );
  }

  int run( std::ostream& out, const Budget& budget ) const
  {
    SuiteOptions options;
    options.inject_fault = inject_fault;
    options.arity_cap = cap;
    options.budget = budget;
    const auto report = run_suite( options );
    out << format_table( report );
    if ( !json_path.empty() )
    {
      write_json_file( json_path, to_json( report ) );
    }
    return report.passed() ? ok : property_fails;
  }
};

// ---- table ----

struct Table
{
  std::string name;

  void attach( CLI::App& app )
  {
    auto* cmd = app.add_subcommand( "table", "print a builtin as a table file" );
    cmd->add_option( "name", name, "builtin name" )->required();
  }

  int run( std::ostream& out ) const
  {
    out << serialize_table( builtin( name ).op() );
    return ok;
  }
};

} // namespace

int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err )
{
  CLI::App app( "Pivotal decompositions of finite operations", "pivotal" );
  app.require_subcommand( 1 );
  std::string budget_spec;
  app.add_option( "--budget", budget_spec, "budget overrides, e.g. max_set_size=5000,max_rounds=8" );

  CheckIdentity check_identity_cmd;
  Decompose decompose_cmd;
  Clone clone_cmd;
  Census census_cmd;
  SuiteCommand suite_cmd;
  Table table_cmd;
  check_identity_cmd.attach( app );
  decompose_cmd.attach( app );
  clone_cmd.attach( app );
  census_cmd.attach( app );
  suite_cmd.attach( app );
  table_cmd.attach( app );

  std::vector<std::string> storage{ "pivotal" };
  storage.insert( storage.end(), args.begin(), args.end() );
  std::vector<char*> argv;
  for ( auto& s : storage )
  {
    argv.push_back( s.data() );
  }
  try
  {
    app.parse( static_cast<int>( argv.size() ), argv.data() );
  }
  catch ( const CLI::ParseError& e )
  {
    const int code = app.exit( e, out, err );
    return code == 0 ? ok : usage_error;
  }

  try
  {
    auto budget = Budget::from_environment();
    if ( !budget_spec.empty() )
    {
      budget = Budget::parse( budget_spec, budget );
    }
    const auto* cmd = app.get_subcommands().front();
    const auto name = cmd->get_name();
    if ( name == "check-identity" )
      return check_identity_cmd.run( out );
    if ( name == "decompose" )
      return decompose_cmd.run( out );
    if ( name == "clone" )
      return clone_cmd.run( out, budget );
    if ( name == "census" )
      return census_cmd.run( out, err, budget );
    if ( name == "paper-suite" )
      return suite_cmd.run( out, budget );
    return table_cmd.run( out );
  }
  catch ( const BudgetExceeded& e )
  {
    err << "budget exceeded: " << e.what() << "\n";
    return budget_exceeded;
  }
  catch ( const Error& e )
  {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }
}

} // namespace pivotal::cli
