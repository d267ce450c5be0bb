#include "pivotal/normal_form.hpp"

#include <cctype>
#include <charconv>

namespace pivotal
{

struct NormalForm::Children
{
  NormalForm high;
  NormalForm low;
};

NormalForm NormalForm::leaf( Element constant )
{
  NormalForm nf;
  nf.constant_ = constant;
  return nf;
}

NormalForm NormalForm::node( unsigned variable, NormalForm high, NormalForm low )
{
  if ( variable == 0 || high.level() >= variable || low.level() >= variable )
  {
    throw ArgumentError( "normal form node on x" + std::to_string( variable ) +
                         " needs children over lower variables" );
  }
  NormalForm nf;
  nf.variable_ = variable;
  nf.children_ = std::make_shared<const Children>( Children{ std::move( high ), std::move( low ) } );
  return nf;
}

Element NormalForm::constant() const
{
  if ( !is_leaf() )
  {
    throw ArgumentError( "constant() on a pivot node" );
  }
  return constant_;
}

unsigned NormalForm::variable() const
{
  if ( is_leaf() )
  {
    throw ArgumentError( "variable() on a leaf" );
  }
  return variable_;
}

const NormalForm& NormalForm::high() const
{
  if ( is_leaf() )
  {
    throw ArgumentError( "high() on a leaf" );
  }
  return children_->high;
}

const NormalForm& NormalForm::low() const
{
  if ( is_leaf() )
  {
    throw ArgumentError( "low() on a leaf" );
  }
  return children_->low;
}

std::size_t NormalForm::node_count() const noexcept
{
  return is_leaf() ? 0 : 1 + children_->high.node_count() + children_->low.node_count();
}

std::size_t NormalForm::leaf_count() const noexcept
{
  return is_leaf() ? 1 : children_->high.leaf_count() + children_->low.leaf_count();
}

std::string NormalForm::to_string() const
{
  if ( is_leaf() )
  {
    return std::to_string( constant_ );
  }
  return "(x" + std::to_string( variable_ ) + " " + children_->high.to_string() + " " + children_->low.to_string() +
         ")";
}

bool operator==( const NormalForm& a, const NormalForm& b ) noexcept
{
  if ( a.is_leaf() != b.is_leaf() )
  {
    return false;
  }
  if ( a.is_leaf() )
  {
    return a.constant_ == b.constant_;
  }
  if ( a.children_ == b.children_ )
  {
    return a.variable_ == b.variable_;
  }
  return a.variable_ == b.variable_ && a.children_->high == b.children_->high && a.children_->low == b.children_->low;
}

namespace
{

class Parser
{
public:
  explicit Parser( std::string_view text ) : text_( text ) {}

  NormalForm parse_all()
  {
    auto nf = parse();
    skip_space();
    if ( pos_ != text_.size() )
    {
      fail( "trailing input" );
    }
    return nf;
  }

private:
  [[noreturn]] void fail( const std::string& what ) const
  {
    throw FormatError( "normal form at offset " + std::to_string( pos_ ) + ": " + what );
  }

  void skip_space()
  {
    while ( pos_ < text_.size() && std::isspace( static_cast<unsigned char>( text_[pos_] ) ) )
    {
      ++pos_;
    }
  }

  unsigned number()
  {
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars( text_.data() + pos_, text_.data() + text_.size(), value );
    if ( ec != std::errc{} )
    {
      fail( "expected a number" );
    }
    pos_ = static_cast<std::size_t>( ptr - text_.data() );
    return value;
  }

  NormalForm parse()
  {
    skip_space();
    if ( pos_ >= text_.size() )
    {
      fail( "unexpected end" );
    }
    if ( text_[pos_] != '(' )
    {
      const auto c = number();
      if ( c > 255 )
      {
        fail( "constant out of range" );
      }
      return NormalForm::leaf( static_cast<Element>( c ) );
    }
    ++pos_;
    skip_space();
    if ( pos_ >= text_.size() || text_[pos_] != 'x' )
    {
      fail( "expected variable xk" );
    }
    ++pos_;
    const auto k = number();
    auto high = parse();
    auto low = parse();
    skip_space();
    if ( pos_ >= text_.size() || text_[pos_] != ')' )
    {
      fail( "expected ')'" );
    }
    ++pos_;
    try
    {
      return NormalForm::node( k, std::move( high ), std::move( low ) );
    }
    catch ( const ArgumentError& e )
    {
      fail( e.what() );
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

NormalForm expand( const Operation& f, Tuple& tuple, unsigned k )
{
  if ( k == 0 )
  {
    return NormalForm::leaf( f.evaluate( tuple ) );
  }
  tuple[k - 1] = f.domain().one();
  auto high = expand( f, tuple, k - 1 );
  tuple[k - 1] = f.domain().zero();
  auto low = expand( f, tuple, k - 1 );
  return NormalForm::node( k, std::move( high ), std::move( low ) );
}

std::vector<Element> evaluate_table( const NormalForm& expr, TernaryView pi, const Domain& domain, unsigned arity )
{
  const auto size = domain.power( arity );
  if ( expr.is_leaf() )
  {
    if ( !domain.contains( expr.constant() ) )
    {
      throw FormatError( "normal form constant outside domain" );
    }
    return std::vector<Element>( size, expr.constant() );
  }
  auto high = evaluate_table( expr.high(), pi, domain, arity );
  auto low = evaluate_table( expr.low(), pi, domain, arity );
  const auto stride = domain.power( arity - expr.variable() );
  for ( std::size_t x = 0; x < size; ++x )
  {
    const auto xk = static_cast<Element>( ( x / stride ) % domain.size() );
    high[x] = pi( xk, high[x], low[x] );
  }
  return high;
}

// value of the full-shape expression at `leaves[lo .. lo+len)` pivoting on x_k
Element evaluate_shape( TernaryView pi, const Element* leaves, std::size_t len, const Element* tuple, unsigned k )
{
  if ( len == 1 )
  {
    return leaves[0];
  }
  const auto half = len / 2;
  return pi( tuple[k - 1], evaluate_shape( pi, leaves, half, tuple, k - 1 ),
             evaluate_shape( pi, leaves + half, half, tuple, k - 1 ) );
}

} // namespace

NormalForm parse_normal_form( std::string_view text )
{
  return Parser( text ).parse_all();
}

NormalForm build_normal_form( const Operation& f )
{
  Tuple tuple( f.arity(), f.domain().zero() );
  return expand( f, tuple, f.arity() );
}

Operation nf_to_operation( const NormalForm& expr, const PivotalOperation& pi, unsigned arity )
{
  if ( arity < expr.level() )
  {
    throw ArgumentError( "arity " + std::to_string( arity ) + " below normal form level " +
                         std::to_string( expr.level() ) );
  }
  return Operation( pi.domain(), arity, evaluate_table( expr, pi.view(), pi.domain(), arity ) );
}

NormalForm simplify( const NormalForm& expr )
{
  if ( expr.is_leaf() )
  {
    return expr;
  }
  auto high = simplify( expr.high() );
  auto low = simplify( expr.low() );
  if ( high == low )
  {
    return high;
  }
  return NormalForm::node( expr.variable(), std::move( high ), std::move( low ) );
}

bool nf_membership_oracle( const Operation& f, const PivotalOperation& pi, const Budget& budget )
{
  if ( f.domain() != pi.domain() )
  {
    throw ArgumentError( "operation and pivotal operation live on different domains" );
  }
  const auto& domain = f.domain();
  const auto n = f.arity();
  if ( n >= 6 )
  {
    throw BudgetExceeded( "max_candidates", budget.max_candidates, budget.max_candidates + 1 );
  }
  const std::size_t leaves = std::size_t{ 1 } << n;
  std::uint64_t count = 1;
  for ( std::size_t i = 0; i < leaves; ++i )
  {
    if ( count > budget.max_candidates / domain.size() )
    {
      throw BudgetExceeded( "max_candidates", budget.max_candidates, count * domain.size() );
    }
    count *= domain.size();
  }
  const auto view = pi.view();
  std::vector<Element> assignment( leaves, 0 );
  std::vector<Tuple> tuples;
  for ( std::size_t x = 0; x < f.size(); ++x )
  {
    tuples.push_back( decode_index( domain, n, x ) );
  }
  for ( std::uint64_t c = 0; c < count; ++c )
  {
    bool match = true;
    for ( std::size_t x = 0; x < f.size() && match; ++x )
    {
      match = evaluate_shape( view, assignment.data(), leaves, tuples[x].data(), n ) == f[x];
    }
    if ( match )
    {
      return true;
    }
    for ( std::size_t i = leaves; i-- > 0; )
    {
      if ( ++assignment[i] < domain.size() )
      {
        break;
      }
      assignment[i] = 0;
    }
  }
  return false;
}

} // namespace pivotal
