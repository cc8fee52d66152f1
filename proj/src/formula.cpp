#include "hsmc/formula.hpp"
#include "hsmc/error.hpp"

#include <cassert>
#include <cctype>
#include <optional>

namespace hsmc
{

struct formula::node
{
    op kind;
    std::string name;
    modality mod = modality::A;
    std::optional< formula > a;
    std::optional< formula > b;
};

const char* to_string( modality m )
{
    switch ( m )
    {
        case modality::A: return "A";
        case modality::B: return "B";
        case modality::E: return "E";
        case modality::A_bar: return "~A";
        case modality::B_bar: return "~B";
        case modality::E_bar: return "~E";
        case modality::L: return "L";
        case modality::D: return "D";
        case modality::O: return "O";
        case modality::L_bar: return "~L";
        case modality::D_bar: return "~D";
        case modality::O_bar: return "~O";
    }
    return "?";
}

formula formula::letter( std::string name )
{
    return formula{ std::make_shared< const node >( node{ op::prop, std::move( name ), modality::A, std::nullopt, std::nullopt } ) };
}

formula formula::top()
{
    static const formula t{ std::make_shared< const node >( node{ op::top, {}, modality::A, std::nullopt, std::nullopt } ) };
    return t;
}

formula formula::bottom()
{
    static const formula f{ std::make_shared< const node >( node{ op::bottom, {}, modality::A, std::nullopt, std::nullopt } ) };
    return f;
}

formula formula::negation( formula f )
{
    return formula{ std::make_shared< const node >( node{ op::negation, {}, modality::A, std::move( f ), std::nullopt } ) };
}

formula formula::conjunction( formula l, formula r )
{
    return formula{
        std::make_shared< const node >( node{ op::conjunction, {}, modality::A, std::move( l ), std::move( r ) } ) };
}

formula formula::disjunction( formula l, formula r )
{
    return formula{
        std::make_shared< const node >( node{ op::disjunction, {}, modality::A, std::move( l ), std::move( r ) } ) };
}

formula formula::implication( formula l, formula r )
{
    return formula{
        std::make_shared< const node >( node{ op::implication, {}, modality::A, std::move( l ), std::move( r ) } ) };
}

formula formula::diamond( modality m, formula f )
{
    return formula{ std::make_shared< const node >( node{ op::diamond, {}, m, std::move( f ), std::nullopt } ) };
}

formula formula::box( modality m, formula f )
{
    return formula{ std::make_shared< const node >( node{ op::box, {}, m, std::move( f ), std::nullopt } ) };
}

op formula::kind() const { return _node->kind; }

const std::string& formula::name() const
{
    assert( kind() == op::prop );
    return _node->name;
}

modality formula::mod() const
{
    assert( is_modal() );
    return _node->mod;
}

const formula& formula::operand() const
{
    assert( kind() == op::negation || is_modal() );
    return *_node->a;
}

const formula& formula::lhs() const
{
    assert( is_binary() );
    return *_node->a;
}

const formula& formula::rhs() const
{
    assert( is_binary() );
    return *_node->b;
}

std::size_t formula::size() const
{
    std::size_t n = 1;
    if ( _node->a )
        n += _node->a->size();
    if ( _node->b )
        n += _node->b->size();
    return n;
}

bool operator==( const formula& x, const formula& y )
{
    if ( x._node == y._node )
        return true;
    const auto& a = *x._node;
    const auto& b = *y._node;
    if ( a.kind != b.kind )
        return false;
    switch ( a.kind )
    {
        case op::prop: return a.name == b.name;
        case op::top:
        case op::bottom: return true;
        case op::negation: return *a.a == *b.a;
        case op::diamond:
        case op::box: return a.mod == b.mod && *a.a == *b.a;
        default: return *a.a == *b.a && *a.b == *b.b;
    }
}

namespace
{

// Atoms and negated atoms print without parentheses in every position.
bool simple( const formula& f )
{
    switch ( f.kind() )
    {
        case op::prop:
        case op::top:
        case op::bottom: return true;
        case op::negation: return simple( f.operand() );
        default: return false;
    }
}

void print( const formula& f, std::string& out );

void print_operand( const formula& f, std::string& out, bool space_if_simple )
{
    if ( simple( f ) )
    {
        if ( space_if_simple )
            out += ' ';
        print( f, out );
        return;
    }
    out += '(';
    print( f, out );
    out += ')';
}

void print( const formula& f, std::string& out )
{
    switch ( f.kind() )
    {
        case op::prop: out += f.name(); return;
        case op::top: out += "true"; return;
        case op::bottom: out += "false"; return;
        case op::negation:
            out += '!';
            print_operand( f.operand(), out, false );
            return;
        case op::diamond:
        case op::box:
            out += f.kind() == op::diamond ? '<' : '[';
            out += to_string( f.mod() );
            out += f.kind() == op::diamond ? '>' : ']';
            print_operand( f.operand(), out, true );
            return;
        default: break;
    }

    const char* sym = f.kind() == op::conjunction ? " & " : f.kind() == op::disjunction ? " | " : " -> ";
    // A modal left operand is parenthesized for the reader; binary children
    // always are.
    if ( f.lhs().is_binary() || !simple( f.lhs() ) )
    {
        out += '(';
        print( f.lhs(), out );
        out += ')';
    }
    else
    {
        print( f.lhs(), out );
    }
    out += sym;
    if ( f.rhs().is_binary() )
    {
        out += '(';
        print( f.rhs(), out );
        out += ')';
    }
    else
    {
        print( f.rhs(), out );
    }
}

class parser
{
    std::string_view _text;
    std::size_t _pos = 0;

public:
    explicit parser( std::string_view text ) : _text{ text } {}

    formula parse()
    {
        auto f = implication();
        skip_ws();
        if ( _pos != _text.size() )
            fail( "unexpected '" + std::string( 1, _text[ _pos ] ) + "'" );
        return f;
    }

private:
    [[noreturn]] void fail( const std::string& what ) const { throw syntax_error( what, 0, _pos + 1 ); }

    void skip_ws()
    {
        while ( _pos < _text.size() && std::isspace( static_cast< unsigned char >( _text[ _pos ] ) ) )
            ++_pos;
    }

    bool accept( std::string_view tok )
    {
        skip_ws();
        if ( _text.substr( _pos, tok.size() ) == tok )
        {
            _pos += tok.size();
            return true;
        }
        return false;
    }

    formula implication()
    {
        auto l = disjunction();
        if ( accept( "->" ) )
            return formula::implication( std::move( l ), implication() );
        return l;
    }

    formula disjunction()
    {
        auto l = conjunction();
        while ( accept( "|" ) )
            l = formula::disjunction( std::move( l ), conjunction() );
        return l;
    }

    formula conjunction()
    {
        auto l = unary();
        while ( accept( "&" ) )
            l = formula::conjunction( std::move( l ), unary() );
        return l;
    }

    formula unary()
    {
        skip_ws();
        if ( _pos >= _text.size() )
            fail( "missing operand" );
        char c = _text[ _pos ];
        if ( c == '!' )
        {
            ++_pos;
            return formula::negation( unary() );
        }
        if ( c == '<' || c == '[' )
        {
            bool diamond = c == '<';
            auto start = _pos;
            ++_pos;
            bool inverse = false;
            if ( _pos < _text.size() && _text[ _pos ] == '~' )
            {
                inverse = true;
                ++_pos;
            }
            if ( _pos + 1 >= _text.size() || _text[ _pos + 1 ] != ( diamond ? '>' : ']' ) )
            {
                _pos = start;
                fail( std::string{ "malformed modality, expected " } + ( diamond ? "<X>" : "[X]" ) );
            }
            auto m = modality_of( _text[ _pos ], inverse, start );
            _pos += 2;
            auto body = unary();
            return diamond ? formula::diamond( m, std::move( body ) ) : formula::box( m, std::move( body ) );
        }
        if ( c == '(' )
        {
            ++_pos;
            auto f = implication();
            if ( !accept( ")" ) )
                fail( "expected ')'" );
            return f;
        }
        if ( std::isalpha( static_cast< unsigned char >( c ) ) || c == '_' )
        {
            auto start = _pos;
            while ( _pos < _text.size() &&
                    ( std::isalnum( static_cast< unsigned char >( _text[ _pos ] ) ) || _text[ _pos ] == '_' ) )
                ++_pos;
            auto word = _text.substr( start, _pos - start );
            if ( word == "true" )
                return formula::top();
            if ( word == "false" )
                return formula::bottom();
            return formula::letter( std::string{ word } );
        }
        fail( "missing operand" );
    }

    modality modality_of( char c, bool inverse, std::size_t at ) const
    {
        switch ( c )
        {
            case 'A': return inverse ? modality::A_bar : modality::A;
            case 'B': return inverse ? modality::B_bar : modality::B;
            case 'E': return inverse ? modality::E_bar : modality::E;
            case 'L': return inverse ? modality::L_bar : modality::L;
            case 'D': return inverse ? modality::D_bar : modality::D;
            case 'O': return inverse ? modality::O_bar : modality::O;
            default: throw unknown_modality( "unknown modality '" + std::string( 1, c ) + "'", 0, at + 1 );
        }
    }
};

} // namespace

std::string to_string( const formula& f )
{
    std::string out;
    print( f, out );
    return out;
}

formula parse_formula( std::string_view text )
{
    return parser{ text }.parse();
}

} // namespace hsmc
