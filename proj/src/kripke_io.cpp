#include "hsmc/error.hpp"
#include "hsmc/model.hpp"

#include <cctype>
#include <sstream>

namespace hsmc
{

namespace
{

bool is_identifier( std::string_view s )
{
    if ( s.empty() || !( std::isalpha( static_cast< unsigned char >( s[ 0 ] ) ) || s[ 0 ] == '_' ) )
        return false;
    for ( char c : s )
        if ( !( std::isalnum( static_cast< unsigned char >( c ) ) || c == '_' ) )
            return false;
    return true;
}

std::vector< std::string > split_words( std::string_view s )
{
    std::vector< std::string > out;
    std::istringstream in{ std::string{ s } };
    std::string w;
    while ( in >> w )
        out.push_back( w );
    return out;
}

std::string_view trim( std::string_view s )
{
    while ( !s.empty() && std::isspace( static_cast< unsigned char >( s.front() ) ) )
        s.remove_prefix( 1 );
    while ( !s.empty() && std::isspace( static_cast< unsigned char >( s.back() ) ) )
        s.remove_suffix( 1 );
    return s;
}

enum class section
{
    ap,
    init,
    states,
    edges,
};

} // namespace

kripke_structure parse_kripke( std::string_view text )
{
    kripke_builder b;
    section expect = section::ap;
    std::size_t lineno = 0;

    auto identifiers = [ & ]( std::string_view rest, std::string_view what ) {
        auto words = split_words( rest );
        for ( const auto& w : words )
            if ( !is_identifier( w ) )
                throw syntax_error( "invalid " + std::string{ what } + " name '" + w + "'", lineno );
        return words;
    };

    while ( !text.empty() )
    {
        ++lineno;
        auto nl = text.find( '\n' );
        auto raw = text.substr( 0, nl );
        text = nl == std::string_view::npos ? std::string_view{} : text.substr( nl + 1 );

        if ( auto hash = raw.find( '#' ); hash != std::string_view::npos )
            raw = raw.substr( 0, hash );
        auto line = trim( raw );
        if ( line.empty() )
            continue;

        auto colon = line.find( ':' );
        if ( colon == std::string_view::npos )
            throw syntax_error( "expected 'keyword:'", lineno );
        auto head = split_words( line.substr( 0, colon ) );
        auto rest = line.substr( colon + 1 );
        if ( head.empty() )
            throw syntax_error( "missing keyword before ':'", lineno );

        const auto& kw = head[ 0 ];
        if ( kw == "ap" && head.size() == 1 )
        {
            if ( expect != section::ap )
                throw syntax_error( "'ap:' must be the first line", lineno );
            b.props( identifiers( rest, "proposition" ) );
            expect = section::init;
        }
        else if ( kw == "init" && head.size() == 1 )
        {
            if ( expect != section::init )
                throw syntax_error( "'init:' must directly follow 'ap:'", lineno );
            auto names = identifiers( rest, "state" );
            if ( names.size() != 1 )
                throw syntax_error( "'init:' takes exactly one state", lineno );
            b.init( names[ 0 ] );
            expect = section::states;
        }
        else if ( kw == "state" )
        {
            if ( expect == section::ap )
                throw syntax_error( "'ap:' must be the first line", lineno );
            if ( expect == section::edges )
                throw syntax_error( "state declarations must precede edges", lineno );
            if ( head.size() != 2 || !is_identifier( head[ 1 ] ) )
                throw syntax_error( "expected 'state NAME: labels'", lineno );
            b.state( head[ 1 ], identifiers( rest, "proposition" ) );
            expect = section::states;
        }
        else if ( kw == "edge" && head.size() == 1 )
        {
            if ( expect == section::ap )
                throw syntax_error( "'ap:' must be the first line", lineno );
            auto names = identifiers( rest, "state" );
            if ( names.size() != 2 )
                throw syntax_error( "'edge:' takes exactly two states", lineno );
            b.edge( names[ 0 ], names[ 1 ] );
            expect = section::edges;
        }
        else
        {
            throw syntax_error( "unknown line '" + std::string{ line } + "'", lineno );
        }
    }

    if ( expect == section::ap )
        throw syntax_error( "empty model: missing 'ap:' line", lineno );
    return b.build();
}

std::string write_kripke( const kripke_structure& k )
{
    std::ostringstream out;
    out << "ap:";
    for ( const auto& p : k.ap() )
        out << ' ' << p;
    out << "\ninit: " << k.state_name( k.init() ) << '\n';
    for ( state_id s = 0; s < k.num_states(); ++s )
    {
        out << "state " << k.state_name( s ) << ':';
        for ( auto p : k.label( s ).members() )
            out << ' ' << k.prop_name( static_cast< prop_id >( p ) );
        out << '\n';
    }
    for ( auto [ u, v ] : k.edges() )
        out << "edge: " << k.state_name( u ) << ' ' << k.state_name( v ) << '\n';
    return out.str();
}

} // namespace hsmc
