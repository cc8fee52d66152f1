#include "hsmc/reductions.hpp"
#include "hsmc/error.hpp"
#include "hsmc/logic.hpp"

#include <charconv>
#include <functional>
#include <set>
#include <sstream>

namespace hsmc
{

std::string var_name( std::size_t v ) { return "x" + std::to_string( v ); }
std::string aux_name( std::size_t v ) { return "x" + std::to_string( v ) + "_aux"; }

namespace
{

formula literal( int lit )
{
    auto x = formula::letter( var_name( static_cast< std::size_t >( lit < 0 ? -lit : lit ) ) );
    return lit < 0 ? formula::negation( std::move( x ) ) : x;
}

formula clause_formula( const std::vector< int >& clause )
{
    if ( clause.empty() )
        return formula::bottom();
    auto f = literal( clause.front() );
    for ( std::size_t i = 1; i < clause.size(); ++i )
        f = formula::disjunction( std::move( f ), literal( clause[ i ] ) );
    return f;
}

} // namespace

formula to_formula( const cnf_formula& cnf )
{
    if ( cnf.clauses.empty() )
        return formula::top();
    auto f = clause_formula( cnf.clauses.front() );
    for ( std::size_t i = 1; i < cnf.clauses.size(); ++i )
        f = formula::conjunction( std::move( f ), clause_formula( cnf.clauses[ i ] ) );
    return f;
}

namespace
{

std::vector< std::string_view > split_words( std::string_view line )
{
    std::vector< std::string_view > out;
    std::size_t i = 0;
    while ( i < line.size() )
    {
        while ( i < line.size() && std::isspace( static_cast< unsigned char >( line[ i ] ) ) )
            ++i;
        auto start = i;
        while ( i < line.size() && !std::isspace( static_cast< unsigned char >( line[ i ] ) ) )
            ++i;
        if ( i > start )
            out.push_back( line.substr( start, i - start ) );
    }
    return out;
}

long long to_int( std::string_view word, std::size_t line )
{
    long long v = 0;
    auto [ ptr, ec ] = std::from_chars( word.data(), word.data() + word.size(), v );
    if ( ec != std::errc{} || ptr != word.data() + word.size() )
        throw syntax_error( "expected an integer, got '" + std::string{ word } + "'", line );
    return v;
}

// Shared reader for DIMACS and QDIMACS. Quantifier lines are passed to
// `on_quantifier` before any clause has been read.
cnf_formula read_dimacs( std::string_view text,
                         const std::function< void( char, const std::vector< std::size_t >&, std::size_t ) >&
                                 on_quantifier )
{
    cnf_formula cnf;
    bool header = false;
    std::vector< int > clause;
    bool clause_open = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while ( pos <= text.size() )
    {
        auto end = text.find( '\n', pos );
        if ( end == std::string_view::npos )
            end = text.size();
        auto line = text.substr( pos, end - pos );
        pos = end + 1;
        ++line_no;

        auto words = split_words( line );
        if ( words.empty() || words[ 0 ][ 0 ] == 'c' )
            continue;
        if ( words[ 0 ] == "%" )
            break;
        if ( words[ 0 ] == "p" )
        {
            if ( header )
                throw syntax_error( "duplicate problem line", line_no );
            if ( words.size() != 4 || words[ 1 ] != "cnf" )
                throw syntax_error( "expected 'p cnf <vars> <clauses>'", line_no );
            auto vars = to_int( words[ 2 ], line_no );
            auto clauses = to_int( words[ 3 ], line_no );
            if ( vars < 0 || clauses < 0 )
                throw syntax_error( "negative count in problem line", line_no );
            cnf.num_vars = static_cast< std::size_t >( vars );
            header = true;
            continue;
        }
        if ( !header )
            throw syntax_error( "clause or quantifier before the problem line", line_no );

        if ( words[ 0 ] == "e" || words[ 0 ] == "a" )
        {
            if ( !on_quantifier )
                throw syntax_error( "quantifier line in a DIMACS file", line_no );
            if ( !cnf.clauses.empty() || clause_open )
                throw non_prenex( "quantifier line after clauses at line " + std::to_string( line_no ) );
            std::vector< std::size_t > vars;
            bool terminated = false;
            for ( std::size_t i = 1; i < words.size(); ++i )
            {
                auto v = to_int( words[ i ], line_no );
                if ( v == 0 )
                {
                    terminated = i + 1 == words.size();
                    if ( !terminated )
                        throw syntax_error( "text after terminating 0", line_no );
                    break;
                }
                if ( v < 0 || static_cast< std::size_t >( v ) > cnf.num_vars )
                    throw out_of_range_literal( "variable " + std::to_string( v ) + " out of range", line_no );
                vars.push_back( static_cast< std::size_t >( v ) );
            }
            if ( !terminated )
                throw syntax_error( "quantifier line must end with 0", line_no );
            on_quantifier( words[ 0 ][ 0 ], vars, line_no );
            continue;
        }

        for ( auto w : words )
        {
            auto lit = to_int( w, line_no );
            if ( lit == 0 )
            {
                cnf.clauses.push_back( std::move( clause ) );
                clause.clear();
                clause_open = false;
                continue;
            }
            auto var = lit < 0 ? -lit : lit;
            if ( static_cast< std::size_t >( var ) > cnf.num_vars )
                throw out_of_range_literal( "literal " + std::to_string( lit ) + " exceeds " +
                                                    std::to_string( cnf.num_vars ) + " variables",
                                            line_no );
            clause.push_back( static_cast< int >( lit ) );
            clause_open = true;
        }
    }
    if ( !header )
        throw syntax_error( "missing problem line", 0 );
    if ( clause_open )
        cnf.clauses.push_back( std::move( clause ) );
    return cnf;
}

} // namespace

cnf_formula parse_dimacs( std::string_view text ) { return read_dimacs( text, nullptr ); }

qdimacs_result parse_qdimacs( std::string_view text )
{
    qdimacs_result out;
    std::set< std::size_t > bound;
    auto cnf = read_dimacs( text, [ & ]( char q, const std::vector< std::size_t >& vars, std::size_t line ) {
        for ( auto v : vars )
        {
            if ( !bound.insert( v ).second )
                throw non_prenex( "variable " + std::to_string( v ) + " quantified twice (line " +
                                  std::to_string( line ) + ")" );
            out.qbf.prefix.emplace_back( q == 'e' ? quantifier::exists : quantifier::forall, v );
        }
    } );

    std::set< std::size_t > free;
    for ( const auto& clause : cnf.clauses )
        for ( auto lit : clause )
        {
            auto v = static_cast< std::size_t >( lit < 0 ? -lit : lit );
            if ( !bound.contains( v ) )
                free.insert( v );
        }
    if ( !free.empty() )
    {
        std::string names;
        std::vector< std::pair< quantifier, std::size_t > > block;
        for ( auto v : free )
        {
            block.emplace_back( quantifier::exists, v );
            names += ( names.empty() ? "" : " " ) + std::to_string( v );
        }
        out.qbf.prefix.insert( out.qbf.prefix.begin(), block.begin(), block.end() );
        out.warnings.push_back( "free variables bound existentially (outermost): " + names );
    }
    out.qbf.matrix = to_formula( cnf );
    out.matrix = std::move( cnf );
    return out;
}

namespace
{

instance sat_structure( const std::vector< std::string >& vars, formula beta )
{
    const auto n = vars.size();
    kripke_builder b;
    b.props( vars );
    b.init( "w0" );
    b.state( "w0", vars );
    if ( n == 0 )
        b.edge( "w0", "w0" );
    for ( std::size_t i = 1; i <= n; ++i )
    {
        auto all_but = vars;
        all_but.erase( all_but.begin() + static_cast< std::ptrdiff_t >( i - 1 ) );
        auto t = "w" + std::to_string( i ) + "_T";
        auto f = "w" + std::to_string( i ) + "_F";
        b.state( t, vars );
        b.state( f, all_but );
        if ( i == 1 )
        {
            b.edge( "w0", t );
            b.edge( "w0", f );
        }
        if ( i < n )
            for ( const auto& from : { t, f } )
            {
                b.edge( from, "w" + std::to_string( i + 1 ) + "_T" );
                b.edge( from, "w" + std::to_string( i + 1 ) + "_F" );
            }
        else
        {
            b.edge( t, t );
            b.edge( f, f );
        }
    }
    return { b.build(), formula::negation( std::move( beta ) ) };
}

} // namespace

instance build_sat_instance( const cnf_formula& cnf )
{
    std::vector< std::string > vars;
    for ( std::size_t v = 1; v <= cnf.num_vars; ++v )
        vars.push_back( var_name( v ) );
    return sat_structure( vars, to_formula( cnf ) );
}

instance build_sat_instance( const formula& beta )
{
    if ( !is_propositional( beta ) )
        throw not_propositional( "SAT instances need a propositional formula: " + to_string( beta ) );
    auto letters = prop_letters( beta );
    return sat_structure( { letters.begin(), letters.end() }, beta );
}

instance build_qbf_instance( const qbf_formula& psi )
{
    std::set< std::size_t > bound;
    for ( auto [ q, v ] : psi.prefix )
        if ( !bound.insert( v ).second )
            throw non_prenex( "variable " + var_name( v ) + " is quantified twice" );
    std::set< std::string > bound_names;
    for ( auto v : bound )
        bound_names.insert( var_name( v ) );
    for ( const auto& letter : prop_letters( psi.matrix ) )
        if ( !bound_names.contains( letter ) )
            throw non_prenex( "matrix letter " + letter + " is not bound by the prefix" );

    const auto n = psi.prefix.size();
    std::vector< std::string > vars;
    for ( auto [ q, v ] : psi.prefix )
        vars.push_back( var_name( v ) );

    kripke_builder b;
    b.props( vars );
    b.prop( "start" );
    for ( auto [ q, v ] : psi.prefix )
        b.prop( aux_name( v ) );

    auto with_start = vars;
    with_start.push_back( "start" );
    b.init( "w0" );
    b.state( "w0", with_start );
    b.state( "w1", with_start );
    b.state( "sink", vars );
    b.edge( "w0", "w1" );
    b.edge( "sink", "sink" );

    // Level j = 0 is the outermost quantifier.
    auto level_states = [ & ]( std::size_t j, const char* suffix ) {
        return "w" + std::to_string( psi.prefix[ j ].second ) + "_" + suffix;
    };
    if ( n == 0 )
        b.edge( "w1", "sink" );
    for ( std::size_t j = 0; j < n; ++j )
    {
        auto v = psi.prefix[ j ].second;
        auto aux = aux_name( v );
        auto pos = vars;
        pos.push_back( aux );
        auto neg = vars;
        neg.erase( neg.begin() + static_cast< std::ptrdiff_t >( j ) );
        neg.push_back( aux );
        b.state( level_states( j, "T1" ), pos );
        b.state( level_states( j, "T2" ), pos );
        b.state( level_states( j, "F1" ), neg );
        b.state( level_states( j, "F2" ), neg );
        b.edge( level_states( j, "T1" ), level_states( j, "T2" ) );
        b.edge( level_states( j, "F1" ), level_states( j, "F2" ) );
        if ( j == 0 )
        {
            b.edge( "w1", level_states( j, "T1" ) );
            b.edge( "w1", level_states( j, "F1" ) );
        }
        for ( const char* from : { "T2", "F2" } )
            if ( j + 1 < n )
            {
                b.edge( level_states( j, from ), level_states( j + 1, "T1" ) );
                b.edge( level_states( j, from ), level_states( j + 1, "F1" ) );
            }
            else
                b.edge( level_states( j, from ), "sink" );
    }

    // xi_0 is the matrix; each level wraps the one inside it.
    auto xi = psi.matrix;
    for ( std::size_t j = n; j-- > 0; )
    {
        auto guard = formula::diamond( modality::A, formula::letter( aux_name( psi.prefix[ j ].second ) ) );
        if ( psi.prefix[ j ].first == quantifier::exists )
            xi = formula::diamond( modality::B_bar, formula::conjunction( std::move( guard ), std::move( xi ) ) );
        else
            xi = formula::box( modality::B_bar, formula::implication( std::move( guard ), std::move( xi ) ) );
    }
    return { b.build(), formula::implication( formula::letter( "start" ), std::move( xi ) ) };
}

namespace
{

constexpr std::size_t max_brute_vars = 20;

bool eval_under( const formula& f, const std::map< std::string, bool >& env )
{
    switch ( f.kind() )
    {
        case op::prop: {
            auto it = env.find( f.name() );
            return it != env.end() && it->second;
        }
        case op::top: return true;
        case op::bottom: return false;
        case op::negation: return !eval_under( f.operand(), env );
        case op::conjunction: return eval_under( f.lhs(), env ) && eval_under( f.rhs(), env );
        case op::disjunction: return eval_under( f.lhs(), env ) || eval_under( f.rhs(), env );
        case op::implication: return !eval_under( f.lhs(), env ) || eval_under( f.rhs(), env );
        default: break;
    }
    throw not_propositional( "modal formula in a Boolean oracle: " + to_string( f ) );
}

bool expand( const qbf_formula& psi, std::size_t level, std::map< std::string, bool >& env )
{
    if ( level == psi.prefix.size() )
        return eval_under( psi.matrix, env );
    auto [ q, v ] = psi.prefix[ level ];
    auto name = var_name( v );
    bool any = false, all = true;
    for ( bool value : { false, true } )
    {
        env[ name ] = value;
        bool r = expand( psi, level + 1, env );
        any = any || r;
        all = all && r;
        if ( q == quantifier::exists ? any : !all )
            break;
    }
    env.erase( name );
    return q == quantifier::exists ? any : all;
}

} // namespace

bool brute_sat( const formula& beta )
{
    if ( !is_propositional( beta ) )
        throw not_propositional( "brute_sat needs a propositional formula: " + to_string( beta ) );
    auto letters = prop_letters( beta );
    if ( letters.size() > max_brute_vars )
        throw too_many_variables( std::to_string( letters.size() ) + " variables exceed the limit of 20" );
    std::vector< std::string > vars( letters.begin(), letters.end() );
    std::map< std::string, bool > env;
    for ( std::uint64_t mask = 0; mask < ( std::uint64_t{ 1 } << vars.size() ); ++mask )
    {
        for ( std::size_t i = 0; i < vars.size(); ++i )
            env[ vars[ i ] ] = ( mask >> i ) & 1u;
        if ( eval_under( beta, env ) )
            return true;
    }
    return false;
}

bool brute_sat( const cnf_formula& cnf )
{
    if ( cnf.num_vars > max_brute_vars )
        throw too_many_variables( std::to_string( cnf.num_vars ) + " variables exceed the limit of 20" );
    return brute_sat( to_formula( cnf ) );
}

bool brute_qbf( const qbf_formula& psi )
{
    if ( psi.prefix.size() > max_brute_vars )
        throw too_many_variables( std::to_string( psi.prefix.size() ) + " variables exceed the limit of 20" );
    std::map< std::string, bool > env;
    return expand( psi, 0, env );
}

std::map< std::string, bool > decode_assignment( const kripke_structure& k, const track& rho )
{
    auto label = track_label( k, rho );
    std::map< std::string, bool > out;
    for ( prop_id p = 0; p < k.num_props(); ++p )
        out[ k.prop_name( p ) ] = label.contains( p );
    return out;
}

} // namespace hsmc
