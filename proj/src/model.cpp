#include "hsmc/model.hpp"
#include "hsmc/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace hsmc
{

std::optional< prop_id > kripke_structure::find_prop( std::string_view name ) const
{
    for ( prop_id p = 0; p < _ap.size(); ++p )
        if ( _ap[ p ] == name )
            return p;
    return std::nullopt;
}

std::optional< state_id > kripke_structure::find_state( std::string_view name ) const
{
    auto it = std::lower_bound( _states.begin(), _states.end(), name );
    if ( it == _states.end() || *it != name )
        return std::nullopt;
    return static_cast< state_id >( it - _states.begin() );
}

state_id kripke_structure::state( std::string_view name ) const
{
    if ( auto s = find_state( name ) )
        return *s;
    throw validation_error( validation_reason::unknown_state, std::string{ name } );
}

std::vector< std::pair< state_id, state_id > > kripke_structure::edges() const
{
    std::vector< std::pair< state_id, state_id > > out;
    out.reserve( _num_edges );
    for ( state_id u = 0; u < _succ.size(); ++u )
        for ( auto v : _succ[ u ] )
            out.emplace_back( u, v );
    return out;
}

kripke_builder& kripke_builder::prop( std::string name )
{
    if ( std::find( _ap.begin(), _ap.end(), name ) == _ap.end() )
        _ap.push_back( std::move( name ) );
    return *this;
}

kripke_builder& kripke_builder::props( const std::vector< std::string >& names )
{
    for ( const auto& n : names )
        prop( n );
    return *this;
}

kripke_builder& kripke_builder::state( std::string name, std::vector< std::string > labels )
{
    _states.emplace_back( std::move( name ), std::move( labels ) );
    return *this;
}

kripke_builder& kripke_builder::edge( std::string from, std::string to )
{
    _edges.emplace_back( std::move( from ), std::move( to ) );
    return *this;
}

kripke_builder& kripke_builder::init( std::string name )
{
    _init = std::move( name );
    return *this;
}

kripke_structure kripke_builder::build() const
{
    if ( !_init )
        throw validation_error( validation_reason::missing_init, "" );

    kripke_structure k;
    k._ap = _ap;

    std::vector< std::size_t > order( _states.size() );
    std::iota( order.begin(), order.end(), 0 );
    std::sort( order.begin(), order.end(),
               [ & ]( auto a, auto b ) { return _states[ a ].first < _states[ b ].first; } );
    for ( std::size_t i = 1; i < order.size(); ++i )
        if ( _states[ order[ i ] ].first == _states[ order[ i - 1 ] ].first )
            throw validation_error( validation_reason::duplicate_state, _states[ order[ i ] ].first );

    const auto n = _states.size();
    for ( auto i : order )
    {
        const auto& [ name, labels ] = _states[ i ];
        k._states.push_back( name );
        prop_set lab( _ap.size() );
        for ( const auto& l : labels )
        {
            auto p = std::find( _ap.begin(), _ap.end(), l );
            if ( p == _ap.end() )
                throw validation_error( validation_reason::unknown_proposition, l );
            lab.insert( static_cast< std::size_t >( p - _ap.begin() ) );
        }
        k._labels.push_back( std::move( lab ) );
    }

    auto init = k.find_state( *_init );
    if ( !init )
        throw validation_error( validation_reason::unknown_state, *_init );
    k._init = *init;

    k._edge_matrix.assign( n, bitset( n ) );
    for ( const auto& [ from, to ] : _edges )
    {
        auto u = k.find_state( from );
        if ( !u )
            throw validation_error( validation_reason::unknown_state, from );
        auto v = k.find_state( to );
        if ( !v )
            throw validation_error( validation_reason::unknown_state, to );
        k._edge_matrix[ *u ].insert( *v );
    }

    k._succ.assign( n, {} );
    k._pred.assign( n, {} );
    for ( state_id u = 0; u < n; ++u )
        for ( state_id v = 0; v < n; ++v )
            if ( k._edge_matrix[ u ].contains( v ) )
            {
                k._succ[ u ].push_back( v );
                k._pred[ v ].push_back( u );
                ++k._num_edges;
            }

    for ( state_id u = 0; u < n; ++u )
        if ( k._succ[ u ].empty() )
            throw validation_error( validation_reason::not_left_total, k._states[ u ] );

    return k;
}

track::track( const kripke_structure& k, std::vector< state_id > seq ) : _seq{ std::move( seq ) }
{
    if ( _seq.size() < 2 )
        throw invalid_track( "a track has at least two states" );
    for ( auto s : _seq )
        if ( s >= k.num_states() )
            throw invalid_track( "state id out of range" );
    for ( std::size_t i = 0; i + 1 < _seq.size(); ++i )
        if ( !k.has_edge( _seq[ i ], _seq[ i + 1 ] ) )
            throw invalid_track( "no edge " + k.state_name( _seq[ i ] ) + " -> " + k.state_name( _seq[ i + 1 ] ) );
}

state_set track::state_set_of( std::size_t universe ) const
{
    state_set s( universe );
    for ( auto v : _seq )
        s.insert( v );
    return s;
}

state_set track::intstates( std::size_t universe ) const
{
    state_set s( universe );
    for ( std::size_t i = 1; i + 1 < _seq.size(); ++i )
        s.insert( _seq[ i ] );
    return s;
}

track track::sub( std::size_t i, std::size_t j ) const
{
    assert( i < j && j < _seq.size() );
    return unchecked( { _seq.begin() + static_cast< std::ptrdiff_t >( i ),
                        _seq.begin() + static_cast< std::ptrdiff_t >( j ) + 1 } );
}

bool is_track( const kripke_structure& k, std::span< const state_id > seq )
{
    if ( seq.size() < 2 )
        return false;
    for ( auto s : seq )
        if ( s >= k.num_states() )
            return false;
    for ( std::size_t i = 0; i + 1 < seq.size(); ++i )
        if ( !k.has_edge( seq[ i ], seq[ i + 1 ] ) )
            return false;
    return true;
}

track track_from_names( const kripke_structure& k, const std::vector< std::string >& names )
{
    std::vector< state_id > seq;
    for ( const auto& n : names )
        seq.push_back( k.state( n ) );
    return track( k, std::move( seq ) );
}

std::vector< std::string > track_names( const kripke_structure& k, const track& t )
{
    std::vector< std::string > out;
    for ( auto s : t.states() )
        out.push_back( k.state_name( s ) );
    return out;
}

std::string to_string( const kripke_structure& k, const track& t )
{
    std::string out;
    for ( auto s : t.states() )
    {
        if ( !out.empty() )
            out += ' ';
        out += k.state_name( s );
    }
    return out;
}

track concat( const kripke_structure& k, const track& a, const track& b )
{
    if ( !k.has_edge( a.lst(), b.fst() ) )
        throw invalid_track( "cannot concatenate: no edge " + k.state_name( a.lst() ) + " -> " +
                             k.state_name( b.fst() ) );
    std::vector< state_id > seq( a.states().begin(), a.states().end() );
    seq.insert( seq.end(), b.states().begin(), b.states().end() );
    return track::unchecked( std::move( seq ) );
}

prop_set track_label( const kripke_structure& k, const track& t )
{
    prop_set out = k.label( t.fst() );
    for ( auto s : t.states() )
        out &= k.label( s );
    return out;
}

void for_each_track( const kripke_structure& k, std::optional< state_id > start, std::size_t max_len,
                     const std::function< bool( std::span< const state_id > ) >& visit )
{
    if ( max_len < 2 )
        return;
    std::vector< state_id > seq;
    std::function< void() > dfs = [ & ]() {
        if ( seq.size() >= 2 && !visit( seq ) )
            return;
        if ( seq.size() == max_len )
            return;
        for ( auto w : k.successors( seq.back() ) )
        {
            seq.push_back( w );
            dfs();
            seq.pop_back();
        }
    };
    for ( state_id v = 0; v < k.num_states(); ++v )
    {
        if ( start && *start != v )
            continue;
        seq.assign( 1, v );
        dfs();
    }
}

std::vector< track > enumerate_tracks( const kripke_structure& k, std::optional< state_id > start,
                                       std::size_t max_len )
{
    // Layer by layer: extending a lexicographically sorted layer in successor
    // order keeps the next layer sorted.
    std::vector< track > out;
    if ( max_len < 2 )
        return out;
    std::vector< std::vector< state_id > > layer;
    for ( state_id v = 0; v < k.num_states(); ++v )
        if ( !start || *start == v )
            layer.push_back( { v } );
    for ( std::size_t len = 2; len <= max_len; ++len )
    {
        std::vector< std::vector< state_id > > next;
        for ( const auto& seq : layer )
            for ( auto w : k.successors( seq.back() ) )
            {
                next.push_back( seq );
                next.back().push_back( w );
            }
        for ( const auto& seq : next )
            out.push_back( track::unchecked( seq ) );
        layer = std::move( next );
    }
    return out;
}

kripke_structure restrict_labels( const kripke_structure& k, const std::vector< std::string >& keep )
{
    kripke_builder b;
    for ( const auto& p : k.ap() )
        if ( std::find( keep.begin(), keep.end(), p ) != keep.end() )
            b.prop( p );
    for ( state_id s = 0; s < k.num_states(); ++s )
    {
        std::vector< std::string > labels;
        for ( auto p : k.label( s ).members() )
            if ( std::find( keep.begin(), keep.end(), k.prop_name( static_cast< prop_id >( p ) ) ) != keep.end() )
                labels.push_back( k.prop_name( static_cast< prop_id >( p ) ) );
        b.state( k.state_name( s ), std::move( labels ) );
    }
    for ( auto [ u, v ] : k.edges() )
        b.edge( k.state_name( u ), k.state_name( v ) );
    b.init( k.state_name( k.init() ) );
    return b.build();
}

kripke_structure reach_from( const kripke_structure& k, state_id v )
{
    std::vector< bool > seen( k.num_states(), false );
    std::deque< state_id > queue{ v };
    seen[ v ] = true;
    while ( !queue.empty() )
    {
        auto u = queue.front();
        queue.pop_front();
        for ( auto w : k.successors( u ) )
            if ( !seen[ w ] )
            {
                seen[ w ] = true;
                queue.push_back( w );
            }
    }

    kripke_builder b;
    b.props( k.ap() );
    for ( state_id s = 0; s < k.num_states(); ++s )
    {
        if ( !seen[ s ] )
            continue;
        std::vector< std::string > labels;
        for ( auto p : k.label( s ).members() )
            labels.push_back( k.prop_name( static_cast< prop_id >( p ) ) );
        b.state( k.state_name( s ), std::move( labels ) );
    }
    for ( auto [ a, c ] : k.edges() )
        if ( seen[ a ] )
            b.edge( k.state_name( a ), k.state_name( c ) );
    b.init( k.state_name( v ) );
    return b.build();
}

namespace
{

std::set< std::string > label_names( const kripke_structure& k, state_id s )
{
    std::set< std::string > out;
    for ( auto p : k.label( s ).members() )
        out.insert( k.prop_name( static_cast< prop_id >( p ) ) );
    return out;
}

} // namespace

bool isomorphic( const kripke_structure& a, const kripke_structure& b )
{
    const auto n = a.num_states();
    if ( n != b.num_states() || a.num_edges() != b.num_edges() )
        return false;

    std::vector< std::set< std::string > > la( n ), lb( n );
    for ( state_id s = 0; s < n; ++s )
    {
        la[ s ] = label_names( a, s );
        lb[ s ] = label_names( b, s );
    }

    auto signature = [ & ]( const kripke_structure& k, const std::vector< std::set< std::string > >& l, state_id s ) {
        return std::tuple{ l[ s ], k.successors( s ).size(), k.predecessors( s ).size(), k.has_edge( s, s ) };
    };

    std::vector< std::vector< state_id > > candidates( n );
    for ( state_id u = 0; u < n; ++u )
        for ( state_id v = 0; v < n; ++v )
            if ( signature( a, la, u ) == signature( b, lb, v ) )
                candidates[ u ].push_back( v );
    if ( candidates[ a.init() ].empty() )
        return false;
    candidates[ a.init() ] = { b.init() };
    if ( signature( a, la, a.init() ) != signature( b, lb, b.init() ) )
        return false;

    // Assign in BFS order from init so that constraints propagate early.
    std::vector< state_id > order;
    {
        std::vector< bool > seen( n, false );
        for ( state_id root = 0; root <= n; ++root )
        {
            state_id r = root == 0 ? a.init() : root - 1;
            if ( seen[ r ] )
                continue;
            std::deque< state_id > q{ r };
            seen[ r ] = true;
            while ( !q.empty() )
            {
                auto u = q.front();
                q.pop_front();
                order.push_back( u );
                for ( auto w : a.successors( u ) )
                    if ( !seen[ w ] )
                        seen[ w ] = true, q.push_back( w );
                for ( auto w : a.predecessors( u ) )
                    if ( !seen[ w ] )
                        seen[ w ] = true, q.push_back( w );
            }
        }
    }

    std::vector< std::int64_t > map( n, -1 );
    std::vector< bool > used( n, false );
    std::function< bool( std::size_t ) > assign = [ & ]( std::size_t depth ) -> bool {
        if ( depth == n )
            return true;
        auto u = order[ depth ];
        for ( auto v : candidates[ u ] )
        {
            if ( used[ v ] )
                continue;
            bool ok = true;
            for ( std::size_t i = 0; i < depth && ok; ++i )
            {
                auto x = order[ i ];
                auto y = static_cast< state_id >( map[ x ] );
                if ( a.has_edge( u, x ) != b.has_edge( v, y ) || a.has_edge( x, u ) != b.has_edge( y, v ) )
                    ok = false;
            }
            if ( !ok || a.has_edge( u, u ) != b.has_edge( v, v ) )
                continue;
            map[ u ] = v;
            used[ v ] = true;
            if ( assign( depth + 1 ) )
                return true;
            used[ v ] = false;
            map[ u ] = -1;
        }
        return false;
    };
    return assign( 0 );
}

} // namespace hsmc
