#include "hsmc/oracle.hpp"
#include "hsmc/error.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace hsmc
{

track_automaton::track_automaton( const kripke_structure& k, const formula& phi, std::size_t bound )
        : _k{ k }, _bound{ bound }
{
    _root = add( desugar( phi ) );
    // the root keeps its exact length so that extend can enforce the bound
    _sensitive[ _root ] = true;
    _tables.resize( _nodes.size() );
    _reachable.resize( _nodes.size() );
    _exists_from.resize( _nodes.size() );
    _exists_to.resize( _nodes.size() );
    _backward_init.resize( _nodes.size() );
}

std::uint32_t track_automaton::add( const formula& f )
{
    auto push = [ this ]( node n, bool sensitive ) {
        _nodes.push_back( n );
        _sensitive.push_back( sensitive );
        return static_cast< std::uint32_t >( _nodes.size() - 1 );
    };

    switch ( f.kind() )
    {
        case op::prop: {
            node n{ kind::letter };
            if ( auto p = _k.find_prop( f.name() ) )
                n.prop = *p;
            return push( n, false );
        }
        case op::top: return push( { kind::top }, false );
        case op::bottom: return push( { kind::bottom }, false );
        case op::negation: {
            auto c = add( f.operand() );
            return push( { kind::negation, -1, c }, _sensitive[ c ] );
        }
        case op::conjunction:
        case op::disjunction:
        case op::implication: {
            auto l = add( f.lhs() );
            auto r = add( f.rhs() );
            auto kd = f.kind() == op::conjunction   ? kind::conjunction
                      : f.kind() == op::disjunction ? kind::disjunction
                                                    : kind::implication;
            return push( { kd, -1, l, r }, _sensitive[ l ] || _sensitive[ r ] );
        }
        case op::diamond:
        case op::box: {
            auto c = add( f.operand() );
            if ( f.kind() == op::box )
                c = push( { kind::negation, -1, c }, _sensitive[ c ] );
            kind kd = kind::diamond_a;
            bool sensitive = _sensitive[ c ];
            switch ( f.mod() )
            {
                case modality::A: kd = kind::diamond_a; sensitive = false; break;
                case modality::A_bar: kd = kind::diamond_abar; sensitive = false; break;
                case modality::B: kd = kind::diamond_b; break;
                case modality::E: kd = kind::diamond_e; break;
                case modality::B_bar: kd = kind::diamond_bbar; sensitive = true; break;
                case modality::E_bar: kd = kind::diamond_ebar; sensitive = true; break;
                default: assert( false && "sugar modality after desugar" );
            }
            auto d = push( { kd, -1, c }, sensitive );
            if ( f.kind() == op::box )
                d = push( { kind::negation, -1, d }, sensitive );
            return d;
        }
    }
    return 0;
}

std::size_t track_automaton::num_types() const
{
    std::size_t n = 0;
    for ( const auto& t : _tables )
        n += t.records.size();
    return n;
}

std::int32_t track_automaton::length_of( std::uint32_t n, std::int32_t len ) const
{
    return _sensitive[ n ] ? len : std::min( len, 2 );
}

track_automaton::type_id track_automaton::intern( std::uint32_t n, record r )
{
    auto& t = _tables[ n ];
    if ( auto it = t.ids.find( r ); it != t.ids.end() )
        return it->second;
    auto id = static_cast< type_id >( t.records.size() );
    t.ids.emplace( r, id );
    t.records.push_back( std::move( r ) );
    t.truth.push_back( -1 );
    t.min_extension.push_back( -2 );
    return id;
}

track_automaton::type_id track_automaton::init( std::uint32_t n, state_id v )
{
    const auto nd = _nodes[ n ];
    auto sv = static_cast< std::int32_t >( v );
    record r{ 1, sv, sv };
    switch ( nd.k )
    {
        case kind::letter: r.push_back( nd.prop >= 0 && _k.label( v ).contains( static_cast< std::size_t >( nd.prop ) ) ); break;
        case kind::top:
        case kind::bottom:
        case kind::diamond_a:
        case kind::diamond_abar:
        case kind::diamond_e: break;
        case kind::negation:
        case kind::diamond_bbar: r.push_back( static_cast< std::int32_t >( init( nd.lhs, v ) ) ); break;
        case kind::conjunction:
        case kind::disjunction:
        case kind::implication:
            r.push_back( static_cast< std::int32_t >( init( nd.lhs, v ) ) );
            r.push_back( static_cast< std::int32_t >( init( nd.rhs, v ) ) );
            break;
        case kind::diamond_b:
            r.push_back( static_cast< std::int32_t >( init( nd.lhs, v ) ) );
            r.push_back( 0 );
            break;
        case kind::diamond_ebar: {
            const auto& pairs = backward_init( n, v );
            r.insert( r.end(), pairs.begin(), pairs.end() );
            break;
        }
    }
    return intern( n, std::move( r ) );
}

std::optional< track_automaton::type_id > track_automaton::step( std::uint32_t n, type_id t, state_id w )
{
    const auto nd = _nodes[ n ];
    const record cur = _tables[ n ].records[ t ];
    const auto len = cur[ 0 ];
    if ( !_k.has_edge( static_cast< state_id >( cur[ 2 ] ), w ) )
        return std::nullopt;
    if ( _sensitive[ n ] && static_cast< std::size_t >( len ) + 1 > _bound )
        return std::nullopt;

    auto sw = static_cast< std::int32_t >( w );
    record r{ length_of( n, len + 1 ), cur[ 1 ], sw };
    auto sub = [ & ]( std::uint32_t child, std::int32_t id ) -> std::optional< std::int32_t > {
        auto s = step( child, static_cast< type_id >( id ), w );
        if ( !s )
            return std::nullopt;
        return static_cast< std::int32_t >( *s );
    };

    switch ( nd.k )
    {
        case kind::letter:
            r.push_back( cur[ 3 ] && nd.prop >= 0 && _k.label( w ).contains( static_cast< std::size_t >( nd.prop ) ) );
            break;
        case kind::top:
        case kind::bottom:
        case kind::diamond_a:
        case kind::diamond_abar: break;
        case kind::negation:
        case kind::diamond_bbar: {
            auto c = sub( nd.lhs, cur[ 3 ] );
            if ( !c )
                return std::nullopt;
            r.push_back( *c );
            break;
        }
        case kind::conjunction:
        case kind::disjunction:
        case kind::implication: {
            auto l = sub( nd.lhs, cur[ 3 ] );
            auto rr = sub( nd.rhs, cur[ 4 ] );
            if ( !l || !rr )
                return std::nullopt;
            r.push_back( *l );
            r.push_back( *rr );
            break;
        }
        case kind::diamond_b: {
            bool flag = cur[ 4 ] || ( len >= 2 && truth( nd.lhs, static_cast< type_id >( cur[ 3 ] ) ) );
            auto c = sub( nd.lhs, cur[ 3 ] );
            if ( !c )
                return std::nullopt;
            r.push_back( *c );
            r.push_back( flag );
            break;
        }
        case kind::diamond_e: {
            std::vector< std::int32_t > suffixes;
            for ( std::size_t i = 3; i < cur.size(); ++i )
                if ( auto c = sub( nd.lhs, cur[ i ] ) )
                    suffixes.push_back( *c );
            suffixes.push_back( static_cast< std::int32_t >( init( nd.lhs, w ) ) );
            std::sort( suffixes.begin(), suffixes.end() );
            suffixes.erase( std::unique( suffixes.begin(), suffixes.end() ), suffixes.end() );
            r.insert( r.end(), suffixes.begin(), suffixes.end() );
            break;
        }
        case kind::diamond_ebar: {
            std::map< std::int32_t, std::int32_t > best;
            for ( std::size_t i = 3; i + 1 < cur.size(); i += 2 )
            {
                auto total = cur[ i + 1 ] + 1;
                if ( static_cast< std::size_t >( total ) > _bound )
                    continue;
                if ( auto c = sub( nd.lhs, cur[ i ] ) )
                {
                    auto [ it, fresh ] = best.emplace( *c, total );
                    if ( !fresh )
                        it->second = std::min( it->second, total );
                }
            }
            for ( auto [ id, total ] : best )
            {
                r.push_back( id );
                r.push_back( total );
            }
            break;
        }
    }
    return intern( n, std::move( r ) );
}

bool track_automaton::truth( std::uint32_t n, type_id t )
{
    if ( auto cached = _tables[ n ].truth[ t ]; cached >= 0 )
        return cached != 0;

    const auto nd = _nodes[ n ];
    const record cur = _tables[ n ].records[ t ];
    bool value = false;
    switch ( nd.k )
    {
        case kind::letter: value = cur[ 3 ] != 0; break;
        case kind::top: value = true; break;
        case kind::bottom: value = false; break;
        case kind::negation: value = !truth( nd.lhs, static_cast< type_id >( cur[ 3 ] ) ); break;
        case kind::conjunction:
            value = truth( nd.lhs, static_cast< type_id >( cur[ 3 ] ) ) &&
                    truth( nd.rhs, static_cast< type_id >( cur[ 4 ] ) );
            break;
        case kind::disjunction:
            value = truth( nd.lhs, static_cast< type_id >( cur[ 3 ] ) ) ||
                    truth( nd.rhs, static_cast< type_id >( cur[ 4 ] ) );
            break;
        case kind::implication:
            value = !truth( nd.lhs, static_cast< type_id >( cur[ 3 ] ) ) ||
                    truth( nd.rhs, static_cast< type_id >( cur[ 4 ] ) );
            break;
        case kind::diamond_a: value = exists_from( nd.lhs )[ static_cast< std::size_t >( cur[ 2 ] ) ]; break;
        case kind::diamond_abar: value = exists_to( nd.lhs )[ static_cast< std::size_t >( cur[ 1 ] ) ]; break;
        case kind::diamond_b: value = cur[ 4 ] != 0; break;
        case kind::diamond_e:
            for ( std::size_t i = 3; i < cur.size() && !value; ++i )
            {
                auto x = static_cast< type_id >( cur[ i ] );
                value = _tables[ nd.lhs ].records[ x ][ 0 ] >= 2 && truth( nd.lhs, x );
            }
            break;
        case kind::diamond_bbar: {
            auto m = min_extension( nd.lhs, static_cast< type_id >( cur[ 3 ] ) );
            value = m >= 0 && static_cast< std::size_t >( cur[ 0 ] + m ) <= _bound;
            break;
        }
        case kind::diamond_ebar:
            for ( std::size_t i = 3; i + 1 < cur.size() && !value; i += 2 )
                value = truth( nd.lhs, static_cast< type_id >( cur[ i ] ) );
            break;
    }
    _tables[ n ].truth[ t ] = value ? 1 : 0;
    return value;
}

std::optional< track_automaton::type_id > track_automaton::extend( type_id t, state_id w )
{
    return step( _root, t, w );
}

// Breadth-first over types of node n from every one-state start, keeping the
// first (shortest) length at which each type is reached.
const std::vector< std::pair< track_automaton::type_id, std::int32_t > >& track_automaton::reachable( std::uint32_t n )
{
    if ( _reachable[ n ] )
        return *_reachable[ n ];
    std::vector< std::pair< type_id, std::int32_t > > out;
    std::unordered_map< type_id, std::size_t > seen;
    for ( state_id v = 0; v < _k.num_states(); ++v )
    {
        auto t = init( n, v );
        if ( seen.emplace( t, out.size() ).second )
            out.emplace_back( t, 1 );
    }
    for ( std::size_t i = 0; i < out.size(); ++i )
    {
        auto [ t, len ] = out[ i ];
        if ( static_cast< std::size_t >( len ) >= _bound )
            continue;
        auto last = static_cast< state_id >( _tables[ n ].records[ t ][ 2 ] );
        for ( auto w : _k.successors( last ) )
            if ( auto s = step( n, t, w ); s && seen.emplace( *s, out.size() ).second )
                out.emplace_back( *s, len + 1 );
    }
    _reachable[ n ] = std::move( out );
    return *_reachable[ n ];
}

const std::vector< bool >& track_automaton::exists_from( std::uint32_t n )
{
    if ( !_exists_from[ n ] )
    {
        std::vector< bool > out( _k.num_states() );
        for ( auto [ t, len ] : reachable( n ) )
            if ( len >= 2 && truth( n, t ) )
                out[ static_cast< std::size_t >( _tables[ n ].records[ t ][ 1 ] ) ] = true;
        _exists_from[ n ] = std::move( out );
    }
    return *_exists_from[ n ];
}

const std::vector< bool >& track_automaton::exists_to( std::uint32_t n )
{
    if ( !_exists_to[ n ] )
    {
        std::vector< bool > out( _k.num_states() );
        for ( auto [ t, len ] : reachable( n ) )
            if ( len >= 2 && truth( n, t ) )
                out[ static_cast< std::size_t >( _tables[ n ].records[ t ][ 2 ] ) ] = true;
        _exists_to[ n ] = std::move( out );
    }
    return *_exists_to[ n ];
}

// Flattened (operand type, length) pairs for every track of length >= 2 and
// <= bound ending in v; these are the backward extensions of the one-state
// sequence v.
const track_automaton::record& track_automaton::backward_init( std::uint32_t n, state_id v )
{
    if ( !_backward_init[ n ] )
    {
        auto child = _nodes[ n ].lhs;
        std::vector< std::map< std::int32_t, std::int32_t > > by_last( _k.num_states() );
        for ( auto [ t, len ] : reachable( child ) )
            if ( len >= 2 )
            {
                auto last = static_cast< std::size_t >( _tables[ child ].records[ t ][ 2 ] );
                auto [ it, fresh ] = by_last[ last ].emplace( static_cast< std::int32_t >( t ), len );
                if ( !fresh )
                    it->second = std::min( it->second, len );
            }
        std::vector< record > out( _k.num_states() );
        for ( std::size_t s = 0; s < out.size(); ++s )
            for ( auto [ id, len ] : by_last[ s ] )
            {
                out[ s ].push_back( id );
                out[ s ].push_back( len );
            }
        _backward_init[ n ] = std::move( out );
    }
    return ( *_backward_init[ n ] )[ v ];
}

// Fewest states to append to a sequence of type t so that node n becomes
// true; -1 if impossible within the type space.
std::int32_t track_automaton::min_extension( std::uint32_t n, type_id t )
{
    if ( auto cached = _tables[ n ].min_extension[ t ]; cached != -2 )
        return cached;
    std::int32_t result = -1;
    std::unordered_map< type_id, std::int32_t > dist{ { t, 0 } };
    std::deque< type_id > queue{ t };
    while ( !queue.empty() && result < 0 )
    {
        auto u = queue.front();
        queue.pop_front();
        auto d = dist[ u ];
        auto last = static_cast< state_id >( _tables[ n ].records[ u ][ 2 ] );
        for ( auto w : _k.successors( last ) )
        {
            auto s = step( n, u, w );
            if ( !s )
                continue;
            if ( truth( n, *s ) )
            {
                result = d + 1;
                break;
            }
            if ( dist.contains( *s ) )
                continue;
            dist.emplace( *s, d + 1 );
            queue.push_back( *s );
        }
    }
    _tables[ n ].min_extension[ t ] = result;
    return result;
}

namespace
{

void check_bound( std::size_t bound )
{
    if ( bound < 2 )
        throw bound_too_small( "bound must be at least 2" );
}

} // namespace

bool eval_bounded( const kripke_structure& k, const track& rho, const formula& phi, std::size_t bound )
{
    check_bound( bound );
    if ( rho.size() > bound )
        throw bound_too_small( "track of length " + std::to_string( rho.size() ) + " exceeds bound " +
                               std::to_string( bound ) );
    if ( rho.size() < 2 )
        throw invalid_track( "tracks have at least two states" );
    track_automaton a{ k, phi, bound };
    auto t = a.initial( rho[ 0 ] );
    for ( std::size_t i = 1; i < rho.size(); ++i )
    {
        auto next = a.extend( t, rho[ i ] );
        if ( !next )
            throw invalid_track( "not a track of the structure: " + to_string( k, rho ) );
        t = *next;
    }
    return a.holds( t );
}

namespace
{

track rebuild( const std::vector< std::pair< state_id, std::int64_t > >& nodes, std::size_t i )
{
    std::vector< state_id > seq;
    for ( auto j = static_cast< std::int64_t >( i ); j >= 0; j = nodes[ static_cast< std::size_t >( j ) ].second )
        seq.push_back( nodes[ static_cast< std::size_t >( j ) ].first );
    std::reverse( seq.begin(), seq.end() );
    return track::unchecked( std::move( seq ) );
}

} // namespace

bounded_verdict model_check_bounded( const kripke_structure& k, const formula& phi, std::size_t bound )
{
    check_bound( bound );
    track_automaton a{ k, phi, bound };
    bounded_verdict out;
    out.bound = bound;

    // (state appended, parent) per explored type, with its length.
    std::vector< std::pair< state_id, std::int64_t > > nodes;
    std::vector< std::size_t > lengths;
    std::vector< track_automaton::type_id > types;
    std::unordered_map< track_automaton::type_id, std::size_t > seen;

    auto start = a.initial( k.init() );
    seen.emplace( start, 0 );
    nodes.emplace_back( k.init(), -1 );
    lengths.push_back( 1 );
    types.push_back( start );
    for ( std::size_t i = 0; i < nodes.size(); ++i )
    {
        if ( lengths[ i ] >= 2 && !a.holds( types[ i ] ) )
        {
            out.value = false;
            out.counterexample = rebuild( nodes, i );
            return out;
        }
        if ( lengths[ i ] >= bound )
            continue;
        for ( auto w : k.successors( a.last( types[ i ] ) ) )
        {
            auto s = a.extend( types[ i ], w );
            if ( !s || !seen.emplace( *s, nodes.size() ).second )
                continue;
            nodes.emplace_back( w, static_cast< std::int64_t >( i ) );
            lengths.push_back( lengths[ i ] + 1 );
            types.push_back( *s );
        }
    }
    return out;
}

std::optional< track > exists_track_bounded( const kripke_structure& k, const formula& phi,
                                             const descriptor_element& d, std::size_t bound )
{
    check_bound( bound );
    track_automaton a{ k, phi, bound };

    struct key_hash
    {
        std::size_t operator()( const std::pair< track_automaton::type_id, state_set >& x ) const
        {
            return x.second.hash() * 31 + x.first;
        }
    };

    std::vector< std::pair< state_id, std::int64_t > > nodes;
    std::vector< std::size_t > lengths;
    std::vector< std::pair< track_automaton::type_id, state_set > > keys;
    std::unordered_map< std::pair< track_automaton::type_id, state_set >, std::size_t, key_hash > seen;

    auto push = [ & ]( track_automaton::type_id t, state_set interior, state_id w, std::int64_t parent,
                       std::size_t len ) {
        auto key = std::pair{ t, std::move( interior ) };
        if ( !seen.emplace( key, nodes.size() ).second )
            return;
        nodes.emplace_back( w, parent );
        lengths.push_back( len );
        keys.push_back( std::move( key ) );
    };

    push( a.initial( d.v_in ), k.empty_states(), d.v_in, -1, 1 );
    for ( std::size_t i = 0; i < nodes.size(); ++i )
    {
        auto [ t, interior ] = keys[ i ];
        auto last = nodes[ i ].first;
        if ( lengths[ i ] >= 2 && last == d.v_fin && interior == d.interior && a.holds( t ) )
            return rebuild( nodes, i );
        if ( lengths[ i ] >= bound )
            continue;
        auto next_interior = interior;
        if ( lengths[ i ] >= 2 )
            next_interior.insert( last );
        if ( !next_interior.is_subset_of( d.interior ) )
            continue;
        for ( auto w : k.successors( last ) )
            if ( auto s = a.extend( t, w ) )
                push( *s, next_interior, w, static_cast< std::int64_t >( i ), lengths[ i ] + 1 );
    }
    return std::nullopt;
}

std::size_t default_bound( const kripke_structure& k, const formula& phi )
{
    auto w = k.num_states();
    return ( modal_node_count( desugar( phi ) ) + 1 ) * ( 2 + w * w );
}

} // namespace hsmc
