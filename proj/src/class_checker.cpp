#include "hsmc/class_checker.hpp"
#include "hsmc/error.hpp"

#include <deque>

namespace hsmc
{

namespace
{

prop_set letter_mask( const kripke_structure& k, const formula& psi )
{
    auto mask = k.empty_props();
    for ( const auto& name : prop_letters( psi ) )
        if ( auto p = k.find_prop( name ) )
            mask.insert( *p );
    return mask;
}

std::size_t hash_class( const track_class& c ) { return c.labels.hash() * 31 + c.last; }

formula require_ab( const formula& psi )
{
    auto primitive = desugar( psi );
    if ( !classify( primitive ).ab_bar )
        throw not_in_fragment( "formula is not in AB-bar: " + to_string( psi ) );
    return primitive;
}

} // namespace

track_class class_of( const kripke_structure& k, const formula& psi, const track& rho )
{
    return { track_label( k, rho ) & letter_mask( k, psi ), rho.lst() };
}

class_table::class_table( const kripke_structure& k, const formula& psi )
        : _k{ k },
          _psi{ require_ab( psi ) },
          _flat{ _psi, k },
          _letters{ letter_mask( k, _psi ) },
          _ids{ 64, hash_class },
          _seeds( k.num_states() )
{
    std::deque< std::size_t > queue;
    for ( state_id v = 0; v < k.num_states(); ++v )
        for ( auto w : k.successors( v ) )
        {
            auto before = _classes.size();
            auto c = intern( { k.label( v ) & k.label( w ) & _letters, w } );
            _seeds[ v ].push_back( c );
            if ( _classes.size() != before )
                queue.push_back( c );
        }

    while ( !queue.empty() )
    {
        auto c = queue.front();
        queue.pop_front();
        auto cur = _classes[ c ];
        std::vector< std::size_t > next;
        for ( auto w : k.successors( cur.last ) )
        {
            auto before = _classes.size();
            auto d = intern( { cur.labels & k.label( w ), w } );
            next.push_back( d );
            if ( _classes.size() != before )
                queue.push_back( d );
        }
        _succ[ c ] = std::move( next );
    }

    for ( std::size_t c = 0; c < _succ.size(); ++c )
        for ( auto d : _succ[ c ] )
            _pred[ d ].push_back( c );

    assert( _classes.size() <= ( std::size_t{ 1 } << _letters.count() ) * k.num_states() );
    evaluate();
}

std::size_t class_table::intern( track_class c )
{
    if ( auto it = _ids.find( c ); it != _ids.end() )
        return it->second;
    auto id = _classes.size();
    _ids.emplace( c, id );
    _classes.push_back( std::move( c ) );
    _succ.emplace_back();
    _pred.emplace_back();
    return id;
}

std::optional< std::size_t > class_table::find( const track_class& c ) const
{
    if ( auto it = _ids.find( c ); it != _ids.end() )
        return it->second;
    return std::nullopt;
}

// Classes from which some target class is reachable in zero or more steps.
std::vector< bool > class_table::can_reach( const std::vector< bool >& target ) const
{
    std::vector< bool > out = target;
    std::deque< std::size_t > queue;
    for ( std::size_t c = 0; c < target.size(); ++c )
        if ( target[ c ] )
            queue.push_back( c );
    while ( !queue.empty() )
    {
        auto c = queue.front();
        queue.pop_front();
        for ( auto p : _pred[ c ] )
            if ( !out[ p ] )
            {
                out[ p ] = true;
                queue.push_back( p );
            }
    }
    return out;
}

void class_table::evaluate()
{
    const auto n = _classes.size();
    _values.assign( _flat.size(), std::vector< bool >( n ) );
    for ( std::uint32_t i = 0; i < _flat.size(); ++i )
    {
        const auto& node = _flat[ i ];
        auto& out = _values[ i ];
        switch ( node.kind )
        {
            case op::prop:
                for ( std::size_t c = 0; c < n; ++c )
                    out[ c ] = node.prop >= 0 && _classes[ c ].labels.contains( static_cast< std::size_t >( node.prop ) );
                break;
            case op::top: out.assign( n, true ); break;
            case op::bottom: break;
            case op::negation:
                for ( std::size_t c = 0; c < n; ++c )
                    out[ c ] = !_values[ node.lhs ][ c ];
                break;
            case op::conjunction:
            case op::disjunction:
            case op::implication:
                for ( std::size_t c = 0; c < n; ++c )
                {
                    bool l = _values[ node.lhs ][ c ], r = _values[ node.rhs ][ c ];
                    out[ c ] = node.kind == op::conjunction   ? l && r
                               : node.kind == op::disjunction ? l || r
                                                              : !l || r;
                }
                break;
            case op::diamond:
            case op::box: {
                // [X]f is evaluated as !<X>!f.
                bool box = node.kind == op::box;
                auto target = _values[ node.lhs ];
                if ( box )
                    target.flip();
                auto reach = can_reach( target );
                for ( std::size_t c = 0; c < n; ++c )
                {
                    const auto& next = node.mod == modality::A ? _seeds[ _classes[ c ].last ] : _succ[ c ];
                    bool any = false;
                    for ( auto d : next )
                        any = any || reach[ d ];
                    out[ c ] = box ? !any : any;
                }
                break;
            }
        }
    }
}

bool class_table::holds_on( const track& rho ) const
{
    auto c = find( { track_label( _k, rho ) & _letters, rho.lst() } );
    assert( c.has_value() );
    return value( *c );
}

verdict check_ab( const kripke_structure& k, const formula& psi )
{
    class_table table{ k, psi };
    verdict out;
    out.engine = "class";
    out.stats[ "classes" ] = table.num_classes();
    out.stats[ "letters" ] = table.letters().count();

    // Breadth-first over initial-track classes; parents give shortest tracks.
    std::vector< std::int64_t > parent( table.num_classes(), -2 );
    std::deque< std::size_t > queue;
    for ( auto c : table.seeds( k.init() ) )
        if ( parent[ c ] == -2 )
        {
            parent[ c ] = -1;
            queue.push_back( c );
        }
    std::uint64_t visited = 0;
    while ( !queue.empty() )
    {
        auto c = queue.front();
        queue.pop_front();
        ++visited;
        if ( !table.value( c ) )
        {
            std::vector< state_id > seq;
            for ( auto j = static_cast< std::int64_t >( c ); j >= 0; j = parent[ static_cast< std::size_t >( j ) ] )
                seq.push_back( table.at( static_cast< std::size_t >( j ) ).last );
            seq.push_back( k.init() );
            std::reverse( seq.begin(), seq.end() );
            out.result = outcome::fails;
            out.counterexample = track{ k, std::move( seq ) };
            break;
        }
        for ( auto d : table.steps( c ) )
            if ( parent[ d ] == -2 )
            {
                parent[ d ] = static_cast< std::int64_t >( c );
                queue.push_back( d );
            }
    }
    out.stats[ "initial_classes_visited" ] = visited;
    return out;
}

} // namespace hsmc
