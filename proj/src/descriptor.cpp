#include "hsmc/descriptor.hpp"
#include "hsmc/error.hpp"

#include <algorithm>
#include <deque>

namespace hsmc
{

bool canonical_less( const descriptor_element& a, const descriptor_element& b )
{
    if ( a.v_in != b.v_in )
        return a.v_in < b.v_in;
    if ( a.interior != b.interior )
        return canonical_less( a.interior, b.interior );
    return a.v_fin < b.v_fin;
}

std::string to_string( const kripke_structure& k, const descriptor_element& d )
{
    std::string out = "(" + k.state_name( d.v_in ) + ", {";
    bool first = true;
    for ( auto s : d.interior.members() )
    {
        if ( !first )
            out += ", ";
        first = false;
        out += k.state_name( static_cast< state_id >( s ) );
    }
    return out + "}, " + k.state_name( d.v_fin ) + ")";
}

descriptor_element descriptor_of( const kripke_structure& k, const track& t )
{
    return { t.fst(), t.intstates( k.num_states() ), t.lst() };
}

descriptor_element concat_desc( const descriptor_element& a, const descriptor_element& b )
{
    auto interior = a.interior | b.interior;
    interior.insert( a.v_fin );
    interior.insert( b.v_in );
    return { a.v_in, std::move( interior ), b.v_fin };
}

descriptor_search::descriptor_search( const kripke_structure& k, state_id anchor, direction dir )
        : _anchor{ anchor }, _dir{ dir }
{
    const auto n = k.num_states();
    _nodes.push_back( { anchor, state_set( n ), 1, -1 } );

    // The anchor node stands for the one-state prefix and is not a descriptor;
    // it is kept out of the index so that a revisit of (anchor, {}) by a real
    // track is still recorded.
    std::deque< std::size_t > queue{ 0 };
    while ( !queue.empty() )
    {
        auto i = queue.front();
        queue.pop_front();
        const auto cur = _nodes[ i ];
        auto next_states = dir == direction::forward ? k.successors( cur.endpoint ) : k.predecessors( cur.endpoint );
        for ( auto w : next_states )
        {
            state_set interior = cur.interior;
            if ( i != 0 )
                interior.insert( cur.endpoint );
            auto key = std::pair{ w, interior };
            if ( _index.contains( key ) )
                continue;
            _index.emplace( std::move( key ), _nodes.size() );
            _nodes.push_back( { w, std::move( interior ), cur.length + 1, static_cast< std::int64_t >( i ) } );
            queue.push_back( _nodes.size() - 1 );
        }
    }

    for ( std::size_t i = 1; i < _nodes.size(); ++i )
    {
        const auto& nd = _nodes[ i ];
        if ( dir == direction::forward )
            _descriptors.push_back( { anchor, nd.interior, nd.endpoint } );
        else
            _descriptors.push_back( { nd.endpoint, nd.interior, anchor } );
    }
    std::sort( _descriptors.begin(), _descriptors.end(),
               []( const auto& a, const auto& b ) { return canonical_less( a, b ); } );
}

std::optional< std::size_t > descriptor_search::find( state_id endpoint, const state_set& interior ) const
{
    auto it = _index.find( std::pair{ endpoint, interior } );
    if ( it == _index.end() )
        return std::nullopt;
    return it->second;
}

track descriptor_search::witness( std::size_t i ) const
{
    assert( i != 0 && i < _nodes.size() );
    std::vector< state_id > seq;
    for ( auto j = static_cast< std::int64_t >( i ); j >= 0; j = _nodes[ static_cast< std::size_t >( j ) ].parent )
        seq.push_back( _nodes[ static_cast< std::size_t >( j ) ].endpoint );
    if ( _dir == direction::forward )
        std::reverse( seq.begin(), seq.end() );
    return track::unchecked( std::move( seq ) );
}

descriptor_index::descriptor_index( const kripke_structure& k )
        : _k{ &k }, _forward( k.num_states() ), _backward( k.num_states() )
{}

const descriptor_search& descriptor_index::search( state_id v, direction dir ) const
{
    std::lock_guard lock{ _mutex };
    auto& slot = dir == direction::forward ? _forward[ v ] : _backward[ v ];
    if ( !slot )
        slot = std::make_unique< descriptor_search >( *_k, v, dir );
    return *slot;
}

bool descriptor_index::is_witnessed( const descriptor_element& d ) const
{
    if ( d.v_in >= _k->num_states() || d.v_fin >= _k->num_states() || d.interior.universe() != _k->num_states() )
        return false;
    return search( d.v_in, direction::forward ).find( d.v_fin, d.interior ).has_value();
}

track descriptor_index::shortest_witness( const descriptor_element& d ) const
{
    if ( !is_witnessed( d ) )
        throw not_witnessed( "descriptor element " + to_string( *_k, d ) + " is not witnessed" );
    const auto& s = search( d.v_in, direction::forward );
    return s.witness( *s.find( d.v_fin, d.interior ) );
}

std::vector< descriptor_element > witnessed_descriptors( const kripke_structure& k, state_id v, direction dir )
{
    return descriptor_search( k, v, dir ).descriptors();
}

track shortest_witness( const kripke_structure& k, const descriptor_element& d )
{
    return descriptor_index( k ).shortest_witness( d );
}

bool is_witnessed( const kripke_structure& k, const descriptor_element& d )
{
    return descriptor_index( k ).is_witnessed( d );
}

} // namespace hsmc
