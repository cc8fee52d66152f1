#include "hsmc/descriptor_checker.hpp"
#include "hsmc/error.hpp"

namespace hsmc
{

namespace
{

const descriptor_index& require_fragment( const descriptor_index& index, const formula& psi )
{
    if ( !classify( psi ).exists_aabe )
        throw not_in_fragment( "formula is not in ExistsAABE: " + to_string( psi ) );
    return index;
}

track append( const track& t, state_id w )
{
    std::vector< state_id > seq( t.states().begin(), t.states().end() );
    seq.push_back( w );
    return track::unchecked( std::move( seq ) );
}

track prepend( state_id v, const track& t )
{
    std::vector< state_id > seq{ v };
    seq.insert( seq.end(), t.states().begin(), t.states().end() );
    return track::unchecked( std::move( seq ) );
}

track join( const track& a, const track& b )
{
    std::vector< state_id > seq( a.states().begin(), a.states().end() );
    seq.insert( seq.end(), b.states().begin(), b.states().end() );
    return track::unchecked( std::move( seq ) );
}

state_set with( state_set s, state_id v )
{
    s.insert( v );
    return s;
}

} // namespace

exists_checker::exists_checker( const kripke_structure& k, const formula& psi, bool memoize )
        : _owned{ std::make_unique< descriptor_index >( k ) },
          _index{ &require_fragment( *_owned, psi ) },
          _k{ k },
          _flat{ psi, k },
          _memoize{ memoize },
          _memo( _flat.size() )
{}

exists_checker::exists_checker( const descriptor_index& index, const formula& psi, bool memoize )
        : _index{ &require_fragment( index, psi ) },
          _k{ index.structure() },
          _flat{ psi, index.structure() },
          _memoize{ memoize },
          _memo( _flat.size() )
{}

exists_result exists_checker::check( const descriptor_element& d )
{
    if ( !_index->is_witnessed( d ) )
        throw not_witnessed( "descriptor element " + to_string( _k, d ) + " is not witnessed" );
    auto w = eval( _flat.root(), d );
    return { w.has_value(), std::move( w ) };
}

std::optional< track > exists_checker::eval( std::uint32_t node, const descriptor_element& d )
{
    if ( !_memoize )
        return eval_uncached( node, d );
    auto& table = _memo[ node ];
    if ( auto it = table.find( d ); it != table.end() )
    {
        ++_memo_hits;
        return it->second;
    }
    auto r = eval_uncached( node, d );
    _memo[ node ].emplace( d, r );
    return r;
}

std::optional< track > exists_checker::eval_uncached( std::uint32_t node, const descriptor_element& d )
{
    ++_evaluations;
    const auto& n = _flat[ node ];
    if ( n.propositional )
    {
        auto label = _k.label( d.v_in ) & _k.label( d.v_fin );
        for ( auto s : d.interior.members() )
            label &= _k.label( static_cast< state_id >( s ) );
        if ( _flat.eval( node, label ) )
            return _index->shortest_witness( d );
        return std::nullopt;
    }

    switch ( n.kind )
    {
        case op::disjunction:
            if ( auto l = eval( n.lhs, d ) )
                return l;
            return eval( n.rhs, d );
        case op::diamond:
            switch ( n.mod )
            {
                case modality::A:
                    for ( const auto& next : _index->witnessed( d.v_fin, direction::forward ) )
                        if ( eval( n.lhs, next ) )
                        {
                            ++_adjacent;
                            return _index->shortest_witness( d );
                        }
                    return std::nullopt;
                case modality::A_bar:
                    for ( const auto& prev : _index->witnessed( d.v_in, direction::backward ) )
                        if ( eval( n.lhs, prev ) )
                        {
                            ++_adjacent;
                            return _index->shortest_witness( d );
                        }
                    return std::nullopt;
                case modality::B: return eval_started_by( n.lhs, d );
                case modality::E: return eval_finished_by( n.lhs, d );
                default: break;
            }
            break;
        default: break;
    }
    throw not_in_fragment( "subformula outside ExistsAABE" );
}

// <B>: a proper prefix of some track for d satisfies the child.
std::optional< track > exists_checker::eval_started_by( std::uint32_t child, const descriptor_element& d )
{
    const auto& prefixes = _index->witnessed( d.v_in, direction::forward );

    // (i) the track is prefix . v_fin
    for ( const auto& p : prefixes )
        if ( _k.has_edge( p.v_fin, d.v_fin ) && with( p.interior, p.v_fin ) == d.interior )
            if ( auto r = eval( child, p ) )
                return append( *r, d.v_fin );

    // (ii) the track is prefix . rest with |rest| >= 2
    const auto& rests = _index->witnessed( d.v_fin, direction::backward );
    for ( const auto& p : prefixes )
    {
        if ( !with( p.interior, p.v_fin ).is_subset_of( d.interior ) )
            continue;
        for ( const auto& rest : rests )
        {
            if ( !_k.has_edge( p.v_fin, rest.v_in ) || concat_desc( p, rest ) != d )
                continue;
            if ( auto r = eval( child, p ) )
                return join( *r, _index->shortest_witness( rest ) );
            break;
        }
    }
    return std::nullopt;
}

// <E>: mirror of <B> over suffixes.
std::optional< track > exists_checker::eval_finished_by( std::uint32_t child, const descriptor_element& d )
{
    const auto& suffixes = _index->witnessed( d.v_fin, direction::backward );

    for ( const auto& s : suffixes )
        if ( _k.has_edge( d.v_in, s.v_in ) && with( s.interior, s.v_in ) == d.interior )
            if ( auto r = eval( child, s ) )
                return prepend( d.v_in, *r );

    const auto& heads = _index->witnessed( d.v_in, direction::forward );
    for ( const auto& s : suffixes )
    {
        if ( !with( s.interior, s.v_in ).is_subset_of( d.interior ) )
            continue;
        for ( const auto& head : heads )
        {
            if ( !_k.has_edge( head.v_fin, s.v_in ) || concat_desc( head, s ) != d )
                continue;
            if ( auto r = eval( child, s ) )
                return join( _index->shortest_witness( head ), *r );
            break;
        }
    }
    return std::nullopt;
}

exists_result check_exists( const kripke_structure& k, const formula& psi, const descriptor_element& d, bool memoize )
{
    exists_checker checker{ k, desugar( psi ), memoize };
    return checker.check( d );
}

verdict model_check_univ( const kripke_structure& k, const formula& psi, bool memoize )
{
    auto primitive = desugar( psi );
    auto negated = negate_to_exists( primitive );

    descriptor_index index{ k };
    exists_checker checker{ index, negated, memoize };
    verdict out;
    out.engine = "descriptor";
    std::uint64_t initial = 0;
    for ( const auto& d : index.witnessed( k.init(), direction::forward ) )
    {
        ++initial;
        auto r = checker.check( d );
        if ( r.value )
        {
            out.result = outcome::fails;
            out.counterexample = std::move( r.witness );
            break;
        }
    }
    out.stats[ "initial_descriptors" ] = initial;
    out.stats[ "descriptors_explored" ] = checker.evaluations();
    out.stats[ "memo_hits" ] = checker.memo_hits();
    out.stats[ "adjacent_witnesses" ] = checker.adjacent_witnesses();
    return out;
}

} // namespace hsmc
