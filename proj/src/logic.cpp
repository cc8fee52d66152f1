#include "hsmc/logic.hpp"
#include "hsmc/error.hpp"

namespace hsmc
{

namespace
{

// Primitive modality pair that a sugar modality unfolds into (outer, inner).
std::pair< modality, modality > unfold( modality m )
{
    switch ( m )
    {
        case modality::L: return { modality::A, modality::A };
        case modality::D: return { modality::B, modality::E };
        case modality::O: return { modality::E, modality::B_bar };
        case modality::L_bar: return { modality::A_bar, modality::A_bar };
        case modality::D_bar: return { modality::B_bar, modality::E_bar };
        case modality::O_bar: return { modality::B, modality::E_bar };
        default: break;
    }
    assert( false && "primitive modality has no unfolding" );
    return { m, m };
}

} // namespace

formula desugar( const formula& f )
{
    switch ( f.kind() )
    {
        case op::prop:
        case op::top:
        case op::bottom: return f;
        case op::negation: {
            auto a = desugar( f.operand() );
            return a.same_node( f.operand() ) ? f : formula::negation( std::move( a ) );
        }
        case op::conjunction:
        case op::disjunction:
        case op::implication: {
            auto l = desugar( f.lhs() );
            auto r = desugar( f.rhs() );
            if ( l.same_node( f.lhs() ) && r.same_node( f.rhs() ) )
                return f;
            if ( f.kind() == op::conjunction )
                return formula::conjunction( std::move( l ), std::move( r ) );
            if ( f.kind() == op::disjunction )
                return formula::disjunction( std::move( l ), std::move( r ) );
            return formula::implication( std::move( l ), std::move( r ) );
        }
        case op::diamond:
        case op::box: {
            auto body = desugar( f.operand() );
            auto wrap = f.kind() == op::diamond ? &formula::diamond : &formula::box;
            if ( is_primitive( f.mod() ) )
                return body.same_node( f.operand() ) ? f : wrap( f.mod(), std::move( body ) );
            auto [ outer, inner ] = unfold( f.mod() );
            return wrap( outer, wrap( inner, std::move( body ) ) );
        }
    }
    return f;
}

namespace
{

void collect_letters( const formula& f, std::set< std::string >& out )
{
    switch ( f.kind() )
    {
        case op::prop: out.insert( f.name() ); return;
        case op::top:
        case op::bottom: return;
        case op::negation:
        case op::diamond:
        case op::box: collect_letters( f.operand(), out ); return;
        default:
            collect_letters( f.lhs(), out );
            collect_letters( f.rhs(), out );
    }
}

} // namespace

std::set< std::string > prop_letters( const formula& f )
{
    std::set< std::string > out;
    collect_letters( f, out );
    return out;
}

std::size_t modal_node_count( const formula& f )
{
    switch ( f.kind() )
    {
        case op::prop:
        case op::top:
        case op::bottom: return 0;
        case op::negation: return modal_node_count( f.operand() );
        case op::diamond:
        case op::box: return 1 + modal_node_count( f.operand() );
        default: return modal_node_count( f.lhs() ) + modal_node_count( f.rhs() );
    }
}

bool is_propositional( const formula& f )
{
    switch ( f.kind() )
    {
        case op::prop:
        case op::top:
        case op::bottom: return true;
        case op::negation: return is_propositional( f.operand() );
        case op::diamond:
        case op::box: return false;
        default: return is_propositional( f.lhs() ) && is_propositional( f.rhs() );
    }
}

std::string fragment::flags() const
{
    std::string out;
    auto add = [ & ]( bool on, const char* name ) {
        if ( !on )
            return;
        if ( !out.empty() )
            out += ' ';
        out += name;
    };
    add( prop, "Prop" );
    add( exists_aabe, "ExistsAABE" );
    add( forall_aabe, "ForallAABE" );
    add( ab_bar, "ABbar" );
    return out;
}

std::string fragment::modality_list() const
{
    std::string out;
    for ( std::size_t i = 0; i < modalities.size(); ++i )
        if ( modalities[ i ] )
        {
            if ( !out.empty() )
                out += ' ';
            out += to_string( static_cast< modality >( i ) );
        }
    return out;
}

namespace
{

bool in_universal( const formula& f )
{
    if ( is_propositional( f ) )
        return true;
    switch ( f.kind() )
    {
        case op::conjunction: return in_universal( f.lhs() ) && in_universal( f.rhs() );
        case op::box: {
            auto m = f.mod();
            return ( m == modality::A || m == modality::B || m == modality::E || m == modality::A_bar ) &&
                   in_universal( f.operand() );
        }
        default: return false;
    }
}

bool in_existential( const formula& f )
{
    if ( is_propositional( f ) )
        return true;
    switch ( f.kind() )
    {
        case op::disjunction: return in_existential( f.lhs() ) && in_existential( f.rhs() );
        case op::diamond: {
            auto m = f.mod();
            return ( m == modality::A || m == modality::B || m == modality::E || m == modality::A_bar ) &&
                   in_existential( f.operand() );
        }
        default: return false;
    }
}

bool only_a_bbar( const formula& f, bool& sugar )
{
    switch ( f.kind() )
    {
        case op::prop:
        case op::top:
        case op::bottom: return true;
        case op::negation: return only_a_bbar( f.operand(), sugar );
        case op::diamond:
        case op::box:
            if ( !is_primitive( f.mod() ) )
                sugar = true;
            return ( f.mod() == modality::A || f.mod() == modality::B_bar ) && only_a_bbar( f.operand(), sugar );
        default: return only_a_bbar( f.lhs(), sugar ) && only_a_bbar( f.rhs(), sugar );
    }
}

void collect_modalities( const formula& f, std::array< bool, 6 >& used, bool& sugar )
{
    switch ( f.kind() )
    {
        case op::prop:
        case op::top:
        case op::bottom: return;
        case op::negation: collect_modalities( f.operand(), used, sugar ); return;
        case op::diamond:
        case op::box:
            if ( is_primitive( f.mod() ) )
                used[ static_cast< std::size_t >( f.mod() ) ] = true;
            else
                sugar = true;
            collect_modalities( f.operand(), used, sugar );
            return;
        default:
            collect_modalities( f.lhs(), used, sugar );
            collect_modalities( f.rhs(), used, sugar );
    }
}

} // namespace

fragment classify( const formula& f )
{
    fragment out;
    bool sugar = false;
    collect_modalities( f, out.modalities, sugar );
    out.prop = is_propositional( f );
    out.forall_aabe = in_universal( f );
    out.exists_aabe = in_existential( f );
    out.ab_bar = only_a_bbar( f, sugar ) && !sugar;
    return out;
}

namespace
{

// Negation normal form of f (positive) or !f (negative) for formulas whose
// negations sit above propositional or universal structure only.
formula push_negation( const formula& f, bool negate )
{
    switch ( f.kind() )
    {
        case op::prop: return negate ? formula::negation( f ) : f;
        case op::top: return negate ? formula::bottom() : f;
        case op::bottom: return negate ? formula::top() : f;
        case op::negation: return push_negation( f.operand(), !negate );
        case op::conjunction: {
            auto l = push_negation( f.lhs(), negate );
            auto r = push_negation( f.rhs(), negate );
            return negate ? formula::disjunction( std::move( l ), std::move( r ) )
                          : formula::conjunction( std::move( l ), std::move( r ) );
        }
        case op::disjunction: {
            auto l = push_negation( f.lhs(), negate );
            auto r = push_negation( f.rhs(), negate );
            return negate ? formula::conjunction( std::move( l ), std::move( r ) )
                          : formula::disjunction( std::move( l ), std::move( r ) );
        }
        case op::implication: {
            // a -> b  ==  !a | b
            auto l = push_negation( f.lhs(), !negate );
            auto r = push_negation( f.rhs(), negate );
            return negate ? formula::conjunction( std::move( l ), std::move( r ) )
                          : formula::disjunction( std::move( l ), std::move( r ) );
        }
        case op::box: {
            auto body = push_negation( f.operand(), negate );
            return negate ? formula::diamond( f.mod(), std::move( body ) ) : formula::box( f.mod(), std::move( body ) );
        }
        case op::diamond: {
            auto body = push_negation( f.operand(), negate );
            return negate ? formula::box( f.mod(), std::move( body ) ) : formula::diamond( f.mod(), std::move( body ) );
        }
    }
    return f;
}

} // namespace

formula negate_to_exists( const formula& psi )
{
    if ( !in_universal( psi ) )
        throw not_in_fragment( "formula is not in ForallAABE: " + to_string( psi ) );
    return push_negation( psi, true );
}

bool eval_propositional( const formula& beta, const prop_set& label, const kripke_structure& k )
{
    switch ( beta.kind() )
    {
        case op::prop: {
            auto p = k.find_prop( beta.name() );
            return p && label.contains( *p );
        }
        case op::top: return true;
        case op::bottom: return false;
        case op::negation: return !eval_propositional( beta.operand(), label, k );
        case op::conjunction:
            return eval_propositional( beta.lhs(), label, k ) && eval_propositional( beta.rhs(), label, k );
        case op::disjunction:
            return eval_propositional( beta.lhs(), label, k ) || eval_propositional( beta.rhs(), label, k );
        case op::implication:
            return !eval_propositional( beta.lhs(), label, k ) || eval_propositional( beta.rhs(), label, k );
        case op::diamond:
        case op::box: break;
    }
    throw not_propositional( "modal formula where a propositional one is required: " + to_string( beta ) );
}

bool val( const formula& beta, const descriptor_element& d, const kripke_structure& k )
{
    if ( !is_propositional( beta ) )
        throw not_propositional( "VAL needs a propositional formula: " + to_string( beta ) );
    auto label = k.label( d.v_in ) & k.label( d.v_fin );
    for ( auto s : d.interior.members() )
        label &= k.label( static_cast< state_id >( s ) );
    return eval_propositional( beta, label, k );
}

flat_formula::flat_formula( const formula& f, const kripke_structure& k )
{
    add( f, k );
}

std::uint32_t flat_formula::add( const formula& f, const kripke_structure& k )
{
    node n;
    n.kind = f.kind();
    switch ( f.kind() )
    {
        case op::prop:
            n.name = f.name();
            if ( auto p = k.find_prop( f.name() ) )
                n.prop = *p;
            n.propositional = true;
            break;
        case op::top:
        case op::bottom: n.propositional = true; break;
        case op::negation:
            n.lhs = add( f.operand(), k );
            n.propositional = _nodes[ n.lhs ].propositional;
            break;
        case op::diamond:
        case op::box:
            n.mod = f.mod();
            n.lhs = add( f.operand(), k );
            break;
        default:
            n.lhs = add( f.lhs(), k );
            n.rhs = add( f.rhs(), k );
            n.propositional = _nodes[ n.lhs ].propositional && _nodes[ n.rhs ].propositional;
    }
    _nodes.push_back( std::move( n ) );
    return static_cast< std::uint32_t >( _nodes.size() - 1 );
}

bool flat_formula::eval( std::uint32_t i, const prop_set& label ) const
{
    const auto& n = _nodes[ i ];
    switch ( n.kind )
    {
        case op::prop: return n.prop >= 0 && label.contains( static_cast< std::size_t >( n.prop ) );
        case op::top: return true;
        case op::bottom: return false;
        case op::negation: return !eval( n.lhs, label );
        case op::conjunction: return eval( n.lhs, label ) && eval( n.rhs, label );
        case op::disjunction: return eval( n.lhs, label ) || eval( n.rhs, label );
        case op::implication: return !eval( n.lhs, label ) || eval( n.rhs, label );
        default: break;
    }
    throw not_propositional( "modal node in propositional evaluation" );
}

} // namespace hsmc
