#pragma once

#include "formula.hpp"
#include "logic.hpp"
#include "model.hpp"
#include "verdict.hpp"

#include <unordered_map>
#include <vector>

namespace hsmc
{

// (track label restricted to the formula's letters, last state).
struct track_class
{
    prop_set labels;
    state_id last;

    friend bool operator==( const track_class&, const track_class& ) = default;
};

[[nodiscard]] track_class class_of( const kripke_structure& k, const formula& psi, const track& rho );

// Truth table of every subformula of an AB-bar formula over the realized
// track classes of a structure.
class class_table
{
public:
    // psi is desugared first; throws not_in_fragment if it is not AB-bar.
    class_table( const kripke_structure& k, const formula& psi );

    [[nodiscard]] std::size_t num_classes() const { return _classes.size(); }
    [[nodiscard]] const track_class& at( std::size_t c ) const { return _classes[ c ]; }
    [[nodiscard]] std::optional< std::size_t > find( const track_class& c ) const;
    [[nodiscard]] const prop_set& letters() const { return _letters; }

    // Class ids of the tracks v w for (v, w) an edge.
    [[nodiscard]] const std::vector< std::size_t >& seeds( state_id v ) const { return _seeds[ v ]; }
    [[nodiscard]] const std::vector< std::size_t >& steps( std::size_t c ) const { return _succ[ c ]; }

    [[nodiscard]] const flat_formula& subformulas() const { return _flat; }
    [[nodiscard]] bool value( std::uint32_t node, std::size_t c ) const { return _values[ node ][ c ]; }
    [[nodiscard]] bool value( std::size_t c ) const { return _values[ _flat.root() ][ c ]; }

    // Truth of the formula on rho via its class.
    [[nodiscard]] bool holds_on( const track& rho ) const;

private:
    const kripke_structure& _k;
    formula _psi;
    flat_formula _flat;
    prop_set _letters;
    std::vector< track_class > _classes;
    std::unordered_map< track_class, std::size_t, std::function< std::size_t( const track_class& ) > > _ids;
    std::vector< std::vector< std::size_t > > _seeds;
    std::vector< std::vector< std::size_t > > _succ;
    std::vector< std::vector< std::size_t > > _pred;
    std::vector< std::vector< bool > > _values;

    std::size_t intern( track_class c );
    [[nodiscard]] std::vector< bool > can_reach( const std::vector< bool >& target ) const;
    void evaluate();
};

// Holds iff psi is true on every initial track. A counterexample is a
// shortest initial track whose class falsifies psi. Throws not_in_fragment.
[[nodiscard]] verdict check_ab( const kripke_structure& k, const formula& psi );

} // namespace hsmc
