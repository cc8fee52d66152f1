#pragma once

#include "descriptor.hpp"
#include "formula.hpp"
#include "logic.hpp"
#include "model.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace hsmc
{

// Length-bounded HS satisfaction. Every quantified track (the evaluated one
// and each one introduced by a modality) has length at most `bound`.
//
// Tracks are processed left to right by a deterministic automaton whose
// states ("types") carry, for each subformula, exactly the information that
// decides its truth on the current track and on all its extensions:
//   letter     whether it holds on every state so far
//   <A>, <~A>  nothing beyond the last / first state
//   <B>        the operand type and whether some proper prefix satisfied it
//   <E>        operand types of all proper nonempty suffixes
//   <~B>       the operand type (extension distance is computed on demand)
//   <~E>       operand types of every backward extension, with its length
// Subformulas under <~B> or <~E> depend on the exact length, which is then
// part of the type; elsewhere the length saturates at 2.
class track_automaton
{
public:
    using type_id = std::uint32_t;

    // Sugar is desugared and boxes are rewritten as !<X>! internally.
    track_automaton( const kripke_structure& k, const formula& phi, std::size_t bound );

    [[nodiscard]] std::size_t bound() const { return _bound; }

    // Type of the one-state sequence v.
    [[nodiscard]] type_id initial( state_id v ) { return init( _root, v ); }

    // Type of rho . w; nullopt if (lst, w) is not an edge or the result is
    // longer than the bound.
    [[nodiscard]] std::optional< type_id > extend( type_id t, state_id w );

    // Truth of phi on a track of this type (length >= 2).
    [[nodiscard]] bool holds( type_id t ) { return truth( _root, t ); }

    [[nodiscard]] state_id last( type_id t ) const
    {
        return static_cast< state_id >( _tables[ _root ].records[ t ][ 2 ] );
    }
    [[nodiscard]] bool length_exact() const { return _sensitive[ _root ]; }

    [[nodiscard]] std::size_t num_types() const;

private:
    using record = std::vector< std::int32_t >; // [lenfield, fst, lst, payload...]

    struct record_hash
    {
        std::size_t operator()( const record& r ) const noexcept
        {
            std::size_t h = r.size();
            for ( auto x : r )
                h ^= std::hash< std::int32_t >{}( x ) + 0x9e3779b97f4a7c15ULL + ( h << 6 ) + ( h >> 2 );
            return h;
        }
    };

    struct table
    {
        std::vector< record > records;
        std::unordered_map< record, type_id, record_hash > ids;
        std::vector< std::int8_t > truth;          // -1 unknown
        std::vector< std::int32_t > min_extension; // -2 unknown, -1 none
    };

    enum class kind : std::uint8_t
    {
        letter,
        top,
        bottom,
        negation,
        conjunction,
        disjunction,
        implication,
        diamond_a,
        diamond_b,
        diamond_e,
        diamond_abar,
        diamond_bbar,
        diamond_ebar,
    };

    struct node
    {
        kind k;
        std::int64_t prop = -1;
        std::uint32_t lhs = 0;
        std::uint32_t rhs = 0;
    };

    const kripke_structure& _k;
    std::size_t _bound;
    std::vector< node > _nodes;
    std::vector< bool > _sensitive;
    std::vector< table > _tables;
    std::uint32_t _root = 0;

    // Per node: reachable operand types of all tracks of length <= bound with
    // their minimal length, and derived per-state tables.
    std::vector< std::optional< std::vector< std::pair< type_id, std::int32_t > > > > _reachable;
    std::vector< std::optional< std::vector< bool > > > _exists_from;
    std::vector< std::optional< std::vector< bool > > > _exists_to;
    std::vector< std::optional< std::vector< record > > > _backward_init;

    std::uint32_t add( const formula& f );
    type_id intern( std::uint32_t n, record r );

    type_id init( std::uint32_t n, state_id v );
    std::optional< type_id > step( std::uint32_t n, type_id t, state_id w );
    bool truth( std::uint32_t n, type_id t );

    std::int32_t length_of( std::uint32_t n, std::int32_t len ) const;
    const std::vector< std::pair< type_id, std::int32_t > >& reachable( std::uint32_t n );
    const std::vector< bool >& exists_from( std::uint32_t n );
    const std::vector< bool >& exists_to( std::uint32_t n );
    const record& backward_init( std::uint32_t n, state_id v );
    std::int32_t min_extension( std::uint32_t n, type_id t );
};

// eval_bounded: truth of phi on rho with every quantified track bounded by L.
// Throws bound_too_small if |rho| > L.
[[nodiscard]] bool eval_bounded( const kripke_structure& k, const track& rho, const formula& phi, std::size_t bound );

struct bounded_verdict
{
    bool value = true;
    std::size_t bound = 2;
    std::optional< track > counterexample; // a shortest initial track falsifying phi
};

// Conjunction of eval_bounded over all initial tracks of length <= L.
[[nodiscard]] bounded_verdict model_check_bounded( const kripke_structure& k, const formula& phi, std::size_t bound );

// Some track of length <= L associated with d satisfies phi; returns a
// shortest one.
[[nodiscard]] std::optional< track > exists_track_bounded( const kripke_structure& k, const formula& phi,
                                                           const descriptor_element& d, std::size_t bound );

// (modal nodes of the desugared formula + 1) * (2 + |W|^2).
[[nodiscard]] std::size_t default_bound( const kripke_structure& k, const formula& phi );

} // namespace hsmc
