#pragma once

#include "bitset.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hsmc
{

using state_id = std::uint32_t;
using prop_id = std::uint32_t;

using state_set = bitset;
using prop_set = bitset;

// A finite Kripke structure (AP, W, delta, mu, w0) with a left-total edge
// relation. Immutable once built. States are stored sorted by name, so
// state_id order coincides with lexicographic name order; propositions keep
// their declaration order.
class kripke_structure
{
    std::vector< std::string > _ap;
    std::vector< std::string > _states;
    std::vector< prop_set > _labels;
    std::vector< std::vector< state_id > > _succ;
    std::vector< std::vector< state_id > > _pred;
    std::vector< bitset > _edge_matrix;
    state_id _init = 0;
    std::size_t _num_edges = 0;

    friend class kripke_builder;
    kripke_structure() = default;

public:
    [[nodiscard]] std::size_t num_states() const { return _states.size(); }
    [[nodiscard]] std::size_t num_edges() const { return _num_edges; }
    [[nodiscard]] std::size_t num_props() const { return _ap.size(); }

    [[nodiscard]] const std::vector< std::string >& ap() const { return _ap; }
    [[nodiscard]] const std::string& prop_name( prop_id p ) const { return _ap[ p ]; }
    [[nodiscard]] std::optional< prop_id > find_prop( std::string_view name ) const;

    [[nodiscard]] const std::string& state_name( state_id s ) const { return _states[ s ]; }
    [[nodiscard]] std::optional< state_id > find_state( std::string_view name ) const;
    [[nodiscard]] state_id state( std::string_view name ) const; // throws validation_error

    [[nodiscard]] state_id init() const { return _init; }
    [[nodiscard]] const prop_set& label( state_id s ) const { return _labels[ s ]; }

    [[nodiscard]] std::span< const state_id > successors( state_id s ) const { return _succ[ s ]; }
    [[nodiscard]] std::span< const state_id > predecessors( state_id s ) const { return _pred[ s ]; }
    [[nodiscard]] bool has_edge( state_id from, state_id to ) const { return _edge_matrix[ from ].contains( to ); }

    // All edges in (source, target) id order.
    [[nodiscard]] std::vector< std::pair< state_id, state_id > > edges() const;

    [[nodiscard]] prop_set empty_props() const { return prop_set( _ap.size() ); }
    [[nodiscard]] state_set empty_states() const { return state_set( _states.size() ); }

    friend bool operator==( const kripke_structure&, const kripke_structure& ) = default;
};

// Collects a structure by name and validates it on build(). Duplicate edges
// and duplicate proposition declarations are merged.
class kripke_builder
{
    std::vector< std::string > _ap;
    std::vector< std::pair< std::string, std::vector< std::string > > > _states;
    std::vector< std::pair< std::string, std::string > > _edges;
    std::optional< std::string > _init;

public:
    kripke_builder& prop( std::string name );
    kripke_builder& props( const std::vector< std::string >& names );
    kripke_builder& state( std::string name, std::vector< std::string > labels = {} );
    kripke_builder& edge( std::string from, std::string to );
    kripke_builder& init( std::string name );

    [[nodiscard]] kripke_structure build() const;
};

// A track: a state sequence of length >= 2 following edges. The value does
// not keep a reference to its structure; validity is checked on creation.
class track
{
    std::vector< state_id > _seq;

public:
    track() = default;
    // Checks length >= 2 and that consecutive pairs are edges of k.
    track( const kripke_structure& k, std::vector< state_id > seq );

    [[nodiscard]] std::size_t size() const { return _seq.size(); }
    [[nodiscard]] state_id operator[]( std::size_t i ) const { return _seq[ i ]; }
    [[nodiscard]] state_id fst() const { return _seq.front(); }
    [[nodiscard]] state_id lst() const { return _seq.back(); }
    [[nodiscard]] std::span< const state_id > states() const { return _seq; }

    [[nodiscard]] state_set state_set_of( std::size_t universe ) const;
    [[nodiscard]] state_set intstates( std::size_t universe ) const;

    // rho(i..j), inclusive, j > i.
    [[nodiscard]] track sub( std::size_t i, std::size_t j ) const;

    friend bool operator==( const track&, const track& ) = default;
    friend auto operator<=>( const track&, const track& ) = default;

    // Unchecked construction; callers guarantee validity.
    static track unchecked( std::vector< state_id > seq )
    {
        track t;
        t._seq = std::move( seq );
        return t;
    }
};

[[nodiscard]] bool is_track( const kripke_structure& k, std::span< const state_id > seq );
[[nodiscard]] track track_from_names( const kripke_structure& k, const std::vector< std::string >& names );
[[nodiscard]] std::vector< std::string > track_names( const kripke_structure& k, const track& t );
[[nodiscard]] std::string to_string( const kripke_structure& k, const track& t );

// rho1 . rho2; throws invalid_track if (lst(rho1), fst(rho2)) is not an edge.
[[nodiscard]] track concat( const kripke_structure& k, const track& a, const track& b );

// Homogeneous label: intersection of mu over all states of the track.
[[nodiscard]] prop_set track_label( const kripke_structure& k, const track& t );

// Every track of length in [2, max_len], optionally restricted to fst = start,
// each exactly once, ordered by length and then lexicographically by name.
[[nodiscard]] std::vector< track > enumerate_tracks( const kripke_structure& k, std::optional< state_id > start,
                                                     std::size_t max_len );

// Visits the same tracks as enumerate_tracks in depth-first order without
// materializing them. The visitor returns false to stop descending below the
// current track.
void for_each_track( const kripke_structure& k, std::optional< state_id > start, std::size_t max_len,
                     const std::function< bool( std::span< const state_id > ) >& visit );

// Same states, edges and init; ap := ap n keep, labels intersected pointwise.
[[nodiscard]] kripke_structure restrict_labels( const kripke_structure& k, const std::vector< std::string >& keep );

// Subgraph of states reachable from v (inclusive) with init := v.
[[nodiscard]] kripke_structure reach_from( const kripke_structure& k, state_id v );

// Label-, edge- and init-preserving bijection exists. Labels are compared by
// proposition name.
[[nodiscard]] bool isomorphic( const kripke_structure& a, const kripke_structure& b );

// The line-oriented text format (ap / init / state / edge sections).
[[nodiscard]] kripke_structure parse_kripke( std::string_view text );
[[nodiscard]] std::string write_kripke( const kripke_structure& k );

} // namespace hsmc
