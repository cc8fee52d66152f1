#pragma once

#include "model.hpp"

#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace hsmc
{

// (first state, set of interior states, last state) of a track. The interior
// set may contain the endpoint states when they recur strictly inside.
struct descriptor_element
{
    state_id v_in;
    state_set interior;
    state_id v_fin;

    friend bool operator==( const descriptor_element&, const descriptor_element& ) = default;
};

// Canonical iteration order: first state, then interior (smaller sets first,
// then lexicographic on members), then last state.
[[nodiscard]] bool canonical_less( const descriptor_element& a, const descriptor_element& b );

[[nodiscard]] std::string to_string( const kripke_structure& k, const descriptor_element& d );

[[nodiscard]] descriptor_element descriptor_of( const kripke_structure& k, const track& t );

// (v'_in, S' u {v'_fin, v''_in} u S'', v''_fin)
[[nodiscard]] descriptor_element concat_desc( const descriptor_element& a, const descriptor_element& b );

enum class direction
{
    forward,
    backward,
};

// Forward: all witnessed d with d.v_in = v. Backward: all witnessed d with
// d.v_fin = v. Canonical order.
[[nodiscard]] std::vector< descriptor_element > witnessed_descriptors( const kripke_structure& k, state_id v,
                                                                       direction dir );

// A shortest track associated with d; throws not_witnessed.
[[nodiscard]] track shortest_witness( const kripke_structure& k, const descriptor_element& d );

[[nodiscard]] bool is_witnessed( const kripke_structure& k, const descriptor_element& d );

// Breadth-first exploration of partial descriptors (endpoint, interior set)
// from one anchor state. Every track from (resp. to) the anchor corresponds to
// exactly one path in this graph, so BFS order yields shortest witnesses.
class descriptor_search
{
public:
    struct node
    {
        state_id endpoint;  // last state (forward) or first state (backward)
        state_set interior;
        std::size_t length; // length of the shortest realizing track
        std::int64_t parent; // index into nodes(), -1 for the anchor
    };

    descriptor_search( const kripke_structure& k, state_id anchor, direction dir );

    [[nodiscard]] const std::vector< node >& nodes() const { return _nodes; }
    [[nodiscard]] std::optional< std::size_t > find( state_id endpoint, const state_set& interior ) const;

    // All witnessed descriptors (nodes other than the anchor), canonical order.
    [[nodiscard]] const std::vector< descriptor_element >& descriptors() const { return _descriptors; }

    // Shortest realizing track for nodes()[i], i != anchor.
    [[nodiscard]] track witness( std::size_t i ) const;

private:
    struct key_hash
    {
        std::size_t operator()( const std::pair< state_id, state_set >& k ) const
        {
            return k.second.hash() * 31 + k.first;
        }
    };

    state_id _anchor;
    direction _dir;
    std::vector< node > _nodes;
    std::unordered_map< std::pair< state_id, state_set >, std::size_t, key_hash > _index;
    std::vector< descriptor_element > _descriptors;
};

// Lazily built per-state searches in both directions for one structure.
// Thread-safe; the structure must outlive the index.
class descriptor_index
{
    const kripke_structure* _k;
    mutable std::mutex _mutex;
    mutable std::vector< std::unique_ptr< descriptor_search > > _forward;
    mutable std::vector< std::unique_ptr< descriptor_search > > _backward;

public:
    explicit descriptor_index( const kripke_structure& k );

    [[nodiscard]] const kripke_structure& structure() const { return *_k; }
    [[nodiscard]] const descriptor_search& search( state_id v, direction dir ) const;

    [[nodiscard]] const std::vector< descriptor_element >& witnessed( state_id v, direction dir ) const
    {
        return search( v, dir ).descriptors();
    }

    [[nodiscard]] bool is_witnessed( const descriptor_element& d ) const;
    [[nodiscard]] track shortest_witness( const descriptor_element& d ) const;
};

} // namespace hsmc

template<>
struct std::hash< hsmc::descriptor_element >
{
    std::size_t operator()( const hsmc::descriptor_element& d ) const noexcept
    {
        return ( d.interior.hash() * 1000003u ) ^ ( std::size_t{ d.v_in } << 20 ) ^ d.v_fin;
    }
};
