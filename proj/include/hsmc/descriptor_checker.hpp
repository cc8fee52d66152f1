#pragma once

#include "descriptor.hpp"
#include "formula.hpp"
#include "logic.hpp"
#include "verdict.hpp"

#include <optional>
#include <unordered_map>

namespace hsmc
{

struct exists_result
{
    bool value = false;
    std::optional< track > witness; // present iff value
};

// Deterministic search for a track associated with a descriptor element that
// satisfies an ExistsAABE formula. Nondeterministic choices become exhaustive
// iteration in canonical descriptor order; results are memoized per
// (subformula position, descriptor element) unless memoization is disabled.
class exists_checker
{
public:
    // psi must be desugared and ExistsAABE; throws not_in_fragment otherwise.
    exists_checker( const kripke_structure& k, const formula& psi, bool memoize = true );
    exists_checker( const descriptor_index& index, const formula& psi, bool memoize = true );

    // Throws not_witnessed if d has no associated track.
    [[nodiscard]] exists_result check( const descriptor_element& d );

    [[nodiscard]] std::uint64_t evaluations() const { return _evaluations; }
    [[nodiscard]] std::uint64_t memo_hits() const { return _memo_hits; }
    [[nodiscard]] std::uint64_t adjacent_witnesses() const { return _adjacent; }

private:
    std::unique_ptr< descriptor_index > _owned;
    const descriptor_index* _index;
    const kripke_structure& _k;
    flat_formula _flat;
    bool _memoize;
    std::vector< std::unordered_map< descriptor_element, std::optional< track > > > _memo;
    std::uint64_t _evaluations = 0;
    std::uint64_t _memo_hits = 0;
    std::uint64_t _adjacent = 0;

    std::optional< track > eval( std::uint32_t node, const descriptor_element& d );
    std::optional< track > eval_uncached( std::uint32_t node, const descriptor_element& d );
    std::optional< track > eval_started_by( std::uint32_t child, const descriptor_element& d );
    std::optional< track > eval_finished_by( std::uint32_t child, const descriptor_element& d );
};

[[nodiscard]] exists_result check_exists( const kripke_structure& k, const formula& psi, const descriptor_element& d,
                                          bool memoize = true );

// Holds iff no initial descriptor element admits a track satisfying
// negate_to_exists(psi). The counterexample is the witness of the first
// succeeding element in canonical order. Throws not_in_fragment.
[[nodiscard]] verdict model_check_univ( const kripke_structure& k, const formula& psi, bool memoize = true );

} // namespace hsmc
