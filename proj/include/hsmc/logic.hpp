#pragma once

#include "descriptor.hpp"
#include "formula.hpp"
#include "model.hpp"

#include <array>
#include <set>
#include <string>
#include <vector>

namespace hsmc
{

// Rewrites L, D, O and their inverses into the six primitive modalities:
//   <L>f = <A><A>f     <D>f = <B><E>f      <O>f = <E><~B>f
//   <~L>f = <~A><~A>f  <~D>f = <~B><~E>f   <~O>f = <B><~E>f
// and boxes dually ([L]f = [A][A]f, ...). Primitive formulas come back unchanged.
[[nodiscard]] formula desugar( const formula& f );

// Proposition letters occurring in f, sorted.
[[nodiscard]] std::set< std::string > prop_letters( const formula& f );

// Count of diamond and box nodes.
[[nodiscard]] std::size_t modal_node_count( const formula& f );

struct fragment
{
    bool prop = false;          // no modalities
    bool exists_aabe = false;   // b | f v f | <A>f | <B>f | <E>f | <~A>f
    bool forall_aabe = false;   // b | f & f | [A]f | [B]f | [E]f | [~A]f
    bool ab_bar = false;        // any Boolean structure over <A>, <~B> (and boxes)
    std::array< bool, 6 > modalities{}; // primitive modalities used, indexed by modality

    // Space-separated membership flags in the order Prop ExistsAABE ForallAABE ABbar.
    [[nodiscard]] std::string flags() const;
    [[nodiscard]] std::string modality_list() const;
};

// Grammar membership for a desugared formula. Sugar modalities make every
// modal fragment flag false.
[[nodiscard]] fragment classify( const formula& f );

[[nodiscard]] bool is_propositional( const formula& f );

// An ExistsAABE formula equivalent to !psi, with negations pushed down to
// proposition letters; at most twice the size of psi. Throws not_in_fragment.
[[nodiscard]] formula negate_to_exists( const formula& psi );

// Evaluates a propositional formula under the homogeneous label shared by
// all tracks associated with d. Throws not_propositional. Letters outside the
// structure's ap are false.
[[nodiscard]] bool val( const formula& beta, const descriptor_element& d, const kripke_structure& k );

// Evaluates a propositional formula with letters true iff they are in `label`.
[[nodiscard]] bool eval_propositional( const formula& beta, const prop_set& label, const kripke_structure& k );

// Post-order flattening of a formula. Node indices identify subformula
// positions and are used as memo keys; children precede parents and the root
// is the last node.
class flat_formula
{
public:
    struct node
    {
        op kind = op::top;
        modality mod = modality::A;
        std::int64_t prop = -1;  // index into the structure's ap, -1 if absent
        std::string name;
        std::uint32_t lhs = 0;   // operand for unary nodes
        std::uint32_t rhs = 0;
        bool propositional = false;
    };

    flat_formula( const formula& f, const kripke_structure& k );

    [[nodiscard]] const std::vector< node >& nodes() const { return _nodes; }
    [[nodiscard]] const node& operator[]( std::size_t i ) const { return _nodes[ i ]; }
    [[nodiscard]] std::uint32_t root() const { return static_cast< std::uint32_t >( _nodes.size() - 1 ); }
    [[nodiscard]] std::size_t size() const { return _nodes.size(); }

    // Propositional evaluation of the subtree at i against a label set.
    [[nodiscard]] bool eval( std::uint32_t i, const prop_set& label ) const;

private:
    std::vector< node > _nodes;
    std::uint32_t add( const formula& f, const kripke_structure& k );
};

} // namespace hsmc
