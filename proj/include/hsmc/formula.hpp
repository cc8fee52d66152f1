#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace hsmc
{

// The six primitive modalities come first; the rest are sugar removed by desugar().
enum class modality : std::uint8_t
{
    A,
    B,
    E,
    A_bar,
    B_bar,
    E_bar,
    L,
    D,
    O,
    L_bar,
    D_bar,
    O_bar,
};

[[nodiscard]] inline bool is_primitive( modality m ) { return m <= modality::E_bar; }
[[nodiscard]] const char* to_string( modality m ); // "A", "~B", ...

enum class op : std::uint8_t
{
    prop,
    top,
    bottom,
    negation,
    conjunction,
    disjunction,
    implication,
    diamond,
    box,
};

// Immutable HS formula with value semantics; copies share structure.
class formula
{
    struct node;
    std::shared_ptr< const node > _node;

    explicit formula( std::shared_ptr< const node > n ) : _node{ std::move( n ) } {}

public:
    static formula letter( std::string name );
    static formula top();
    static formula bottom();
    static formula negation( formula f );
    static formula conjunction( formula l, formula r );
    static formula disjunction( formula l, formula r );
    static formula implication( formula l, formula r );
    static formula diamond( modality m, formula f );
    static formula box( modality m, formula f );

    [[nodiscard]] op kind() const;
    [[nodiscard]] const std::string& name() const;   // prop only
    [[nodiscard]] modality mod() const;              // diamond / box only
    [[nodiscard]] const formula& operand() const;    // negation / diamond / box
    [[nodiscard]] const formula& lhs() const;        // binary
    [[nodiscard]] const formula& rhs() const;        // binary

    [[nodiscard]] bool is_binary() const
    {
        auto k = kind();
        return k == op::conjunction || k == op::disjunction || k == op::implication;
    }
    [[nodiscard]] bool is_modal() const { return kind() == op::diamond || kind() == op::box; }
    [[nodiscard]] bool same_node( const formula& o ) const { return _node == o._node; }

    // Number of AST nodes.
    [[nodiscard]] std::size_t size() const;

    friend bool operator==( const formula& a, const formula& b );
};

// ASCII surface syntax. Precedence: unary (!, <X>, [X]) > & > | > -> (right
// associative). Inverse modalities are written with '~', e.g. <~B>.
[[nodiscard]] formula parse_formula( std::string_view text );
[[nodiscard]] std::string to_string( const formula& f );

} // namespace hsmc
