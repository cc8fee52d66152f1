#pragma once

#include "formula.hpp"
#include "model.hpp"

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hsmc
{

// Clauses are vectors of nonzero literals over variables 1..num_vars.
struct cnf_formula
{
    std::size_t num_vars = 0;
    std::vector< std::vector< int > > clauses;
};

enum class quantifier
{
    exists,
    forall,
};

// Prenex QBF; prefix is outermost first.
struct qbf_formula
{
    std::vector< std::pair< quantifier, std::size_t > > prefix;
    formula matrix = formula::top();
};

// Letter used for variable v.
[[nodiscard]] std::string var_name( std::size_t v );
[[nodiscard]] std::string aux_name( std::size_t v );

// Conjunction of clauses; the empty CNF is true and an empty clause is false.
// A single clause or literal is not wrapped.
[[nodiscard]] formula to_formula( const cnf_formula& cnf );

[[nodiscard]] cnf_formula parse_dimacs( std::string_view text );

struct qdimacs_result
{
    qbf_formula qbf;
    cnf_formula matrix;
    std::vector< std::string > warnings;
};

// Free matrix variables are bound by an outermost existential block and
// reported in `warnings`. Quantifier lines after the first clause raise
// non_prenex.
[[nodiscard]] qdimacs_result parse_qdimacs( std::string_view text );

struct instance
{
    kripke_structure model;
    formula property;
};

// Var = x1..x_num_vars; property = !beta.
[[nodiscard]] instance build_sat_instance( const cnf_formula& cnf );

// Var = the letters of beta, in sorted order; throws not_propositional.
[[nodiscard]] instance build_sat_instance( const formula& beta );

// Throws non_prenex if the matrix uses an unbound letter or a variable is
// bound twice.
[[nodiscard]] instance build_qbf_instance( const qbf_formula& psi );

// Truth-table and quantifier-expansion oracles; at most 20 variables.
[[nodiscard]] bool brute_sat( const formula& beta );
[[nodiscard]] bool brute_sat( const cnf_formula& cnf );
[[nodiscard]] bool brute_qbf( const qbf_formula& psi );

// Assignment read off a K_SAT counterexample: a variable is true iff it is in
// the label of the track.
[[nodiscard]] std::map< std::string, bool > decode_assignment( const kripke_structure& k, const track& rho );

} // namespace hsmc
