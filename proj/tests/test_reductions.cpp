#include "hsmc/class_checker.hpp"
#include "hsmc/descriptor_checker.hpp"
#include "hsmc/error.hpp"
#include "hsmc/logic.hpp"
#include "hsmc/reductions.hpp"

#include "support/generators.hpp"
#include "support/references.hpp"

#include <doctest.h>

#include <set>

using namespace hsmc;

namespace
{

formula F( const char* text ) { return parse_formula( text ); }

std::set< std::pair< std::string, std::string > > named_edges( const kripke_structure& k )
{
    std::set< std::pair< std::string, std::string > > out;
    for ( auto [ a, b ] : k.edges() )
        out.emplace( k.state_name( a ), k.state_name( b ) );
    return out;
}

std::set< std::string > label_names( const kripke_structure& k, const std::string& state )
{
    std::set< std::string > out;
    for ( auto p : k.label( k.state( state ) ).members() )
        out.insert( k.prop_name( static_cast< prop_id >( p ) ) );
    return out;
}

qbf_formula qbf( std::vector< std::pair< quantifier, std::size_t > > prefix, const char* matrix )
{
    qbf_formula q;
    q.prefix = std::move( prefix );
    q.matrix = F( matrix );
    return q;
}

} // namespace

TEST_CASE( "parse_dimacs" )
{
    auto a = parse_dimacs( "c comment\np cnf 2 1\n1 -2 0\n" );
    CHECK( a.num_vars == 2 );
    REQUIRE( a.clauses.size() == 1 );
    CHECK( a.clauses[ 0 ] == std::vector< int >{ 1, -2 } );

    auto empty = parse_dimacs( "p cnf 1 0\n" );
    CHECK( empty.clauses.empty() );
    CHECK( brute_sat( empty ) );

    CHECK_THROWS_AS( (void) parse_dimacs( "p cnf 2 1\n3 0\n" ), out_of_range_literal );
    CHECK_THROWS_AS( (void) parse_dimacs( "1 2 0\n" ), syntax_error );
    CHECK_THROWS_AS( (void) parse_dimacs( "p cnf 2 1\n1 x 0\n" ), syntax_error );
    CHECK_THROWS_AS( (void) parse_dimacs( "" ), syntax_error );

    auto multi = parse_dimacs( "p cnf 3 2\n1 2\n-3 0 2 0\n" );
    REQUIRE( multi.clauses.size() == 2 );
    CHECK( multi.clauses[ 0 ] == std::vector< int >{ 1, 2, -3 } );
}

TEST_CASE( "parse_qdimacs" )
{
    auto q = parse_qdimacs( "p cnf 2 1\ne 2 0\na 1 0\n-1 2 0\n" );
    REQUIRE( q.qbf.prefix.size() == 2 );
    CHECK( q.qbf.prefix[ 0 ] == std::pair{ quantifier::exists, std::size_t{ 2 } } );
    CHECK( q.qbf.prefix[ 1 ] == std::pair{ quantifier::forall, std::size_t{ 1 } } );
    CHECK( q.warnings.empty() );
    CHECK( brute_qbf( q.qbf ) );

    auto free = parse_qdimacs( "p cnf 2 1\na 1 0\n1 2 0\n" );
    CHECK( free.warnings.size() == 1 );
    REQUIRE( free.qbf.prefix.size() == 2 );
    CHECK( free.qbf.prefix[ 0 ] == std::pair{ quantifier::exists, std::size_t{ 2 } } );

    CHECK_THROWS_AS( (void) parse_qdimacs( "p cnf 2 1\ne 1 0\n1 0\na 2 0\n" ), non_prenex );
    CHECK_THROWS_AS( (void) parse_qdimacs( "p cnf 2 1\ne 1 0\na 1 0\n1 0\n" ), non_prenex );
    CHECK_THROWS_AS( (void) parse_qdimacs( "p cnf 1 1\ne 3 0\n1 0\n" ), out_of_range_literal );
}

TEST_CASE( "K_SAT construction" )
{
    cnf_formula one;
    one.num_vars = 1;
    auto inst = build_sat_instance( one );
    CHECK( named_edges( inst.model ) == std::set< std::pair< std::string, std::string > >{
                                               { "w0", "w1_T" }, { "w0", "w1_F" }, { "w1_T", "w1_T" }, { "w1_F", "w1_F" } } );
    CHECK( label_names( inst.model, "w0" ) == std::set< std::string >{ "x1" } );
    CHECK( label_names( inst.model, "w1_T" ) == std::set< std::string >{ "x1" } );
    CHECK( label_names( inst.model, "w1_F" ).empty() );
    CHECK( inst.model.state_name( inst.model.init() ) == "w0" );

    for ( std::size_t n = 1; n <= 4; ++n )
    {
        cnf_formula c;
        c.num_vars = n;
        auto k = build_sat_instance( c ).model;
        CHECK( k.num_states() == 2 * n + 1 );
        CHECK( k.num_edges() == 4 * n );
        CHECK( parse_kripke( write_kripke( k ) ) == k );
    }

    cnf_formula three;
    three.num_vars = 3;
    auto k3 = build_sat_instance( three ).model;
    CHECK( label_names( k3, "w2_F" ) == std::set< std::string >{ "x1", "x3" } );
    CHECK( named_edges( k3 ).contains( { "w1_F", "w2_T" } ) );
    CHECK( named_edges( k3 ).contains( { "w3_T", "w3_T" } ) );
    CHECK( !named_edges( k3 ).contains( { "w2_T", "w2_T" } ) );

    auto zero = build_sat_instance( cnf_formula{} );
    CHECK( zero.model.num_states() == 1 );
    CHECK( zero.model.num_edges() == 1 );
    CHECK( model_check_univ( zero.model, zero.property ).result == outcome::fails );

    auto contradiction = build_sat_instance( F( "x1 & !x1" ) );
    CHECK( model_check_univ( contradiction.model, contradiction.property ).holds() );
    CHECK( classify( contradiction.property ).prop );
    CHECK_THROWS_AS( (void) build_sat_instance( F( "<A> x1" ) ), not_propositional );
}

TEST_CASE( "K_QBF construction" )
{
    auto ex = build_qbf_instance( qbf( { { quantifier::exists, 1 } }, "x1" ) );
    CHECK( ex.property == F( "start -> <~B>((<A> x1_aux) & x1)" ) );
    CHECK( ex.model.num_states() == 7 );
    CHECK( ex.model.num_edges() == 8 );
    CHECK( label_names( ex.model, "w1_F1" ) == std::set< std::string >{ "x1_aux" } );
    CHECK( label_names( ex.model, "w1_T2" ) == std::set< std::string >{ "x1", "x1_aux" } );
    CHECK( label_names( ex.model, "w0" ) == std::set< std::string >{ "x1", "start" } );
    CHECK( label_names( ex.model, "sink" ) == std::set< std::string >{ "x1" } );
    CHECK( check_ab( ex.model, ex.property ).holds() );
    CHECK( classify( ex.property ).flags() == "ABbar" );

    auto all = build_qbf_instance( qbf( { { quantifier::forall, 1 } }, "x1" ) );
    CHECK( all.property == F( "start -> [~B]((<A> x1_aux) -> x1)" ) );
    CHECK( !check_ab( all.model, all.property ).holds() );

    for ( std::size_t n = 1; n <= 4; ++n )
    {
        std::vector< std::pair< quantifier, std::size_t > > prefix;
        for ( std::size_t v = 1; v <= n; ++v )
            prefix.emplace_back( v % 2 ? quantifier::exists : quantifier::forall, v );
        auto k = build_qbf_instance( qbf( prefix, "true" ) ).model;
        CHECK( k.num_states() == 4 * n + 3 );
        CHECK( k.num_edges() == 6 * n + 2 );
        CHECK( parse_kripke( write_kripke( k ) ) == k );
    }

    auto none = build_qbf_instance( qbf( {}, "true" ) );
    CHECK( named_edges( none.model ) ==
           std::set< std::pair< std::string, std::string > >{ { "w0", "w1" }, { "w1", "sink" }, { "sink", "sink" } } );
    CHECK( check_ab( none.model, none.property ).holds() );
    auto none_false = build_qbf_instance( qbf( {}, "false" ) );
    CHECK( !check_ab( none_false.model, none_false.property ).holds() );

    CHECK_THROWS_AS( (void) build_qbf_instance( qbf( { { quantifier::exists, 1 } }, "x2" ) ), non_prenex );
    CHECK_THROWS_AS(
            (void) build_qbf_instance( qbf( { { quantifier::exists, 1 }, { quantifier::forall, 1 } }, "x1" ) ),
            non_prenex );
}

TEST_CASE( "brute-force oracles" )
{
    CHECK( brute_sat( F( "x1 | !x1" ) ) );
    CHECK( !brute_sat( F( "x1 & !x1" ) ) );
    CHECK( !brute_qbf( qbf( { { quantifier::forall, 1 } }, "x1" ) ) );
    CHECK( brute_qbf( qbf( { { quantifier::exists, 2 }, { quantifier::forall, 1 } }, "x1 -> x2" ) ) );
    CHECK( brute_qbf( qbf( { { quantifier::forall, 1 }, { quantifier::exists, 2 } }, "x1 & x2 | !x1" ) ) );
    CHECK( !brute_qbf( qbf( { { quantifier::exists, 2 }, { quantifier::forall, 1 } }, "x1 & x2 | !x1 & !x2" ) ) );

    cnf_formula big;
    big.num_vars = 21;
    CHECK_THROWS_AS( (void) brute_sat( big ), too_many_variables );

    gen::rng r{ 1234 };
    for ( int i = 0; i < 200; ++i )
    {
        auto c = gen::cnf( r, gen::uniform( r, 0, 6 ), gen::uniform( r, 0, 10 ) );
        CHECK( brute_sat( c ) == ref::cnf_satisfiable( c ) );
        if ( c.num_vars > 0 )
            CHECK( brute_sat( to_formula( c ) ) == ref::cnf_satisfiable( c ) );
        auto q = gen::qbf( r, gen::uniform( r, 0, 4 ), gen::uniform( r, 0, 8 ) );
        CHECK( brute_qbf( q.qbf ) == ref::qbf_true( q.qbf.prefix, q.matrix ) );
    }
}

TEST_CASE( "property: SAT and QBF end to end" )
{
    gen::rng r{ 4321 };
    for ( int i = 0; i < 60; ++i )
    {
        auto c = gen::cnf( r, gen::uniform( r, 1, 5 ), gen::uniform( r, 0, 10 ) );
        auto inst = build_sat_instance( c );
        auto v = model_check_univ( inst.model, inst.property );
        bool sat = ref::cnf_satisfiable( c );
        CHECK( ( v.result == outcome::fails ) == sat );
        if ( !v.holds() )
        {
            auto a = decode_assignment( inst.model, *v.counterexample );
            std::uint64_t bits = 0;
            for ( std::size_t x = 1; x <= c.num_vars; ++x )
                if ( a.at( var_name( x ) ) )
                    bits |= std::uint64_t{ 1 } << ( x - 1 );
            CHECK( ref::cnf_true( c, bits ) );
        }

        auto q = gen::qbf( r, gen::uniform( r, 0, 3 ), gen::uniform( r, 0, 6 ) );
        auto qi = build_qbf_instance( q.qbf );
        CHECK( check_ab( qi.model, qi.property ).holds() == ref::qbf_true( q.qbf.prefix, q.matrix ) );
    }
}

TEST_CASE( "decode_assignment" )
{
    cnf_formula two;
    two.num_vars = 2;
    auto k = build_sat_instance( two ).model;
    auto a = decode_assignment( k, track_from_names( k, { "w0", "w1_F", "w2_T" } ) );
    CHECK( a.at( "x1" ) == false );
    CHECK( a.at( "x2" ) == true );
}
