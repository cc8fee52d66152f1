#include "hsmc/descriptor_checker.hpp"
#include "hsmc/error.hpp"
#include "hsmc/logic.hpp"
#include "hsmc/oracle.hpp"
#include "hsmc/reductions.hpp"

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/naive_oracle.hpp"

#include <doctest.h>

using namespace hsmc;
using fixtures::tr;

namespace
{

formula F( const char* text ) { return parse_formula( text ); }

formula primitive_general( gen::rng& r, std::size_t depth )
{
    return desugar( gen::general( r, depth ) );
}

} // namespace

TEST_CASE( "eval_bounded: worked cases" )
{
    auto k = fixtures::equiv();
    CHECK( eval_bounded( k, tr( k, { "v0", "v1" } ), F( "<A> q" ), 2 ) );
    for ( std::size_t l = 2; l < 7; ++l )
        CHECK( !eval_bounded( k, tr( k, { "v0", "v1" } ), F( "<B> p" ), l ) );
    CHECK( eval_bounded( k, tr( k, { "v0", "v0", "v0" } ), F( "<B> p" ), 3 ) );
    CHECK( !eval_bounded( k, tr( k, { "v0", "v0" } ), F( "<~B> p" ), 2 ) );
    CHECK( eval_bounded( k, tr( k, { "v0", "v0" } ), F( "<~B> p" ), 3 ) );
    CHECK( eval_bounded( k, tr( k, { "v0", "v0" } ), F( "[~B] p" ), 2 ) );
    CHECK( !eval_bounded( k, tr( k, { "v0", "v0" } ), F( "[~B] p" ), 3 ) );
    CHECK( eval_bounded( k, tr( k, { "v1", "v0" } ), F( "<~E> !p" ), 3 ) );
    CHECK( !eval_bounded( k, tr( k, { "v1", "v0" } ), F( "<~E> !p" ), 2 ) );
    CHECK( !eval_bounded( k, tr( k, { "v1", "v0" } ), F( "<~E> p" ), 6 ) );
    CHECK_THROWS_AS( (void) eval_bounded( k, tr( k, { "v0", "v0", "v0" } ), F( "p" ), 2 ), bound_too_small );
}

TEST_CASE( "model_check_bounded and default_bound" )
{
    auto k = fixtures::equiv();
    CHECK( model_check_bounded( k, F( "true" ), 4 ).value );
    auto p = model_check_bounded( k, F( "p" ), 2 );
    CHECK( !p.value );
    REQUIRE( p.counterexample );
    CHECK( to_string( k, *p.counterexample ) == "v0 v1" );
    CHECK( p.bound == 2 );

    cnf_formula one;
    one.num_vars = 1;
    auto sat = build_sat_instance( one ).model;
    auto n = model_check_bounded( sat, F( "!x1" ), 3 );
    CHECK( !n.value );
    REQUIRE( n.counterexample );
    CHECK( to_string( sat, *n.counterexample ) == "w0 w1_T" );

    CHECK( default_bound( k, F( "<A> q" ) ) == 12 );
    CHECK( default_bound( k, F( "p | !q" ) ) == 6 );
    auto three = kripke_builder{}.state( "a" ).state( "b" ).state( "c" ).edge( "a", "b" ).edge( "b", "c" ).edge( "c", "a" ).init( "a" ).build();
    CHECK( default_bound( three, F( "<A> <B> true" ) ) == 33 );
    CHECK( default_bound( three, F( "p" ) ) == 11 );
    CHECK( default_bound( three, F( "<L> p" ) ) == 33 );
}

TEST_CASE( "property: the track automaton agrees with explicit enumeration" )
{
    gen::rng r{ 707 };
    for ( int round = 0; round < 60; ++round )
    {
        auto k = gen::kripke( r, gen::uniform( r, 1, 3 ), 0.45 );
        auto bound = gen::uniform( r, 2, 6 );
        naive::evaluator direct{ k, bound };
        for ( int f = 0; f < 4; ++f )
        {
            auto phi = primitive_general( r, 3 );
            track_automaton automaton{ k, phi, bound };
            for ( const auto& rho : direct.all_tracks() )
            {
                auto t = automaton.initial( rho[ 0 ] );
                for ( std::size_t i = 1; i < rho.size(); ++i )
                {
                    auto next = automaton.extend( t, rho[ i ] );
                    REQUIRE( next );
                    t = *next;
                }
                CHECK_MESSAGE( automaton.holds( t ) == direct.eval( rho, phi ), to_string( phi ) );
                CHECK( automaton.last( t ) == rho.back() );
            }
            auto longest = direct.all_tracks().back();
            auto t = automaton.initial( longest[ 0 ] );
            for ( std::size_t i = 1; i < longest.size(); ++i )
                t = *automaton.extend( t, longest[ i ] );
            if ( longest.size() == bound )
                CHECK( !automaton.extend( t, k.successors( longest.back() )[ 0 ] ) );
        }
    }
}

TEST_CASE( "property: bounded model checking matches enumeration" )
{
    gen::rng r{ 808 };
    for ( int round = 0; round < 60; ++round )
    {
        auto k = gen::kripke( r, gen::uniform( r, 1, 3 ), 0.45 );
        auto bound = gen::uniform( r, 2, 5 );
        naive::evaluator direct{ k, bound };
        auto phi = primitive_general( r, 3 );
        bool expected = true;
        for ( const auto& rho : direct.all_tracks() )
            if ( rho[ 0 ] == k.init() )
                expected = expected && direct.eval( rho, phi );
        auto got = model_check_bounded( k, phi, bound );
        CHECK( got.value == expected );
        if ( !got.value )
        {
            REQUIRE( got.counterexample );
            std::vector< state_id > seq( got.counterexample->states().begin(), got.counterexample->states().end() );
            CHECK( !direct.eval( seq, phi ) );
        }
    }
}

TEST_CASE( "property: monotonicity in the bound" )
{
    gen::rng r{ 909 };
    for ( int round = 0; round < 60; ++round )
    {
        auto k = gen::kripke( r, gen::uniform( r, 1, 3 ) );
        auto e = gen::exists_aabe( r, gen::uniform( r, 1, 3 ) );
        auto a = gen::forall_aabe( r, gen::uniform( r, 1, 3 ) );
        bool exact_forall = model_check_univ( k, a ).holds();
        for ( const auto& rho : enumerate_tracks( k, std::nullopt, 3 ) )
        {
            bool seen_true = false;
            for ( std::size_t l = 3; l <= 9; ++l )
            {
                bool now = eval_bounded( k, rho, e, l );
                if ( seen_true )
                    CHECK( now );
                seen_true = seen_true || now;
            }
            // a bounded witness is a genuine one
            if ( seen_true )
                CHECK( check_exists( k, e, descriptor_of( k, rho ) ).value );
        }
        for ( std::size_t l = 2; l <= 8; ++l )
        {
            auto b = model_check_bounded( k, a, l );
            if ( exact_forall )
                CHECK( b.value );
            if ( !b.value )
                CHECK( !exact_forall );
        }
    }
}

TEST_CASE( "exists_track_bounded" )
{
    auto k = fixtures::equiv();
    auto s = k.empty_states();
    descriptor_element d{ k.state( "v0" ), s, k.state( "v1" ) };
    auto w = exists_track_bounded( k, F( "<A> q" ), d, 4 );
    REQUIRE( w );
    CHECK( to_string( k, *w ) == "v0 v1" );
    CHECK( !exists_track_bounded( k, F( "p" ), d, 6 ) );
    s.insert( k.state( "v0" ) );
    descriptor_element d2{ k.state( "v0" ), s, k.state( "v0" ) };
    CHECK( !exists_track_bounded( k, F( "<B> p" ), d2, 2 ) );
    auto w2 = exists_track_bounded( k, F( "<B> p" ), d2, 3 );
    REQUIRE( w2 );
    CHECK( to_string( k, *w2 ) == "v0 v0 v0" );
}
