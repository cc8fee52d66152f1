#include "hsmc/cli.hpp"
#include "hsmc/model.hpp"

#include "support/fixtures.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace
{

struct run_result
{
    int code;
    std::string out;
    std::string err;
};

run_result run( std::vector< std::string > args )
{
    std::ostringstream out, err;
    int code = hsmc::cli::run( args, out, err );
    return { code, out.str(), err.str() };
}

std::string equiv() { return fixtures::data_path( "equiv.kripke" ); }

fs::path scratch( const std::string& name )
{
    auto dir = fs::temp_directory_path() / "hsmc_cli_tests";
    fs::create_directories( dir );
    return dir / name;
}

std::string slurp( const fs::path& p )
{
    std::ifstream in{ p };
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write( const fs::path& p, const std::string& text ) { std::ofstream{ p } << text; }

} // namespace

TEST_CASE( "check: exit codes" )
{
    auto top = run( { "check", "--model", equiv(), "--formula", "[A] true" } );
    CHECK( top.code == 0 );
    CHECK( top.out.find( "result: holds" ) != std::string::npos );
    CHECK( top.out.find( "engine: descriptor" ) != std::string::npos );

    auto p = run( { "check", "--model", equiv(), "--formula", "p" } );
    CHECK( p.code == 1 );
    CHECK( p.out.find( "counterexample: v0 v1" ) != std::string::npos );

    CHECK( run( { "check", "--model", equiv(), "--formula", "<D> p", "--engine", "descriptor" } ).code == 3 );
    CHECK( run( { "check", "--model", equiv(), "--formula", "<B> p", "--engine", "class" } ).code == 3 );
    CHECK( run( { "check", "--model", equiv(), "--formula", "p &" } ).code == 2 );
    CHECK( run( { "check", "--model", equiv(), "--formula", "zz" } ).code == 2 );
    CHECK( run( { "check", "--model", "/nonexistent/file", "--formula", "p" } ).code == 2 );
    CHECK( run( { "check", "--model", equiv() } ).code == 2 );
    CHECK( run( { "check", "--model", equiv(), "--formula", "p", "--engine", "magic" } ).code == 2 );
    CHECK( run( { "check", "--model", equiv(), "--formula", "p", "--engine", "oracle", "--bound", "1" } ).code == 2 );
    CHECK( run( {} ).code == 2 );

    auto c = run( { "check", "--model", equiv(), "--formula", "!<~B> q" } );
    CHECK( c.code == 0 );
    CHECK( c.out.find( "engine: class" ) != std::string::npos );
}

TEST_CASE( "check: oracle engine" )
{
    // <D> p is neither universal nor AB-bar, so the verdict is approximate
    auto d = run( { "check", "--model", equiv(), "--formula", "<D> p" } );
    CHECK( d.code == 4 );
    CHECK( d.out.find( "engine: oracle" ) != std::string::npos );
    CHECK( d.out.find( "bound: " ) != std::string::npos );

    auto exact = run( { "check", "--model", equiv(), "--formula", "[A] (p | q | true)", "--engine", "oracle" } );
    CHECK( exact.code == 0 );
    auto refuted = run( { "check", "--model", equiv(), "--formula", "[B] p", "--engine", "oracle", "--bound", "3" } );
    CHECK( refuted.code == 1 );
    auto small = run( { "check", "--model", equiv(), "--formula", "[A] true", "--engine", "oracle", "--bound", "3" } );
    CHECK( small.code == 4 );
    CHECK( small.out.find( "result: approximate-true" ) != std::string::npos );
}

TEST_CASE( "check: json output" )
{
    auto p = run( { "check", "--model", equiv(), "--formula", "p", "--json" } );
    CHECK( p.code == 1 );
    auto j = nlohmann::json::parse( p.out );
    CHECK( j[ "result" ] == "fails" );
    CHECK( j[ "engine" ] == "descriptor" );
    CHECK( j[ "counterexample" ] == nlohmann::json::array( { "v0", "v1" } ) );
    CHECK( j[ "stats" ].is_object() );
    CHECK( j[ "stats" ].contains( "elapsed_ms" ) );
    CHECK( j[ "bound" ].is_null() );

    auto h = nlohmann::json::parse( run( { "check", "--model", equiv(), "--formula", "[A] true", "--json" } ).out );
    CHECK( h[ "result" ] == "holds" );
    CHECK( h[ "counterexample" ].is_null() );
    for ( const char* key : { "result", "engine", "counterexample", "stats", "bound" } )
        CHECK( h.contains( key ) );

    auto o = nlohmann::json::parse(
            run( { "check", "--model", equiv(), "--formula", "<D> p", "--json", "--bound", "5" } ).out );
    CHECK( o[ "engine" ] == "oracle" );
    CHECK( o[ "bound" ] == 5 );
    CHECK( ( o[ "result" ] == "approximate-true" || o[ "result" ] == "approximate-false" ) );
}

TEST_CASE( "gen-sat and gen-qbf" )
{
    auto model = scratch( "sat.kripke" );
    auto formula = scratch( "sat.formula" );
    auto g = run( { "gen-sat", "--dimacs", fixtures::data_path( "one_var.cnf" ), "--out-model", model.string(),
                    "--out-formula", formula.string() } );
    CHECK( g.code == 0 );
    CHECK( g.out == "states=3 edges=4 letters=1\n" );
    auto k = hsmc::parse_kripke( slurp( model ) );
    CHECK( k.num_states() == 3 );

    auto c = run( { "check", "--model", model.string(), "--formula-file", formula.string(), "--decode-assignment" } );
    CHECK( c.code == 1 );
    CHECK( c.out.find( "counterexample: w0 w1_T" ) != std::string::npos );
    CHECK( c.out.find( "assignment: x1=1" ) != std::string::npos );

    auto qm = scratch( "qbf.kripke" );
    auto qf = scratch( "qbf.formula" );
    CHECK( run( { "gen-qbf", "--qdimacs", fixtures::data_path( "exists_x1.qdimacs" ), "--out-model", qm.string(),
                  "--out-formula", qf.string() } )
                   .code == 0 );
    CHECK( slurp( qf ) == "start -> <~B>((<A> x1_aux) & x1)\n" );
    CHECK( run( { "check", "--model", qm.string(), "--formula-file", qf.string() } ).code == 0 );

    CHECK( run( { "gen-qbf", "--qdimacs", fixtures::data_path( "forall_x1.qdimacs" ), "--out-model", qm.string(),
                  "--out-formula", qf.string() } )
                   .code == 0 );
    CHECK( run( { "check", "--model", qm.string(), "--formula-file", qf.string() } ).code == 1 );

    auto bad = scratch( "bad.cnf" );
    write( bad, "p cnf 1 1\n1 x 0\n" );
    CHECK( run( { "gen-sat", "--dimacs", bad.string(), "--out-model", model.string(), "--out-formula",
                  formula.string() } )
                   .code == 2 );
}

TEST_CASE( "classify and descriptors" )
{
    auto c = run( { "classify", "--formula", "p & !q" } );
    CHECK( c.code == 0 );
    CHECK( c.out.rfind( "Prop ExistsAABE ForallAABE ABbar\n", 0 ) == 0 );
    CHECK( run( { "classify", "--formula", "<~B> p & <B> q" } ).out.rfind( "none\n", 0 ) == 0 );

    auto d = run( { "descriptors", "--model", equiv(), "--state", "v0", "--dir", "fwd" } );
    CHECK( d.code == 0 );
    CHECK( std::count( d.out.begin(), d.out.end(), '\n' ) == 8 );
    CHECK( d.out.find( "(v0, {}, v0) length=2" ) != std::string::npos );
    CHECK( run( { "descriptors", "--model", equiv(), "--state", "nope" } ).code == 2 );
}

TEST_CASE( "scheduler example (advisory)" )
{
    auto sched = fixtures::data_path( "scheduler.kripke" );
    auto code = [ & ]( const char* f ) { return run( { "check", "--model", sched, "--formula", f } ).code; };
    CHECK( code( "[E] !(e0 & e1)" ) == 1 );
    CHECK( code( "[A](r0 -> <A> e0 | <A><A> e0)" ) == 0 );
    CHECK( code( "[A](r0 & r1 -> [A](e0 | e1 | (!r0 & !r1 & !e0 & !e1)))" ) == 0 );
    CHECK( code( "[A](r0 -> [A](e0 | (!r0 & !r1 & !e0 & !e1)))" ) == 1 );
    CHECK( code( "x0 -> <~B> x0" ) == 0 );
}
