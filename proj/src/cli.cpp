#include "hsmc/cli.hpp"
#include "hsmc/class_checker.hpp"
#include "hsmc/descriptor_checker.hpp"
#include "hsmc/error.hpp"
#include "hsmc/logic.hpp"
#include "hsmc/oracle.hpp"
#include "hsmc/reductions.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hsmc::cli
{

namespace
{

using json = nlohmann::ordered_json;

class input_failure : public error
{
public:
    using error::error;
};

std::string read_file( const std::string& path )
{
    std::ifstream in{ path, std::ios::binary };
    if ( !in )
        throw input_failure( "cannot read " + path );
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file( const std::string& path, const std::string& text )
{
    std::ofstream out{ path, std::ios::binary };
    if ( !out || !( out << text ) )
        throw input_failure( "cannot write " + path );
}

struct report
{
    std::string result;
    std::string engine;
    std::optional< std::vector< std::string > > counterexample;
    std::map< std::string, std::uint64_t > stats;
    std::optional< std::size_t > bound;
    std::optional< std::map< std::string, bool > > assignment;
    double elapsed_ms = 0;
};

struct check_options
{
    std::string model;
    std::string formula_text;
    std::string formula_file;
    std::string engine = "auto";
    std::optional< std::size_t > bound;
    bool json = false;
    bool decode = false;
};

void emit( const report& r, bool as_json, std::ostream& out )
{
    if ( as_json )
    {
        json j;
        j[ "result" ] = r.result;
        j[ "engine" ] = r.engine;
        j[ "counterexample" ] = r.counterexample ? json( *r.counterexample ) : json( nullptr );
        json stats = json::object();
        for ( const auto& [ key, value ] : r.stats )
            stats[ key ] = value;
        stats[ "elapsed_ms" ] = r.elapsed_ms;
        j[ "stats" ] = stats;
        j[ "bound" ] = r.bound ? json( *r.bound ) : json( nullptr );
        if ( r.assignment )
            j[ "assignment" ] = *r.assignment;
        out << j.dump() << '\n';
        return;
    }
    out << "result: " << r.result << '\n' << "engine: " << r.engine << '\n';
    if ( r.bound )
        out << "bound: " << *r.bound << '\n';
    if ( r.counterexample )
    {
        out << "counterexample:";
        for ( const auto& s : *r.counterexample )
            out << ' ' << s;
        out << '\n';
    }
    if ( r.assignment )
    {
        out << "assignment:";
        for ( const auto& [ name, value ] : *r.assignment )
            out << ' ' << name << '=' << ( value ? 1 : 0 );
        out << '\n';
    }
    out << "stats:";
    for ( const auto& [ key, value ] : r.stats )
        out << ' ' << key << '=' << value;
    out << " elapsed_ms=" << r.elapsed_ms << '\n';
}

void check_letters( const kripke_structure& k, const formula& f )
{
    for ( const auto& name : prop_letters( f ) )
        if ( !k.find_prop( name ) )
            throw validation_error( validation_reason::unknown_proposition, name );
}

std::vector< std::string > validated_counterexample( const kripke_structure& k, const track& rho )
{
    if ( rho.size() < 2 || rho.fst() != k.init() || !is_track( k, rho.states() ) )
        throw error( "internal error: engine returned an invalid counterexample" );
    return track_names( k, rho );
}

int cmd_check( const check_options& opt, std::ostream& out )
{
    auto started = std::chrono::steady_clock::now();
    auto k = parse_kripke( read_file( opt.model ) );
    std::string text = opt.formula_text;
    if ( !opt.formula_file.empty() )
        text = read_file( opt.formula_file );
    auto f = parse_formula( text );
    check_letters( k, f );

    auto primitive = desugar( f );
    auto frag = classify( primitive );
    auto engine = opt.engine;
    if ( engine == "auto" )
        engine = frag.forall_aabe ? "descriptor" : frag.ab_bar ? "class" : "oracle";

    report r;
    r.engine = engine;
    int code = exit_code::holds;
    std::optional< track > cex;

    if ( engine == "descriptor" || engine == "class" )
    {
        auto v = engine == "descriptor" ? model_check_univ( k, primitive ) : check_ab( k, primitive );
        r.result = to_string( v.result );
        r.stats = v.stats;
        cex = v.counterexample;
        code = v.holds() ? exit_code::holds : exit_code::fails;
    }
    else
    {
        auto exact_bound = default_bound( k, primitive );
        auto bound = opt.bound.value_or( exact_bound );
        auto v = model_check_bounded( k, primitive, bound );
        r.bound = bound;
        r.stats[ "default_bound" ] = exact_bound;
        cex = v.counterexample;
        // Bounded refutations of universal formulas are genuine, and at the
        // default bound no genuine refutation is missed.
        bool exact = frag.forall_aabe && ( !v.value || bound >= exact_bound );
        if ( exact )
        {
            r.result = v.value ? "holds" : "fails";
            code = v.value ? exit_code::holds : exit_code::fails;
        }
        else
        {
            r.result = v.value ? "approximate-true" : "approximate-false";
            code = exit_code::approximate;
        }
    }

    if ( cex && code == exit_code::fails )
    {
        r.counterexample = validated_counterexample( k, *cex );
        if ( opt.decode )
            r.assignment = decode_assignment( k, *cex );
    }
    r.elapsed_ms = std::chrono::duration< double, std::milli >( std::chrono::steady_clock::now() - started ).count();
    emit( r, opt.json, out );
    return code;
}

void write_instance( const instance& inst, const std::string& model_path, const std::string& formula_path,
                     std::ostream& out )
{
    auto text = write_kripke( inst.model );
    // Generated files must load back unchanged.
    if ( !( parse_kripke( text ) == inst.model ) )
        throw error( "internal error: generated model does not round-trip" );
    write_file( model_path, text );
    write_file( formula_path, to_string( inst.property ) + "\n" );
    out << "states=" << inst.model.num_states() << " edges=" << inst.model.num_edges()
        << " letters=" << prop_letters( inst.property ).size() << '\n';
}

} // namespace

int run( const std::vector< std::string >& args, std::ostream& out, std::ostream& err )
{
    CLI::App app{ "Model checker for fragments of Halpern-Shoham interval temporal logic", "hsmc" };
    app.require_subcommand( 1 );

    check_options check;
    auto* check_cmd = app.add_subcommand( "check", "Check a formula against a Kripke structure" );
    check_cmd->add_option( "--model", check.model, "Kripke structure file" )->required();
    auto* text_opt = check_cmd->add_option( "--formula", check.formula_text, "Formula text" );
    auto* file_opt = check_cmd->add_option( "--formula-file", check.formula_file, "File holding the formula" );
    text_opt->excludes( file_opt );
    check_cmd->add_option( "--engine", check.engine, "auto, descriptor, class or oracle" )
            ->check( CLI::IsMember( { "auto", "descriptor", "class", "oracle" } ) );
    check_cmd->add_option( "--bound", check.bound, "Track length bound for the oracle" )
            ->check( CLI::Range( std::size_t{ 2 }, std::numeric_limits< std::size_t >::max() ) );
    check_cmd->add_flag( "--json", check.json, "Machine-readable output" );
    check_cmd->add_flag( "--decode-assignment", check.decode,
                         "On failure, print the assignment encoded by the counterexample" );

    std::string in_path, out_model, out_formula;
    auto* sat_cmd = app.add_subcommand( "gen-sat", "Build the model-checking instance of a DIMACS CNF" );
    sat_cmd->add_option( "--dimacs", in_path, "DIMACS file" )->required();
    sat_cmd->add_option( "--out-model", out_model, "Output Kripke file" )->required();
    sat_cmd->add_option( "--out-formula", out_formula, "Output formula file" )->required();

    auto* qbf_cmd = app.add_subcommand( "gen-qbf", "Build the model-checking instance of a QDIMACS QBF" );
    qbf_cmd->add_option( "--qdimacs", in_path, "QDIMACS file" )->required();
    qbf_cmd->add_option( "--out-model", out_model, "Output Kripke file" )->required();
    qbf_cmd->add_option( "--out-formula", out_formula, "Output formula file" )->required();

    std::string classify_text;
    auto* classify_cmd = app.add_subcommand( "classify", "Print the fragments a formula belongs to" );
    classify_cmd->add_option( "--formula", classify_text, "Formula text" )->required();

    std::string model_path, state_name, dir = "fwd";
    auto* desc_cmd = app.add_subcommand( "descriptors", "List witnessed descriptor elements of a state" );
    desc_cmd->add_option( "--model", model_path, "Kripke structure file" )->required();
    desc_cmd->add_option( "--state", state_name, "State name" )->required();
    desc_cmd->add_option( "--dir", dir, "fwd or bwd" )->check( CLI::IsMember( { "fwd", "bwd" } ) );

    try
    {
        std::vector< std::string > reversed( args.rbegin(), args.rend() );
        app.parse( reversed );
    }
    catch ( const CLI::CallForHelp& )
    {
        out << app.help();
        return 0;
    }
    catch ( const CLI::ParseError& e )
    {
        if ( e.get_exit_code() == 0 )
        {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return exit_code::input_error;
    }

    try
    {
        if ( check_cmd->parsed() )
        {
            if ( check.formula_text.empty() && check.formula_file.empty() )
            {
                err << "error: one of --formula or --formula-file is required\n";
                return exit_code::input_error;
            }
            return cmd_check( check, out );
        }
        if ( sat_cmd->parsed() )
        {
            auto cnf = parse_dimacs( read_file( in_path ) );
            write_instance( build_sat_instance( cnf ), out_model, out_formula, out );
            return 0;
        }
        if ( qbf_cmd->parsed() )
        {
            auto q = parse_qdimacs( read_file( in_path ) );
            for ( const auto& w : q.warnings )
                err << "warning: " << w << '\n';
            write_instance( build_qbf_instance( q.qbf ), out_model, out_formula, out );
            return 0;
        }
        if ( classify_cmd->parsed() )
        {
            auto frag = classify( desugar( parse_formula( classify_text ) ) );
            auto flags = frag.flags();
            out << ( flags.empty() ? "none" : flags ) << '\n';
            out << "modalities: " << frag.modality_list() << '\n';
            return 0;
        }
        if ( desc_cmd->parsed() )
        {
            auto k = parse_kripke( read_file( model_path ) );
            auto v = k.state( state_name );
            descriptor_search search{ k, v, dir == "fwd" ? direction::forward : direction::backward };
            for ( const auto& d : search.descriptors() )
            {
                auto i = search.find( dir == "fwd" ? d.v_fin : d.v_in, d.interior );
                out << to_string( k, d ) << " length=" << search.nodes()[ *i ].length << '\n';
            }
            return 0;
        }
    }
    catch ( const not_in_fragment& e )
    {
        err << "error: " << e.what() << '\n';
        return exit_code::outside_fragment;
    }
    catch ( const std::exception& e )
    {
        err << "error: " << e.what() << '\n';
        return exit_code::input_error;
    }
    return exit_code::input_error;
}

} // namespace hsmc::cli
