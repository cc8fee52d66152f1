#pragma once

#include "hsmc/model.hpp"

#include <string>

namespace fixtures
{

#ifndef HSMC_DATA_DIR
#define HSMC_DATA_DIR "data"
#endif

inline std::string data_path( const std::string& name ) { return std::string{ HSMC_DATA_DIR } + "/" + name; }

// Two states, complete graph, mu(v0) = {p}, mu(v1) = {q}.
inline hsmc::kripke_structure equiv()
{
    return hsmc::kripke_builder{}
            .props( { "p", "q" } )
            .state( "v0", { "p" } )
            .state( "v1", { "q" } )
            .edge( "v0", "v0" )
            .edge( "v0", "v1" )
            .edge( "v1", "v0" )
            .edge( "v1", "v1" )
            .init( "v0" )
            .build();
}

inline hsmc::track tr( const hsmc::kripke_structure& k, std::vector< std::string > names )
{
    return hsmc::track_from_names( k, names );
}

} // namespace fixtures
