#pragma once

#include "model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace hsmc
{

enum class outcome
{
    holds,
    fails,
};

[[nodiscard]] inline const char* to_string( outcome o ) { return o == outcome::holds ? "holds" : "fails"; }

// Result of a universal model-checking query. A counterexample is present
// iff the result is fails; it is an initial track of the checked structure.
struct verdict
{
    outcome result = outcome::holds;
    std::optional< track > counterexample;
    std::string engine;
    std::map< std::string, std::uint64_t > stats;

    [[nodiscard]] bool holds() const { return result == outcome::holds; }
};

} // namespace hsmc
