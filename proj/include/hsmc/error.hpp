#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hsmc
{

// All library failures derive from hsmc::error so front ends can catch one type.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text. `line` and `column` are 1-based; 0 means unknown.
class syntax_error : public error
{
    std::size_t _line;
    std::size_t _column;

public:
    syntax_error( const std::string& what, std::size_t line, std::size_t column = 0 )
            : error{ format( what, line, column ) }, _line{ line }, _column{ column }
    {}

    [[nodiscard]] std::size_t line() const { return _line; }
    [[nodiscard]] std::size_t column() const { return _column; }

private:
    static std::string format( const std::string& what, std::size_t line, std::size_t column )
    {
        std::string out = "syntax error";
        if ( line != 0 )
            out += " at line " + std::to_string( line );
        if ( column != 0 )
            out += ( line != 0 ? ", column " : " at column " ) + std::to_string( column );
        return out + ": " + what;
    }
};

enum class validation_reason
{
    not_left_total,
    unknown_state,
    unknown_proposition,
    missing_init,
    duplicate_state,
};

[[nodiscard]] inline const char* to_string( validation_reason r )
{
    switch ( r )
    {
        case validation_reason::not_left_total: return "NotLeftTotal";
        case validation_reason::unknown_state: return "UnknownState";
        case validation_reason::unknown_proposition: return "UnknownProposition";
        case validation_reason::missing_init: return "MissingInit";
        case validation_reason::duplicate_state: return "DuplicateState";
    }
    return "?";
}

// A Kripke structure violates one of its invariants. `subject` names the
// offending state or proposition where there is one.
class validation_error : public error
{
    validation_reason _reason;
    std::string _subject;

public:
    validation_error( validation_reason reason, std::string subject )
            : error{ std::string{ to_string( reason ) } + ( subject.empty() ? "" : "(" + subject + ")" ) },
              _reason{ reason }, _subject{ std::move( subject ) }
    {}

    [[nodiscard]] validation_reason reason() const { return _reason; }
    [[nodiscard]] const std::string& subject() const { return _subject; }
};

class invalid_track : public error
{
public:
    using error::error;
};

class unknown_modality : public syntax_error
{
public:
    using syntax_error::syntax_error;
};

class not_in_fragment : public error
{
public:
    using error::error;
};

class not_propositional : public error
{
public:
    using error::error;
};

class not_witnessed : public error
{
public:
    using error::error;
};

class bound_too_small : public error
{
public:
    using error::error;
};

class out_of_range_literal : public syntax_error
{
public:
    using syntax_error::syntax_error;
};

class non_prenex : public error
{
public:
    using error::error;
};

class too_many_variables : public error
{
public:
    using error::error;
};

} // namespace hsmc
