#pragma once

#include <string>
#include <string_view>

#include "mcss/multicomplex.hpp"

namespace mcss {

/// Syntax or consistency error in an MCX document, tagged with its 1-based line.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

/// Reads the line-oriented MCX text format:
///
///     mcx 1
///     ring Q | ring F <p> | ring Z
///     module <a> <b> <rank>
///     map <i> <a> <b> : e11 e12 ... ; e21 ... ; ...
///
/// '#' starts a comment. Declaration order is irrelevant.
Multicomplex parse_mcx(std::string_view text);

/// Canonical MCX text: modules in (a,b) order, then maps in (i,a,b) order.
std::string emit_mcx(const Multicomplex& c);

}  // namespace mcss
