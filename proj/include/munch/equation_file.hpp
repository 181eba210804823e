#pragma once

#include <string>
#include <string_view>

#include "munch/polynomial.hpp"

namespace munch {

/// Text format, statements separated by ';' or newlines, '#' starts a
/// comment:
///
///   semiring counting            # boolean | min-plus | counting [cap=N]
///                                # | relation [dim=q]
///   vars x y z
///   x = y*y
///   y = z
///   z = 2
///
/// Throws ParseError with a 1-based line and column.
EquationSystem parse_equations(std::string_view text);

/// Canonical text: one statement per line, unit coefficients suppressed,
/// the constant part last.
std::string render_equations(const EquationSystem& sys);

/// "semiring NAME [param]" for an instance that has a file form.
std::string semiring_header(const Semiring& sr);

/// "(v1, v2, ...)" with one literal per variable.
ValueVector parse_vector(const Semiring& sr, std::string_view text,
                         std::size_t expected_size);

}  // namespace munch
