#pragma once

#include "lieq/classify.hpp"

#include <string>
#include <string_view>

namespace lieq {

/// Key-value system description:
///
///   vars = x y
///   drift = y^2, 0
///   control_1 = 0, 1
///   equilibrium = 0, 0      (optional)
///   assert_complete = 0 1   (optional; 0 = drift, k = control k)
///
/// '#' starts a comment; blank lines are ignored.  Throws FileError or
/// ParseError on malformed input.
SystemSpec parse_system_text(std::string_view text);

SystemSpec parse_system_file(const std::string& path);

/// Canonical text form; parses back to an equal spec.
std::string write_system_text(const SystemSpec& s);

}  // namespace lieq
