#pragma once

#include <iosfwd>
#include <string>

#include "exst/model.hpp"

namespace exst {

/// Line-oriented model description. '#' starts a comment; a section header
/// may carry its first key on the same line:
///
///   [group]      invariants = 2,2            # or: literal = Z2xZ2
///   [complex]    vertices = 4
///                maximal = 0 1 2 | 0 1 3 | 0 2 3 | 1 2 3
///   [excitation] p = 1
///                generators = standard       # or residue lists: 1,0 | 0,1
///
/// Alternatively an [abstract] section lists operators directly, one per
/// line, as `label ; boundary-residues ; support-point-ids`; [group] then
/// gives the ambient chain group itself.
ExcitationModel parse_model_file(std::istream& in,
                                 const ResourceLimits& limits = default_limits());
ExcitationModel load_model_file(const std::string& path,
                                const ResourceLimits& limits = default_limits());

}  // namespace exst
