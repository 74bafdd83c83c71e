#ifndef SPINORLAB_MAPSPEC_HPP
#define SPINORLAB_MAPSPEC_HPP

#include <iosfwd>
#include <string>

#include "spinorlab/clifford.hpp"

namespace spinorlab {

/// Line-oriented map description:
///
///   ambient <rows> [<cols>]
///   basis <name> <count>
///   <count matrices, rows x cols complex literals `a+bi` per line>
///   [basis <name> <count> ...]     second basis = codomain (optional)
///   coeffs
///   <codomain.count x domain.count complex literals>
///
/// With a single basis section the map is an endomorphism. Parse failures
/// raise ParseError carrying line and column.
SubspaceMap read_map_spec(std::istream& in);
SubspaceMap read_map_spec_file(const std::string& path);

std::string write_map_spec(const SubspaceMap& map);

/// One complex literal: 1, -2.5, 3i, -1e-3+0.5i, ...
Complex parse_complex(const std::string& token, int line, int column);
std::string format_complex(Complex z);

}  // namespace spinorlab

#endif
