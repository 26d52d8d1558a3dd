#pragma once

#include <iosfwd>
#include <string>

#include "fourap/space_function.hpp"

namespace fourap {

// Set file format: a one-line JSON header {"p":5,"n":3,"count":62} followed
// by the member point indices, one per line, in increasing order. Sets are
// stored over the full space F_p^n.
void write_point_set(std::ostream& out, const PointSet& a);
PointSet read_point_set(std::istream& in);

void save_point_set(const std::string& path, const PointSet& a);
PointSet load_point_set(const std::string& path);

}  // namespace fourap
