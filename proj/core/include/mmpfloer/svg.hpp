#ifndef MMPFLOER_SVG_HPP
#define MMPFLOER_SVG_HPP

#include <mmpfloer/mmp.hpp>
#include <mmpfloer/polytope.hpp>

#include <string>

namespace mmpfloer::svg {

/// Timeline strip for a 2-dimensional toric running: one panel per
/// inter-transition interval showing the shrunken polytope, the regular
/// fiber point of the upcoming transition, and a time/kind label.
/// Deterministic output; throws for dim != 2.
std::string render_toric_timeline(const polytope::Polytope& P);

}  // namespace mmpfloer::svg

#endif
