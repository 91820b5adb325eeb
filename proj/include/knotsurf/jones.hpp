#pragma once

#include "knotsurf/diagram.hpp"
#include "knotsurf/khovanov.hpp"
#include "knotsurf/tl.hpp"

namespace knotsurf {

// Cabled-region skein element in TL_{2n}: bottom boundary = the region's W
// end read N->S, top = E end read N->S.
TLElement region_element(const KnotDiagram& d, int region, int n,
                         BracketConvention conv = BracketConvention::Verbatim);

// Bracket of the n-cabled diagram, optionally with one Jones-Wenzl projector
// inserted into the cable (on the NW bundle of region 0's W end).
RationalFunction cabled_bracket(const KnotDiagram& d, int n, bool with_projector,
                                BracketConvention conv = BracketConvention::Verbatim,
                                long long guard = 4000000);

// Oriented writhe sign of a crossing under the traversal orientation.
int oriented_sign(const KnotDiagram& d, int crossing);

// Colored Jones polynomial, normalized so the unknot gives (q+q^-1)^n.
LaurentPoly colored_jones(const KnotDiagram& d, int n,
                          BracketConvention conv = BracketConvention::Verbatim,
                          long long guard = 4000000);

}  // namespace knotsurf
