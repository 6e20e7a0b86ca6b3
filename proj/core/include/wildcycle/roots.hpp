#pragma once

#include "wildcycle/cycpoly.hpp"

#include <utility>
#include <vector>

namespace wildcycle {

struct RootSet {
    int order = 1;                                  // field Q(zeta_order) the roots live in
    std::vector<std::pair<Cyclotomic, int>> roots;  // distinct roots with multiplicity
    CycPoly remaining;                              // cofactor without roots in the field
    int count() const
    {
        int c = 0;
        for (const auto& r : roots) c += r.second;
        return c;
    }
};

// all roots of p lying in Q(zeta_order); order must be a multiple of the coefficient orders
RootSet roots_in_field(const CycPoly& p, int order);
// roots of p, enlarging the cyclotomic field when needed; throws
// UnsupportedAlgebraicExtension when p does not split over any small cyclotomic field
RootSet split_completely(const CycPoly& p, int base_order);

}  // namespace wildcycle
