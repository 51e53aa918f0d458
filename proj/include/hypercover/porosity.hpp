#pragma once

#include <cstddef>
#include <vector>

#include "hypercover/cover.hpp"
#include "hypercover/geometry.hpp"

namespace hypercover {

struct ContactRecord {
    std::size_t neighbor_id;
    int shared_axis;
    double area;  // (n-1)-volume of the shared facet, always > 0 when stored
};

/// Facet-overlap measure between two boxes: positive only when exactly
/// one axis is adjacent (within tol) and every other axis overlaps with
/// positive length; the value is the product of those overlap lengths.
/// 1D boxes share a zero-dimensional facet of measure 1 by convention.
double contact_area(const Hypercube& a, const Hypercube& b, double tol);

/// Facet adjacency for all leaf pairs, symmetric. Brute force with an
/// axis-sorted prune, fine at desk scale.
std::vector<std::vector<ContactRecord>> build_adjacency(const Cover& cover, double tol);

/// One synchronous voting round: every Empty leaf takes the argmax class
/// by summed facet area against currently non-empty leaves (ties ->
/// lowest class). Returns how many leaves were assigned. All votes read
/// the pre-round state.
std::size_t fill_step(Cover& cover, const std::vector<std::vector<ContactRecord>>& adjacency);

/// Repeats fill_step until no Empty leaf remains. Throws if the cover
/// has no class-assigned leaf to seed from.
void fill(Cover& cover);

/// Default facet-matching tolerance for a cover: 1e-9 x largest
/// bounding-box extent.
double default_contact_tol(const Cover& cover);

}  // namespace hypercover
