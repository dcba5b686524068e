#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "mosp/model.hpp"

namespace mosp {

// A nondominated front sorted ascending by the first objective, with every
// point componentwise at or below the reference.
struct Front {
  std::vector<ObjectivePair> points;
  ObjectivePair reference{1.0, 1.0};
};

// Deduplicates, drops dominated points and sorts; the result satisfies the
// Front invariants.
Front extract_front(std::span<const ObjectivePair> points, ObjectivePair reference = {1.0, 1.0});

// Exact dominated area in 2-D by a single sweep over the sorted points.
// Throws if a point exceeds the reference.
double hypervolume(const Front& front);

// Reporting convention: hypervolume scaled by 1000.
double report_hv(const Front& front);

void write_front_csv(std::ostream& out, const Front& front);
Front read_front_csv(std::istream& in, ObjectivePair reference = {1.0, 1.0});

}  // namespace mosp
