#pragma once

#include "interp/graph.hpp"
#include "interp/rational.hpp"

namespace interp {

/// Four-point hyperbolicity constant of a connected graph, in units where an
/// ordinary edge (weight kUnitWeight) has length 1: the largest
/// (S1 - S2) / 2 over all 4-tuples, S1 >= S2 >= S3 being the three pairwise
/// distance sums. Throws RuntimeFailure on disconnected input and
/// InvalidArgument above `max_vertices`.
Rational estimate_delta(const MetricGraph& g, std::size_t max_vertices = 2000);

}  // namespace interp
