#pragma once

#include <cstdint>
#include <utility>

#include "ergm/graph.hpp"
#include "ergm/graphon.hpp"
#include "ergm/motif.hpp"

namespace ergm {

// Number of vertex maps V(H) -> V(G), injective or not, sending every edge of
// H onto an edge of G. SizeError if H has more than kMaxCountingOrder
// vertices or n^l does not fit in 63 bits.
std::uint64_t hom_count(const Motif& h, const SimpleGraph& g);

// hom_count / n^l.
double hom_density(const Motif& h, const SimpleGraph& g);

// hom_count(H, G with {i,j} toggled) - hom_count(H, G), counting only maps
// whose image uses the pair {i,j}. Edge and triangle motifs take closed-form
// paths (2 and 6 * common neighbors).
long long edge_toggle_delta(const Motif& h, const SimpleGraph& g, int i, int j);

namespace detail {
// General enumeration path of edge_toggle_delta, exposed for testing.
long long edge_toggle_delta_enumerate(const Motif& h, const SimpleGraph& g, int i, int j);
}  // namespace detail

// n-block 0/1 step graphon of G: block (i,j) is 1 iff {i,j} is an edge.
StepGraphon empirical_graphon(const SimpleGraph& g);

}  // namespace ergm
