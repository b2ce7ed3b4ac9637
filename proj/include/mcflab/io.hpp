#pragma once

#include <iosfwd>
#include <string>

#include "mcflab/generators.hpp"
#include "mcflab/mmcc.hpp"
#include "mcflab/netsimplex.hpp"
#include "mcflab/ssp.hpp"

namespace mcflab {

// DIMACS min-cost flow, 1-based node ids:
//   c <comment>
//   p min <nodes> <arcs>
//   n <id> <budget>                  (nonzero budgets only)
//   a <src> <dst> 0 <cap> <cost>
// Rationals are written as num/den; an unbounded capacity is written "inf".
// Lower bounds must be 0.

FlowNetwork read_dimacs(std::istream& in);
void write_dimacs(std::ostream& out, const FlowNetwork& net);
FlowNetwork read_dimacs_file(const std::string& path);
void write_dimacs_file(const std::string& path, const FlowNetwork& net);

// Smoothed instances extend DIMACS with
//   phi <q>
//   i <src> <dst> <lo> <width>       (one per arc)
//   f <src> <dst> <value>            (nonzero starting flow)
//   r <src> <dst> <rank>             (nonzero leaving ranks)
//   root <id>                        (initial basis root)
//   t <arc> ...                      (initial tree arcs, 1-based arc order)
//   u <arc> ...                      (initial upper-bound arcs)
// The cost column of an arc line carries the interval's lower end.

SmoothedInstance read_smoothed(std::istream& in);
void write_smoothed(std::ostream& out, const SmoothedInstance& inst);
SmoothedInstance read_smoothed_file(const std::string& path);
void write_smoothed_file(const std::string& path, const SmoothedInstance& inst);

/// Flow files are lists of "f <src> <dst> <value>" lines; absent edges carry 0.
Flow read_flow(std::istream& in, const FlowNetwork& net);
void write_flow(std::ostream& out, const FlowNetwork& net, const Flow& f);

// Per-iteration trace exports.
void write_trace_csv(std::ostream& out, const MmccTrace& trace);
void write_trace_csv(std::ostream& out, const NsTrace& trace);
void write_trace_csv(std::ostream& out, const SspTrace& trace);

}  // namespace mcflab
