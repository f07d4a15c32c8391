#pragma once

#include <string>
#include <vector>

#include "pdesk/design.hpp"
#include "pdesk/diag.hpp"
#include "pdesk/netlist.hpp"

namespace pdesk {

enum class ViolationKind {
  MultiDriver,
  OffSite,
  OffRow,
  OutOfCore,
  UnconnectedInput,
  Overlap,
  Unplaced,
};

struct IntegrityViolation {
  ViolationKind kind;
  int a = -1;  // instance or net id, by kind
  int b = -1;  // second instance for Overlap (a < b)
  std::string detail;
};

// Links a parsed netlist against the technology. All instances start
// unplaced; VDD/VSS special nets are created empty. Dangling wires are
// retained and reported on `log`.
Design build_design(const TechLibrary& tech, const NetlistAST& netlist, Log& log);

// Instances whose bounding boxes intersect `window`, in id order. Unplaced
// instances are never returned. Backed by a uniform bucket grid; correctness
// is defined by the linear-scan oracle.
std::vector<int> query_region(const Design& design, const Rect& window);

// Multi-driver nets, off-row/off-site placed core cells, out-of-core
// placements, unconnected instance inputs. Violations are data, not errors.
std::vector<IntegrityViolation> validate(const Design& design);

std::string violation_str(const Design& design, const IntegrityViolation& v);

}  // namespace pdesk
