#pragma once

#include <cstddef>
#include <vector>

#include "ntacert/formula.hpp"
#include "ntacert/interval.hpp"

namespace ntacert::topdeg {

inline constexpr std::size_t kDefaultBudget = 100000;

enum class Status { Degree, BoundaryZeroUnverified, BudgetExceeded };

const char* status_name(Status s);

struct DegreeResult {
  Status status = Status::BoundaryZeroUnverified;
  int degree = 0;            // meaningful only when status == Degree
  std::size_t subfaces = 0;  // budget units consumed

  bool ok() const { return status == Status::Degree; }
  bool nonzero() const { return ok() && degree != 0; }
};

/// Brouwer degree of F on the box with respect to 0.  F must have one
/// component per box dimension and only use box variables.  An empty system
/// on the empty box has degree 1.
DegreeResult degree(const std::vector<Term>& f, const ia::NamedBox& box, std::size_t budget = kDefaultBudget);

/// True only if every boundary face is covered by sub-faces on which some
/// component provably excludes 0.
/// Degree when the boundary is covered, else the failure reason.
Status check_boundary(const std::vector<Term>& f, const ia::NamedBox& box, std::size_t budget = kDefaultBudget);

bool verify_boundary_nonzero(const std::vector<Term>& f, const ia::NamedBox& box,
                             std::size_t budget = kDefaultBudget);

}  // namespace ntacert::topdeg
