#pragma once

#include <optional>
#include <vector>

#include "qf/classify.hpp"
#include "qf/rack.hpp"

namespace qf {

/// Witness for the type-D condition: a two-component subrack R | S with
/// r in R, s in S and r |> (s |> (r |> s)) != s.
struct TypeDWitness {
  int r = 0;
  int s = 0;
  std::vector<int> subrack;          // ascending
  std::vector<int> component_of_r;   // ascending
  std::vector<int> component_of_s;   // ascending
};

/// Scans ordered pairs (r, s) in row-major order; for a pair violating the
/// displayed inequality, the closure <r, s> is split into components, and a
/// witness is returned when r and s land in distinct ones. Deterministic
/// first witness; nullopt when no pair works.
std::optional<TypeDWitness> is_type_d(const RackTable& x);

/// Number of records with a witness.
std::size_t type_d_census(const std::vector<QuandleRecord>& records);

}  // namespace qf
