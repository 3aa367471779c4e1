#pragma once

#include "lk/lattice.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace lk {

// Homology is computed on the subcomplex of generators whose whole cube
// lies in the margin-B box, modulo U^N.

using ProfileKey = std::pair<CharVector, Rational>;  // (spin^c representative, grading)

// dim H(F_a) jumps to `dim` at level a; below the first step it is 0.
struct ProfileStep {
  Rational level;
  int dim = 0;
  bool operator==(const ProfileStep&) const = default;
};

using Profiles = std::map<ProfileKey, std::vector<ProfileStep>>;

// Column reduction in alpha order, parallel over (spin^c, grading) blocks.
Profiles compute_profiles(const Lattice& lattice, int margin, int ucap);
// Dense rank per alpha level, one block at a time. Independent oracle.
Profiles compute_profiles_reference(const Lattice& lattice, int margin, int ucap);

int total_dim(const std::vector<ProfileStep>& steps);
int dim_at(const std::vector<ProfileStep>& steps, const Rational& level);

struct HomologyEntry {
  CharVector spinc;
  Rational grading;
  int dim = 0;
  bool stable = false;
};

struct ProfileEntry {
  CharVector spinc;
  Rational grading;
  std::vector<ProfileStep> steps;
  bool stable = false;
};

struct HomologyTable {
  int margin = 0, ucap = 0;
  std::optional<Rational> floor;  // entries at or below this grading may be box artifacts
  std::vector<HomologyEntry> entries;  // by spin^c, then grading descending
};

struct FiltrationTable {
  int margin = 0, ucap = 0;
  std::optional<Rational> floor;
  std::vector<ProfileEntry> entries;
};

// Every generator whose cube leaves the margin-B box has grading at most
// this bound, so the box homology is exact strictly above it. Empty when
// there are no framed vertices and nothing is truncated.
std::optional<Rational> truncation_floor(const Lattice& lattice, int margin);

// Stable: above the floor and unchanged at (B+1, N+1).
HomologyTable truncated_homology(const Lattice& lattice, int margin, int ucap);
FiltrationTable filtration_profile(const Lattice& lattice, int margin, int ucap);
// Both tables from one pair of profile computations.
std::pair<HomologyTable, FiltrationTable> homology_and_profile(const Lattice& lattice, int margin, int ucap);

}  // namespace lk
