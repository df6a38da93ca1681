#pragma once

#include <optional>
#include <vector>

#include "spelect/manipulation.hpp"
#include "spelect/model.hpp"

namespace spelect {

// Distinct positive integers with an even sum 2K.
struct PartitionInstance {
  std::vector<Score> items;

  Score half() const;
};

void validate(const PartitionInstance& inst);

// A subset of the items summing to K, in input order, or nullopt.
std::optional<std::vector<Score>> partition_solve(const PartitionInstance& inst);

// 3-veto with five candidates a,b,c,d,p on axis c,a,p,b,d.
ManipulationInstance reduce_partition_to_3veto5(const PartitionInstance& inst, WinnerModel model);
// (3,1,0) with candidates a,b,p on axis a,p,b.
ManipulationInstance reduce_partition_to_310(const PartitionInstance& inst, WinnerModel model);
// Borda with candidates a,b,p,c on axis a,b,p,c.
ManipulationInstance reduce_partition_to_borda4(const PartitionInstance& inst, WinnerModel model);
// (alpha1, alpha2, 0) with alpha1 > 2*alpha2 > 0, candidates a,b,p on axis a,p,b.
ManipulationInstance reduce_partition_to_dichotomy(const PartitionInstance& inst, Score alpha1, Score alpha2,
                                                   WinnerModel model);

// Factor applied to every weight before the unique-winner adjustment.
Score dichotomy_unique_scale(Score alpha1, Score alpha2);

}  // namespace spelect
