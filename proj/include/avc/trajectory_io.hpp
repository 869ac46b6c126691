#pragma once

#include <iosfwd>

#include "avc/model.hpp"

namespace avc {

/// A {"meta":{...}} line, then one {"t","config","order","labels"?,"base_order"?}
/// object per frame. Orders are written as move positions.
void write_trajectory_jsonl(std::ostream& out, const Trajectory& traj);
/// Throws ParameterError on malformed input.
Trajectory read_trajectory_jsonl(std::istream& in);

/// "t,walker,vertex,move_position" with a header line.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace avc
