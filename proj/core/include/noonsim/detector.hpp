#pragma once

#include <cstddef>
#include <string>

namespace noonsim {

/// A point photodetector: one grid cell sampled at one time. `fold` is the number of
/// photodetections registered at this detector (N/2 for an N-photon coincidence).
struct DetectorSpec {
  std::size_t cell_index = 0;
  double time = 0.0;
  std::string component = "z";
  int fold = 1;
};

}  // namespace noonsim
