#pragma once

#include <cstddef>
#include <vector>

namespace pdlab {

// Time-indexed samples of a process, recorded on a fixed grid rather than
// at every step (a particle run takes n^2 t steps; storing all of them
// is pointless).
template <class T>
struct PathRecord {
  std::vector<double> times;
  std::vector<T> values;

  std::size_t size() const { return times.size(); }
  const T& back() const { return values.back(); }
};

}  // namespace pdlab
