#pragma once

#include <set>
#include <string>
#include <vector>

#include "fpl/errors.hpp"

namespace fpl {

/// Total function on the point set, given as an image array:
/// image[i] is the index of the image of point i.
struct SelfMap {
  std::vector<int> image;

  int size() const { return static_cast<int>(image.size()); }
  int operator()(int i) const { return image[i]; }

  void check_against(int n) const {
    if (size() != n)
      throw InvalidInput("self-map image length " + std::to_string(size()) +
                         " does not match point count " + std::to_string(n));
    for (int v : image)
      if (v < 0 || v >= n)
        throw InvalidInput("self-map image entry " + std::to_string(v) + " out of range");
  }

  SelfMap permuted(const std::vector<int>& perm) const {
    SelfMap out;
    out.image.resize(image.size());
    for (int i = 0; i < size(); ++i) out.image[perm[i]] = perm[image[i]];
    return out;
  }
};

inline std::set<int> fixed_points(const SelfMap& map) {
  std::set<int> out;
  for (int i = 0; i < map.size(); ++i)
    if (map.image[i] == i) out.insert(i);
  return out;
}

/// Points of prime period 2: T(T(x)) = x with Tx != x.
inline std::set<int> period2_points(const SelfMap& map) {
  std::set<int> out;
  for (int i = 0; i < map.size(); ++i)
    if (map.image[i] != i && map.image[map.image[i]] == i) out.insert(i);
  return out;
}

}  // namespace fpl
