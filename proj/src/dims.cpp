#include "wpg/dims.hpp"

namespace wpg::paths {

PathGenerator fixed_heads(int m) {
  if (m < 0) raise(errc::invalid_parameter, "head count must be >= 0");
  return [m](long n) {
    int h = static_cast<int>(std::min<long>(n, m));
    return GridPoint{h, static_cast<int>(n) - h};
  };
}

PathGenerator fixed_tails(int m) {
  if (m < 0) raise(errc::invalid_parameter, "tail count must be >= 0");
  return [m](long n) {
    int t = static_cast<int>(std::min<long>(n, m));
    return GridPoint{static_cast<int>(n) - t, t};
  };
}

PathGenerator ratio(long num, long den) {
  if (num < 0 || den <= 0 || num > den) raise(errc::invalid_parameter, "ratio must satisfy 0 <= num/den <= 1");
  return [num, den](long n) {
    int h = static_cast<int>(n * num / den);
    return GridPoint{h, static_cast<int>(n) - h};
  };
}

PathGenerator diagonal() { return ratio(1, 2); }

}  // namespace wpg::paths
