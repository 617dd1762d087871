#include "witten/grid.hpp"

namespace witten {

GridSpec build_grid(int d, int n, double a, std::int64_t guard) {
  if (d < 1) throw std::invalid_argument("build_grid: dim must be >= 1");
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("build_grid: N must be even and >= 4");
  if (a <= 0.0) throw std::invalid_argument("build_grid: a must be > 0");
  GridSpec g{d, n, a};
  if (g.size() > guard)
    throw std::invalid_argument("build_grid: N^d exceeds the memory guard");
  return g;
}

}  // namespace witten
