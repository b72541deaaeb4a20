#ifndef LPA_TESTS_SUPPORT_HPP
#define LPA_TESTS_SUPPORT_HPP

#include <map>
#include <tuple>
#include <vector>

#include "lpa/laurent.hpp"
#include "lpa/rational.hpp"

namespace lpa::test {

// Exact rank over Q by fraction-free-ish Gaussian elimination.
inline std::size_t exact_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && sgn(rows[pivot][c]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const Rational inv = 1 / rows[rank][c];
    for (std::size_t j = c; j < cols; ++j) rows[rank][j] *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || sgn(rows[r][c]) == 0) continue;
      const Rational factor = rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[r][j] -= factor * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Assigns stable column indices to (block, row, col, exponent) coordinates of
// a family of Laurent matrices, so stacked realizations become Q-vectors.
class CoordSpace {
public:
  void collect(int block, const LaurentMatrix& m) {
    for (int i = 0; i < m.size; ++i)
      for (int j = 0; j < m.size; ++j)
        for (const auto& [exp, c] : m.at(i, j).coeffs())
          index_.try_emplace(std::make_tuple(block, i, j, exp),
                             static_cast<int>(index_.size()));
  }
  std::size_t size() const { return index_.size(); }
  std::vector<Rational> row(const std::vector<LaurentMatrix>& blocks) const {
    std::vector<Rational> out(index_.size(), Rational(0));
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
      const LaurentMatrix& m = blocks[b];
      for (int i = 0; i < m.size; ++i)
        for (int j = 0; j < m.size; ++j)
          for (const auto& [exp, c] : m.at(i, j).coeffs()) {
            auto it = index_.find(std::make_tuple(b, i, j, exp));
            if (it == index_.end()) throw Error("coordinate outside the collected space");
            out[it->second] = c;
          }
    }
    return out;
  }

private:
  std::map<std::tuple<int, int, int, std::int64_t>, int> index_;
};

}  // namespace lpa::test

#endif
