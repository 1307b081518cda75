#pragma once

#include <span>
#include <vector>

#include "stagegame/types.hpp"

namespace stagegame {

/// Finite zero-sum matrix game, row player maximizing.  Row-major storage.
struct MatrixGame {
  int rows = 0;
  int cols = 0;
  std::vector<double> entries;

  MatrixGame() = default;
  MatrixGame(int m, int n) : rows(m), cols(n), entries(std::size_t(m) * n, 0.0) {}
  MatrixGame(int m, int n, std::vector<double> data);
  static MatrixGame from_rows(std::initializer_list<std::initializer_list<double>> rows);

  double at(int i, int j) const { return entries[std::size_t(i) * cols + j]; }
  double& at(int i, int j) { return entries[std::size_t(i) * cols + j]; }
  void validate() const;
};

struct MinimaxSolution {
  double value = 0.0;
  std::vector<double> x;  // row mixed strategy
  std::vector<double> y;  // column mixed strategy
};

/// Value and optimal strategies of the game.  1xN and Mx1 shapes are solved
/// by direct scan; everything else goes through a two-phase simplex on
///   max v  s.t.  A^T x >= v 1,  1^T x = 1,  x >= 0
/// with Bland's rule, reading y off the dual.
MinimaxSolution solve_matrix_game(const MatrixGame& game);

/// Value only.  Same solver, no strategy extraction, no allocation on the
/// steady state (thread-local workspace).  `a` is row-major m x n.
double matrix_game_value(const double* a, int m, int n);

inline double matrix_game_value(const MatrixGame& g) {
  return matrix_game_value(g.entries.data(), g.rows, g.cols);
}

/// Largest gain either player can get from a pure deviation against (x, y):
/// max( max_i (Ay)_i - xAy ,  xAy - min_j (x^T A)_j ).  Zero at equilibrium.
double best_pure_check(const MatrixGame& game, std::span<const double> x,
                       std::span<const double> y);

}  // namespace stagegame
