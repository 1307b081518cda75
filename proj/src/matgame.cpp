#include "stagegame/matgame.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

namespace stagegame {

namespace {

constexpr double kPivotTol = 1e-10;  // feasibility / optimality tolerance
constexpr int kMaxPivots = 50'000;

// Dense tableau for the primal LP
//   max vp - vm
//   s.t.  -sum_i A[i][j] x_i + vp - vm + s_j = 0          (row j = 0..n-1)
//         sum_i x_i + art = 1                             (row n)
// Columns: x_0..x_{m-1}, vp, vm, s_0..s_{n-1}, art, rhs.
// Two cost rows are carried through every pivot: phase-2 reduced costs at
// row n+1 and phase-1 reduced costs at row n+2.
struct Workspace {
  std::vector<double> tab;
  std::vector<int> basis;
  int m = 0, n = 0, ncols = 0, nrows = 0;

  double* row(int r) { return tab.data() + std::size_t(r) * ncols; }

  void init(const double* a, int m_, int n_) {
    m = m_;
    n = n_;
    ncols = m + n + 3 + 1;  // + rhs column
    nrows = n + 3;          // n constraint rows, sum row, 2 cost rows
    tab.assign(std::size_t(nrows) * ncols, 0.0);
    basis.assign(n + 1, 0);

    const int vp = m, vm = m + 1, s0 = m + 2, art = m + 2 + n, rhs = ncols - 1;
    for (int j = 0; j < n; ++j) {
      double* r = row(j);
      for (int i = 0; i < m; ++i) r[i] = -a[std::size_t(i) * n + j];
      r[vp] = 1.0;
      r[vm] = -1.0;
      r[s0 + j] = 1.0;
      r[rhs] = 0.0;
      basis[j] = s0 + j;
    }
    double* sum = row(n);
    for (int i = 0; i < m; ++i) sum[i] = 1.0;
    sum[art] = 1.0;
    sum[rhs] = 1.0;
    basis[n] = art;

    // Phase-2 reduced costs: z_j - c_j with all basic costs zero.
    double* obj2 = row(n + 1);
    obj2[vp] = -1.0;
    obj2[vm] = 1.0;

    // Phase-1 objective (maximize -art): reduced costs are -(sum row)
    // except on the artificial column itself.
    double* obj1 = row(n + 2);
    for (int c = 0; c < ncols; ++c) obj1[c] = -sum[c];
    obj1[art] = 0.0;
  }

  void pivot(int pr, int pc) {
    double* prow = row(pr);
    const double inv = 1.0 / prow[pc];
    for (int c = 0; c < ncols; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (int r = 0; r < nrows; ++r) {
      if (r == pr) continue;
      double* rr = row(r);
      const double f = rr[pc];
      if (f == 0.0) continue;
      for (int c = 0; c < ncols; ++c) rr[c] -= f * prow[c];
      rr[pc] = 0.0;
    }
    basis[pr] = pc;
  }

  // One simplex phase with Bland's rule.  `objrow` indexes the cost row,
  // `allow_art` gates the artificial column.  Returns false on pivot-cap.
  bool run(int objrow, bool allow_art, int& pivots) {
    const int art = m + 2 + n;
    const int rhs = ncols - 1;
    for (;;) {
      if (pivots++ > kMaxPivots) return false;
      double* obj = row(objrow);
      int pc = -1;
      for (int c = 0; c < ncols - 1; ++c) {
        if (c == art && !allow_art) continue;
        if (obj[c] < -kPivotTol) {
          pc = c;  // Bland: lowest variable index
          break;
        }
      }
      if (pc < 0) return true;  // optimal
      int pr = -1;
      double best = 0.0;
      for (int r = 0; r <= n; ++r) {
        double coef = row(r)[pc];
        if (coef > kPivotTol) {
          double ratio = row(r)[rhs] / coef;
          if (pr < 0 || ratio < best - kPivotTol ||
              (std::abs(ratio - best) <= kPivotTol && basis[r] < basis[pr])) {
            pr = r;
            best = ratio;
          }
        }
      }
      if (pr < 0) return false;  // unbounded; cannot happen for valid games
      pivot(pr, pc);
    }
  }
};

thread_local Workspace tl_ws;

// Core solve into the thread-local workspace.  Returns the game value;
// strategies are read out of the final tableau by the callers that need
// them.
double simplex_solve(const double* a, int m, int n) {
  Workspace& ws = tl_ws;
  ws.init(a, m, n);
  const int art = m + 2 + n, rhs = ws.ncols - 1;

  int pivots = 0;
  if (!ws.run(ws.n + 2, true, pivots))
    throw Error("matrix game simplex: phase 1 exceeded pivot cap");
  // Phase-1 optimum must drive the artificial to zero.
  double infeas = 0.0;
  for (int r = 0; r <= n; ++r)
    if (ws.basis[r] == art) infeas = ws.row(r)[rhs];
  if (std::abs(infeas) > 1e-8)
    throw Error("matrix game simplex: infeasible phase 1 (residual " +
                std::to_string(infeas) + ")");
  // Degenerate case: artificial basic at zero.  Pivot it out through any
  // usable column so phase 2 never touches it.
  for (int r = 0; r <= n; ++r) {
    if (ws.basis[r] != art) continue;
    for (int c = 0; c < ws.ncols - 1; ++c) {
      if (c == art) continue;
      if (std::abs(ws.row(r)[c]) > kPivotTol) {
        ws.pivot(r, c);
        break;
      }
    }
  }
  if (!ws.run(ws.n + 1, false, pivots))
    throw Error("matrix game simplex: phase 2 exceeded pivot cap");

  double vp = 0.0, vm = 0.0;
  for (int r = 0; r <= n; ++r) {
    if (ws.basis[r] == m) vp = ws.row(r)[rhs];
    if (ws.basis[r] == m + 1) vm = ws.row(r)[rhs];
  }
  return vp - vm;
}

}  // namespace

MatrixGame::MatrixGame(int m, int n, std::vector<double> data)
    : rows(m), cols(n), entries(std::move(data)) {
  validate();
}

MatrixGame MatrixGame::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  MatrixGame g;
  g.rows = static_cast<int>(rows.size());
  g.cols = g.rows ? static_cast<int>(rows.begin()->size()) : 0;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != g.cols)
      throw ValidationError("matrix rows have unequal lengths");
    g.entries.insert(g.entries.end(), r.begin(), r.end());
  }
  g.validate();
  return g;
}

void MatrixGame::validate() const {
  if (rows < 1 || cols < 1)
    throw ValidationError("matrix game needs at least one row and column");
  if (entries.size() != std::size_t(rows) * cols)
    throw ValidationError("matrix game storage size mismatch");
  for (double v : entries)
    if (!std::isfinite(v)) throw ValidationError("matrix game entry not finite");
}

double matrix_game_value(const double* a, int m, int n) {
  if (m == 1 && n == 1) return a[0];
  if (m == 1) {
    double v = a[0];
    for (int j = 1; j < n; ++j) v = std::min(v, a[j]);
    return v;
  }
  if (n == 1) {
    double v = a[0];
    for (int i = 1; i < m; ++i) v = std::max(v, a[std::size_t(i)]);
    return v;
  }
  return simplex_solve(a, m, n);
}

MinimaxSolution solve_matrix_game(const MatrixGame& game) {
  game.validate();
  const int m = game.rows, n = game.cols;
  MinimaxSolution sol;
  sol.x.assign(m, 0.0);
  sol.y.assign(n, 0.0);

  if (m == 1) {
    int jmin = 0;
    for (int j = 1; j < n; ++j)
      if (game.at(0, j) < game.at(0, jmin)) jmin = j;
    sol.value = game.at(0, jmin);
    sol.x[0] = 1.0;
    sol.y[jmin] = 1.0;
    return sol;
  }
  if (n == 1) {
    int imax = 0;
    for (int i = 1; i < m; ++i)
      if (game.at(i, 0) > game.at(imax, 0)) imax = i;
    sol.value = game.at(imax, 0);
    sol.x[imax] = 1.0;
    sol.y[0] = 1.0;
    return sol;
  }

  sol.value = simplex_solve(game.entries.data(), m, n);
  Workspace& ws = tl_ws;
  const int rhs = ws.ncols - 1;
  for (int r = 0; r <= n; ++r)
    if (ws.basis[r] < m) sol.x[ws.basis[r]] = std::max(0.0, ws.row(r)[rhs]);
  // Dual prices of the column constraints live in the phase-2 cost row
  // under the slack columns.
  const double* obj = ws.row(n + 1);
  for (int j = 0; j < n; ++j) sol.y[j] = std::max(0.0, obj[m + 2 + j]);

  auto normalize = [](std::vector<double>& p) {
    double s = 0.0;
    for (double v : p) s += v;
    if (s > 0.0)
      for (double& v : p) v /= s;
  };
  normalize(sol.x);
  normalize(sol.y);
  return sol;
}

double best_pure_check(const MatrixGame& game, std::span<const double> x,
                       std::span<const double> y) {
  if (static_cast<int>(x.size()) != game.rows ||
      static_cast<int>(y.size()) != game.cols)
    throw ValidationError("best_pure_check: strategy dimension mismatch");
  double xay = 0.0;
  for (int i = 0; i < game.rows; ++i)
    for (int j = 0; j < game.cols; ++j) xay += x[i] * game.at(i, j) * y[j];

  double best_row = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < game.rows; ++i) {
    double v = 0.0;
    for (int j = 0; j < game.cols; ++j) v += game.at(i, j) * y[j];
    best_row = std::max(best_row, v);
  }
  double best_col = std::numeric_limits<double>::infinity();
  for (int j = 0; j < game.cols; ++j) {
    double v = 0.0;
    for (int i = 0; i < game.rows; ++i) v += x[i] * game.at(i, j);
    best_col = std::min(best_col, v);
  }
  return std::max(best_row - xay, xay - best_col);
}

}  // namespace stagegame
