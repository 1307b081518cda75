#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "stagegame/types.hpp"

namespace stagegame {

/// Finite zero-sum stochastic game G = (g, Q): payoff per unit time and a
/// controlled generator whose rows sum to zero with off-diagonal entries
/// nonnegative and diagonal entries in [-1, 0], so that P = Id + Q is
/// row-stochastic and every stage duration h in (0,1] is admissible.
///
/// Tensors are stored flat; action counts may differ per state, so each
/// state owns a contiguous block indexed through per-state offsets.
struct GameSpec {
  std::vector<std::string> states;
  std::vector<int> actions1;  // player 1 action count per state
  std::vector<int> actions2;  // player 2 action count per state

  std::vector<double> payoff_data;  // g[w][i][j]
  std::vector<double> gen_data;     // Q[w][i][j][w']
  std::vector<std::size_t> payoff_off;
  std::vector<std::size_t> gen_off;

  int num_states() const { return static_cast<int>(states.size()); }

  double payoff(int w, int i, int j) const {
    return payoff_data[payoff_off[w] + std::size_t(i) * actions2[w] + j];
  }
  double& payoff(int w, int i, int j) {
    return payoff_data[payoff_off[w] + std::size_t(i) * actions2[w] + j];
  }
  /// Pointer to the |states|-long generator row Q[w][i][j][.].
  const double* q_row(int w, int i, int j) const {
    return gen_data.data() + gen_off[w] +
           (std::size_t(i) * actions2[w] + j) * states.size();
  }
  double* q_row(int w, int i, int j) {
    return gen_data.data() + gen_off[w] +
           (std::size_t(i) * actions2[w] + j) * states.size();
  }

  /// Allocates tensors for the given shape (zeros).
  void allocate();

  /// C_g: sup-norm bound of the payoff tensor.
  double payoff_bound() const;
  /// Largest exit rate max_{w,i,j} |Q[w][i][j][w]|.
  double max_exit_rate() const;
  /// True when every state has the same action counts (needed by the
  /// continuous-time machinery, where an action pair must stay valid
  /// along the within-stage state path).
  bool uniform_actions() const;

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;
};

/// Built-in closed-form games used as oracles:
///  FIX-CONST  one state, 1x1, g = 1, Q = 0.
///             T f = 1 + f, V_n = n, w_l = 1, f_t(0) = t.
///  FIX-MP     one state, 2x2 matching pennies payoff, Q = 0.
///             T f = f, every value is 0.
///  FIX-ABS    states {a, b}, 1x1, g = (1, 0), Q(a) = (-1, 1), Q(b) = 0.
///             From a the chain absorbs into b at rate 1:
///             V_n = (1, 0) for n >= 1, w_l(a) = l, w_l^h(a) = l/(1+l-lh),
///             f_t(0)(a) = 1 - e^{-t}, w-hat_l(a) = l/(1+l).
GameSpec fixture(std::string_view name);

/// Deterministic random instance: payoffs uniform in [-1,1]; generator rows
/// r (p - e_w) with rate r uniform in [0,1] and p a random probability row,
/// so the GameSpec invariants hold by construction.  Action counts are drawn
/// once per player in {1..max_actions} and shared by all states, keeping the
/// instance usable by the continuous-time operators.
GameSpec random_game(std::uint64_t seed, int num_states, int max_actions);

/// The exact game G^h = (h g, h Q) for h in (0,1].
GameSpec exact_game_params(const GameSpec& game, double h);

/// Kernel-scaled game (g, c Q).  Validates the result; c > 1 can push exit
/// rates past 1, which throws.
GameSpec scale_kernel(const GameSpec& game, double c);

GameSpec load_game(const std::filesystem::path& path);
void save_game(const GameSpec& game, const std::filesystem::path& path);
std::string game_to_json(const GameSpec& game);
GameSpec game_from_json(const std::string& text);

}  // namespace stagegame
