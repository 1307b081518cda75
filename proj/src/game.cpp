#include "stagegame/game.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace stagegame {

namespace {

constexpr double kRowSumTol = 1e-12;

double u01(std::mt19937_64& rng) {
  // Hand-mapped uniform; std::uniform_real_distribution is not
  // reproducible across standard libraries.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % std::uint64_t(hi - lo + 1));
}

}  // namespace

void GameSpec::allocate() {
  const std::size_t ns = states.size();
  payoff_off.assign(ns, 0);
  gen_off.assign(ns, 0);
  std::size_t po = 0, go = 0;
  for (std::size_t w = 0; w < ns; ++w) {
    payoff_off[w] = po;
    gen_off[w] = go;
    const std::size_t pairs = std::size_t(actions1[w]) * actions2[w];
    po += pairs;
    go += pairs * ns;
  }
  payoff_data.assign(po, 0.0);
  gen_data.assign(go, 0.0);
}

double GameSpec::payoff_bound() const {
  double m = 0.0;
  for (double v : payoff_data) m = std::max(m, std::abs(v));
  return m;
}

double GameSpec::max_exit_rate() const {
  double m = 0.0;
  for (int w = 0; w < num_states(); ++w)
    for (int i = 0; i < actions1[w]; ++i)
      for (int j = 0; j < actions2[w]; ++j)
        m = std::max(m, std::abs(q_row(w, i, j)[w]));
  return m;
}

bool GameSpec::uniform_actions() const {
  for (int w = 1; w < num_states(); ++w)
    if (actions1[w] != actions1[0] || actions2[w] != actions2[0]) return false;
  return true;
}

void GameSpec::validate() const {
  const int ns = num_states();
  if (ns < 1) throw ValidationError("game has no states");
  if (static_cast<int>(actions1.size()) != ns ||
      static_cast<int>(actions2.size()) != ns)
    throw ValidationError("action count arrays do not match state count");
  for (int w = 0; w < ns; ++w)
    if (actions1[w] < 1 || actions2[w] < 1)
      throw ValidationError("state '" + states[w] +
                            "' needs at least one action per player");

  for (int w = 0; w < ns; ++w) {
    for (int i = 0; i < actions1[w]; ++i) {
      for (int j = 0; j < actions2[w]; ++j) {
        const double g = payoff(w, i, j);
        if (!std::isfinite(g))
          throw ValidationError("payoff not finite at (state=" + states[w] +
                                ", i=" + std::to_string(i) +
                                ", j=" + std::to_string(j) + ")");
        const double* q = q_row(w, i, j);
        double sum = 0.0;
        for (int wp = 0; wp < ns; ++wp) {
          if (!std::isfinite(q[wp]))
            throw ValidationError("generator entry not finite at (state=" +
                                  states[w] + ", i=" + std::to_string(i) +
                                  ", j=" + std::to_string(j) + ")");
          sum += q[wp];
          if (wp != w && q[wp] < 0.0)
            throw ValidationError(
                "negative off-diagonal generator entry at (state=" + states[w] +
                ", i=" + std::to_string(i) + ", j=" + std::to_string(j) +
                ", to=" + states[wp] + "): " + std::to_string(q[wp]));
        }
        if (std::abs(sum) > kRowSumTol)
          throw ValidationError("generator row sums to " + std::to_string(sum) +
                                " at (state=" + states[w] +
                                ", i=" + std::to_string(i) +
                                ", j=" + std::to_string(j) + "); rows must sum to 0");
        const double diag = q[w];
        if (diag < -1.0 - kRowSumTol) {
          std::ostringstream os;
          os << "exit rate " << -diag << " exceeds 1 at (state=" << states[w]
             << ", i=" << i << ", j=" << j
             << "); pre-scale the generator by a factor of " << (-1.0 / diag)
             << " (and the payoff accordingly) so that Id + Q is stochastic";
          throw ValidationError(os.str());
        }
        if (diag > 0.0 + kRowSumTol)
          throw ValidationError("positive diagonal generator entry at (state=" +
                                states[w] + ", i=" + std::to_string(i) +
                                ", j=" + std::to_string(j) + ")");
      }
    }
  }
}

GameSpec fixture(std::string_view name) {
  GameSpec g;
  if (name == "FIX-CONST") {
    g.states = {"a"};
    g.actions1 = {1};
    g.actions2 = {1};
    g.allocate();
    g.payoff(0, 0, 0) = 1.0;
  } else if (name == "FIX-MP") {
    g.states = {"a"};
    g.actions1 = {2};
    g.actions2 = {2};
    g.allocate();
    g.payoff(0, 0, 0) = 1.0;
    g.payoff(0, 0, 1) = -1.0;
    g.payoff(0, 1, 0) = -1.0;
    g.payoff(0, 1, 1) = 1.0;
  } else if (name == "FIX-ABS") {
    g.states = {"a", "b"};
    g.actions1 = {1, 1};
    g.actions2 = {1, 1};
    g.allocate();
    g.payoff(0, 0, 0) = 1.0;
    g.payoff(1, 0, 0) = 0.0;
    double* qa = g.q_row(0, 0, 0);
    qa[0] = -1.0;
    qa[1] = 1.0;
  } else {
    throw ValidationError("unknown fixture '" + std::string(name) +
                          "'; known: FIX-CONST, FIX-MP, FIX-ABS");
  }
  g.validate();
  return g;
}

GameSpec random_game(std::uint64_t seed, int num_states, int max_actions) {
  if (num_states < 1 || num_states > 6)
    throw ValidationError("random_game: num_states must be in 1..6");
  if (max_actions < 1 || max_actions > 4)
    throw ValidationError("random_game: max_actions must be in 1..4");
  std::mt19937_64 rng(seed);
  GameSpec g;
  g.states.resize(num_states);
  for (int w = 0; w < num_states; ++w) g.states[w] = "s" + std::to_string(w);
  const int m = uniform_int(rng, 1, max_actions);
  const int n = uniform_int(rng, 1, max_actions);
  g.actions1.assign(num_states, m);
  g.actions2.assign(num_states, n);
  g.allocate();
  for (int w = 0; w < num_states; ++w) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        g.payoff(w, i, j) = 2.0 * u01(rng) - 1.0;
        const double rate = u01(rng);
        double p[6];
        double sum = 0.0;
        for (int wp = 0; wp < num_states; ++wp) {
          p[wp] = u01(rng) + 1e-12;
          sum += p[wp];
        }
        double* q = g.q_row(w, i, j);
        for (int wp = 0; wp < num_states; ++wp) q[wp] = rate * (p[wp] / sum);
        q[w] -= rate;
        // Re-center the row so it sums to zero exactly.
        double rs = 0.0;
        for (int wp = 0; wp < num_states; ++wp) rs += q[wp];
        q[w] -= rs;
      }
    }
  }
  g.validate();
  return g;
}

GameSpec exact_game_params(const GameSpec& game, double h) {
  if (!(h > 0.0) || h > 1.0)
    throw ValidationError("exact_game_params: h must be in (0,1]");
  GameSpec out = game;
  for (double& v : out.payoff_data) v *= h;
  for (double& v : out.gen_data) v *= h;
  out.validate();
  return out;
}

GameSpec scale_kernel(const GameSpec& game, double c) {
  if (!(c >= 0.0)) throw ValidationError("scale_kernel: factor must be >= 0");
  GameSpec out = game;
  for (double& v : out.gen_data) v *= c;
  out.validate();
  return out;
}

std::string game_to_json(const GameSpec& game) {
  nlohmann::json j;
  j["states"] = game.states;
  auto actions = nlohmann::json::array();
  for (int w = 0; w < game.num_states(); ++w)
    actions.push_back({game.actions1[w], game.actions2[w]});
  j["actions"] = actions;
  auto payoff = nlohmann::json::array();
  auto generator = nlohmann::json::array();
  for (int w = 0; w < game.num_states(); ++w) {
    auto pw = nlohmann::json::array();
    auto gw = nlohmann::json::array();
    for (int i = 0; i < game.actions1[w]; ++i) {
      auto pi = nlohmann::json::array();
      auto gi = nlohmann::json::array();
      for (int jj = 0; jj < game.actions2[w]; ++jj) {
        pi.push_back(game.payoff(w, i, jj));
        auto row = nlohmann::json::array();
        const double* q = game.q_row(w, i, jj);
        for (int wp = 0; wp < game.num_states(); ++wp) row.push_back(q[wp]);
        gi.push_back(row);
      }
      pw.push_back(pi);
      gw.push_back(gi);
    }
    payoff.push_back(pw);
    generator.push_back(gw);
  }
  j["payoff"] = payoff;
  j["generator"] = generator;
  return j.dump(2);
}

GameSpec game_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("game file is not valid JSON: ") + e.what());
  }
  GameSpec g;
  try {
    g.states = j.at("states").get<std::vector<std::string>>();
    const auto& actions = j.at("actions");
    if (actions.size() != g.states.size())
      throw ParseError("actions array length must equal state count");
    for (const auto& a : actions) {
      if (!a.is_array() || a.size() != 2)
        throw ParseError("each actions entry must be a pair of integers");
      g.actions1.push_back(a[0].get<int>());
      g.actions2.push_back(a[1].get<int>());
    }
    g.allocate();
    const auto& payoff = j.at("payoff");
    const auto& generator = j.at("generator");
    if (payoff.size() != g.states.size() || generator.size() != g.states.size())
      throw ParseError("payoff/generator tensors must have one block per state");
    for (int w = 0; w < g.num_states(); ++w) {
      const auto& pw = payoff[w];
      const auto& gw = generator[w];
      if (static_cast<int>(pw.size()) != g.actions1[w] ||
          static_cast<int>(gw.size()) != g.actions1[w])
        throw ParseError("tensor block at state " + g.states[w] +
                         " does not match its player-1 action count");
      for (int i = 0; i < g.actions1[w]; ++i) {
        if (static_cast<int>(pw[i].size()) != g.actions2[w] ||
            static_cast<int>(gw[i].size()) != g.actions2[w])
          throw ParseError("tensor row at state " + g.states[w] +
                           " does not match its player-2 action count");
        for (int jj = 0; jj < g.actions2[w]; ++jj) {
          g.payoff(w, i, jj) = pw[i][jj].get<double>();
          const auto& row = gw[i][jj];
          if (row.size() != g.states.size())
            throw ParseError("generator row at state " + g.states[w] +
                             " must have one entry per state");
          double* q = g.q_row(w, i, jj);
          for (int wp = 0; wp < g.num_states(); ++wp)
            q[wp] = row[wp].get<double>();
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed game file: ") + e.what());
  }
  g.validate();
  return g;
}

GameSpec load_game(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open game file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return game_from_json(buf.str());
}

void save_game(const GameSpec& game, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write game file: " + path.string());
  out << game_to_json(game) << "\n";
}

}  // namespace stagegame
