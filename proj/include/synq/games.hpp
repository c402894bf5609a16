#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "synq/graph.hpp"
#include "synq/groebner.hpp"

namespace synq {

/// Synchronous game (I, O, lambda) with lambda stored as the explicit
/// forbidden set lambda^{-1}({0}); synchrony pairs are always present.
struct SynchronousGame {
  int n_inputs = 0;
  int n_outputs = 0;
  std::vector<std::array<int, 4>> forbidden;  // (i, j, a, b), sorted, unique

  bool is_forbidden(int i, int j, int a, int b) const;
  GeneratorUniverse universe() const { return GeneratorUniverse(n_inputs, n_outputs); }
  friend bool operator==(const SynchronousGame&, const SynchronousGame&) = default;
};

/// Builds a game from extra forbidden quadruples; the synchrony family
/// (i,i,a,b) with a != b is added automatically.
SynchronousGame make_game(int n_inputs, int n_outputs,
                          std::vector<std::array<int, 4>> extra_forbidden = {});

struct GamePresentation {
  SynchronousGame game;
  std::vector<NCPolynomial> relations;
  bool lc_extended = false;
  friend bool operator==(const GamePresentation&, const GamePresentation&) = default;
};

/// In deterministic order: idempotents x[i,a]^2 - x[i,a] (row-major),
/// completeness sum_a x[i,a] - 1 per input, then one product x[i,a]x[j,b]
/// per forbidden quadruple. Hermitian relations are omitted (generators
/// are hermitian by construction).
std::vector<NCPolynomial> relations_of(const SynchronousGame& game);
GamePresentation presentation_of(const SynchronousGame& game);

SynchronousGame hom_game(const Graph& g, const Graph& h);
SynchronousGame clique_game(int n, const Graph& g);     // Hom(K_n, G)
SynchronousGame coloring_game(const Graph& g, int c);   // Hom(G, K_c)

/// Adds commutators x[i,u]x[j,v] - x[j,v]x[i,u] for every edge u~v and all
/// i, j. Only accepts clique-game presentations over g; idempotent.
GamePresentation lc_extend(const GamePresentation& pres, const Graph& g);

struct AlgCliqueReport {
  bool infinite = false;           // certified 4-clique forces omega_alg = infinity
  std::optional<int> value;        // largest n with certified nontrivial algebra
  std::map<int, TriState> per_n;   // alg-satisfiability of Hom(K_n, G) per n
};
AlgCliqueReport alg_clique_number(const Graph& g, int n_max, int d_max, int jobs = 1);

/// Largest n whose lc clique-game algebra is nontrivial; by the direct-sum
/// decomposition this is the clique number, computed combinatorially.
int lc_clique_number(const Graph& g);

/// Dimension of the lc algebra: sum over (n-1)-cliques S of |N_S| (n-1)!.
std::uint64_t lc_dimension(const Graph& g, int n);

/// "syncgame |I| |O|" header then one "forbid i j a b" line per quadruple.
std::string serialize(const SynchronousGame& game);
SynchronousGame parse_game(std::string_view text);

}  // namespace synq
