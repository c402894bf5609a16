#include "synq/games.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <stdexcept>

namespace synq {

bool SynchronousGame::is_forbidden(int i, int j, int a, int b) const {
  std::array<int, 4> key{i, j, a, b};
  return std::binary_search(forbidden.begin(), forbidden.end(), key);
}

SynchronousGame make_game(int n_inputs, int n_outputs,
                          std::vector<std::array<int, 4>> extra_forbidden) {
  if (n_inputs < 0 || n_outputs < 0)
    throw std::invalid_argument("make_game: negative dimensions");
  SynchronousGame g;
  g.n_inputs = n_inputs;
  g.n_outputs = n_outputs;
  g.forbidden = std::move(extra_forbidden);
  for (const auto& q : g.forbidden)
    if (q[0] < 0 || q[0] >= n_inputs || q[1] < 0 || q[1] >= n_inputs || q[2] < 0 ||
        q[2] >= n_outputs || q[3] < 0 || q[3] >= n_outputs)
      throw std::invalid_argument("make_game: forbidden quadruple out of range");
  for (int i = 0; i < n_inputs; ++i)
    for (int a = 0; a < n_outputs; ++a)
      for (int b = 0; b < n_outputs; ++b)
        if (a != b) g.forbidden.push_back({i, i, a, b});
  std::sort(g.forbidden.begin(), g.forbidden.end());
  g.forbidden.erase(std::unique(g.forbidden.begin(), g.forbidden.end()), g.forbidden.end());
  return g;
}

std::vector<NCPolynomial> relations_of(const SynchronousGame& game) {
  GeneratorUniverse u = game.universe();
  std::vector<NCPolynomial> rels;
  for (int i = 0; i < game.n_inputs; ++i) {
    for (int a = 0; a < game.n_outputs; ++a) {
      NCPolynomial x = NCPolynomial::generator(u.id_of({i, a}));
      rels.push_back(x * x - x);
    }
  }
  for (int i = 0; i < game.n_inputs; ++i) {
    NCPolynomial s = -NCPolynomial::one();
    for (int a = 0; a < game.n_outputs; ++a) s += NCPolynomial::generator(u.id_of({i, a}));
    rels.push_back(std::move(s));
  }
  for (const auto& [i, j, a, b] : game.forbidden) {
    rels.push_back(NCPolynomial::generator(u.id_of({i, a})) *
                   NCPolynomial::generator(u.id_of({j, b})));
  }
  return rels;
}

GamePresentation presentation_of(const SynchronousGame& game) {
  return GamePresentation{game, relations_of(game), false};
}

SynchronousGame hom_game(const Graph& g, const Graph& h) {
  std::vector<std::array<int, 4>> forb;
  for (int a = 0; a < g.n_vertices(); ++a)
    for (int b = 0; b < g.n_vertices(); ++b) {
      if (a == b || !g.has_edge(a, b)) continue;
      for (int uu = 0; uu < h.n_vertices(); ++uu)
        for (int vv = 0; vv < h.n_vertices(); ++vv)
          if (!h.has_edge(uu, vv)) forb.push_back({a, b, uu, vv});
    }
  return make_game(g.n_vertices(), h.n_vertices(), std::move(forb));
}

SynchronousGame clique_game(int n, const Graph& g) { return hom_game(Graph::complete(n), g); }

SynchronousGame coloring_game(const Graph& g, int c) { return hom_game(g, Graph::complete(c)); }

GamePresentation lc_extend(const GamePresentation& pres, const Graph& g) {
  if (pres.lc_extended) return pres;
  SynchronousGame expected = clique_game(pres.game.n_inputs, g);
  if (!(pres.game == expected))
    throw std::invalid_argument("lc_extend: presentation is not the clique game over g");
  GamePresentation out = pres;
  GeneratorUniverse u = pres.game.universe();
  const int n = pres.game.n_inputs;
  for (auto [uu, vv] : g.edges()) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        NCPolynomial xu = NCPolynomial::generator(u.id_of({i, uu}));
        NCPolynomial xv = NCPolynomial::generator(u.id_of({j, vv}));
        out.relations.push_back(xu * xv - xv * xu);
      }
  }
  out.lc_extended = true;
  return out;
}

AlgCliqueReport alg_clique_number(const Graph& g, int n_max, int d_max, int jobs) {
  if (n_max < 1) throw std::invalid_argument("alg_clique_number: n_max must be >= 1");
  AlgCliqueReport rep;
  if (has_clique(g, 4)) {
    // transitivity through K4: omega_alg(G) is unbounded
    rep.infinite = true;
    return rep;
  }
  auto check_one = [&](int n) {
    SynchronousGame game = clique_game(n, g);
    GroebnerBasis gb = groebner_truncated(relations_of(game), game.universe(), d_max);
    TriState tv = is_trivial(gb);
    if (tv == TriState::yes) return TriState::no;   // trivial algebra: not satisfiable
    if (tv == TriState::no) return TriState::yes;   // certified nontrivial
    return TriState::inconclusive;
  };
  if (jobs > 1) {
    std::vector<std::future<TriState>> futs;
    for (int n = 1; n <= n_max; ++n)
      futs.push_back(std::async(std::launch::async, check_one, n));
    for (int n = 1; n <= n_max; ++n) rep.per_n[n] = futs[n - 1].get();
  } else {
    for (int n = 1; n <= n_max; ++n) rep.per_n[n] = check_one(n);
  }
  for (const auto& [n, t] : rep.per_n)
    if (t == TriState::yes) rep.value = n;
  return rep;
}

int lc_clique_number(const Graph& g) {
  // nontrivial iff some (n-1)-clique has a fully connected neighbour, which
  // happens exactly when G has an n-clique
  if (g.n_vertices() == 0) return 0;
  return clique_number(g);
}

std::uint64_t lc_dimension(const Graph& g, int n) {
  if (n < 2) throw std::invalid_argument("lc_dimension: n must be >= 2");
  std::uint64_t fact = 1;
  for (int k = 2; k < n; ++k) fact *= static_cast<std::uint64_t>(k);
  std::uint64_t total = 0;
  for (const auto& s : cliques_of_size(g, n - 1)) {
    VertexSet common;
    common.set();
    for (int v = 0; v < g.n_vertices(); ++v)
      if (s.test(v)) common &= g.neighbors(v);
    VertexSet valid;
    for (int v = 0; v < g.n_vertices(); ++v) valid.set(v);
    total += (common & valid).count() * fact;
  }
  return total;
}

std::string serialize(const SynchronousGame& game) {
  std::ostringstream os;
  os << "syncgame " << game.n_inputs << " " << game.n_outputs << "\n";
  for (const auto& [i, j, a, b] : game.forbidden)
    os << "forbid " << i << " " << j << " " << a << " " << b << "\n";
  return os.str();
}

SynchronousGame parse_game(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string tag;
  int ni = 0, no = 0;
  if (!(is >> tag >> ni >> no) || tag != "syncgame" || ni < 0 || no < 0)
    throw std::invalid_argument("parse_game: bad header");
  SynchronousGame g;
  g.n_inputs = ni;
  g.n_outputs = no;
  std::string line;
  std::getline(is, line);
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head != "forbid")
      throw std::invalid_argument("parse_game: unrecognized line " + std::to_string(lineno));
    int i, j, a, b;
    if (!(ls >> i >> j >> a >> b) || i < 0 || i >= ni || j < 0 || j >= ni || a < 0 || a >= no ||
        b < 0 || b >= no)
      throw std::invalid_argument("parse_game: bad quadruple on line " + std::to_string(lineno));
    g.forbidden.push_back({i, j, a, b});
  }
  std::sort(g.forbidden.begin(), g.forbidden.end());
  g.forbidden.erase(std::unique(g.forbidden.begin(), g.forbidden.end()), g.forbidden.end());
  for (int i = 0; i < ni; ++i)
    for (int a = 0; a < no; ++a)
      for (int b = 0; b < no; ++b)
        if (a != b && !g.is_forbidden(i, i, a, b))
          throw std::invalid_argument("parse_game: synchrony closure violated at input " +
                                      std::to_string(i));
  return g;
}

}  // namespace synq
