#include "synq/groebner.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace synq {

const char* to_cstring(TriState t) {
  switch (t) {
    case TriState::yes: return "yes";
    case TriState::no: return "no";
    default: return "inconclusive";
  }
}

bool GroebnerBasis::has_nonzero_constant() const {
  for (const auto& e : elements)
    if (!e.is_zero() && e.is_constant()) return true;
  return false;
}

int default_degree_bound(const std::vector<NCPolynomial>& relations) {
  std::size_t d = 0;
  for (const auto& r : relations) d = std::max(d, r.degree());
  return static_cast<int>(2 * d + 4);
}

namespace {

struct WordLess {
  using is_transparent = void;
  bool operator()(std::span<const Gen> a, std::span<const Gen> b) const {
    return compare_words(a, b) == std::strong_ordering::less;
  }
  bool operator()(const Word& a, const Word& b) const { return (*this)(a.letters(), b.letters()); }
  bool operator()(const Word& a, std::span<const Gen> b) const { return (*this)(a.letters(), b); }
  bool operator()(std::span<const Gen> a, const Word& b) const { return (*this)(a, b.letters()); }
};

struct Divisor {
  int slot;
  std::size_t pos;
  std::size_t len;
};

/// Shared leading-word index used by both basis construction and division.
class LeadIndex {
 public:
  void add(const Word& lw, int slot) {
    by_lw_[lw] = slot;
    ++length_count_[lw.size()];
  }
  void remove(const Word& lw) {
    by_lw_.erase(lw);
    auto it = length_count_.find(lw.size());
    if (it != length_count_.end() && --it->second == 0) length_count_.erase(it);
  }
  bool empty() const { return by_lw_.empty(); }

  std::optional<Divisor> find(std::span<const Gen> w, ReduceMode mode) const {
    for (const auto& [len, cnt] : length_count_) {
      if (len > w.size()) break;
      if (mode == ReduceMode::left) {
        auto it = by_lw_.find(w.subspan(w.size() - len, len));
        if (it != by_lw_.end()) return Divisor{it->second, w.size() - len, len};
      } else {
        for (std::size_t pos = 0; pos + len <= w.size(); ++pos) {
          auto it = by_lw_.find(w.subspan(pos, len));
          if (it != by_lw_.end()) return Divisor{it->second, pos, len};
        }
      }
    }
    return std::nullopt;
  }

  std::vector<Divisor> find_all(std::span<const Gen> w) const {
    std::vector<Divisor> out;
    for (const auto& [len, cnt] : length_count_) {
      if (len > w.size()) break;
      for (std::size_t pos = 0; pos + len <= w.size(); ++pos) {
        auto it = by_lw_.find(w.subspan(pos, len));
        if (it != by_lw_.end()) out.push_back(Divisor{it->second, pos, len});
      }
    }
    return out;
  }

 private:
  std::map<Word, int, WordLess> by_lw_;
  std::map<std::size_t, int> length_count_;  // leading-word length -> multiplicity
};

ReductionResult reduce_against(const NCPolynomial& f, const std::vector<NCPolynomial>& elems,
                               const LeadIndex& index, ReduceMode mode) {
  NCPolynomial work = f;
  std::vector<NCPolynomial::Term> done;
  bool reduced = false;
  while (!work.is_zero()) {
    const Word& w = work.leading_word();
    auto hit = index.find(w.letters(), mode);
    if (!hit) {
      done.push_back(work.take_leading());
      continue;
    }
    reduced = true;
    Rat c = work.leading_coeff();
    work.fused_submul(c, w.prefix(hit->pos), elems[hit->slot], w.suffix_from(hit->pos + hit->len));
  }
  std::reverse(done.begin(), done.end());
  // `done` is ascending; from_terms re-sorts but keeps exactness
  ReductionResult rr;
  rr.remainder = NCPolynomial::from_terms(std::move(done));
  rr.reduced = reduced;
  return rr;
}

class Engine {
 public:
  Engine(const GeneratorUniverse& u, int d_max, const GroebnerOptions& opt)
      : universe_(u), d_max_(d_max), opt_(opt) {}

  GroebnerBasis run(const std::vector<NCPolynomial>& relations) {
    for (const auto& r : relations) pending_.push_back(r);
    drain_pending();
    while (!trivial_ && !queue_.empty()) {
      Obstruction ob = queue_.top();
      queue_.pop();
      if (!alive_[ob.i] || !alive_[ob.j]) continue;
      NCPolynomial s = spoly(ob);
      ReductionResult rr = reduce_against(s, elems_, index_, ReduceMode::two_sided);
      if (!rr.remainder.is_zero()) {
        pending_.push_back(std::move(rr.remainder));
        drain_pending();
      }
    }
    return finalize();
  }

 private:
  struct Obstruction {
    int deg;
    long seq;
    int i, j;
    std::size_t t;  // suffix of lw(i) of length t == prefix of lw(j)
    bool operator>(const Obstruction& o) const {
      return std::tie(deg, seq) > std::tie(o.deg, o.seq);
    }
  };

  NCPolynomial spoly(const Obstruction& ob) const {
    const Word& u = elems_[ob.i].leading_word();
    const Word& v = elems_[ob.j].leading_word();
    Word a = u.prefix(u.size() - ob.t);
    Word c = v.suffix_from(ob.t);
    // lw(i)*c and a*lw(j) both equal the overlap word; the heads cancel.
    NCPolynomial s;
    s.fused_submul(Rat(-1), Word::one(), elems_[ob.i], c);
    s.fused_submul(Rat(1), a, elems_[ob.j], Word::one());
    return s;
  }

  void drain_pending() {
    while (!pending_.empty() && !trivial_) {
      NCPolynomial f = std::move(pending_.back());
      pending_.pop_back();
      ReductionResult rr = reduce_against(f, elems_, index_, ReduceMode::two_sided);
      if (rr.remainder.is_zero()) continue;
      insert(std::move(rr.remainder));
    }
  }

  void insert(NCPolynomial g) {
    g *= Rat(1) / g.leading_coeff();
    if (g.is_constant()) {
      trivial_ = true;
      return;
    }
    int slot = static_cast<int>(elems_.size());
    const Word lw = g.leading_word();
    elems_.push_back(std::move(g));
    alive_.push_back(true);
    n_alive_++;
    if (n_alive_ > opt_.max_elements)
      throw resource_limit_error("groebner basis exceeded element cap (" +
                                 std::to_string(opt_.max_elements) + ")");
    index_.add(lw, slot);

    // displace elements whose leading word now reduces
    for (int s = 0; s < slot; ++s) {
      if (!alive_[s]) continue;
      if (contains_factor(elems_[s].leading_word(), lw)) {
        kill(s);
        pending_.push_back(elems_[s]);
      }
    }

    // new obstructions against every alive element, both orientations
    for (int s = 0; s <= slot; ++s) {
      if (!alive_[s]) continue;
      add_overlaps(slot, s);
      if (s != slot) add_overlaps(s, slot);
    }
  }

  static bool contains_factor(const Word& w, const Word& f) {
    if (f.size() > w.size()) return false;
    for (std::size_t pos = 0; pos + f.size() <= w.size(); ++pos)
      if (compare_words(w.factor(pos, f.size()), f.letters()) == std::strong_ordering::equal)
        return true;
    return false;
  }

  void add_overlaps(int i, int j) {
    const Word& u = elems_[i].leading_word();
    const Word& v = elems_[j].leading_word();
    const std::size_t tmax = std::min(u.size(), v.size());
    // proper overlaps only: t < min length (inclusions are interreduced away)
    for (std::size_t t = 1; t + 1 <= tmax; ++t) {
      if (compare_words(u.factor(u.size() - t, t), v.factor(0, t)) !=
          std::strong_ordering::equal)
        continue;
      Obstruction ob;
      ob.deg = static_cast<int>(u.size() + v.size() - t);
      ob.seq = seq_++;
      ob.i = i;
      ob.j = j;
      ob.t = t;
      if (ob.deg > d_max_)
        skipped_.push_back(ob);
      else
        queue_.push(ob);
    }
  }

  void kill(int s) {
    alive_[s] = false;
    n_alive_--;
    index_.remove(elems_[s].leading_word());
  }

  GroebnerBasis finalize() {
    GroebnerBasis gb;
    gb.universe = universe_;
    gb.degree_bound = d_max_;
    if (trivial_) {
      gb.elements = {NCPolynomial::one()};
      gb.complete = true;
      return gb;
    }
    bool skipped_alive = false;
    for (const auto& ob : skipped_)
      if (alive_[ob.i] && alive_[ob.j]) skipped_alive = true;
    gb.complete = !skipped_alive;

    // canonical form: tails fully reduced against the whole basis
    std::vector<int> order;
    for (int s = 0; s < static_cast<int>(elems_.size()); ++s)
      if (alive_[s]) order.push_back(s);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return compare_words(elems_[a].leading_word(), elems_[b].leading_word()) ==
             std::strong_ordering::less;
    });
    for (int s : order) {
      NCPolynomial head = NCPolynomial::monomial(elems_[s].leading_word());
      NCPolynomial tail = head - elems_[s];
      ReductionResult rr = reduce_against(tail, elems_, index_, ReduceMode::two_sided);
      elems_[s] = head - rr.remainder;
    }
    for (int s : order) gb.elements.push_back(elems_[s]);
    return gb;
  }

  GeneratorUniverse universe_;
  int d_max_;
  GroebnerOptions opt_;
  std::vector<NCPolynomial> elems_;
  std::vector<bool> alive_;
  std::size_t n_alive_ = 0;
  LeadIndex index_;
  std::vector<NCPolynomial> pending_;
  std::priority_queue<Obstruction, std::vector<Obstruction>, std::greater<>> queue_;
  std::vector<Obstruction> skipped_;
  long seq_ = 0;
  bool trivial_ = false;
};

LeadIndex build_index(const GroebnerBasis& gb) {
  LeadIndex idx;
  for (int s = 0; s < static_cast<int>(gb.elements.size()); ++s)
    idx.add(gb.elements[s].leading_word(), s);
  return idx;
}

}  // namespace

NCPolynomial eliminate_last_output(const NCPolynomial& p, const GeneratorUniverse& from) {
  if (from.n_outputs() < 1) throw std::invalid_argument("eliminate_last_output: no outputs");
  GeneratorUniverse to(from.n_inputs(), from.n_outputs() - 1);
  const int last = from.n_outputs() - 1;
  // per-input substitution polynomial 1 - sum_{a<last} x[i,a]
  std::vector<NCPolynomial> subst(from.n_inputs());
  for (int i = 0; i < from.n_inputs(); ++i) {
    NCPolynomial s = NCPolynomial::one();
    for (int a = 0; a < last; ++a) s -= NCPolynomial::generator(to.id_of({i, a}));
    subst[i] = std::move(s);
  }
  NCPolynomial out;
  for (const auto& [w, c] : p.terms()) {
    NCPolynomial prod = NCPolynomial::constant(c);
    for (std::size_t k = 0; k < w.size(); ++k) {
      GeneratorId g = from.gen_of(w[k]);
      if (g.output == last)
        prod = prod * subst[g.input];
      else
        prod = prod * NCPolynomial::generator(to.id_of(g));
    }
    out += prod;
  }
  return out;
}

GroebnerBasis groebner_truncated(const std::vector<NCPolynomial>& relations,
                                 const GeneratorUniverse& universe, int d_max,
                                 const GroebnerOptions& opt) {
  for (const auto& r : relations)
    if (r.is_zero()) throw std::invalid_argument("groebner_truncated: zero relation");
  GeneratorUniverse u = universe;
  std::vector<NCPolynomial> rels = relations;
  if (opt.eliminate_last_output) {
    u = GeneratorUniverse(universe.n_inputs(), universe.n_outputs() - 1);
    std::vector<NCPolynomial> mapped;
    for (const auto& r : relations) {
      NCPolynomial m = eliminate_last_output(r, universe);
      if (!m.is_zero()) mapped.push_back(std::move(m));
    }
    rels = std::move(mapped);
    if (rels.empty()) {
      // everything vanished under the substitution: zero ideal
      GroebnerBasis gb;
      gb.universe = u;
      gb.degree_bound = d_max;
      gb.complete = true;
      return gb;
    }
  }
  std::size_t maxdeg = 0;
  for (const auto& r : rels) maxdeg = std::max(maxdeg, r.degree());
  if (d_max < static_cast<int>(maxdeg))
    throw std::invalid_argument("groebner_truncated: d_max below relation degree");
  Engine eng(u, d_max, opt);
  return eng.run(rels);
}

ReductionResult normal_form(const NCPolynomial& f, const GroebnerBasis& gb, ReduceMode mode) {
  if (gb.has_nonzero_constant()) {
    ReductionResult rr;
    rr.reduced = !f.is_zero();
    return rr;
  }
  LeadIndex idx = build_index(gb);
  return reduce_against(f, gb.elements, idx, mode);
}

NCPolynomial normal_form_randomized(const NCPolynomial& f, const GroebnerBasis& gb,
                                    std::mt19937& rng) {
  if (gb.has_nonzero_constant()) return NCPolynomial::zero();
  LeadIndex idx = build_index(gb);
  NCPolynomial work = f;
  for (;;) {
    // collect every divisible (term, element, position) triple
    struct Hit {
      std::size_t term;
      Divisor d;
    };
    std::vector<Hit> hits;
    for (std::size_t ti = 0; ti < work.terms().size(); ++ti) {
      for (const auto& d : idx.find_all(work.terms()[ti].first.letters()))
        hits.push_back({ti, d});
    }
    if (hits.empty()) return work;
    std::uniform_int_distribution<std::size_t> pick(0, hits.size() - 1);
    const Hit& h = hits[pick(rng)];
    const Word w = work.terms()[h.term].first;
    const Rat c = work.terms()[h.term].second;
    work.fused_submul(c, w.prefix(h.d.pos), gb.elements[h.d.slot],
                      w.suffix_from(h.d.pos + h.d.len));
  }
}

TriState ideal_contains(const NCPolynomial& f, const GroebnerBasis& gb) {
  if (normal_form(f, gb).remainder.is_zero()) return TriState::yes;
  return gb.complete ? TriState::no : TriState::inconclusive;
}

TriState is_trivial(const GroebnerBasis& gb) {
  if (gb.has_nonzero_constant()) return TriState::yes;
  return gb.complete ? TriState::no : TriState::inconclusive;
}

std::string serialize(const GroebnerBasis& gb) {
  std::ostringstream os;
  os << "ncgb gradlex " << gb.universe.n_inputs() << " " << gb.universe.n_outputs() << " dmax "
     << gb.degree_bound << " complete " << (gb.complete ? 1 : 0) << "\n";
  for (const auto& e : gb.elements) os << to_text(e, gb.universe) << "\n";
  return os.str();
}

GroebnerBasis parse_groebner(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string tag, order_tag, dmax_tag, complete_tag;
  int ni = 0, no = 0, dmax = 0, complete = 0;
  is >> tag >> order_tag >> ni >> no >> dmax_tag >> dmax >> complete_tag >> complete;
  if (tag != "ncgb" || order_tag != "gradlex" || dmax_tag != "dmax" || complete_tag != "complete")
    throw std::invalid_argument("parse_groebner: bad header");
  GroebnerBasis gb;
  gb.universe = GeneratorUniverse(ni, no);
  gb.degree_bound = dmax;
  gb.complete = complete != 0;
  std::string line;
  std::getline(is, line);  // rest of header line
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    gb.elements.push_back(parse_poly(line, gb.universe));
  }
  return gb;
}

}  // namespace synq
