#include "synq/ncpoly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace synq {

GeneratorUniverse::GeneratorUniverse(int n_inputs, int n_outputs)
    : n_inputs_(n_inputs), n_outputs_(n_outputs) {
  if (n_inputs < 0 || n_outputs < 0 || n_inputs * n_outputs > 65535)
    throw std::invalid_argument("GeneratorUniverse: unsupported size");
}

Gen GeneratorUniverse::id_of(GeneratorId g) const {
  if (g.input < 0 || g.input >= n_inputs_ || g.output < 0 || g.output >= n_outputs_)
    throw std::invalid_argument("generator index out of range");
  return static_cast<Gen>(g.input * n_outputs_ + g.output);
}

GeneratorId GeneratorUniverse::gen_of(Gen id) const {
  if (id >= size()) throw std::invalid_argument("generator id out of range");
  return {id / n_outputs_, id % n_outputs_};
}

Word Word::reversed() const {
  std::vector<Gen> r(letters_.rbegin(), letters_.rend());
  return Word(std::move(r));
}

Word Word::prefix(std::size_t len) const {
  return Word(std::vector<Gen>(letters_.begin(), letters_.begin() + len));
}

Word Word::suffix_from(std::size_t pos) const {
  return Word(std::vector<Gen>(letters_.begin() + pos, letters_.end()));
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Gen> r;
  r.reserve(a.letters_.size() + b.letters_.size());
  r.insert(r.end(), a.letters_.begin(), a.letters_.end());
  r.insert(r.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::move(r));
}

std::size_t WordHash::operator()(std::span<const Gen> w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Gen g : w) {
    h ^= static_cast<std::size_t>(g) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  return (*this)(w.letters());
}

std::strong_ordering compare_words(std::span<const Gen> a, std::span<const Gen> b,
                                   MonomialOrder) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] <=> b[i];
  return std::strong_ordering::equal;
}

std::strong_ordering compare_words(const Word& a, const Word& b, MonomialOrder o) {
  return compare_words(a.letters(), b.letters(), o);
}

NCPolynomial NCPolynomial::constant(Rat c) {
  NCPolynomial p;
  if (c != 0) p.terms_.emplace_back(Word::one(), std::move(c));
  return p;
}

NCPolynomial NCPolynomial::monomial(Word w, Rat c) {
  NCPolynomial p;
  if (c != 0) p.terms_.emplace_back(std::move(w), std::move(c));
  return p;
}

NCPolynomial NCPolynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return compare_words(a.first, b.first) == std::strong_ordering::greater;
  });
  NCPolynomial p;
  for (auto& [w, c] : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == w) {
      p.terms_.back().second += c;
      if (p.terms_.back().second == 0) p.terms_.pop_back();
    } else if (c != 0) {
      p.terms_.emplace_back(std::move(w), std::move(c));
    }
  }
  return p;
}

bool NCPolynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty());
}

std::size_t NCPolynomial::degree() const {
  return terms_.empty() ? 0 : terms_.front().first.size();
}

Rat NCPolynomial::coeff_of(const Word& w) const {
  // terms_ descending: binary search
  auto it = std::lower_bound(terms_.begin(), terms_.end(), w,
                             [](const Term& t, const Word& key) {
                               return compare_words(t.first, key) == std::strong_ordering::greater;
                             });
  if (it != terms_.end() && it->first == w) return it->second;
  return Rat(0);
}

NCPolynomial NCPolynomial::involute() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [w, c] : terms_) out.emplace_back(w.reversed(), c);
  return from_terms(std::move(out));
}

namespace {

// Merge two descending term lists into one (b scaled by s).
std::vector<NCPolynomial::Term> merge_terms(const std::vector<NCPolynomial::Term>& a,
                                            const std::vector<NCPolynomial::Term>& b,
                                            const Rat& s) {
  std::vector<NCPolynomial::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    auto cmp = compare_words(a[i].first, b[j].first);
    if (cmp == std::strong_ordering::greater) {
      out.push_back(a[i++]);
    } else if (cmp == std::strong_ordering::less) {
      out.emplace_back(b[j].first, b[j].second * s);
      ++j;
    } else {
      Rat c = a[i].second + b[j].second * s;
      if (c != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.emplace_back(b[j].first, b[j].second * s);
  return out;
}

}  // namespace

NCPolynomial& NCPolynomial::operator+=(const NCPolynomial& o) {
  terms_ = merge_terms(terms_, o.terms_, Rat(1));
  return *this;
}

NCPolynomial& NCPolynomial::operator-=(const NCPolynomial& o) {
  terms_ = merge_terms(terms_, o.terms_, Rat(-1));
  return *this;
}

NCPolynomial& NCPolynomial::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

NCPolynomial operator-(NCPolynomial a) { return a *= Rat(-1); }

NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b) {
  std::vector<NCPolynomial::Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) out.emplace_back(wa * wb, ca * cb);
  return NCPolynomial::from_terms(std::move(out));
}

void NCPolynomial::fused_submul(const Rat& c, const Word& a, const NCPolynomial& g,
                                const Word& b) {
  if (c == 0 || g.is_zero()) return;
  // Bordering each term of g by fixed words a, b preserves descending order.
  std::vector<Term> scaled;
  scaled.reserve(g.terms_.size());
  for (const auto& [w, k] : g.terms_) scaled.emplace_back(a * w * b, k);
  terms_ = merge_terms(terms_, scaled, -c);
}

NCPolynomial::Term NCPolynomial::take_leading() {
  Term t = std::move(terms_.front());
  terms_.erase(terms_.begin());
  return t;
}

// ---------------------------------------------------------------------------
// text form

std::string to_text(const Word& w) {
  if (w.empty()) return "1";
  // Caller-facing prints go through the universe-aware path below; a word
  // alone prints with flat ids decoded lazily as x[?]. Keep it simple: the
  // polynomial printer owns the i,a decoding.
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "*";
    s += "x<" + std::to_string(w[i]) + ">";
  }
  return s;
}

namespace {

std::string word_text(const Word& w, const GeneratorUniverse& u) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "*";
    GeneratorId g = u.gen_of(w[i]);
    s += "x[" + std::to_string(g.input) + "," + std::to_string(g.output) + "]";
  }
  return s;
}

}  // namespace

std::string to_text(const NCPolynomial& p, const GeneratorUniverse& u);

std::string to_text(const NCPolynomial& p) {
  // Degenerate fallback when no universe is known (debug only).
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    Rat a = c;
    bool neg = a < 0;
    if (neg) a = -a;
    s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    if (a != 1 || w.empty()) {
      s += to_string(a);
      if (!w.empty()) s += "*";
    }
    if (!w.empty()) s += to_text(w);
  }
  return s;
}

std::string to_text(const NCPolynomial& p, const GeneratorUniverse& u) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    Rat a = c;
    bool neg = a < 0;
    if (neg) a = -a;
    s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    if (a != 1 || w.empty()) {
      s += to_string(a);
      if (!w.empty()) s += "*";
    }
    if (!w.empty()) s += word_text(w, u);
  }
  return s;
}

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  const GeneratorUniverse& u;

  explicit Parser(std::string_view t, const GeneratorUniverse& uni) : text(t), u(uni) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos) +
                                ": " + what);
  }

  long integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return std::stol(std::string(text.substr(start, pos - start)));
  }

  // factor := rational | x[i,a]
  NCPolynomial factor() {
    skip_ws();
    if (peek() == 'x') {
      ++pos;
      if (!eat('[')) fail("expected '['");
      long i = integer();
      if (!eat(',')) fail("expected ','");
      long a = integer();
      if (!eat(']')) fail("expected ']'");
      return NCPolynomial::generator(u.id_of({static_cast<int>(i), static_cast<int>(a)}));
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      long num = integer();
      if (eat('/')) {
        long den = integer();
        if (den == 0) fail("zero denominator");
        return NCPolynomial::constant(rat(num, den));
      }
      return NCPolynomial::constant(Rat(num));
    }
    fail("expected atom or literal");
  }

  NCPolynomial term() {
    NCPolynomial p = factor();
    while (eat('*')) p = p * factor();
    return p;
  }

  NCPolynomial poly() {
    NCPolynomial p;
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    NCPolynomial t = term();
    p = neg ? -t : t;
    for (;;) {
      skip_ws();
      if (pos >= text.size()) break;
      if (eat('+')) {
        p += term();
      } else if (eat('-')) {
        p -= term();
      } else {
        fail("expected '+' or '-'");
      }
    }
    return p;
  }
};

}  // namespace

NCPolynomial parse_poly(std::string_view text, const GeneratorUniverse& u) {
  Parser p(text, u);
  p.skip_ws();
  if (p.pos >= text.size()) throw std::invalid_argument("polynomial parse error: empty input");
  return p.poly();
}

}  // namespace synq
