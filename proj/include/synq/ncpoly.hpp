#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "synq/rational.hpp"

namespace synq {

/// Index of one hermitian generator x[i,a]. Generators are interned as
/// flat ids: id = input * n_outputs + output, which makes id order agree
/// with (input, output) lexicographic precedence.
using Gen = std::uint16_t;

struct GeneratorId {
  int input = 0;
  int output = 0;
  friend bool operator==(const GeneratorId&, const GeneratorId&) = default;
};

class GeneratorUniverse {
 public:
  GeneratorUniverse() = default;
  GeneratorUniverse(int n_inputs, int n_outputs);

  int n_inputs() const { return n_inputs_; }
  int n_outputs() const { return n_outputs_; }
  int size() const { return n_inputs_ * n_outputs_; }

  Gen id_of(GeneratorId g) const;
  Gen id_of(int input, int output) const { return id_of({input, output}); }
  GeneratorId gen_of(Gen id) const;

  friend bool operator==(const GeneratorUniverse&, const GeneratorUniverse&) = default;

 private:
  int n_inputs_ = 0;
  int n_outputs_ = 0;
};

/// A word over the generators; the empty word is the multiplicative unit.
/// No commutation is assumed anywhere.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Gen> letters) : letters_(std::move(letters)) {}
  static Word one() { return Word(); }
  static Word single(Gen g) { return Word(std::vector<Gen>{g}); }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Gen operator[](std::size_t i) const { return letters_[i]; }
  std::span<const Gen> letters() const { return letters_; }

  Word reversed() const;
  Word prefix(std::size_t len) const;
  Word suffix_from(std::size_t pos) const;
  std::span<const Gen> factor(std::size_t pos, std::size_t len) const {
    return std::span<const Gen>(letters_).subspan(pos, len);
  }

  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Gen> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
  std::size_t operator()(std::span<const Gen> w) const noexcept;
};

/// Graded lexicographic word order: shorter words first, ties broken
/// left-to-right by generator id. Total, multiplicative and well founded.
struct MonomialOrder {};

std::strong_ordering compare_words(std::span<const Gen> a, std::span<const Gen> b,
                                   MonomialOrder = {});
std::strong_ordering compare_words(const Word& a, const Word& b, MonomialOrder = {});

/// Transparent "greater" comparator so term lists sort leading-first.
struct WordGreater {
  using is_transparent = void;
  bool operator()(std::span<const Gen> a, std::span<const Gen> b) const {
    return compare_words(a, b) == std::strong_ordering::greater;
  }
  bool operator()(const Word& a, const Word& b) const {
    return (*this)(a.letters(), b.letters());
  }
  bool operator()(const Word& a, std::span<const Gen> b) const {
    return (*this)(a.letters(), b);
  }
  bool operator()(std::span<const Gen> a, const Word& b) const {
    return (*this)(a, b.letters());
  }
};

/// Exact-rational linear combination of words, kept sorted descending in
/// the monomial order with no zero coefficients stored.
class NCPolynomial {
 public:
  using Term = std::pair<Word, Rat>;

  NCPolynomial() = default;

  static NCPolynomial zero() { return NCPolynomial(); }
  static NCPolynomial one() { return constant(Rat(1)); }
  static NCPolynomial constant(Rat c);
  static NCPolynomial monomial(Word w, Rat c = Rat(1));
  static NCPolynomial generator(Gen g) { return monomial(Word::single(g)); }

  /// Takes an arbitrary term list; sorts, merges and prunes zeros.
  static NCPolynomial from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t n_terms() const { return terms_.size(); }
  std::size_t degree() const;  // 0 for constants and for the zero polynomial

  const std::vector<Term>& terms() const { return terms_; }
  const Word& leading_word() const { return terms_.front().first; }
  const Rat& leading_coeff() const { return terms_.front().second; }
  Rat coeff_of(const Word& w) const;

  NCPolynomial involute() const;  // words reversed; rational conjugation is identity

  NCPolynomial& operator+=(const NCPolynomial& o);
  NCPolynomial& operator-=(const NCPolynomial& o);
  NCPolynomial& operator*=(const Rat& c);

  friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial& b) { return a += b; }
  friend NCPolynomial operator-(NCPolynomial a, const NCPolynomial& b) { return a -= b; }
  friend NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b);
  friend NCPolynomial operator*(NCPolynomial a, const Rat& c) { return a *= c; }
  friend NCPolynomial operator*(const Rat& c, NCPolynomial a) { return a *= c; }
  friend NCPolynomial operator-(NCPolynomial a);
  friend bool operator==(const NCPolynomial&, const NCPolynomial&) = default;

  /// f -= c * (a . g . b). Cancels c*a*lw(g)*b exactly when g is monic;
  /// O(|f| + |g|) because bordering by fixed words preserves term order.
  void fused_submul(const Rat& c, const Word& a, const NCPolynomial& g, const Word& b);

  /// Pops the current leading term (used by reduction loops).
  Term take_leading();

 private:
  std::vector<Term> terms_;
};

/// Textual syntax: `x[i,a]` atoms, `*` products, `+`/`-`, integer or
/// rational literals such as `3/2`. Printing and parsing round-trip.
std::string to_text(const NCPolynomial& p, const GeneratorUniverse& u);
NCPolynomial parse_poly(std::string_view text, const GeneratorUniverse& u);

/// Debug prints with flat generator ids; does not round-trip.
std::string to_text(const NCPolynomial& p);
std::string to_text(const Word& w);

}  // namespace synq
