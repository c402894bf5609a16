#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "synq/ncpoly.hpp"

namespace synq {

/// Honest answer discipline for degree-truncated computations:
/// `inconclusive` is only ever produced by incomplete bases.
enum class TriState { yes, no, inconclusive };
const char* to_cstring(TriState t);

enum class ReduceMode {
  two_sided,  // rewrite any factor occurrence of a leading word
  left        // rewrite only suffix occurrences (left-ideal division)
};

struct ReductionResult {
  NCPolynomial remainder;
  bool reduced = false;  // true iff at least one rewrite fired
};

class resource_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroebnerOptions {
  std::size_t max_elements = 50000;
  /// Substitute x[i,|O|-1] := 1 - sum_{a<|O|-1} x[i,a] before running,
  /// shrinking the universe by one output. Off by default.
  bool eliminate_last_output = false;
};

/// Truncated, interreduced two-sided Groebner basis. `complete` is true
/// only when the obstruction queue emptied without skipping any overlap,
/// including overlaps whose degree would have exceeded the bound; only
/// then do divisions decide ideal membership exactly.
struct GroebnerBasis {
  GeneratorUniverse universe;
  MonomialOrder order;
  std::vector<NCPolynomial> elements;  // monic, interreduced, ascending leading words
  int degree_bound = 0;
  bool complete = false;

  bool has_nonzero_constant() const;
};

/// Default truncation: twice the maximal relation degree plus four.
int default_degree_bound(const std::vector<NCPolynomial>& relations);

GroebnerBasis groebner_truncated(const std::vector<NCPolynomial>& relations,
                                 const GeneratorUniverse& universe, int d_max,
                                 const GroebnerOptions& opt = {});

ReductionResult normal_form(const NCPolynomial& f, const GroebnerBasis& gb,
                            ReduceMode mode = ReduceMode::two_sided);

/// Rewrites a uniformly random divisible (term, element, position) triple
/// at each step instead of the deterministic leftmost-leading strategy.
/// For a complete basis the result must coincide with normal_form.
NCPolynomial normal_form_randomized(const NCPolynomial& f, const GroebnerBasis& gb,
                                    std::mt19937& rng);

TriState ideal_contains(const NCPolynomial& f, const GroebnerBasis& gb);
TriState is_trivial(const GroebnerBasis& gb);

/// Image of p under x[i,|O|-1] -> 1 - sum_{a<|O|-1} x[i,a], expressed over
/// the universe with one fewer output.
NCPolynomial eliminate_last_output(const NCPolynomial& p, const GeneratorUniverse& from);

std::string serialize(const GroebnerBasis& gb);
GroebnerBasis parse_groebner(std::string_view text);

}  // namespace synq
