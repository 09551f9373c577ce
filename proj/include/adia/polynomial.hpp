#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace adia {

/*
 * Integer-coefficient polynomial D(x1,...,xK) over non-negative integers.
 *
 * Canonical form: like terms combined, zero coefficients dropped, terms
 * sorted by exponent tuple (lexicographic descending). Coefficients are
 * arbitrary precision; evaluation is exact at any magnitude.
 *
 * Grammar accepted by parse():
 *   expr   := ['+'|'-'] term (('+'|'-') term)*
 *   term   := factor ('*' factor)*
 *   factor := atom ('^' uint)?
 *   atom   := uint | var | '(' expr ')'
 *   var    := 'x' uint          (index >= 1)
 */
class DiophantinePolynomial {
 public:
  struct Term {
    mpz_class coefficient;
    std::vector<int> exponents;  // length == num_vars()

    bool operator==(const Term& other) const {
      return coefficient == other.coefficient && exponents == other.exponents;
    }
  };

  // Parses text; num_vars is the highest variable index mentioned, or
  // declared_num_vars if larger. declared_num_vars = 0 means "infer".
  // Throws ConfigError with a character position on bad syntax.
  static DiophantinePolynomial parse(const std::string& text, int declared_num_vars = 0);

  static DiophantinePolynomial constant(const mpz_class& value, int num_vars = 1);

  // Builds directly from terms (used by tests and the search harness);
  // canonicalizes.
  static DiophantinePolynomial from_terms(int num_vars, std::vector<Term> terms);

  int num_vars() const { return num_vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_constant() const;

  // Exact value of D at a point of non-negative integers, length num_vars().
  mpz_class evaluate(const std::vector<int>& point) const;

  // Canonical string; parse(format()) reproduces the same term set.
  std::string format() const;

  bool operator==(const DiophantinePolynomial& other) const {
    return num_vars_ == other.num_vars_ && terms_ == other.terms_;
  }

 private:
  DiophantinePolynomial() = default;

  int num_vars_ = 1;
  std::vector<Term> terms_;  // canonical order
};

// Lexicographically smallest point in the box [0,cutoff_1] x ... x [0,cutoff_K]
// with D = 0, or nullopt. Exhaustive exact-arithmetic scan.
std::optional<std::vector<int>> has_solution_under_cutoff(
    const DiophantinePolynomial& poly, const std::vector<int>& cutoff_per_mode);
std::optional<std::vector<int>> has_solution_under_cutoff(
    const DiophantinePolynomial& poly, int cutoff);

// Converts to double, throwing NumericGuardError if |value| > 2^53. Used
// wherever exact integers enter floating-point matrices.
double to_double_checked(const mpz_class& value, const std::string& what);

}  // namespace adia
