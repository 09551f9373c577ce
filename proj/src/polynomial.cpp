#include "adia/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "adia/errors.hpp"

namespace adia {

namespace {

// Sparse working form used while parsing, before K is known: exponent map
// (variable index -> exponent) to coefficient.
using SparseMonomial = std::map<int, int>;
using SparsePoly = std::map<SparseMonomial, mpz_class>;

void add_term(SparsePoly& p, const SparseMonomial& mono, const mpz_class& coeff) {
  auto it = p.find(mono);
  if (it == p.end()) {
    if (coeff != 0) p.emplace(mono, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == 0) p.erase(it);
}

SparsePoly add(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly out = a;
  for (const auto& [mono, coeff] : b) add_term(out, mono, coeff);
  return out;
}

SparsePoly negate(const SparsePoly& a) {
  SparsePoly out;
  for (const auto& [mono, coeff] : a) out.emplace(mono, -coeff);
  return out;
}

SparsePoly multiply(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      SparseMonomial mono = ma;
      for (const auto& [var, exp] : mb) mono[var] += exp;
      add_term(out, mono, ca * cb);
    }
  }
  return out;
}

SparsePoly power(SparsePoly base, long exponent) {
  SparsePoly out;
  out.emplace(SparseMonomial{}, mpz_class(1));
  while (exponent > 0) {
    if (exponent & 1) out = multiply(out, base);
    exponent >>= 1;
    if (exponent > 0) base = multiply(base, base);
  }
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  SparsePoly run() {
    SparsePoly p = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError("polynomial syntax error at position " + std::to_string(pos_) +
                      ": " + message);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  mpz_class parse_uint() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected an integer literal");
    return mpz_class(text_.substr(start, pos_ - start));
  }

  long parse_exponent() {
    skip_ws();
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+'))
      fail("exponent must be a non-negative integer literal");
    mpz_class e = parse_uint();
    if (!e.fits_slong_p()) fail("exponent too large");
    return e.get_si();
  }

  SparsePoly parse_expr() {
    bool negative = false;
    if (accept('-'))
      negative = true;
    else
      accept('+');
    SparsePoly p = parse_term();
    if (negative) p = negate(p);
    for (;;) {
      if (accept('+'))
        p = add(p, parse_term());
      else if (accept('-'))
        p = add(p, negate(parse_term()));
      else
        return p;
    }
  }

  SparsePoly parse_term() {
    SparsePoly p = parse_factor();
    while (accept('*')) p = multiply(p, parse_factor());
    return p;
  }

  SparsePoly parse_factor() {
    SparsePoly base = parse_atom();
    if (accept('^')) return power(std::move(base), parse_exponent());
    return base;
  }

  SparsePoly parse_atom() {
    char c = peek();
    SparsePoly p;
    if (c == '(') {
      ++pos_;
      p = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (c == 'x') {
      ++pos_;
      mpz_class index = parse_uint();
      if (index == 0) fail("variable index 0 is invalid; variables start at x1");
      if (!index.fits_sint_p() || index.get_si() > 64)
        fail("variable index too large");
      p.emplace(SparseMonomial{{static_cast<int>(index.get_si()), 1}}, mpz_class(1));
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class v = parse_uint();
      if (v != 0) p.emplace(SparseMonomial{}, v);
      return p;
    }
    fail("expected a number, variable, or '('");
  }

  const std::string& text_;
  size_t pos_ = 0;
};

}  // namespace

DiophantinePolynomial DiophantinePolynomial::parse(const std::string& text,
                                                   int declared_num_vars) {
  if (declared_num_vars < 0)
    throw ConfigError("declared variable count must be non-negative");
  SparsePoly sparse = Parser(text).run();

  int max_var = declared_num_vars;
  for (const auto& [mono, coeff] : sparse)
    for (const auto& [var, exp] : mono) max_var = std::max(max_var, var);
  if (max_var == 0) max_var = 1;  // constant polynomial still needs K >= 1

  std::vector<Term> terms;
  terms.reserve(sparse.size());
  for (const auto& [mono, coeff] : sparse) {
    Term t;
    t.coefficient = coeff;
    t.exponents.assign(static_cast<size_t>(max_var), 0);
    for (const auto& [var, exp] : mono) t.exponents[static_cast<size_t>(var - 1)] = exp;
    terms.push_back(std::move(t));
  }
  return from_terms(max_var, std::move(terms));
}

DiophantinePolynomial DiophantinePolynomial::constant(const mpz_class& value, int num_vars) {
  std::vector<Term> terms;
  if (value != 0)
    terms.push_back(Term{value, std::vector<int>(static_cast<size_t>(num_vars), 0)});
  return from_terms(num_vars, std::move(terms));
}

DiophantinePolynomial DiophantinePolynomial::from_terms(int num_vars,
                                                        std::vector<Term> terms) {
  if (num_vars < 1) throw ConfigError("polynomial needs at least one variable");
  std::map<std::vector<int>, mpz_class> combined;
  for (auto& t : terms) {
    if (t.exponents.size() != static_cast<size_t>(num_vars))
      throw ConfigError("term exponent tuple length does not match variable count");
    for (int e : t.exponents)
      if (e < 0) throw ConfigError("negative exponent in polynomial term");
    combined[t.exponents] += t.coefficient;
  }

  DiophantinePolynomial p;
  p.num_vars_ = num_vars;
  for (auto it = combined.rbegin(); it != combined.rend(); ++it) {
    if (it->second == 0) continue;
    p.terms_.push_back(Term{it->second, it->first});
  }
  return p;
}

bool DiophantinePolynomial::is_constant() const {
  for (const auto& t : terms_)
    for (int e : t.exponents)
      if (e != 0) return false;
  return true;
}

mpz_class DiophantinePolynomial::evaluate(const std::vector<int>& point) const {
  if (point.size() != static_cast<size_t>(num_vars_))
    throw ConfigError("evaluation point has arity " + std::to_string(point.size()) +
                      ", polynomial has " + std::to_string(num_vars_) + " variables");
  mpz_class total = 0;
  mpz_class monomial, base;
  for (const auto& t : terms_) {
    monomial = t.coefficient;
    for (size_t i = 0; i < point.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      base = point[i];
      mpz_pow_ui(base.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(t.exponents[i]));
      monomial *= base;
    }
    total += monomial;
  }
  return total;
}

std::string DiophantinePolynomial::format() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    mpz_class coeff = t.coefficient;
    if (first) {
      if (coeff < 0) {
        out << "-";
        coeff = -coeff;
      }
    } else {
      out << (coeff < 0 ? " - " : " + ");
      if (coeff < 0) coeff = -coeff;
    }
    first = false;

    bool has_vars = false;
    for (int e : t.exponents)
      if (e > 0) has_vars = true;

    if (!has_vars || coeff != 1) out << coeff.get_str();
    bool need_star = !has_vars || coeff != 1;
    for (size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      if (need_star) out << "*";
      out << "x" << (i + 1);
      if (t.exponents[i] > 1) out << "^" << t.exponents[i];
      need_star = true;
    }
  }
  return out.str();
}

std::optional<std::vector<int>> has_solution_under_cutoff(
    const DiophantinePolynomial& poly, const std::vector<int>& cutoff_per_mode) {
  if (cutoff_per_mode.size() != static_cast<size_t>(poly.num_vars()))
    throw ConfigError("cutoff arity does not match polynomial variable count");
  for (int c : cutoff_per_mode)
    if (c < 0) throw ConfigError("cutoffs must be non-negative");

  // Odometer with x1 outermost visits the box in lexicographic order, so the
  // first root found is the smallest.
  std::vector<int> point(cutoff_per_mode.size(), 0);
  for (;;) {
    if (poly.evaluate(point) == 0) return point;
    size_t i = point.size();
    for (;;) {
      if (i == 0) return std::nullopt;
      --i;
      if (point[i] < cutoff_per_mode[i]) {
        ++point[i];
        std::fill(point.begin() + static_cast<long>(i) + 1, point.end(), 0);
        break;
      }
    }
  }
}

std::optional<std::vector<int>> has_solution_under_cutoff(const DiophantinePolynomial& poly,
                                                          int cutoff) {
  return has_solution_under_cutoff(
      poly, std::vector<int>(static_cast<size_t>(poly.num_vars()), cutoff));
}

double to_double_checked(const mpz_class& value, const std::string& what) {
  static const mpz_class limit = mpz_class(1) << 53;
  if (abs(value) > limit)
    throw NumericGuardError(what + " = " + value.get_str() +
                            " exceeds 2^53; double conversion would lose integer precision");
  return value.get_d();
}

}  // namespace adia
