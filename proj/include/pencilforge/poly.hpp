#pragma once

#include "pencilforge/common.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace pf {

// Sparse monomial: (symbol id, exponent) pairs, sorted by symbol id, exponents > 0.
// Symbols are session-wide ids; the polynomial layer does not know what they mean.
struct Mono {
    std::vector<std::pair<int, int>> e;

    bool operator==(const Mono&) const = default;
    // Lex order on the sparse exponent sequence. A valid monomial order: total,
    // multiplicative, and 1 is minimal.
    bool operator<(const Mono& o) const;

    bool is_one() const { return e.empty(); }
    int exponent(int sym) const;
    int total_degree() const;
    Mono times(const Mono& o) const;
    // Divide by o; nullopt if not divisible.
    std::optional<Mono> divided_by(const Mono& o) const;
    Mono with_exponent(int sym, int exp) const; // exp==0 removes the symbol
};

// Multivariate polynomial with exact rational coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(const Q& c);
    static Poly variable(int sym, int exp = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Constant term value (asserts is_constant()).
    Q constant_value() const;

    std::size_t term_count() const { return terms_.size(); }
    const std::map<Mono, Q>& terms() const { return terms_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly scaled(const Q& c) const;
    Poly pow(int k) const;

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    // d/d(sym), treating all other symbols as constants.
    Poly derivative(int sym) const;

    int degree_in(int sym) const;
    int max_exponent(int sym) const;
    // True if the symbol occurs in any term.
    bool depends_on(int sym) const;
    void collect_symbols(std::vector<int>& out) const;

    // Exact division: returns quotient iff *this == q * d exactly.
    std::optional<Poly> exact_divide(const Poly& d) const;

    // Substitute symbol -> polynomial.
    Poly substituted(int sym, const Poly& value) const;

    void add_term(const Mono& m, const Q& c);

    // Leading term under the monomial order (asserts nonzero).
    std::pair<Mono, Q> leading() const;

private:
    std::map<Mono, Q> terms_;
};

} // namespace pf
