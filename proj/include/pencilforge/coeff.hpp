#pragma once

#include "pencilforge/field.hpp"
#include "pencilforge/poly.hpp"

#include <map>
#include <string>

namespace pf {

// Element of the coefficient differential field: a rational function
// num / prod(unit_k^e_k) where the units are declared-nonzero polynomials and
// generator symbols. Kept in canonical form: generator rewrites applied, all
// unit factors cancelled out of the numerator, rewrite-generators never in the
// denominator. With pairwise coprime declared units the form is unique, so
// is_zero is just num == 0.
class CoeffExpr {
public:
    CoeffExpr() = default;
    CoeffExpr(Session* s, const Q& c) : s_(s), num_(c) {}
    static CoeffExpr constant(Session* s, const Q& c) { return CoeffExpr(s, c); }
    static CoeffExpr var(Session* s, int i);      // field variable, 1-based
    static CoeffExpr symbol(Session* s, int sym); // any symbol id
    static CoeffExpr from_poly(Session* s, Poly p);

    Session* session() const { return s_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.empty(); }
    Q constant_value() const { return num_.constant_value(); }
    const Poly& num() const { return num_; }
    const std::map<int, int>& den() const { return den_; }

    CoeffExpr operator+(const CoeffExpr& o) const;
    CoeffExpr operator-(const CoeffExpr& o) const;
    CoeffExpr operator*(const CoeffExpr& o) const;
    CoeffExpr operator/(const CoeffExpr& o) const;
    CoeffExpr operator-() const;
    CoeffExpr& operator+=(const CoeffExpr& o) { return *this = *this + o; }
    CoeffExpr& operator-=(const CoeffExpr& o) { return *this = *this - o; }
    CoeffExpr& operator*=(const CoeffExpr& o) { return *this = *this * o; }
    CoeffExpr& operator/=(const CoeffExpr& o) { return *this = *this / o; }
    bool operator==(const CoeffExpr& o) const { return (*this - o).is_zero(); }

    CoeffExpr scaled(const Q& c) const;
    CoeffExpr pow(int k) const; // negative k inverts
    CoeffExpr inverse() const;

    // d/du^i (1-based); Leibniz + generator derivation table.
    CoeffExpr partial(int i) const;

    bool depends_on(int sym) const;
    double numeric(const NumEnv& env) const;
    std::string to_string() const;

    // Structural key used to cache adjoined roots.
    std::string canonical_key() const;

private:
    void normalize();
    CoeffExpr with_den(std::map<int, int> den) const;

    Session* s_ = nullptr;
    Poly num_;
    std::map<int, int> den_; // den unit id -> exponent >= 1
};

// normalize_and_test_zero per spec: the value is already canonical, so this
// just reports is_zero alongside it.
inline std::pair<CoeffExpr, bool> normalize_and_test_zero(const CoeffExpr& e) {
    return {e, e.is_zero()};
}

} // namespace pf
