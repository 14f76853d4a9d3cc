#pragma once

#include "pencilforge/coeff.hpp"

#include <map>
#include <string>
#include <vector>

namespace pf {

// Monomial in jet variables u^i_(s) (s >= 1, u^i_(0) lives in the coefficient)
// and log-generators l_i = log u^i_x. Negative exponents are allowed only for
// s == 1 (localization at u^i_x).
struct JetMono {
    // (component 1..n, order >= 1) -> exponent != 0
    std::vector<std::pair<std::pair<int, int>, int>> jets;
    // component -> log exponent >= 1
    std::vector<std::pair<int, int>> logs;

    bool operator==(const JetMono&) const = default;
    bool operator<(const JetMono& o) const;

    bool is_one() const { return jets.empty() && logs.empty(); }
    int exponent(int comp, int order) const;
    int log_exponent(int comp) const;
    JetMono with_exponent(int comp, int order, int exp) const;
    JetMono with_log_exponent(int comp, int exp) const;
    JetMono times(const JetMono& o) const;
    // Differential degree: sum of s * exponent (logs count 0).
    int degree() const;
    int max_order() const;
    bool has_log() const { return !logs.empty(); }
    bool has_negative() const;
};

// Differential polynomial on the jet space with CoeffExpr coefficients.
class JetPoly {
public:
    JetPoly() = default;
    explicit JetPoly(CoeffExpr c);
    JetPoly(Session* s, const Q& c) : JetPoly(CoeffExpr(s, c)) {}
    static JetPoly jet(Session* s, int comp, int order, int exp = 1);
    static JetPoly log_jet(Session* s, int comp); // l_comp = log u^comp_x

    Session* session() const { return s_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<JetMono, CoeffExpr>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    JetPoly operator+(const JetPoly& o) const;
    JetPoly operator-(const JetPoly& o) const;
    JetPoly operator*(const JetPoly& o) const;
    JetPoly operator-() const;
    JetPoly& operator+=(const JetPoly& o);
    JetPoly& operator-=(const JetPoly& o);
    JetPoly scaled(const Q& c) const;
    JetPoly scaled(const CoeffExpr& c) const;
    bool operator==(const JetPoly& o) const { return (*this - o).is_zero(); }

    // Total x-derivative.
    JetPoly total_x() const;
    JetPoly total_x(int times) const;
    // Partial derivative wrt u^comp_(order); order 0 differentiates the
    // coefficients wrt the field variable. Log and localized terms are
    // dependent on u^comp_x and contribute at order 1.
    JetPoly partial_jet(int comp, int order) const;

    // Free of logs and of negative jet powers.
    bool is_polynomial() const;
    // Degree of a homogeneous polynomial; throws if inhomogeneous.
    int homogeneous_degree() const;
    bool is_homogeneous(int degree) const;
    // Component of given differential degree.
    JetPoly degree_part(int degree) const;
    int max_degree() const;
    int min_degree() const;
    int max_jet_order() const;
    // Coefficient (jet-free CoeffExpr) of the constant jet monomial.
    CoeffExpr jet_free_part() const;
    bool depends_on_jets() const;

    void add_term(const JetMono& m, const CoeffExpr& c);

    double numeric(const NumEnv& env, const std::map<std::pair<int, int>, double>& jet_values) const;
    std::string to_string() const;

private:
    Session* s_ = nullptr;
    std::map<JetMono, CoeffExpr> terms_;
};

// Evolutionary vector field: components X^i, i = 1..n.
struct EvoField {
    std::vector<JetPoly> comp; // size n

    int n() const { return static_cast<int>(comp.size()); }
    bool is_zero() const;
    bool is_polynomial() const;
    EvoField operator+(const EvoField& o) const;
    EvoField operator-(const EvoField& o) const;
    EvoField scaled(const Q& c) const;
};

// Local functional: density modulo total x-derivatives.
struct LocalFunctional {
    JetPoly density;

    // Variational derivative delta/delta u^i = sum_s (-d_x)^s d/du^i_(s).
    JetPoly euler(int i) const;
    std::vector<JetPoly> euler_all(int n) const;
    // Two functionals are equal iff all variational derivatives of the
    // difference vanish.
    bool equivalent_to(const LocalFunctional& o, int n) const;
};

JetPoly euler_operator(const JetPoly& density, int i);

// The evolutionary derivation sum_{k,s} (d_x^s X^k) d/du^k_(s).
JetPoly prolong(const EvoField& X, const JetPoly& f);

} // namespace pf
