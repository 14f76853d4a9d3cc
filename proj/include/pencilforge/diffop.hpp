#pragma once

#include "pencilforge/jet.hpp"

#include <map>
#include <vector>

namespace pf {

// n x n matrix of differential operators sum_m a_m d_x^m with JetPoly
// coefficients.
class MatDiffOp {
public:
    MatDiffOp() = default;
    MatDiffOp(Session* s, int n);

    Session* session() const { return s_; }
    int n() const { return n_; }
    bool is_zero() const;

    const std::map<int, JetPoly>& entry(int i, int j) const; // 1-based
    void add(int i, int j, int order, const JetPoly& coeff);
    void set(int i, int j, int order, const JetPoly& coeff);
    int max_order() const;

    MatDiffOp operator+(const MatDiffOp& o) const;
    MatDiffOp operator-(const MatDiffOp& o) const;
    MatDiffOp operator-() const;
    MatDiffOp scaled(const Q& c) const;
    MatDiffOp scaled(const CoeffExpr& c) const;
    bool operator==(const MatDiffOp& o) const;

    // Formal adjoint: transpose with entrywise (a d^m)^+ = (-d)^m o a.
    MatDiffOp adjoint() const;
    bool is_skew_adjoint() const;

    MatDiffOp compose(const MatDiffOp& o) const;

    // Apply to a vector of jet polynomials: (P w)^i = sum_j P^ij w_j.
    std::vector<JetPoly> apply(const std::vector<JetPoly>& w) const;

    // Coefficients mapped through an arbitrary derivation.
    template <typename F>
    MatDiffOp map_coeffs(F&& f) const {
        MatDiffOp r(s_, n_);
        for (int i = 1; i <= n_; ++i)
            for (int j = 1; j <= n_; ++j)
                for (const auto& [m, c] : entry(i, j)) r.add(i, j, m, f(c));
        return r;
    }

    // Every term obeys coeff-degree + order == grade (pattern of the pencil
    // expansion: degree-l coefficient multiplies d^(k-l+1) at epsilon^k).
    bool is_grade_homogeneous(int grade) const;
    // Split into grade-homogeneous parts (grade -> operator).
    std::map<int, MatDiffOp> grade_parts() const;

    std::string to_string() const; // one line per entry: P[i][j] = ...

private:
    Session* s_ = nullptr;
    int n_ = 0;
    std::vector<std::map<int, JetPoly>> e_; // row-major (i-1)*n + (j-1)
};

// Dubrovin-Novikov operator from a contravariant metric: g^{ij} d_x + b^{ij}_k u^k_x
// with b^{ij}_k = -g^{il} Gamma^j_{lk}, Gamma the Levi-Civita symbols of g.
// Metric entries are jet-free functions of u.
MatDiffOp hydro_operator(Session* s, const std::vector<std::vector<CoeffExpr>>& g);

// Linear (Balinskii-Novikov) operator from structure constants:
// P^{ij} = (b^{ij}_k + b^{ji}_k) u^k d_x + b^{ij}_k u^k_x.
MatDiffOp bn_operator(Session* s, const std::vector<std::vector<std::vector<Q>>>& b);

// b^{ij}_k structure-constant axioms of a Balinskii-Novikov algebra.
bool bn_axioms_hold(const std::vector<std::vector<std::vector<Q>>>& b);
// eta(e^i . e^j, e^k) = eta(e^i, e^k . e^j) with symbolic eta entries.
bool bilinear_form_invariant(Session* s, const std::vector<std::vector<std::vector<Q>>>& b,
                             const std::vector<std::vector<CoeffExpr>>& eta);

// Levi-Civita Christoffel symbols Gamma^i_{jk} of a contravariant metric.
std::vector<std::vector<std::vector<CoeffExpr>>>
christoffel_symbols(Session* s, const std::vector<std::vector<CoeffExpr>>& g_contra);

// Exact inverse of a matrix of jet-free coefficients.
std::vector<std::vector<CoeffExpr>> invert_matrix(Session* s,
                                                  const std::vector<std::vector<CoeffExpr>>& g);
CoeffExpr matrix_det(Session* s, const std::vector<std::vector<CoeffExpr>>& g);

// Epsilon-graded lambda-linear pencil: layers Pi_k = A_k - lambda B_k.
// With epsilon absorbed into the grading, layer k holds the
// grade-(k+1)-homogeneous part (grade = coefficient degree + operator order).
class GradedPencil {
public:
    GradedPencil() = default;
    GradedPencil(Session* s, int n, int truncation);

    Session* session() const { return s_; }
    int n() const { return n_; }
    int truncation() const { return trunc_; }

    MatDiffOp& A(int k);
    MatDiffOp& B(int k);
    const MatDiffOp& A(int k) const;
    const MatDiffOp& B(int k) const;
    int layer_count() const { return static_cast<int>(layers_.size()); }

    void set_layer(int k, MatDiffOp a, MatDiffOp b);
    // Add a grade-mixed operator, distributing grade-homogeneous parts over layers.
    void add_to_A(const MatDiffOp& op);
    void add_to_B(const MatDiffOp& op);

    // Layer-k slice as hydrodynamic pair at k = 0 plus deformation tails.
    // Audit: every layer obeys the degree/order pattern.
    void audit_homogeneity() const;

    GradedPencil truncated(int new_trunc) const;

private:
    Session* s_ = nullptr;
    int n_ = 0;
    int trunc_ = 0;
    std::vector<std::pair<MatDiffOp, MatDiffOp>> layers_; // [k] = (A_k, B_k)
};

} // namespace pf
