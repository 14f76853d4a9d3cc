#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pf {

// Exact rational scalar. All engine arithmetic is zero-tolerance symbolic,
// so coefficients are arbitrary-precision rationals.
using Q = mpq_class;

class PfError : public std::runtime_error {
public:
    explicit PfError(const std::string& what) : std::runtime_error(what) {}
};

inline Q q_of(long num, long den = 1) {
    Q q(num, den);
    q.canonicalize();
    return q;
}

// Parse "p", "-p", "p/q" into an exact rational.
inline Q q_parse(const std::string& text) {
    Q q;
    if (q.set_str(text, 10) != 0) throw PfError("bad rational literal: " + text);
    q.canonicalize();
    return q;
}

inline Q q_binomial(int n, int k) {
    if (k < 0 || k > n) return Q(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Q(b);
}

inline Q q_factorial(int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Q(f);
}

} // namespace pf
