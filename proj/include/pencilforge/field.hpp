#pragma once

#include "pencilforge/common.hpp"
#include "pencilforge/poly.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace pf {

class CoeffExpr;
class Session;

enum class SymKind { FieldVar, Param, Generator };

// Numeric environment for spot checks: values for field variables and parameters.
struct NumEnv {
    std::map<int, double> values; // symbol id -> value
    double value_of(int sym) const;
};

struct GeneratorInfo {
    std::string name;
    // Partial derivative with respect to each field variable (size = nvars).
    // Empty when the generator is a lazy derivative chain.
    std::vector<CoeffExpr> partials;
    // Rewrite rule g^q -> target (q >= 2); target must be free of g.
    int rewrite_pow = 0;
    std::shared_ptr<CoeffExpr> rewrite_target;
    // Lazy chain f, f', f'', ... : partial wrt chain_var is the next chain symbol.
    bool lazy_chain = false;
    int chain_var = -1;  // field variable index the chain differentiates in
    int chain_next = -1; // symbol id of the derivative, created on demand
    // Optional numeric evaluator (for the numeric oracle spot checks).
    std::function<double(const NumEnv&)> numeric;
};

// Denominator unit: either a declared-nonzero polynomial in field variables and
// parameters, or a generator symbol (generators are treated as units).
struct DenUnit {
    Poly poly;
    int gen_sym = -1; // >= 0 when the unit is a generator symbol
};

// A differential-field session: field variables u^1..u^n, parameters with
// nonvanishing constraints, and transcendental generators with declared
// derivation and rewrite rules. Append-only and internally synchronized, so
// values built on it can be used from several threads.
class Session : public std::enable_shared_from_this<Session> {
public:
    explicit Session(int nvars, const std::string& var_prefix = "u");
    ~Session();

    int nvars() const { return nvars_; }
    int var_symbol(int i) const; // i in 1..nvars
    SymKind kind(int sym) const;
    const std::string& name(int sym) const;
    int symbol_count() const;
    std::optional<int> lookup(const std::string& name) const;

    int declare_param(const std::string& name);
    // Declares p != 0; p must be free of generator symbols and non-constant.
    void declare_nonzero(const Poly& p);
    bool is_declared_nonzero(const Poly& p) const;
    std::vector<Poly> nonzero_list() const;

    // Spec operation declare_generator: partials maps field-variable index
    // (1-based) to the derivative value. Re-declaring a name with different
    // rules is rejected; identical re-declaration returns the existing id.
    int declare_generator(const std::string& name, const std::map<int, CoeffExpr>& partials,
                          std::optional<std::pair<int, CoeffExpr>> rewrite = std::nullopt,
                          std::function<double(const NumEnv&)> numeric = nullptr);

    // Lazy derivative chain for an opaque function of u^var: f, f', f'', ...
    int declare_function(const std::string& name, int var,
                         std::function<double(const NumEnv&)> numeric = nullptr);

    // Generator w with w^q -> base (base a declared-nonzero polynomial or a
    // canonical CoeffExpr); partials follow d_i w = (d_i base / (q base)) w.
    int declare_root(const std::string& name, const CoeffExpr& base, int q);

    // Cached root generator for an arbitrary canonical residue (used when a
    // series square root needs a fresh extension).
    int root_for(const CoeffExpr& residue, int q);

    const GeneratorInfo& generator(int sym) const;
    // Partial derivative of a generator wrt field variable i (1-based);
    // extends lazy chains on demand.
    CoeffExpr generator_partial(int sym, int i);

    int den_unit_for_poly(const Poly& p);           // registers if needed (must be declared nonzero)
    std::optional<int> find_den_unit(const Poly& p) const;
    int den_unit_for_gen(int gen_sym);
    const DenUnit& den_unit(int id) const;
    std::size_t den_unit_count() const;

    double numeric_generator(int sym, const NumEnv& env) const;

private:
    int add_symbol(const std::string& name, SymKind kind);

    mutable std::recursive_mutex mu_;
    int nvars_;
    std::vector<std::string> names_;
    std::vector<SymKind> kinds_;
    std::map<std::string, int> by_name_;
    std::map<int, GeneratorInfo> gens_;
    std::vector<DenUnit> units_;
    std::vector<Poly> nonzero_;
    std::map<std::string, int> root_cache_;
};

using SessionPtr = std::shared_ptr<Session>;

} // namespace pf
