#include "pencilforge/field.hpp"

#include "pencilforge/coeff.hpp"

#include <cmath>

namespace pf {

double NumEnv::value_of(int sym) const {
    auto it = values.find(sym);
    if (it == values.end()) throw PfError("no numeric value bound for symbol id " + std::to_string(sym));
    return it->second;
}

Session::Session(int nvars, const std::string& var_prefix) : nvars_(nvars) {
    for (int i = 1; i <= nvars; ++i) add_symbol(var_prefix + std::to_string(i), SymKind::FieldVar);
}

Session::~Session() = default;

int Session::add_symbol(const std::string& name, SymKind kind) {
    if (by_name_.count(name)) throw PfError("symbol already declared: " + name);
    int id = static_cast<int>(names_.size());
    names_.push_back(name);
    kinds_.push_back(kind);
    by_name_.emplace(name, id);
    return id;
}

int Session::var_symbol(int i) const {
    if (i < 1 || i > nvars_) throw PfError("field variable index out of range");
    return i - 1;
}

SymKind Session::kind(int sym) const { return kinds_.at(sym); }
const std::string& Session::name(int sym) const { return names_.at(sym); }
int Session::symbol_count() const {
    std::lock_guard lk(mu_);
    return static_cast<int>(names_.size());
}

std::optional<int> Session::lookup(const std::string& name) const {
    std::lock_guard lk(mu_);
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

int Session::declare_param(const std::string& name) {
    std::lock_guard lk(mu_);
    return add_symbol(name, SymKind::Param);
}

void Session::declare_nonzero(const Poly& p) {
    std::lock_guard lk(mu_);
    if (p.is_zero()) throw PfError("cannot declare 0 nonzero");
    std::vector<int> syms;
    p.collect_symbols(syms);
    for (int s : syms)
        if (kinds_.at(s) == SymKind::Generator)
            throw PfError("nonzero constraints must be generator-free");
    for (const Poly& q : nonzero_)
        if (q == p) return;
    nonzero_.push_back(p);
}

bool Session::is_declared_nonzero(const Poly& p) const {
    std::lock_guard lk(mu_);
    for (const Poly& q : nonzero_)
        if (q == p) return true;
    return false;
}

std::vector<Poly> Session::nonzero_list() const {
    std::lock_guard lk(mu_);
    return nonzero_;
}

int Session::declare_generator(const std::string& name, const std::map<int, CoeffExpr>& partials,
                               std::optional<std::pair<int, CoeffExpr>> rewrite,
                               std::function<double(const NumEnv&)> numeric) {
    std::lock_guard lk(mu_);
    if (auto existing = by_name_.find(name); existing != by_name_.end())
        throw PfError("generator name collision: " + name);
    if (rewrite && rewrite->first < 2) throw PfError("rewrite power must be >= 2");
    for (const auto& [i, e] : partials)
        if (i < 1 || i > nvars_) throw PfError("partial index out of range in declare_generator");
    int id = add_symbol(name, SymKind::Generator);
    GeneratorInfo g;
    g.name = name;
    g.partials.assign(nvars_, CoeffExpr(this, Q(0)));
    for (const auto& [i, e] : partials) g.partials[i - 1] = e;
    if (rewrite) {
        if (rewrite->second.depends_on(id))
            throw PfError("rewrite target must be free of the generator");
        g.rewrite_pow = rewrite->first;
        g.rewrite_target = std::make_shared<CoeffExpr>(rewrite->second);
    }
    g.numeric = std::move(numeric);
    gens_.emplace(id, std::move(g));
    return id;
}

int Session::declare_function(const std::string& name, int var,
                              std::function<double(const NumEnv&)> numeric) {
    std::lock_guard lk(mu_);
    if (var < 1 || var > nvars_) throw PfError("function dependence variable out of range");
    if (by_name_.count(name)) throw PfError("generator name collision: " + name);
    int id = add_symbol(name, SymKind::Generator);
    GeneratorInfo g;
    g.name = name;
    g.lazy_chain = true;
    g.chain_var = var;
    g.numeric = std::move(numeric);
    gens_.emplace(id, std::move(g));
    return id;
}

int Session::declare_root(const std::string& name, const CoeffExpr& base, int q) {
    if (q < 2) throw PfError("root order must be >= 2");
    std::unique_lock lk(mu_);
    if (by_name_.count(name)) throw PfError("generator name collision: " + name);
    int id = add_symbol(name, SymKind::Generator);
    GeneratorInfo g;
    g.name = name;
    g.rewrite_pow = q;
    g.rewrite_target = std::make_shared<CoeffExpr>(base);
    g.partials.reserve(nvars_);
    lk.unlock();
    // d_i w = (d_i base / (q base)) * w ; computed outside the lock since it
    // re-enters the session.
    std::vector<CoeffExpr> partials;
    CoeffExpr qb = base.scaled(Q(q));
    for (int i = 1; i <= nvars_; ++i) {
        CoeffExpr db = base.partial(i);
        CoeffExpr coef = db / qb;
        partials.push_back(coef * CoeffExpr::symbol(this, id));
    }
    lk.lock();
    g.partials = std::move(partials);
    gens_.emplace(id, std::move(g));
    return id;
}

int Session::root_for(const CoeffExpr& residue, int q) {
    std::string key = std::to_string(q) + "|" + residue.canonical_key();
    {
        std::lock_guard lk(mu_);
        auto it = root_cache_.find(key);
        if (it != root_cache_.end()) return it->second;
    }
    int id = declare_root("rt" + std::to_string(symbol_count()), residue, q);
    std::lock_guard lk(mu_);
    root_cache_.emplace(key, id);
    return id;
}

const GeneratorInfo& Session::generator(int sym) const {
    std::lock_guard lk(mu_);
    auto it = gens_.find(sym);
    if (it == gens_.end()) throw PfError("not a generator symbol");
    return it->second;
}

CoeffExpr Session::generator_partial(int sym, int i) {
    std::unique_lock lk(mu_);
    auto it = gens_.find(sym);
    if (it == gens_.end()) throw PfError("not a generator symbol");
    GeneratorInfo& g = it->second;
    if (!g.lazy_chain) {
        if (g.partials.empty()) return CoeffExpr(this, Q(0));
        return g.partials.at(i - 1);
    }
    if (i != g.chain_var) return CoeffExpr(this, Q(0));
    if (g.chain_next < 0) {
        int next = add_symbol(g.name + "'", SymKind::Generator);
        GeneratorInfo gn;
        gn.name = g.name + "'";
        gn.lazy_chain = true;
        gn.chain_var = g.chain_var;
        gens_.emplace(next, std::move(gn));
        it = gens_.find(sym); // re-find: map may have rebalanced
        it->second.chain_next = next;
    }
    return CoeffExpr::symbol(this, gens_.at(sym).chain_next);
}

std::optional<int> Session::find_den_unit(const Poly& p) const {
    std::lock_guard lk(mu_);
    for (std::size_t k = 0; k < units_.size(); ++k)
        if (units_[k].gen_sym < 0 && units_[k].poly == p) return static_cast<int>(k);
    return std::nullopt;
}

int Session::den_unit_for_poly(const Poly& p) {
    std::lock_guard lk(mu_);
    for (std::size_t k = 0; k < units_.size(); ++k)
        if (units_[k].gen_sym < 0 && units_[k].poly == p) return static_cast<int>(k);
    bool declared = false;
    for (const Poly& q : nonzero_)
        if (q == p) declared = true;
    if (!declared)
        throw PfError("division by a polynomial not declared nonzero");
    units_.push_back(DenUnit{p, -1});
    return static_cast<int>(units_.size()) - 1;
}

int Session::den_unit_for_gen(int gen_sym) {
    std::lock_guard lk(mu_);
    for (std::size_t k = 0; k < units_.size(); ++k)
        if (units_[k].gen_sym == gen_sym) return static_cast<int>(k);
    if (!gens_.count(gen_sym)) throw PfError("not a generator symbol");
    units_.push_back(DenUnit{Poly{}, gen_sym});
    return static_cast<int>(units_.size()) - 1;
}

const DenUnit& Session::den_unit(int id) const {
    std::lock_guard lk(mu_);
    return units_.at(id);
}

std::size_t Session::den_unit_count() const {
    std::lock_guard lk(mu_);
    return units_.size();
}

double Session::numeric_generator(int sym, const NumEnv& env) const {
    std::unique_lock lk(mu_);
    auto it = gens_.find(sym);
    if (it == gens_.end()) throw PfError("not a generator symbol");
    const GeneratorInfo& g = it->second;
    if (g.numeric) {
        auto fn = g.numeric;
        lk.unlock();
        return fn(env);
    }
    if (g.rewrite_pow > 0 && g.rewrite_target) {
        auto target = g.rewrite_target;
        int q = g.rewrite_pow;
        lk.unlock();
        double base = target->numeric(env);
        if (base < 0 && q % 2 == 0)
            throw PfError("numeric evaluation of even root of negative value: " + g.name);
        double r = std::pow(std::fabs(base), 1.0 / q);
        return base < 0 ? -r : r;
    }
    throw PfError("generator has no numeric evaluation: " + g.name);
}

} // namespace pf
