#include "pencilforge/coeff.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace pf {

namespace {

Session* join(Session* a, Session* b) {
    if (a && b && a != b) throw PfError("mixing values from different sessions");
    return a ? a : b;
}

} // namespace

CoeffExpr CoeffExpr::var(Session* s, int i) { return symbol(s, s->var_symbol(i)); }

CoeffExpr CoeffExpr::symbol(Session* s, int sym) {
    CoeffExpr e;
    e.s_ = s;
    e.num_ = Poly::variable(sym);
    e.normalize();
    return e;
}

CoeffExpr CoeffExpr::from_poly(Session* s, Poly p) {
    CoeffExpr e;
    e.s_ = s;
    e.num_ = std::move(p);
    e.normalize();
    return e;
}

CoeffExpr CoeffExpr::with_den(std::map<int, int> den) const {
    CoeffExpr e;
    e.s_ = s_;
    e.num_ = num_;
    e.den_ = std::move(den);
    return e;
}

void CoeffExpr::normalize() {
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    if (!s_) return;

    // 1. Cancel generator symbols shared by the numerator and the denominator.
    for (auto it = den_.begin(); it != den_.end();) {
        const DenUnit& u = s_->den_unit(it->first);
        if (u.gen_sym < 0) {
            ++it;
            continue;
        }
        int minexp = INT32_MAX;
        for (const auto& [m, c] : num_.terms()) minexp = std::min(minexp, m.exponent(u.gen_sym));
        if (minexp > 0) {
            int k = std::min(minexp, it->second);
            Poly reduced;
            for (const auto& [m, c] : num_.terms())
                reduced.add_term(m.with_exponent(u.gen_sym, m.exponent(u.gen_sym) - k), c);
            num_ = std::move(reduced);
            it->second -= k;
        }
        if (it->second == 0)
            it = den_.erase(it);
        else
            ++it;
    }

    // 2. Apply generator rewrite rules g^q -> target inside the numerator.
    std::vector<int> gens;
    num_.collect_symbols(gens);
    for (int g : gens) {
        if (s_->kind(g) != SymKind::Generator) continue;
        const GeneratorInfo& info = s_->generator(g);
        if (info.rewrite_pow < 2) continue;
        int q = info.rewrite_pow;
        if (num_.max_exponent(g) < q) continue;
        CoeffExpr target = *info.rewrite_target;
        CoeffExpr acc(s_, Q(0));
        for (const auto& [m, c] : num_.terms()) {
            int e = m.exponent(g);
            int k = e / q, r = e % q;
            Poly piece;
            piece.add_term(m.with_exponent(g, r), c);
            CoeffExpr pe;
            pe.s_ = s_;
            pe.num_ = std::move(piece);
            pe.den_ = den_;
            pe.normalize();
            if (k > 0) pe = pe * target.pow(k);
            acc += pe;
        }
        *this = acc;
        return; // acc is normalized
    }

    // 3. Clear rewrite generators out of the denominator: 1/g^e = g^(qk-e)/target^k.
    for (const auto& [uid, e] : den_) {
        const DenUnit& u = s_->den_unit(uid);
        if (u.gen_sym < 0) continue;
        const GeneratorInfo& info = s_->generator(u.gen_sym);
        if (info.rewrite_pow < 2) continue;
        int q = info.rewrite_pow;
        int k = (e + q - 1) / q;
        CoeffExpr rest;
        rest.s_ = s_;
        rest.num_ = num_ * Poly::variable(u.gen_sym, q * k - e);
        rest.den_ = den_;
        rest.den_.erase(uid);
        rest.normalize();
        *this = rest * info.rewrite_target->inverse().pow(k);
        return;
    }

    // 4. Cancel declared polynomial units out of the numerator.
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = den_.begin(); it != den_.end();) {
            const DenUnit& u = s_->den_unit(it->first);
            if (u.gen_sym >= 0) {
                ++it;
                continue;
            }
            while (it->second > 0) {
                auto quot = num_.exact_divide(u.poly);
                if (!quot) break;
                num_ = std::move(*quot);
                --it->second;
                changed = true;
            }
            if (it->second == 0)
                it = den_.erase(it);
            else
                ++it;
        }
    }
}

CoeffExpr CoeffExpr::operator+(const CoeffExpr& o) const {
    Session* s = join(s_, o.s_);
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    CoeffExpr r;
    r.s_ = s;
    // Common denominator with per-unit max exponents.
    std::map<int, int> den = den_;
    for (const auto& [u, e] : o.den_) {
        auto it = den.find(u);
        if (it == den.end())
            den.emplace(u, e);
        else
            it->second = std::max(it->second, e);
    }
    auto lift = [&](const CoeffExpr& x) {
        Poly p = x.num_;
        for (const auto& [u, e] : den) {
            int have = 0;
            auto it = x.den_.find(u);
            if (it != x.den_.end()) have = it->second;
            int need = e - have;
            if (need <= 0) continue;
            const DenUnit& du = s->den_unit(u);
            if (du.gen_sym >= 0)
                p = p * Poly::variable(du.gen_sym, need);
            else
                p = p * du.poly.pow(need);
        }
        return p;
    };
    r.num_ = lift(*this) + lift(o);
    r.den_ = std::move(den);
    r.normalize();
    return r;
}

CoeffExpr CoeffExpr::operator-() const {
    CoeffExpr r = *this;
    r.num_ = -r.num_;
    return r;
}

CoeffExpr CoeffExpr::operator-(const CoeffExpr& o) const { return *this + (-o); }

CoeffExpr CoeffExpr::operator*(const CoeffExpr& o) const {
    Session* s = join(s_, o.s_);
    CoeffExpr r;
    r.s_ = s;
    if (is_zero() || o.is_zero()) return r;
    r.num_ = num_ * o.num_;
    r.den_ = den_;
    for (const auto& [u, e] : o.den_) r.den_[u] += e;
    r.normalize();
    return r;
}

CoeffExpr CoeffExpr::operator/(const CoeffExpr& o) const { return *this * o.inverse(); }

CoeffExpr CoeffExpr::scaled(const Q& c) const {
    CoeffExpr r = *this;
    r.num_ = r.num_.scaled(c);
    if (c == 0) r.den_.clear();
    return r;
}

CoeffExpr CoeffExpr::inverse() const {
    if (is_zero()) throw PfError("division by zero");
    Session* s = s_;
    if (!s) throw PfError("cannot invert a session-less value");

    // Numerator must decompose into declared-nonzero units, generator powers
    // and a rational constant; that is the structural admissibility rule.
    Poly rest = num_;
    std::map<int, int> newden;

    // Strip generator symbols first: generators are always units.
    if (!rest.is_zero()) {
        std::vector<int> syms;
        rest.collect_symbols(syms);
        for (int g : syms) {
            if (s->kind(g) != SymKind::Generator) continue;
            int minexp = INT32_MAX;
            for (const auto& [m, c] : rest.terms()) minexp = std::min(minexp, m.exponent(g));
            if (minexp <= 0) continue;
            Poly reduced;
            for (const auto& [m, c] : rest.terms())
                reduced.add_term(m.with_exponent(g, m.exponent(g) - minexp), c);
            rest = std::move(reduced);
            newden[s->den_unit_for_gen(g)] += minexp;
        }
    }
    for (const Poly& nz : s->nonzero_list()) {
        if (rest.is_constant()) break;
        while (true) {
            auto quot = rest.exact_divide(nz);
            if (!quot) break;
            rest = std::move(*quot);
            ++newden[s->den_unit_for_poly(nz)];
        }
    }
    if (!rest.is_constant())
        throw PfError("division by an expression that is not a declared-nonzero unit: " +
                      CoeffExpr::from_poly(s, rest).to_string());
    Q c = rest.constant_value();

    CoeffExpr r;
    r.s_ = s;
    r.num_ = Poly(Q(1) / c);
    for (const auto& [u, e] : den_) {
        const DenUnit& du = s->den_unit(u);
        if (du.gen_sym >= 0)
            r.num_ = r.num_ * Poly::variable(du.gen_sym, e);
        else
            r.num_ = r.num_ * du.poly.pow(e);
    }
    r.den_ = std::move(newden);
    r.normalize();
    return r;
}

CoeffExpr CoeffExpr::pow(int k) const {
    if (k == 0) return CoeffExpr(s_, Q(1));
    CoeffExpr base = k > 0 ? *this : inverse();
    int n = std::abs(k);
    CoeffExpr r(s_, Q(1));
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

CoeffExpr CoeffExpr::partial(int i) const {
    if (!s_ || is_zero()) return CoeffExpr(s_, Q(0));
    int vsym = s_->var_symbol(i);

    // d(num)/du^i : explicit variable dependence plus generator chain rule.
    CoeffExpr out = with_den(den_);
    out.num_ = num_.derivative(vsym);
    out.normalize();

    std::vector<int> syms;
    num_.collect_symbols(syms);
    for (int g : syms) {
        if (s_->kind(g) != SymKind::Generator) continue;
        Poly dg = num_.derivative(g);
        if (dg.is_zero()) continue;
        CoeffExpr dgen = s_->generator_partial(g, i);
        if (dgen.is_zero()) continue;
        CoeffExpr part;
        part.s_ = s_;
        part.num_ = std::move(dg);
        part.den_ = den_;
        part.normalize();
        out += part * dgen;
    }

    // Quotient rule for the denominator units.
    for (const auto& [u, e] : den_) {
        const DenUnit& du = s_->den_unit(u);
        if (du.gen_sym < 0) {
            Poly dp = du.poly.derivative(vsym);
            if (dp.is_zero()) continue;
            CoeffExpr part;
            part.s_ = s_;
            part.num_ = num_ * dp;
            part.den_ = den_;
            ++part.den_[u];
            part.normalize();
            out -= part.scaled(Q(e));
        } else {
            CoeffExpr dgen = s_->generator_partial(du.gen_sym, i);
            if (dgen.is_zero()) continue;
            CoeffExpr part;
            part.s_ = s_;
            part.num_ = num_;
            part.den_ = den_;
            ++part.den_[u];
            part.normalize();
            out -= part.scaled(Q(e)) * dgen;
        }
    }
    return out;
}

bool CoeffExpr::depends_on(int sym) const {
    if (num_.depends_on(sym)) return true;
    if (!s_) return false;
    for (const auto& [u, e] : den_) {
        const DenUnit& du = s_->den_unit(u);
        if (du.gen_sym == sym) return true;
        if (du.gen_sym < 0 && du.poly.depends_on(sym)) return true;
    }
    return false;
}

double CoeffExpr::numeric(const NumEnv& env) const {
    if (!s_) return 0.0;
    auto mono_val = [&](const Mono& m) {
        double v = 1.0;
        for (const auto& [sym, e] : m.e) {
            double x = s_->kind(sym) == SymKind::Generator ? s_->numeric_generator(sym, env)
                                                           : env.value_of(sym);
            v *= std::pow(x, e);
        }
        return v;
    };
    auto poly_val = [&](const Poly& p) {
        double v = 0.0;
        for (const auto& [m, c] : p.terms()) v += c.get_d() * mono_val(m);
        return v;
    };
    double v = poly_val(num_);
    for (const auto& [u, e] : den_) {
        const DenUnit& du = s_->den_unit(u);
        double x = du.gen_sym >= 0 ? s_->numeric_generator(du.gen_sym, env) : poly_val(du.poly);
        v /= std::pow(x, e);
    }
    return v;
}

namespace {

void print_mono(std::ostream& os, Session* s, const Mono& m, bool lead) {
    bool first = lead;
    for (const auto& [sym, e] : m.e) {
        if (!first) os << "*";
        first = false;
        os << s->name(sym);
        if (e != 1) os << "^" << e;
    }
}

void print_poly(std::ostream& os, Session* s, const Poly& p) {
    if (p.is_zero()) {
        os << "0";
        return;
    }
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        Q a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (m.is_one()) {
            os << a.get_str();
        } else if (a == 1) {
            print_mono(os, s, m, true);
        } else {
            os << a.get_str() << "*";
            print_mono(os, s, m, true);
        }
    }
}

} // namespace

std::string CoeffExpr::to_string() const {
    std::ostringstream os;
    if (!s_) return "0";
    if (den_.empty()) {
        print_poly(os, s_, num_);
        return os.str();
    }
    bool paren_num = num_.term_count() > 1;
    if (paren_num) os << "(";
    print_poly(os, s_, num_);
    if (paren_num) os << ")";
    os << "/(";
    bool first = true;
    for (const auto& [u, e] : den_) {
        if (!first) os << "*";
        first = false;
        const DenUnit& du = s_->den_unit(u);
        if (du.gen_sym >= 0) {
            os << s_->name(du.gen_sym);
        } else {
            os << "(";
            print_poly(os, s_, du.poly);
            os << ")";
        }
        if (e != 1) os << "^" << e;
    }
    os << ")";
    return os.str();
}

std::string CoeffExpr::canonical_key() const { return to_string(); }

} // namespace pf
