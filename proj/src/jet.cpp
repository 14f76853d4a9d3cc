#include "pencilforge/jet.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace pf {

bool JetMono::operator<(const JetMono& o) const {
    if (jets != o.jets) return jets < o.jets;
    return logs < o.logs;
}

int JetMono::exponent(int comp, int order) const {
    for (const auto& [k, e] : jets)
        if (k.first == comp && k.second == order) return e;
    return 0;
}

int JetMono::log_exponent(int comp) const {
    for (const auto& [c, e] : logs)
        if (c == comp) return e;
    return 0;
}

JetMono JetMono::with_exponent(int comp, int order, int exp) const {
    JetMono r = *this;
    auto key = std::make_pair(comp, order);
    for (auto it = r.jets.begin(); it != r.jets.end(); ++it) {
        if (it->first == key) {
            if (exp == 0)
                r.jets.erase(it);
            else
                it->second = exp;
            return r;
        }
    }
    if (exp != 0) {
        r.jets.emplace_back(key, exp);
        std::sort(r.jets.begin(), r.jets.end());
    }
    return r;
}

JetMono JetMono::with_log_exponent(int comp, int exp) const {
    JetMono r = *this;
    for (auto it = r.logs.begin(); it != r.logs.end(); ++it) {
        if (it->first == comp) {
            if (exp == 0)
                r.logs.erase(it);
            else
                it->second = exp;
            return r;
        }
    }
    if (exp != 0) {
        r.logs.emplace_back(comp, exp);
        std::sort(r.logs.begin(), r.logs.end());
    }
    return r;
}

JetMono JetMono::times(const JetMono& o) const {
    JetMono r = *this;
    for (const auto& [k, e] : o.jets) {
        int cur = r.exponent(k.first, k.second);
        r = r.with_exponent(k.first, k.second, cur + e);
    }
    for (const auto& [c, e] : o.logs) r = r.with_log_exponent(c, r.log_exponent(c) + e);
    return r;
}

int JetMono::degree() const {
    int d = 0;
    for (const auto& [k, e] : jets) d += k.second * e;
    return d;
}

int JetMono::max_order() const {
    int d = 0;
    for (const auto& [k, e] : jets) d = std::max(d, k.second);
    return d;
}

bool JetMono::has_negative() const {
    for (const auto& [k, e] : jets)
        if (e < 0) return true;
    return false;
}

JetPoly::JetPoly(CoeffExpr c) : s_(c.session()) {
    if (!c.is_zero()) terms_.emplace(JetMono{}, std::move(c));
}

JetPoly JetPoly::jet(Session* s, int comp, int order, int exp) {
    if (order < 1) throw PfError("jet order must be >= 1 (order 0 is the field variable)");
    if (exp < 0 && order != 1) throw PfError("localization only at u^j_x");
    JetPoly p;
    p.s_ = s;
    if (exp == 0) return JetPoly(CoeffExpr(s, Q(1)));
    JetMono m;
    m.jets.emplace_back(std::make_pair(comp, order), exp);
    p.terms_.emplace(std::move(m), CoeffExpr(s, Q(1)));
    return p;
}

JetPoly JetPoly::log_jet(Session* s, int comp) {
    JetPoly p;
    p.s_ = s;
    JetMono m;
    m.logs.emplace_back(comp, 1);
    p.terms_.emplace(std::move(m), CoeffExpr(s, Q(1)));
    return p;
}

void JetPoly::add_term(const JetMono& m, const CoeffExpr& c) {
    if (c.is_zero()) return;
    if (!s_) s_ = c.session();
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

JetPoly JetPoly::operator+(const JetPoly& o) const {
    JetPoly r = *this;
    r += o;
    return r;
}

JetPoly& JetPoly::operator+=(const JetPoly& o) {
    if (!s_) s_ = o.s_;
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

JetPoly JetPoly::operator-(const JetPoly& o) const {
    JetPoly r = *this;
    r -= o;
    return r;
}

JetPoly& JetPoly::operator-=(const JetPoly& o) {
    if (!s_) s_ = o.s_;
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

JetPoly JetPoly::operator-() const {
    JetPoly r;
    r.s_ = s_;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

JetPoly JetPoly::operator*(const JetPoly& o) const {
    JetPoly r;
    r.s_ = s_ ? s_ : o.s_;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(ma.times(mb), ca * cb);
    return r;
}

JetPoly JetPoly::scaled(const Q& c) const {
    JetPoly r;
    r.s_ = s_;
    if (c == 0) return r;
    for (const auto& [m, x] : terms_) r.terms_.emplace(m, x.scaled(c));
    return r;
}

JetPoly JetPoly::scaled(const CoeffExpr& c) const {
    JetPoly r;
    r.s_ = s_ ? s_ : c.session();
    for (const auto& [m, x] : terms_) r.add_term(m, x * c);
    return r;
}

JetPoly JetPoly::total_x() const {
    JetPoly r;
    r.s_ = s_;
    if (!s_) return r;
    int n = s_->nvars();
    for (const auto& [m, c] : terms_) {
        // chain through the coefficient: sum_i d_i(c) u^i_x
        for (int i = 1; i <= n; ++i) {
            CoeffExpr dc = c.partial(i);
            if (!dc.is_zero()) r.add_term(m.times(JetMono{{{{i, 1}, 1}}, {}}), dc);
        }
        // jet part: d_x u^i_(s) = u^i_(s+1)
        for (const auto& [k, e] : m.jets) {
            auto [comp, order] = k;
            JetMono lowered = m.with_exponent(comp, order, e - 1);
            r.add_term(lowered.times(JetMono{{{{comp, order + 1}, 1}}, {}}), c.scaled(Q(e)));
        }
        // d_x l_j = u^j_xx / u^j_x
        for (const auto& [comp, e] : m.logs) {
            JetMono lowered = m.with_log_exponent(comp, e - 1);
            lowered = lowered.with_exponent(comp, 1, lowered.exponent(comp, 1) - 1);
            lowered = lowered.times(JetMono{{{{comp, 2}, 1}}, {}});
            r.add_term(lowered, c.scaled(Q(e)));
        }
    }
    return r;
}

JetPoly JetPoly::total_x(int times) const {
    JetPoly r = *this;
    for (int k = 0; k < times; ++k) r = r.total_x();
    return r;
}

JetPoly JetPoly::partial_jet(int comp, int order) const {
    JetPoly r;
    r.s_ = s_;
    if (order == 0) {
        for (const auto& [m, c] : terms_) r.add_term(m, c.partial(comp));
        return r;
    }
    for (const auto& [m, c] : terms_) {
        int e = m.exponent(comp, order);
        if (e != 0) r.add_term(m.with_exponent(comp, order, e - 1), c.scaled(Q(e)));
        if (order == 1) {
            // l_comp = log u^comp_x depends on u^comp_x
            int le = m.log_exponent(comp);
            if (le != 0) {
                JetMono t = m.with_log_exponent(comp, le - 1);
                t = t.with_exponent(comp, 1, t.exponent(comp, 1) - 1);
                r.add_term(t, c.scaled(Q(le)));
            }
        }
    }
    return r;
}

bool JetPoly::is_polynomial() const {
    for (const auto& [m, c] : terms_)
        if (m.has_log() || m.has_negative()) return false;
    return true;
}

int JetPoly::homogeneous_degree() const {
    if (terms_.empty()) return 0;
    int d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
        if (m.degree() != d) throw PfError("jet polynomial is not degree-homogeneous");
    return d;
}

bool JetPoly::is_homogeneous(int degree) const {
    for (const auto& [m, c] : terms_)
        if (m.degree() != degree) return false;
    return true;
}

JetPoly JetPoly::degree_part(int degree) const {
    JetPoly r;
    r.s_ = s_;
    for (const auto& [m, c] : terms_)
        if (m.degree() == degree) r.terms_.emplace(m, c);
    return r;
}

int JetPoly::max_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

int JetPoly::min_degree() const {
    if (terms_.empty()) return 0;
    int d = INT32_MAX;
    for (const auto& [m, c] : terms_) d = std::min(d, m.degree());
    return d;
}

int JetPoly::max_jet_order() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.max_order());
    return d;
}

CoeffExpr JetPoly::jet_free_part() const {
    auto it = terms_.find(JetMono{});
    if (it == terms_.end()) return CoeffExpr(s_, Q(0));
    return it->second;
}

bool JetPoly::depends_on_jets() const {
    for (const auto& [m, c] : terms_)
        if (!m.is_one()) return true;
    return false;
}

double JetPoly::numeric(const NumEnv& env,
                        const std::map<std::pair<int, int>, double>& jet_values) const {
    double v = 0.0;
    for (const auto& [m, c] : terms_) {
        double t = c.numeric(env);
        for (const auto& [k, e] : m.jets) {
            auto it = jet_values.find(k);
            if (it == jet_values.end()) throw PfError("no numeric value for a jet variable");
            t *= std::pow(it->second, e);
        }
        for (const auto& [comp, e] : m.logs) {
            auto it = jet_values.find({comp, 1});
            if (it == jet_values.end()) throw PfError("no numeric value for a jet variable");
            t *= std::pow(std::log(it->second), e);
        }
        v += t;
    }
    return v;
}

std::string JetPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    auto print_jet = [&](const JetMono& m) {
        bool lead = true;
        for (const auto& [k, e] : m.jets) {
            if (!lead) os << "*";
            lead = false;
            os << "u" << k.first << "_";
            if (k.second <= 2)
                for (int t = 0; t < k.second; ++t) os << "x";
            else
                os << k.second;
            if (e != 1) os << "^" << e;
        }
        for (const auto& [c, e] : m.logs) {
            if (!lead) os << "*";
            lead = false;
            os << "log(u" << c << "_x)";
            if (e != 1) os << "^" << e;
        }
    };
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        std::string cs = c.to_string();
        if (m.is_one()) {
            os << cs;
        } else {
            bool paren = cs.find(' ') != std::string::npos || cs.find('+') != std::string::npos;
            if (cs == "1") {
            } else if (cs == "-1") {
                os << "-";
            } else {
                if (paren) os << "(";
                os << cs;
                if (paren) os << ")";
                os << "*";
            }
            print_jet(m);
        }
    }
    return os.str();
}

bool EvoField::is_zero() const {
    for (const auto& c : comp)
        if (!c.is_zero()) return false;
    return true;
}

bool EvoField::is_polynomial() const {
    for (const auto& c : comp)
        if (!c.is_polynomial()) return false;
    return true;
}

EvoField EvoField::operator+(const EvoField& o) const {
    EvoField r = *this;
    for (std::size_t i = 0; i < comp.size(); ++i) r.comp[i] += o.comp[i];
    return r;
}

EvoField EvoField::operator-(const EvoField& o) const {
    EvoField r = *this;
    for (std::size_t i = 0; i < comp.size(); ++i) r.comp[i] -= o.comp[i];
    return r;
}

EvoField EvoField::scaled(const Q& c) const {
    EvoField r = *this;
    for (auto& x : r.comp) x = x.scaled(c);
    return r;
}

JetPoly euler_operator(const JetPoly& density, int i) {
    JetPoly out;
    int smax = density.max_jet_order();
    // logs contribute through order 1 even in an order-0 density
    for (int s = 0; s <= smax + 1; ++s) {
        JetPoly d = density.partial_jet(i, s);
        if (d.is_zero()) continue;
        JetPoly t = d;
        for (int k = 0; k < s; ++k) t = -t.total_x();
        out += t;
    }
    return out;
}

JetPoly LocalFunctional::euler(int i) const { return euler_operator(density, i); }

std::vector<JetPoly> LocalFunctional::euler_all(int n) const {
    std::vector<JetPoly> r;
    r.reserve(n);
    for (int i = 1; i <= n; ++i) r.push_back(euler(i));
    return r;
}

bool LocalFunctional::equivalent_to(const LocalFunctional& o, int n) const {
    LocalFunctional diff{density - o.density};
    for (int i = 1; i <= n; ++i)
        if (!diff.euler(i).is_zero()) return false;
    return true;
}

JetPoly prolong(const EvoField& X, const JetPoly& f) {
    JetPoly out;
    int smax = f.max_jet_order();
    for (int k = 1; k <= X.n(); ++k) {
        JetPoly dxk = X.comp[k - 1];
        for (int s = 0; s <= smax; ++s) {
            JetPoly d = f.partial_jet(k, s);
            if (!d.is_zero()) out += d * dxk;
            if (s < smax) dxk = dxk.total_x();
        }
    }
    return out;
}

} // namespace pf
