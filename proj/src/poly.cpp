#include "pencilforge/poly.hpp"

#include <algorithm>
#include <cassert>

namespace pf {

bool Mono::operator<(const Mono& o) const {
    // Lex: scan symbols in increasing id; a missing symbol counts as exponent 0.
    std::size_t i = 0, j = 0;
    while (i < e.size() || j < o.e.size()) {
        int sa = i < e.size() ? e[i].first : INT32_MAX;
        int sb = j < o.e.size() ? o.e[j].first : INT32_MAX;
        int s = std::min(sa, sb);
        int ea = (sa == s) ? e[i].second : 0;
        int eb = (sb == s) ? o.e[j].second : 0;
        if (ea != eb) return ea < eb;
        if (sa == s) ++i;
        if (sb == s) ++j;
    }
    return false;
}

int Mono::exponent(int sym) const {
    for (const auto& [s, x] : e)
        if (s == sym) return x;
    return 0;
}

int Mono::total_degree() const {
    int d = 0;
    for (const auto& [s, x] : e) d += x;
    return d;
}

Mono Mono::times(const Mono& o) const {
    Mono r;
    r.e.reserve(e.size() + o.e.size());
    std::size_t i = 0, j = 0;
    while (i < e.size() || j < o.e.size()) {
        int sa = i < e.size() ? e[i].first : INT32_MAX;
        int sb = j < o.e.size() ? o.e[j].first : INT32_MAX;
        if (sa == sb) {
            int x = e[i].second + o.e[j].second;
            if (x != 0) r.e.emplace_back(sa, x);
            ++i, ++j;
        } else if (sa < sb) {
            r.e.push_back(e[i++]);
        } else {
            r.e.push_back(o.e[j++]);
        }
    }
    return r;
}

std::optional<Mono> Mono::divided_by(const Mono& o) const {
    Mono r;
    std::size_t i = 0, j = 0;
    while (i < e.size() || j < o.e.size()) {
        int sa = i < e.size() ? e[i].first : INT32_MAX;
        int sb = j < o.e.size() ? o.e[j].first : INT32_MAX;
        if (sa == sb) {
            int x = e[i].second - o.e[j].second;
            if (x < 0) return std::nullopt;
            if (x != 0) r.e.emplace_back(sa, x);
            ++i, ++j;
        } else if (sa < sb) {
            r.e.push_back(e[i++]);
        } else {
            return std::nullopt; // divisor has a symbol we lack
        }
    }
    return r;
}

Mono Mono::with_exponent(int sym, int exp) const {
    Mono r;
    bool placed = false;
    for (const auto& [s, x] : e) {
        if (s == sym) {
            if (exp != 0) r.e.emplace_back(s, exp);
            placed = true;
        } else {
            r.e.emplace_back(s, x);
        }
    }
    if (!placed && exp != 0) {
        r.e.emplace_back(sym, exp);
        std::sort(r.e.begin(), r.e.end());
    }
    return r;
}

Poly::Poly(const Q& c) {
    if (c != 0) terms_.emplace(Mono{}, c);
}

Poly Poly::variable(int sym, int exp) {
    Poly p;
    if (exp == 0) return Poly(Q(1));
    Mono m;
    m.e.emplace_back(sym, exp);
    p.terms_.emplace(std::move(m), Q(1));
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Q Poly::constant_value() const {
    if (terms_.empty()) return Q(0);
    assert(is_constant());
    return terms_.begin()->second;
}

void Poly::add_term(const Mono& m, const Q& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly Poly::operator-() const {
    Poly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(ma.times(mb), ca * cb);
    return r;
}

Poly Poly::scaled(const Q& c) const {
    Poly r;
    if (c == 0) return r;
    for (const auto& [m, x] : terms_) r.terms_.emplace(m, x * c);
    return r;
}

Poly Poly::pow(int k) const {
    assert(k >= 0);
    Poly r(Q(1));
    Poly base = *this;
    while (k > 0) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

Poly Poly::derivative(int sym) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        int x = m.exponent(sym);
        if (x == 0) continue;
        r.add_term(m.with_exponent(sym, x - 1), c * x);
    }
    return r;
}

int Poly::degree_in(int sym) const { return max_exponent(sym); }

int Poly::max_exponent(int sym) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(sym));
    return d;
}

bool Poly::depends_on(int sym) const {
    for (const auto& [m, c] : terms_)
        if (m.exponent(sym) != 0) return true;
    return false;
}

void Poly::collect_symbols(std::vector<int>& out) const {
    for (const auto& [m, c] : terms_)
        for (const auto& [s, x] : m.e)
            if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
}

std::pair<Mono, Q> Poly::leading() const {
    assert(!terms_.empty());
    auto it = std::prev(terms_.end());
    return {it->first, it->second};
}

std::optional<Poly> Poly::exact_divide(const Poly& d) const {
    if (d.is_zero()) return std::nullopt;
    Poly rem = *this;
    Poly quot;
    auto [dm, dc] = d.leading();
    while (!rem.is_zero()) {
        auto [rm, rc] = rem.leading();
        auto m = rm.divided_by(dm);
        if (!m) return std::nullopt;
        Q c = rc / dc;
        Poly piece;
        piece.terms_.emplace(*m, c);
        quot += piece;
        rem -= piece * d;
    }
    return quot;
}

Poly Poly::substituted(int sym, const Poly& value) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        int x = m.exponent(sym);
        if (x == 0) {
            r.add_term(m, c);
            continue;
        }
        Poly rest;
        rest.terms_.emplace(m.with_exponent(sym, 0), c);
        r += rest * value.pow(x);
    }
    return r;
}

} // namespace pf
