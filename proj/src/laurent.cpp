#include "dimerlab/laurent.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <numeric>
#include <sstream>

namespace dimerlab {

int VarTable::index(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return (int)i;
    return -1;
}

VarTablePtr make_vars(std::vector<std::string> names) {
    for (size_t i = 0; i < names.size(); ++i)
        for (size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j])
                fail(ErrorCode::MalformedInput, "duplicate variable name " + names[i]);
    auto t = std::make_shared<VarTable>();
    t->names = std::move(names);
    return t;
}

bool GradedLexLess::operator()(const Exp& a, const Exp& b) const {
    long long sa = std::accumulate(a.begin(), a.end(), 0LL);
    long long sb = std::accumulate(b.begin(), b.end(), 0LL);
    if (sa != sb) return sa < sb;
    // Within a degree, earlier variables come first in display order, so the
    // lexicographically larger exponent vector is the smaller map key.
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

LaurentPoly LaurentPoly::constant(VarTablePtr vars, Int c) {
    LaurentPoly p(vars);
    if (c != 0) p.terms_[Exp(vars->size(), 0)] = std::move(c);
    return p;
}

LaurentPoly LaurentPoly::monomial(VarTablePtr vars, Exp e, Int c) {
    LaurentPoly p(vars);
    if (e.size() != vars->size())
        fail(ErrorCode::MalformedInput, "exponent vector length mismatch");
    if (c != 0) p.terms_[std::move(e)] = std::move(c);
    return p;
}

LaurentPoly LaurentPoly::var(VarTablePtr vars, int index, int power) {
    Exp e(vars->size(), 0);
    e.at(index) = power;
    return monomial(std::move(vars), std::move(e));
}

bool LaurentPoly::is_one() const {
    if (terms_.size() != 1) return false;
    const auto& [e, c] = *terms_.begin();
    return c == 1 && std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

void LaurentPoly::add_term(const Exp& e, const Int& c) {
    if (e.size() != vars_->size())
        fail(ErrorCode::MalformedInput, "exponent vector length mismatch");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void LaurentPoly::check_same_table(const LaurentPoly& o) const {
    if (vars_ == o.vars_) return;
    if (vars_ && o.vars_ && vars_->names == o.vars_->names) return;
    fail(ErrorCode::VarTableMismatch, "operands use different variable tables");
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    check_same_table(o);
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    check_same_table(o);
    LaurentPoly r(vars_);
    Exp e(vars_->size());
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
    check_same_table(o);
    return terms_ == o.terms_;
}

LaurentPoly LaurentPoly::pow(int k) const {
    if (is_monomial()) {
        const auto& [e, c] = *terms_.begin();
        if (c != 1 && c != -1 && k < 0)
            fail(ErrorCode::NonUnitInverse, "cannot invert coefficient " + c.str());
        Exp ek(e.size());
        for (size_t i = 0; i < e.size(); ++i) ek[i] = e[i] * k;
        Int ck = (c < 0 && (k % 2 != 0)) ? Int(-1) : Int(1);
        if (c != 1 && c != -1) {
            ck = 1;
            for (int i = 0; i < k; ++i) ck *= c;
        }
        return monomial(vars_, std::move(ek), ck);
    }
    if (k < 0) fail(ErrorCode::NonUnitInverse, "negative power of a non-monomial");
    LaurentPoly r = constant(vars_, 1);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

Exp LaurentPoly::min_exponents() const {
    Exp m(vars_->size(), 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
        for (size_t i = 0; i < m.size(); ++i)
            m[i] = first ? e[i] : std::min(m[i], e[i]);
        first = false;
    }
    return m;
}

Exp LaurentPoly::max_exponents() const {
    Exp m(vars_->size(), 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
        for (size_t i = 0; i < m.size(); ++i)
            m[i] = first ? e[i] : std::max(m[i], e[i]);
        first = false;
    }
    return m;
}

LaurentPoly LaurentPoly::divide_exact(const LaurentPoly& q) const {
    check_same_table(q);
    if (q.is_zero()) fail(ErrorCode::NotDivisible, "division by zero");
    if (is_zero()) return zero(vars_);

    // Shift both operands into ordinary polynomials, divide by peeling the
    // graded-lex leading term, then shift the quotient back.
    const size_t n = vars_->size();
    Exp sp = min_exponents(), sq = q.min_exponents();
    GradedLexLess less;
    std::map<Exp, Int, GradedLexLess> rem;  // shifted dividend
    for (const auto& [e, c] : terms_) {
        Exp es(n);
        for (size_t i = 0; i < n; ++i) es[i] = e[i] - sp[i];
        rem[es] = c;
    }
    std::vector<std::pair<Exp, Int>> qs;  // shifted divisor, descending
    for (const auto& [e, c] : q.terms_) {
        Exp es(n);
        for (size_t i = 0; i < n; ++i) es[i] = e[i] - sq[i];
        qs.push_back({es, c});
    }
    std::reverse(qs.begin(), qs.end());
    const Exp& qlead = qs.front().first;
    const Int& qleadc = qs.front().second;

    LaurentPoly result(vars_);
    Exp t(n), u(n);
    while (!rem.empty()) {
        auto lead = std::prev(rem.end());
        for (size_t i = 0; i < n; ++i) {
            t[i] = lead->first[i] - qlead[i];
            if (t[i] < 0) fail(ErrorCode::NotDivisible, "leading monomial not divisible");
        }
        if (lead->second % qleadc != 0)
            fail(ErrorCode::NotDivisible, "leading coefficient not divisible");
        Int tc = lead->second / qleadc;
        // quotient term in original (unshifted) exponents
        Exp tOrig(n);
        for (size_t i = 0; i < n; ++i) tOrig[i] = t[i] + sp[i] - sq[i];
        result.add_term(tOrig, tc);
        for (const auto& [e, c] : qs) {
            for (size_t i = 0; i < n; ++i) u[i] = t[i] + e[i];
            auto it = rem.find(u);
            Int nc = (it == rem.end() ? Int(0) : it->second) - tc * c;
            if (it != rem.end()) rem.erase(it);
            if (nc != 0) rem[u] = std::move(nc);
        }
    }
    return result;
}

std::set<Exp> LaurentPoly::newton_support() const {
    std::set<Exp> s;
    for (const auto& [e, c] : terms_) s.insert(e);
    return s;
}

Int LaurentPoly::coeff(const Exp& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Int(0) : it->second;
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Int a = c < 0 ? Int(-c) : c;
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_->names[i];
            if (e[i] != 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            out << a.str();
        } else {
            if (a != 1) out << a.str() << "*";
            out << mono;
        }
    }
    return out.str();
}

LaurentPoly substitute(const LaurentPoly& p,
                       const std::vector<std::optional<RationalMono>>& images,
                       const VarTablePtr& target) {
    const size_t n = p.vars()->size();
    if (images.size() != n)
        fail(ErrorCode::MalformedInput, "substitute: image list length mismatch");
    // Identity images map by name into the target table.
    std::vector<int> identIdx(n, -1);
    for (size_t i = 0; i < n; ++i) {
        if (!images[i]) {
            identIdx[i] = target->index(p.vars()->names[i]);
            if (identIdx[i] < 0)
                fail(ErrorCode::VarTableMismatch,
                     "variable " + p.vars()->names[i] + " missing from target table");
        }
    }
    LaurentPoly result(target);
    for (const auto& [e, c] : p.terms()) {
        LaurentPoly term = LaurentPoly::constant(target, c);
        Exp shift(target->size(), 0);  // accumulated monomial part (incl. denominators)
        for (size_t i = 0; i < n; ++i) {
            if (e[i] == 0) continue;
            if (!images[i]) {
                shift[identIdx[i]] += e[i];
                continue;
            }
            const RationalMono& im = *images[i];
            if (im.num.vars()->names != target->names)
                fail(ErrorCode::VarTableMismatch, "substitution image in wrong table");
            if (!im.den.empty() && im.den.size() != target->size())
                fail(ErrorCode::MalformedInput, "substitute: bad denominator length");
            if (e[i] < 0 && !im.num.is_monomial())
                fail(ErrorCode::NonUnitInverse,
                     "negative power of non-monomial image for " + p.vars()->names[i]);
            term = term * im.num.pow(e[i]);
            if (!im.den.empty())
                for (size_t k = 0; k < target->size(); ++k) shift[k] -= im.den[k] * e[i];
        }
        term = term * LaurentPoly::monomial(target, shift, 1);
        result = result + term;
    }
    return result;
}

UnitRelation equal_up_to_unit(const LaurentPoly& p, const LaurentPoly& q, int tIndex) {
    UnitRelation r;
    auto univariate = [&](const LaurentPoly& f) {
        for (const auto& [e, c] : f.terms())
            for (size_t i = 0; i < e.size(); ++i)
                if ((int)i != tIndex && e[i] != 0) return false;
        return true;
    };
    if (!univariate(p) || !univariate(q)) return r;
    if (p.is_zero() && q.is_zero()) {
        r.equal = true;
        return r;
    }
    if (p.term_count() != q.term_count() || p.is_zero() || q.is_zero()) return r;
    int shift = p.terms().begin()->first[tIndex] - q.terms().begin()->first[tIndex];
    Int cp = p.terms().begin()->second, cq = q.terms().begin()->second;
    int sign;
    if (cp == cq) sign = 1;
    else if (cp == -cq) sign = -1;
    else return r;
    auto ip = p.terms().begin();
    auto iq = q.terms().begin();
    for (; ip != p.terms().end(); ++ip, ++iq) {
        if (ip->first[tIndex] != iq->first[tIndex] + shift) return r;
        if (ip->second != (sign == 1 ? iq->second : Int(-iq->second))) return r;
    }
    r.equal = true;
    r.sign = sign;
    r.shift = shift;
    return r;
}

namespace {

struct Lexer {
    const std::string& s;
    size_t i = 0;
    explicit Lexer(const std::string& text) : s(text) {}
    void skip() { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; }
    bool done() { skip(); return i >= s.size(); }
    char peek() { skip(); return i < s.size() ? s[i] : '\0'; }
    char take() { skip(); return s[i++]; }
    long long integer() {
        skip();
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
        if (i >= s.size() || !std::isdigit((unsigned char)s[i]))
            fail(ErrorCode::MalformedInput, "expected integer in polynomial text");
        long long v = 0;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) v = v * 10 + (s[i++] - '0');
        return neg ? -v : v;
    }
    std::string name() {
        skip();
        std::string n;
        while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_'))
            n += s[i++];
        if (n.empty()) fail(ErrorCode::MalformedInput, "expected variable name");
        return n;
    }
};

}  // namespace

LaurentPoly parse_laurent(const std::string& text, const VarTablePtr& vars) {
    Lexer lx(text);
    LaurentPoly p(vars);
    bool first = true;
    while (!lx.done()) {
        int sign = 1;
        char c = lx.peek();
        if (c == '+' || c == '-') {
            lx.take();
            sign = c == '-' ? -1 : 1;
        } else if (!first) {
            fail(ErrorCode::MalformedInput, "expected + or - between terms");
        }
        first = false;
        Int coeff = sign;
        Exp e(vars->size(), 0);
        bool sawFactor = false;
        for (;;) {
            char d = lx.peek();
            if (std::isdigit((unsigned char)d)) {
                coeff *= Int(lx.integer());
                sawFactor = true;
            } else if (std::isalpha((unsigned char)d) || d == '_') {
                std::string nm = lx.name();
                int idx = vars->index(nm);
                if (idx < 0)
                    fail(ErrorCode::MalformedInput, "unknown variable " + nm);
                int pw = 1;
                if (lx.peek() == '^') {
                    lx.take();
                    pw = (int)lx.integer();
                }
                e[idx] += pw;
                sawFactor = true;
            } else {
                fail(ErrorCode::MalformedInput, "expected factor in polynomial text");
            }
            if (lx.peek() == '*') {
                lx.take();
                continue;
            }
            break;
        }
        if (!sawFactor) fail(ErrorCode::MalformedInput, "empty term");
        p.add_term(e, coeff);
    }
    if (first) fail(ErrorCode::MalformedInput, "empty polynomial text");
    return p;
}

}  // namespace dimerlab
