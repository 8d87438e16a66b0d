#pragma once

// Sparse exact multivariate Laurent polynomials over the integers.
// Terms are kept in a map ordered by graded lex on exponent vectors, which
// fixes the canonical display order and makes golden files reproducible.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dimerlab/errors.hpp"

namespace dimerlab {

using Int = boost::multiprecision::cpp_int;
using Exp = std::vector<int>;  // one entry per variable, may be negative

struct VarTable {
    std::vector<std::string> names;

    int index(const std::string& name) const;  // -1 if absent
    size_t size() const { return names.size(); }
};

using VarTablePtr = std::shared_ptr<const VarTable>;

VarTablePtr make_vars(std::vector<std::string> names);

struct GradedLexLess {
    bool operator()(const Exp& a, const Exp& b) const;
};

class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(VarTablePtr vars) : vars_(std::move(vars)) {}

    static LaurentPoly zero(VarTablePtr vars) { return LaurentPoly(std::move(vars)); }
    static LaurentPoly constant(VarTablePtr vars, Int c);
    static LaurentPoly monomial(VarTablePtr vars, Exp e, Int c = 1);
    // Single variable to a power.
    static LaurentPoly var(VarTablePtr vars, int index, int power = 1);

    const VarTablePtr& vars() const { return vars_; }
    const std::map<Exp, Int, GradedLexLess>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_monomial() const { return terms_.size() == 1; }
    size_t term_count() const { return terms_.size(); }

    void add_term(const Exp& e, const Int& c);  // accumulates, drops zeros

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    bool operator==(const LaurentPoly& o) const;
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    LaurentPoly pow(int k) const;  // k >= 0, or monomial with any k

    // Exact division; throws NotDivisible.
    LaurentPoly divide_exact(const LaurentPoly& q) const;

    // Per-variable minimum/maximum exponent over the support (0 for vars not used).
    Exp min_exponents() const;
    Exp max_exponents() const;

    std::set<Exp> newton_support() const;

    // Coefficient of an exponent vector (0 if absent).
    Int coeff(const Exp& e) const;

    std::string to_string() const;

private:
    VarTablePtr vars_;
    std::map<Exp, Int, GradedLexLess> terms_;

    void check_same_table(const LaurentPoly& o) const;
};

// value = num * x^{-den}; den entries must be >= 0.
struct RationalMono {
    LaurentPoly num;
    Exp den;
};

// Substitute images[i] for variable i of p.  Entries without a value are
// carried over by name into the target table.  Negative powers of an image
// require the image to be a single term (unit); otherwise NonUnitInverse.
LaurentPoly substitute(const LaurentPoly& p,
                       const std::vector<std::optional<RationalMono>>& images,
                       const VarTablePtr& target);

struct UnitRelation {
    bool equal = false;
    int sign = 1;   // p == sign * t^shift * q
    int shift = 0;
};

// p, q univariate Laurent in the variable `tIndex` of their shared table.
UnitRelation equal_up_to_unit(const LaurentPoly& p, const LaurentPoly& q, int tIndex);

LaurentPoly parse_laurent(const std::string& text, const VarTablePtr& vars);

}  // namespace dimerlab
