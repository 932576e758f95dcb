/**
 * Class functions on S_n = S_{n_1} x ... x S_{n_m}, character polynomials in
 * the cycle-count functions X_k^{(j)}, and the checks built on them.
 */

#ifndef ARRSTAB_CHARACTERS_HPP
#define ARRSTAB_CHARACTERS_HPP

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "arrstab/arrangement.hpp"
#include "arrstab/homology.hpp"

namespace arrstab {

class ClassFunction
{
public:
    ClassFunction() = default;
    explicit ClassFunction(MultiIndex level, Rational fill = 0);
    ClassFunction(MultiIndex level, const std::function<Rational(const ConjClass&)>& f);

    static ClassFunction constant(const MultiIndex& level, const Rational& v) { return ClassFunction(level, v); }

    const MultiIndex& level() const { return level_; }
    const std::vector<ConjClass>& classes() const { return classes_; }
    const std::vector<Rational>& values() const { return values_; }
    std::vector<Rational>& values() { return values_; }

    const Rational& operator()(const ConjClass& c) const;
    const Rational& at_identity() const { return values_.front(); }

    friend bool operator==(const ClassFunction& a, const ClassFunction& b)
    {
        return a.level_ == b.level_ && a.values_ == b.values_;
    }

private:
    std::size_t index_of(const ConjClass& c) const;

    MultiIndex level_;
    std::vector<ConjClass> classes_;
    std::vector<Rational> values_;
};

ClassFunction operator+(const ClassFunction& a, const ClassFunction& b);

/// Exponents a_{jk} of X_k^{(j)}; keys (factor j, 0-based; cycle length k >= 1).
using Monomial = std::map<std::pair<int, int>, int>;

struct MonomialLess
{
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Weighted degree of a monomial in factor j: sum over k of k * a_{jk}.
MultiIndex multidegree(const Monomial& mono, int m);

class CharacterPolynomial
{
public:
    explicit CharacterPolynomial(int m = 1) : m_(m) {}

    static CharacterPolynomial constant(int m, const Rational& c);
    /// X_k^{(j)} with j 1-based as in the text form.
    static CharacterPolynomial variable(int m, int j, int k);
    /// binom(X_k^{(j)}, a).
    static CharacterPolynomial binomial(int m, int j, int k, int a);

    int m() const { return m_; }
    const std::map<Monomial, Rational, MonomialLess>& terms() const { return terms_; }
    void add_term(const Monomial& mono, const Rational& c);

    MultiIndex multidegree() const;

    friend bool operator==(const CharacterPolynomial& a, const CharacterPolynomial& b)
    {
        return a.m_ == b.m_ && a.terms_ == b.terms_;
    }

private:
    int m_;
    std::map<Monomial, Rational, MonomialLess> terms_;
};

CharacterPolynomial operator+(const CharacterPolynomial& a, const CharacterPolynomial& b);
CharacterPolynomial operator-(const CharacterPolynomial& a, const CharacterPolynomial& b);
CharacterPolynomial operator*(const CharacterPolynomial& a, const CharacterPolynomial& b);
CharacterPolynomial operator*(const Rational& c, const CharacterPolynomial& p);

/// Monomial form, e.g. "1/2*X1^(1)^2 - 1/2*X1^(1) + X2^(1)".
std::string to_string(const CharacterPolynomial& p);

/// Same polynomial in products of binom(X_k^{(j)}, a), e.g. "binom(X1^(1),2) + X2^(1)".
std::string to_binomial_string(const CharacterPolynomial& p);

/// Accepts both textual forms above. `m` is the number of factors.
CharacterPolynomial parse_character_polynomial(std::string_view text, int m);

Rational evaluate(const CharacterPolynomial& p, const ConjClass& c);
ClassFunction class_function(const CharacterPolynomial& p, const MultiIndex& level);

/// Character of H^i at level n (i = 0 gives the trivial character).
ClassFunction character_of_cohomology(const ArrangementSpec& spec, const MultiIndex& n, int i, int jobs = 1);
ClassFunction character_of_cohomology(const IntersectionLattice& lat, int i, int jobs = 1);

class FitError : public std::runtime_error
{
public:
    enum class Kind
    {
        inconsistent,
        underdetermined
    };
    FitError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// All monomials of multidegree <= bound, in MonomialLess order.
std::vector<Monomial> monomials_up_to(const MultiIndex& bound);

CharacterPolynomial fit_character_polynomial(const std::vector<ClassFunction>& samples, const MultiIndex& degree_bound);

Rational inner_product(const ClassFunction& a, const ClassFunction& b);
ClassFunction tensor_char(const ClassFunction& a, const ClassFunction& b);
ClassFunction dual_char(const ClassFunction& a);

ClassFunction induction_character(const MultiIndex& c, const ClassFunction& chi_w, const MultiIndex& n);

/// <chi, 1>; throws std::domain_error unless a nonnegative integer.
Rational invariants_dim(const ClassFunction& chi);

Rational twisted_betti(const ClassFunction& chi_h, const ClassFunction& chi_n);

/// Irreducible character chi^lambda at cycle type mu (Murnaghan-Nakayama).
Integer irreducible_character(const Partition& lambda, const Partition& mu);

/// Multiplicity of each irreducible, keyed by its tuple of partitions. Entries of the level must be <= 8.
std::map<std::vector<Partition>, Rational> irreducible_multiplicities(const ClassFunction& chi);

struct FreeClass
{
    PrimitiveClass cls;
    ClassFunction generating_character;   // at cls.degree
    bool within_degree_bound = true;
};

struct FreenessReport
{
    bool ok = true;
    int degree = 0;
    MultiIndex degree_bound;
    std::vector<FreeClass> classes;
    std::vector<std::pair<MultiIndex, bool>> level_matches;
    std::string mismatch;
};

FreenessReport verify_free_decomposition(const ArrangementSpec& spec, int i, const std::vector<MultiIndex>& levels,
                                         int jobs = 1);

struct StabilityReport
{
    MultiIndex empirical_onset;
    MultiIndex predicted_onset;
    bool stable = false;              // some sample corner has constant values beyond it
    bool insufficient_data = false;   // no sample at or beyond the predicted onset
    bool falsified = false;           // samples at or beyond the prediction disagree
    Rational stable_value = 0;
};

StabilityReport stability_report(const std::map<MultiIndex, Rational>& values, const MultiIndex& predicted_onset);

}  // namespace arrstab

#endif
