#include "arrstab/characters.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "arrstab/parallel.hpp"

namespace arrstab {

// ---------------------------------------------------------------- class functions

ClassFunction::ClassFunction(MultiIndex level, Rational fill)
    : level_(std::move(level)), classes_(conj_classes(level_)), values_(classes_.size(), fill)
{
}

ClassFunction::ClassFunction(MultiIndex level, const std::function<Rational(const ConjClass&)>& f)
    : ClassFunction(std::move(level))
{
    for (std::size_t k = 0; k < classes_.size(); ++k)
        values_[k] = f(classes_[k]);
}

std::size_t ClassFunction::index_of(const ConjClass& c) const
{
    const auto it = std::lower_bound(classes_.begin(), classes_.end(), c);
    if (it == classes_.end() || !(*it == c))
        throw std::invalid_argument("class " + to_string(c) + " is not a class at level " + to_string(level_));
    return static_cast<std::size_t>(it - classes_.begin());
}

const Rational& ClassFunction::operator()(const ConjClass& c) const
{
    return values_[index_of(c)];
}

namespace {

void require_same_level(const ClassFunction& a, const ClassFunction& b)
{
    if (a.level() != b.level())
        throw std::invalid_argument("class functions live at different levels: " + to_string(a.level()) + " vs "
                                    + to_string(b.level()));
}

}  // namespace

ClassFunction operator+(const ClassFunction& a, const ClassFunction& b)
{
    require_same_level(a, b);
    ClassFunction out = a;
    for (std::size_t k = 0; k < out.values().size(); ++k)
        out.values()[k] += b.values()[k];
    return out;
}

// ---------------------------------------------------------------- polynomials

namespace {

int weight(const Monomial& mono)
{
    int w = 0;
    for (const auto& [var, e] : mono)
        w += var.second * e;
    return w;
}

Monomial multiply(const Monomial& a, const Monomial& b)
{
    Monomial out = a;
    for (const auto& [var, e] : b)
        out[var] += e;
    return out;
}

std::string variable_name(const std::pair<int, int>& var)
{
    return "X" + std::to_string(var.second) + "^(" + std::to_string(var.first + 1) + ")";
}

template <typename FactorFn>
std::string render(const std::map<Monomial, Rational, MonomialLess>& terms, FactorFn factor)
{
    if (terms.empty())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& [mono, coef] : terms)
    {
        const bool negative = coef < 0;
        const Rational mag = negative ? Rational(-coef) : coef;
        if (first)
            s += negative ? "-" : "";
        else
            s += negative ? " - " : " + ";
        first = false;

        std::string body;
        for (const auto& [var, e] : mono)
        {
            if (!body.empty())
                body += '*';
            body += factor(var, e);
        }
        if (body.empty())
            s += to_string(mag);
        else if (mag == 1)
            s += body;
        else
            s += to_string(mag) + "*" + body;
    }
    return s;
}

// Stirling numbers of the second kind, S(a, i).
Integer stirling2(int a, int i)
{
    std::vector<std::vector<Integer>> s(static_cast<std::size_t>(a + 1),
                                        std::vector<Integer>(static_cast<std::size_t>(a + 1), 0));
    s[0][0] = 1;
    for (int n = 1; n <= a; ++n)
    {
        for (int k = 1; k <= n; ++k)
            s[n][k] = Integer(k) * s[n - 1][k] + s[n - 1][k - 1];
    }
    return s[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
}

}  // namespace

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const
{
    const int wa = weight(a);
    const int wb = weight(b);
    if (wa != wb)
        return wa < wb;
    return a < b;
}

MultiIndex multidegree(const Monomial& mono, int m)
{
    std::vector<int> d(static_cast<std::size_t>(m), 0);
    for (const auto& [var, e] : mono)
        d[static_cast<std::size_t>(var.first)] += var.second * e;
    return MultiIndex(std::move(d));
}

CharacterPolynomial CharacterPolynomial::constant(int m, const Rational& c)
{
    CharacterPolynomial p(m);
    p.add_term({}, c);
    return p;
}

CharacterPolynomial CharacterPolynomial::variable(int m, int j, int k)
{
    if (j < 1 || j > m || k < 1)
        throw std::invalid_argument("variable X" + std::to_string(k) + "^(" + std::to_string(j) + ") out of range");
    CharacterPolynomial p(m);
    p.add_term({{{j - 1, k}, 1}}, 1);
    return p;
}

CharacterPolynomial CharacterPolynomial::binomial(int m, int j, int k, int a)
{
    if (a < 0)
        throw std::invalid_argument("binomial needs a nonnegative lower index");
    // X(X-1)...(X-a+1)/a!
    const CharacterPolynomial x = variable(m, j, k);
    CharacterPolynomial out = constant(m, 1);
    for (int t = 0; t < a; ++t)
        out = out * (x - constant(m, t));
    return Rational(1, static_cast<long>(factorial(a))) * out;
}

void CharacterPolynomial::add_term(const Monomial& mono, const Rational& c)
{
    Monomial clean;
    for (const auto& [var, e] : mono)
    {
        if (var.first < 0 || var.first >= m_ || var.second < 1 || e < 0)
            throw std::invalid_argument("monomial variable out of range");
        if (e > 0)
            clean.emplace(var, e);
    }
    Rational& slot = terms_[clean];
    slot += c;
    if (slot == 0)
        terms_.erase(clean);
}

MultiIndex CharacterPolynomial::multidegree() const
{
    MultiIndex out = MultiIndex::zeros(static_cast<std::size_t>(m_));
    for (const auto& [mono, coef] : terms_)
        out = componentwise_max(out, arrstab::multidegree(mono, m_));
    return out;
}

CharacterPolynomial operator+(const CharacterPolynomial& a, const CharacterPolynomial& b)
{
    if (a.m() != b.m())
        throw std::invalid_argument("character polynomials with different m");
    CharacterPolynomial out = a;
    for (const auto& [mono, coef] : b.terms())
        out.add_term(mono, coef);
    return out;
}

CharacterPolynomial operator*(const Rational& c, const CharacterPolynomial& p)
{
    CharacterPolynomial out(p.m());
    if (c == 0)
        return out;
    for (const auto& [mono, coef] : p.terms())
        out.add_term(mono, c * coef);
    return out;
}

CharacterPolynomial operator-(const CharacterPolynomial& a, const CharacterPolynomial& b)
{
    return a + Rational(-1) * b;
}

CharacterPolynomial operator*(const CharacterPolynomial& a, const CharacterPolynomial& b)
{
    if (a.m() != b.m())
        throw std::invalid_argument("character polynomials with different m");
    CharacterPolynomial out(a.m());
    for (const auto& [ma, ca] : a.terms())
    {
        for (const auto& [mb, cb] : b.terms())
            out.add_term(multiply(ma, mb), ca * cb);
    }
    return out;
}

std::string to_string(const CharacterPolynomial& p)
{
    return render(p.terms(), [](const std::pair<int, int>& var, int e) {
        std::string s = variable_name(var);
        if (e > 1)
            s += "^" + std::to_string(e);
        return s;
    });
}

std::string to_binomial_string(const CharacterPolynomial& p)
{
    // X^a = sum_i S(a,i) i! binom(X,i); the result is keyed by binomial exponents.
    std::map<Monomial, Rational, MonomialLess> out;
    for (const auto& [mono, coef] : p.terms())
    {
        std::vector<std::pair<Monomial, Rational>> partial{{Monomial{}, coef}};
        for (const auto& [var, a] : mono)
        {
            std::vector<std::pair<Monomial, Rational>> next;
            for (const auto& [pm, pc] : partial)
            {
                for (int i = 1; i <= a; ++i)
                {
                    Monomial nm = pm;
                    nm[var] = i;
                    next.emplace_back(nm, pc * Rational(stirling2(a, i) * Integer(factorial(i))));
                }
            }
            partial = std::move(next);
        }
        for (const auto& [pm, pc] : partial)
        {
            Rational& slot = out[pm];
            slot += pc;
            if (slot == 0)
                out.erase(pm);
        }
    }
    return render(out, [](const std::pair<int, int>& var, int a) {
        if (a == 1)
            return variable_name(var);
        return "binom(" + variable_name(var) + "," + std::to_string(a) + ")";
    });
}

namespace {

class PolynomialParser
{
public:
    PolynomialParser(std::string_view text, int m) : text_(text), m_(m) {}

    CharacterPolynomial parse()
    {
        CharacterPolynomial p = expr();
        skip();
        if (pos_ != text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& why) const
    {
        throw std::invalid_argument("character polynomial '" + std::string(text_) + "': " + why + " at offset "
                                    + std::to_string(pos_));
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char ch)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == ch)
        {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char ch)
    {
        if (!accept(ch))
            fail(std::string("expected '") + ch + "'");
    }

    bool accept_word(std::string_view w)
    {
        skip();
        if (text_.substr(pos_, w.size()) == w)
        {
            pos_ += w.size();
            return true;
        }
        return false;
    }

    int integer()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected an integer");
        return std::stoi(std::string(text_.substr(start, pos_ - start)));
    }

    CharacterPolynomial expr()
    {
        CharacterPolynomial out(m_);
        bool negative = accept('-');
        if (!negative)
            accept('+');
        while (true)
        {
            CharacterPolynomial t = term();
            out = negative ? out - t : out + t;
            if (accept('+'))
                negative = false;
            else if (accept('-'))
                negative = true;
            else
                return out;
        }
    }

    CharacterPolynomial term()
    {
        CharacterPolynomial out = factor();
        while (accept('*'))
            out = out * factor();
        return out;
    }

    std::pair<int, int> variable()
    {
        const int k = integer();
        int j = 1;
        skip();
        if (text_.substr(pos_, 2) == "^(")
        {
            pos_ += 2;
            j = integer();
            expect(')');
        }
        return {j, k};
    }

    CharacterPolynomial power(CharacterPolynomial base)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == '^')
        {
            ++pos_;
            const int e = integer();
            CharacterPolynomial out = CharacterPolynomial::constant(m_, 1);
            for (int t = 0; t < e; ++t)
                out = out * base;
            return out;
        }
        return base;
    }

    CharacterPolynomial factor()
    {
        skip();
        if (accept('('))
        {
            CharacterPolynomial inner = expr();
            expect(')');
            return power(std::move(inner));
        }
        if (accept_word("binom("))
        {
            if (!accept('X'))
                fail("expected a variable inside binom");
            const auto [j, k] = variable();
            expect(',');
            const int a = integer();
            expect(')');
            return CharacterPolynomial::binomial(m_, j, k, a);
        }
        if (accept('X'))
        {
            const auto [j, k] = variable();
            return power(CharacterPolynomial::variable(m_, j, k));
        }
        skip();
        const std::size_t start = pos_;
        while (pos_ < text_.size()
               && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/'))
            ++pos_;
        if (start == pos_)
            fail("expected a factor");
        return power(CharacterPolynomial::constant(m_, parse_rational(text_.substr(start, pos_ - start))));
    }

    std::string_view text_;
    int m_;
    std::size_t pos_ = 0;
};

}  // namespace

CharacterPolynomial parse_character_polynomial(std::string_view text, int m)
{
    return PolynomialParser(text, m).parse();
}

Rational evaluate(const CharacterPolynomial& p, const ConjClass& c)
{
    if (static_cast<int>(c.parts.size()) != p.m())
        throw std::invalid_argument("class " + to_string(c) + " does not have " + std::to_string(p.m()) + " factors");
    Rational sum = 0;
    for (const auto& [mono, coef] : p.terms())
    {
        Rational v = coef;
        for (const auto& [var, e] : mono)
        {
            const Rational x = c.cycle_count(static_cast<std::size_t>(var.first), var.second);
            for (int t = 0; t < e; ++t)
                v *= x;
        }
        sum += v;
    }
    return sum;
}

ClassFunction class_function(const CharacterPolynomial& p, const MultiIndex& level)
{
    return ClassFunction(level, [&](const ConjClass& c) { return evaluate(p, c); });
}

// ---------------------------------------------------------------- cohomology characters

ClassFunction character_of_cohomology(const IntersectionLattice& lat, int i, int jobs)
{
    if (i == 0)
        return ClassFunction::constant(lat.level(), 1);
    ClassFunction chi(lat.level());
    std::vector<PermTuple> reps;
    for (const auto& c : chi.classes())
        reps.push_back(class_representative(c));
    chi.values() = equivariant_traces(lat, reps, i, jobs);
    return chi;
}

ClassFunction character_of_cohomology(const ArrangementSpec& spec, const MultiIndex& n, int i, int jobs)
{
    if (i == 0)
        return ClassFunction::constant(n, 1);
    return character_of_cohomology(build_lattice(spec, n, i), i, jobs);
}

// ---------------------------------------------------------------- fitting

std::vector<Monomial> monomials_up_to(const MultiIndex& bound)
{
    // Per factor: exponent vectors (a_1, a_2, ...) with sum k*a_k <= bound_j.
    std::vector<std::vector<Monomial>> per_factor;
    for (std::size_t j = 0; j < bound.size(); ++j)
    {
        std::vector<Monomial> options;
        Monomial cur;
        auto rec = [&](auto&& self, int k, int room) -> void {
            if (k > bound[j])
            {
                options.push_back(cur);
                return;
            }
            for (int e = 0; e * k <= room; ++e)
            {
                if (e > 0)
                    cur[{static_cast<int>(j), k}] = e;
                self(self, k + 1, room - e * k);
            }
            cur.erase({static_cast<int>(j), k});
        };
        rec(rec, 1, bound[j]);
        per_factor.push_back(std::move(options));
    }
    std::vector<Monomial> out{Monomial{}};
    for (const auto& options : per_factor)
    {
        std::vector<Monomial> next;
        for (const auto& prefix : out)
        {
            for (const auto& opt : options)
                next.push_back(multiply(prefix, opt));
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end(), MonomialLess{});
    return out;
}

CharacterPolynomial fit_character_polynomial(const std::vector<ClassFunction>& samples, const MultiIndex& degree_bound)
{
    std::set<MultiIndex> levels;
    for (const auto& s : samples)
    {
        if (s.level().size() != degree_bound.size())
            throw std::invalid_argument("sample level " + to_string(s.level()) + " has the wrong number of factors");
        if (!leq(degree_bound, s.level()))
            throw std::invalid_argument("sample level " + to_string(s.level()) + " is below the degree bound "
                                        + to_string(degree_bound));
        levels.insert(s.level());
    }
    if (levels.size() < 2)
        throw std::invalid_argument("fitting needs samples at two or more distinct levels");

    const int m = static_cast<int>(degree_bound.size());
    const std::vector<Monomial> monos = monomials_up_to(degree_bound);
    Index rows = 0;
    for (const auto& s : samples)
        rows += static_cast<Index>(s.classes().size());
    const Index ncols = static_cast<Index>(monos.size());
    RationalMatrix system(rows, ncols + 1);
    Index row = 0;
    for (const auto& s : samples)
    {
        for (std::size_t c = 0; c < s.classes().size(); ++c, ++row)
        {
            for (Index k = 0; k < ncols; ++k)
            {
                CharacterPolynomial single(m);
                single.add_term(monos[static_cast<std::size_t>(k)], 1);
                system(row, k) = evaluate(single, s.classes()[c]);
            }
            system(row, ncols) = s.values()[c];
        }
    }

    const RowEchelon<Rational> ech = row_reduce(system);
    if (!ech.pivots.empty() && ech.pivots.back() == ncols)
        throw FitError(FitError::Kind::inconsistent,
                       "no character polynomial of multidegree <= " + to_string(degree_bound) + " fits the samples");
    if (ech.rank() < ncols)
        throw FitError(FitError::Kind::underdetermined,
                       "samples determine only " + std::to_string(ech.rank()) + " of " + std::to_string(ncols)
                           + " coefficients; add levels");
    CharacterPolynomial p(m);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r)
        p.add_term(monos[static_cast<std::size_t>(ech.pivots[r])], ech.rows(static_cast<Index>(r), ncols));
    return p;
}

// ---------------------------------------------------------------- inner products

Rational inner_product(const ClassFunction& a, const ClassFunction& b)
{
    require_same_level(a, b);
    Rational sum = 0;
    for (std::size_t k = 0; k < a.classes().size(); ++k)
        sum += Rational(static_cast<long>(a.classes()[k].size)) * a.values()[k] * b.values()[k];
    return sum / Rational(static_cast<long>(group_order(a.level())));
}

ClassFunction tensor_char(const ClassFunction& a, const ClassFunction& b)
{
    require_same_level(a, b);
    ClassFunction out = a;
    for (std::size_t k = 0; k < out.values().size(); ++k)
        out.values()[k] *= b.values()[k];
    return out;
}

ClassFunction dual_char(const ClassFunction& a)
{
    // g and g^{-1} share a cycle type, so the inverse class is the class itself.
    return ClassFunction(a.level(), [&](const ConjClass& c) { return a(c); });
}

ClassFunction induction_character(const MultiIndex& c, const ClassFunction& chi_w, const MultiIndex& n)
{
    if (chi_w.level() != c)
        throw std::invalid_argument("induction_character: chi_W does not live at " + to_string(c));
    ClassFunction out(n);
    if (!leq(c, n))
        return out;
    for (std::size_t idx = 0; idx < out.classes().size(); ++idx)
    {
        const ConjClass& cls = out.classes()[idx];
        // Stable subsets are unions of cycles; the restriction has the chosen cycle lengths as type.
        std::vector<Partition> chosen(c.size());
        Rational sum = 0;
        auto rec = [&](auto&& self, std::size_t j, std::size_t cycle, int room) -> void {
            if (j == c.size())
            {
                sum += chi_w(make_conj_class(chosen));
                return;
            }
            const Partition& cycles = cls.parts[j];
            if (room == 0)
            {
                self(self, j + 1, 0, j + 1 < c.size() ? c[j + 1] : 0);
                return;
            }
            for (std::size_t q = cycle; q < cycles.size(); ++q)
            {
                if (cycles[q] > room)
                    continue;
                chosen[j].push_back(cycles[q]);
                self(self, j, q + 1, room - cycles[q]);
                chosen[j].pop_back();
            }
        };
        rec(rec, 0, 0, c.size() > 0 ? c[0] : 0);
        out.values()[idx] = sum;
    }
    return out;
}

Rational invariants_dim(const ClassFunction& chi)
{
    const Rational d = inner_product(chi, ClassFunction::constant(chi.level(), 1));
    if (!is_integer(d) || d < 0)
        throw std::domain_error("invariant dimension " + to_string(d) + " is not a nonnegative integer");
    return d;
}

Rational twisted_betti(const ClassFunction& chi_h, const ClassFunction& chi_n)
{
    return inner_product(dual_char(chi_h), chi_n);
}

// ---------------------------------------------------------------- Murnaghan-Nakayama

namespace {

Integer mn_recurse(const std::vector<int>& beta, const Partition& mu, std::size_t idx)
{
    if (idx == mu.size())
        return 1;
    const int k = mu[idx];
    Integer sum = 0;
    for (std::size_t b = 0; b < beta.size(); ++b)
    {
        const int to = beta[b] - k;
        if (to < 0 || std::binary_search(beta.begin(), beta.end(), to))
            continue;
        int between = 0;
        for (int v : beta)
        {
            if (v > to && v < beta[b])
                ++between;
        }
        std::vector<int> next = beta;
        next[b] = to;
        std::sort(next.begin(), next.end());
        const Integer term = mn_recurse(next, mu, idx + 1);
        sum += (between % 2 == 0) ? term : Integer(-term);
    }
    return sum;
}

}  // namespace

Integer irreducible_character(const Partition& lambda, const Partition& mu)
{
    const int n = std::accumulate(lambda.begin(), lambda.end(), 0);
    if (n != std::accumulate(mu.begin(), mu.end(), 0))
        throw std::invalid_argument("irreducible_character: partitions of different sizes");
    std::vector<int> beta;
    const int len = static_cast<int>(lambda.size());
    for (int i = 0; i < len; ++i)
        beta.push_back(lambda[static_cast<std::size_t>(i)] + len - 1 - i);
    std::sort(beta.begin(), beta.end());
    return mn_recurse(beta, mu, 0);
}

std::map<std::vector<Partition>, Rational> irreducible_multiplicities(const ClassFunction& chi)
{
    for (int e : chi.level().entries())
    {
        if (e > 8)
            throw std::invalid_argument("irreducible_multiplicities is limited to levels with entries <= 8");
    }
    std::map<std::vector<Partition>, Rational> out;
    const Rational order = Rational(static_cast<long>(group_order(chi.level())));
    for (const auto& lambda : chi.classes())
    {
        Rational sum = 0;
        for (std::size_t k = 0; k < chi.classes().size(); ++k)
        {
            const ConjClass& mu = chi.classes()[k];
            Integer value = 1;
            for (std::size_t j = 0; j < mu.parts.size(); ++j)
                value *= irreducible_character(lambda.parts[j], mu.parts[j]);
            sum += Rational(static_cast<long>(mu.size)) * chi.values()[k] * Rational(value);
        }
        out[lambda.parts] = sum / order;
    }
    return out;
}

// ---------------------------------------------------------------- freeness

FreenessReport verify_free_decomposition(const ArrangementSpec& spec, int i, const std::vector<MultiIndex>& levels,
                                         int jobs)
{
    if (i < 1)
        throw std::invalid_argument("verify_free_decomposition needs i >= 1");
    FreenessReport report;
    report.degree = i;
    report.degree_bound = degree_times(i, spec.max_degree());

    for (const auto& cls : primitive_classes(spec, i))
    {
        const Index cd = cls.subspace.codim();
        if (2 * cd < i || cd > i)
            continue;
        const IntersectionLattice lat = build_lattice(spec, cls.degree, i);
        std::vector<std::size_t> members;
        for (const auto& y : orbit(cls.subspace, cls.degree, spec.r))
            members.push_back(*lat.find(y));
        const int local_degree = static_cast<int>(2 * cd) - i - 2;
        std::vector<std::unique_ptr<LocalHomology>> local(members.size());
        parallel_for(members.size(), jobs, [&](std::size_t k) {
            local[k] = std::make_unique<LocalHomology>(lat, members[k], local_degree);
        });
        if (local.front()->betti() == 0)
            continue;

        ClassFunction gen(cls.degree);
        for (std::size_t k = 0; k < gen.classes().size(); ++k)
        {
            const auto perm = act(class_representative(gen.classes()[k]), lat);
            Rational sum = 0;
            for (std::size_t q = 0; q < members.size(); ++q)
            {
                if (perm[members[q]] == members[q])
                    sum += local[q]->trace(perm);
            }
            gen.values()[k] = sum;
        }
        const bool within = leq(cls.degree, report.degree_bound);
        if (!within)
        {
            report.ok = false;
            report.mismatch = "primitive class at " + to_string(cls.degree) + " exceeds the degree bound "
                              + to_string(report.degree_bound);
        }
        report.classes.push_back({cls, std::move(gen), within});
    }

    for (const auto& n : levels)
    {
        ClassFunction predicted(n);
        for (const auto& fc : report.classes)
            predicted = predicted + induction_character(fc.cls.degree, fc.generating_character, n);
        const ClassFunction actual = character_of_cohomology(spec, n, i, jobs);
        const bool match = predicted == actual;
        report.level_matches.emplace_back(n, match);
        if (!match && report.ok)
        {
            report.ok = false;
            report.mismatch = "free decomposition of H^" + std::to_string(i) + " disagrees with the character at "
                              + to_string(n);
        }
    }
    return report;
}

// ---------------------------------------------------------------- stability

StabilityReport stability_report(const std::map<MultiIndex, Rational>& values, const MultiIndex& predicted_onset)
{
    StabilityReport out;
    out.predicted_onset = predicted_onset;

    auto constant_beyond = [&](const MultiIndex& corner, Rational* value) {
        bool any = false;
        Rational first = 0;
        for (const auto& [level, v] : values)
        {
            if (!leq(corner, level))
                continue;
            if (!any)
            {
                first = v;
                any = true;
            }
            else if (v != first)
                return false;
        }
        if (value != nullptr)
            *value = first;
        return any;
    };

    std::vector<MultiIndex> corners;
    for (const auto& [level, v] : values)
        corners.push_back(level);
    std::stable_sort(corners.begin(), corners.end(),
                     [](const MultiIndex& a, const MultiIndex& b) { return a.total() < b.total(); });
    for (const auto& corner : corners)
    {
        if (constant_beyond(corner, &out.stable_value))
        {
            out.empirical_onset = corner;
            out.stable = true;
            break;
        }
    }

    bool beyond = false;
    for (const auto& [level, v] : values)
        beyond = beyond || leq(predicted_onset, level);
    out.insufficient_data = !beyond;
    out.falsified = beyond && !constant_beyond(predicted_onset, nullptr);
    return out;
}

}  // namespace arrstab
