#include "properties.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "arrstab/arrangement.hpp"
#include "arrstab/characters.hpp"
#include "arrstab/cli.hpp"
#include "arrstab/exactlin.hpp"
#include "arrstab/fim.hpp"
#include "arrstab/homology.hpp"
#include "oracles.hpp"

namespace props {

using namespace arrstab;

namespace {

int uniform(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Rational random_rational(Rng& rng)
{
    if (uniform(rng, 0, 9) < 4)
        return 0;
    return Rational(uniform(rng, -3, 3), uniform(rng, 1, 3));
}

RationalMatrix random_matrix(Rng& rng, Index rows, Index cols)
{
    RationalMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
    {
        for (Index j = 0; j < cols; ++j)
            m(i, j) = random_rational(rng);
    }
    return m;
}

Subspace random_subspace(Rng& rng, Index n, Index max_rows)
{
    return Subspace::from_constraints(n, random_matrix(rng, uniform(rng, 0, static_cast<int>(max_rows)), n));
}

LinearMap random_surjection(Rng& rng, Index target, Index source)
{
    while (true)
    {
        RationalMatrix m = random_matrix(rng, target, source);
        if (rank(m) == target)
            return LinearMap{m};
    }
}

PermTuple random_perm(Rng& rng, const MultiIndex& n)
{
    std::vector<std::vector<int>> perms;
    for (int e : n.entries())
    {
        std::vector<int> p(static_cast<std::size_t>(e));
        for (int i = 0; i < e; ++i)
            p[static_cast<std::size_t>(i)] = i;
        std::shuffle(p.begin(), p.end(), rng);
        perms.push_back(std::move(p));
    }
    return PermTuple(std::move(perms));
}

Injection random_injection(Rng& rng, const MultiIndex& c, const MultiIndex& d)
{
    Injection f{d, {}};
    for (std::size_t j = 0; j < c.size(); ++j)
    {
        std::vector<int> pool(static_cast<std::size_t>(d[j]));
        for (int i = 0; i < d[j]; ++i)
            pool[static_cast<std::size_t>(i)] = i;
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(static_cast<std::size_t>(c[j]));
        f.images.push_back(pool);
    }
    return f;
}

MultiIndex random_level(Rng& rng, std::size_t m, int lo, int hi)
{
    std::vector<int> v;
    for (std::size_t j = 0; j < m; ++j)
        v.push_back(uniform(rng, lo, hi));
    return MultiIndex(std::move(v));
}

MultiIndex random_level_above(Rng& rng, const MultiIndex& base, int slack)
{
    std::vector<int> v;
    for (int e : base.entries())
        v.push_back(e + uniform(rng, 0, slack));
    return MultiIndex(std::move(v));
}

// Generators built from signed coordinate relations z_a = +-z_b and z_a = 0, which keep lattices small.
ArrangementSpec random_signed_spec(Rng& rng)
{
    ArrangementSpec spec;
    spec.m = uniform(rng, 1, 2);
    spec.r = 1;
    const MultiIndex degree = spec.m == 1 ? MultiIndex{uniform(rng, 2, 3)}
                                          : (uniform(rng, 0, 1) ? MultiIndex{2, 1} : MultiIndex{1, 2});
    const Index dim = ambient_dim(degree, 1);
    const int rows = uniform(rng, 1, 2);
    RationalMatrix c = RationalMatrix::Zero(rows, dim);
    for (int i = 0; i < rows; ++i)
    {
        const Index a = uniform(rng, 0, static_cast<int>(dim) - 1);
        const int kind = uniform(rng, 0, 4);
        c(i, a) = 1;
        if (kind > 0)
        {
            Index b = uniform(rng, 0, static_cast<int>(dim) - 2);
            if (b >= a)
                ++b;
            c(i, b) = kind % 2 == 0 ? 1 : -1;
        }
    }
    spec.generators.push_back({degree, Subspace::from_constraints(dim, c)});
    return spec;
}

CharacterPolynomial random_polynomial(Rng& rng, const MultiIndex& bound)
{
    CharacterPolynomial p(static_cast<int>(bound.size()));
    for (const auto& mono : monomials_up_to(bound))
    {
        if (uniform(rng, 0, 2) == 0)
            p.add_term(mono, Rational(uniform(rng, -4, 4), uniform(rng, 1, 2)));
    }
    return p;
}

// ------------------------------------------------------------------ exactlin

Result rref_idempotent(Rng& rng)
{
    Result res;
    for (int t = 0; t < 150; ++t)
    {
        const RationalMatrix m = random_matrix(rng, uniform(rng, 0, 6), uniform(rng, 1, 7));
        const RationalMatrix r = rref(m);
        RationalMatrix stacked(m.rows() + r.rows(), m.cols());
        stacked << m, r;
        res.check(rref(r) == r && rank(stacked) == r.rows() && rank(m) == r.rows(), "rref not idempotent");
    }
    return res;
}

Result intersect_laws(Rng& rng)
{
    Result res;
    for (int t = 0; t < 150; ++t)
    {
        const Subspace a = random_subspace(rng, 6, 3);
        const Subspace b = random_subspace(rng, 6, 3);
        const Subspace c = random_subspace(rng, 6, 3);
        const bool comm = intersect(a, b) == intersect(b, a);
        const bool assoc = intersect(intersect(a, b), c) == intersect(a, intersect(b, c));
        const bool idem = intersect(a, a) == a;
        const bool bound = intersect(a, b).codim() <= a.codim() + b.codim();
        res.check(comm && assoc && idem && bound, "intersection law failed");
    }
    return res;
}

Result contains_antisymmetric(Rng& rng)
{
    Result res;
    for (int t = 0; t < 150; ++t)
    {
        const Subspace a = random_subspace(rng, 5, 3);
        // Same subspace presented through a different constraint matrix.
        RationalMatrix mix = random_matrix(rng, a.codim() + 1, a.codim());
        RationalMatrix rows = a.codim() > 0 ? RationalMatrix(mix * a.constraints()) : RationalMatrix(0, 5);
        const Subspace b = Subspace::from_constraints(5, rows);
        const Subspace c = random_subspace(rng, 5, 2);
        bool ok = true;
        for (const auto& [x, y] : {std::pair{a, b}, std::pair{a, c}, std::pair{b, intersect(a, c)}})
        {
            if (contains(x, y) && contains(y, x))
                ok = ok && x.key() == y.key();
        }
        ok = ok && contains(a, intersect(a, c));
        res.check(ok, "mutual containment without equal keys");
    }
    return res;
}

Result image_roundtrip(Rng& rng)
{
    Result res;
    for (int t = 0; t < 150; ++t)
    {
        const Index target = uniform(rng, 1, 4);
        const Index source = target + uniform(rng, 0, 2);
        const LinearMap f = random_surjection(rng, target, source);
        const Subspace y = random_subspace(rng, target, target);
        const Subspace x = preimage(f, y);   // contains ker f
        const bool ok = direct_image(f, x) == y && preimage(f, direct_image(f, x)) == x;
        res.check(ok, "direct image does not invert preimage on kernel-containing subspaces");
    }
    return res;
}

Result preimage_codim(Rng& rng)
{
    Result res;
    for (int t = 0; t < 150; ++t)
    {
        const Index target = uniform(rng, 1, 4);
        const LinearMap f = random_surjection(rng, target, target + uniform(rng, 0, 3));
        const Subspace y = random_subspace(rng, target, target);
        res.check(preimage(f, y).codim() == y.codim(), "codim changed under surjective preimage");
    }
    return res;
}

// ------------------------------------------------------------------ fim

Result injection_counts(Rng& rng)
{
    Result res;
    for (int c = 0; c <= 5; ++c)
    {
        for (int d = 0; d <= 5; ++d)
        {
            const MultiIndex cc{c}, dd{d};
            res.check(enumerate_injections(cc, dd).size() == binomial_set_size(cc, dd) * factorial(c),
                      "injection count " + std::to_string(c) + "->" + std::to_string(d));
        }
    }
    for (int t = 0; t < 100; ++t)
    {
        const MultiIndex c = random_level(rng, 2, 0, 3);
        const MultiIndex d = random_level(rng, 2, 0, 4);
        const auto all = enumerate_injections(c, d);
        const bool sorted = std::is_sorted(all.begin(), all.end());
        res.check(sorted && all.size() == binomial_set_size(c, d) * factorial(c[0]) * factorial(c[1]),
                  "injection count " + to_string(c) + "->" + to_string(d));
    }
    return res;
}

Result class_sizes(Rng&)
{
    Result res;
    for (int n = 0; n <= 6; ++n)
    {
        std::uint64_t total = 0;
        for (const auto& c : conj_classes(MultiIndex{n}))
            total += c.size;
        res.check(total == factorial(n), "class sizes at " + std::to_string(n));
    }
    for (int a = 0; a <= 4; ++a)
    {
        for (int b = 0; b <= 4; ++b)
        {
            std::uint64_t total = 0;
            for (const auto& c : conj_classes(MultiIndex{a, b}))
                total += c.size;
            res.check(total == factorial(a) * factorial(b), "class sizes at (a,b)");
        }
    }
    return res;
}

Result contravariance(Rng& rng)
{
    Result res;
    for (int t = 0; t < 150; ++t)
    {
        const std::size_t m = static_cast<std::size_t>(uniform(rng, 1, 2));
        const MultiIndex c = random_level(rng, m, 0, 2);
        MultiIndex d = degree_add(c, random_level(rng, m, 0, 2));
        MultiIndex e = degree_add(d, random_level(rng, m, 0, 1));
        const int r = uniform(rng, 1, 2);
        const Injection g = random_injection(rng, c, d);
        const Injection f = random_injection(rng, d, e);
        const RationalMatrix lhs = induced_linear_map(compose(f, g), r).matrix;
        const RationalMatrix rhs = induced_linear_map(g, r).matrix * induced_linear_map(f, r).matrix;
        res.check(lhs == rhs, "V(f o g) != V(g) V(f)");
    }
    return res;
}

Result action_homomorphism(Rng& rng)
{
    Result res;
    for (int t = 0; t < 150; ++t)
    {
        const MultiIndex n = t % 3 == 0 ? MultiIndex{2, 3} : MultiIndex{4};
        const int r = uniform(rng, 1, 2);
        const PermTuple g = random_perm(rng, n);
        const PermTuple h = random_perm(rng, n);
        const RationalMatrix lhs = act_on_vector(compose(g, h), r).matrix;
        const RationalMatrix rhs = act_on_vector(g, r).matrix * act_on_vector(h, r).matrix;
        res.check(lhs == rhs, "act_on_vector is not multiplicative");
    }
    return res;
}

// ------------------------------------------------------------------ arrangement

Result bell_census(Rng&)
{
    Result res;
    const ArrangementSpec braid = family_mkr(1, 2, 1);
    for (int n = 2; n <= 6; ++n)
        res.check(build_lattice(braid, MultiIndex{n}, n).size() == oracle::bell(n) - 1,
                  "braid lattice size at " + std::to_string(n));
    return res;
}

struct Sample
{
    ArrangementSpec spec;
    MultiIndex level;
    Index max_codim;
};

std::vector<Sample> sample_lattices()
{
    return {
        {family_mkr(1, 2, 1), MultiIndex{5}, 3},
        {family_mkr(1, 2, 1), MultiIndex{4}, 4},
        {family_mkr(1, 3, 1), MultiIndex{5}, 2},
        {family_mkr(2, 1, 1), MultiIndex{2, 3}, 2},
        {family_mkr(1, 2, 2), MultiIndex{3}, 4},
    };
}

Result saturation(Rng& rng)
{
    Result res;
    std::vector<IntersectionLattice> lats;
    for (const auto& s : sample_lattices())
        lats.push_back(build_lattice(s.spec, s.level, s.max_codim));
    for (int t = 0; t < 150; ++t)
    {
        const auto& lat = lats[static_cast<std::size_t>(t) % lats.size()];
        const auto a = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(lat.size()) - 1));
        const auto b = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(lat.size()) - 1));
        const Subspace x = intersect(lat.element(a), lat.element(b));
        res.check(lat.find(x).has_value() || x.codim() > lat.max_codim(), "lattice not closed under intersection");
    }
    return res;
}

Result action_on_lattice(Rng& rng)
{
    Result res;
    const std::vector<IntersectionLattice> lats{build_lattice(family_mkr(1, 2, 1), MultiIndex{4}, 3),
                                                build_lattice(family_mkr(2, 1, 1), MultiIndex{2, 2}, 4)};
    for (int t = 0; t < 120; ++t)
    {
        const auto& lat = lats[static_cast<std::size_t>(t) % lats.size()];
        const PermTuple g = random_perm(rng, lat.level());
        const PermTuple h = random_perm(rng, lat.level());
        const auto pg = act(g, lat);
        const auto ph = act(h, lat);
        const auto pgh = act(compose(g, h), lat);
        bool ok = true;
        for (std::size_t a = 0; a < lat.size() && ok; ++a)
        {
            ok = lat.codim(a) == lat.codim(pg[a]) && pgh[a] == pg[ph[a]];
            for (std::size_t b = 0; b < lat.size() && ok; ++b)
                ok = lat.less(a, b) == lat.less(pg[a], pg[b]);
        }
        res.check(ok, "group action does not respect the lattice structure");
    }
    return res;
}

std::vector<MultiIndex> up_to(const MultiIndex& top)
{
    return levels_between(MultiIndex::zeros(top.size()), top);
}

Result normalize_idempotent(Rng& rng)
{
    Result res;
    for (int t = 0; t < 100; ++t)
    {
        const ArrangementSpec spec = random_signed_spec(rng);
        const ArrangementSpec once = normalize(spec);
        const ArrangementSpec twice = normalize(once);
        bool primitive = true;
        for (const auto& g : once.generators)
            primitive = primitive && is_primitive(once, g.degree, g.subspace);
        const MultiIndex top = degree_add(once.max_degree(), MultiIndex(std::vector<int>(once.max_degree().size(), 1)));
        const bool normal = verify_normal(once, up_to(top)).normal;
        res.check(once == twice && primitive && normal, "normalization of " + spec.serialize());
    }
    return res;
}

Result normalize_limit(Rng& rng)
{
    Result res;
    for (int t = 0; t < 100; ++t)
    {
        const ArrangementSpec spec = random_signed_spec(rng);
        const ArrangementSpec normal = normalize(spec);
        const MultiIndex base = spec.max_degree();
        bool same = true;
        for (const auto& n : {base, degree_add(base, MultiIndex(std::vector<int>(base.size(), 1)))})
        {
            const auto a = build_lattice(spec, n, 2);
            const auto b = build_lattice(normal, n, 2);
            same = same && a.elements() == b.elements();
        }
        res.check(same, "normalized lattice differs above the generator degree for " + spec.serialize());
    }
    return res;
}

Result orbit_blocks(Rng& rng)
{
    Result res;
    for (int t = 0; t < 100; ++t)
    {
        const ArrangementSpec spec = normalize(random_signed_spec(rng));
        const auto classes = primitive_classes(spec, 2);
        const MultiIndex level = random_level_above(rng, spec.max_degree(), spec.m == 1 ? 2 : 1);
        const auto lat = build_lattice(spec, level, 2);
        const auto dec = orbit_decomposition(lat, classes);
        bool even = true;
        for (std::size_t z = 0; z < classes.size(); ++z)
        {
            std::map<Injection, int> per_binomial;
            for (std::size_t k = 0; k < lat.size(); ++k)
            {
                if (dec.class_of[k] == z)
                    ++per_binomial[dec.binomial_class_of[k]];
            }
            std::set<int> sizes;
            for (const auto& [f, count] : per_binomial)
                sizes.insert(count);
            const std::uint64_t expected = leq(classes[z].degree, level) ? binomial_set_size(classes[z].degree, level) : 0;
            even = even && per_binomial.size() == expected && sizes.size() <= 1;
        }
        res.check(even, "uneven orbit blocks for " + spec.serialize() + " at " + to_string(level));
    }
    return res;
}

// ------------------------------------------------------------------ homology

RankedPoset random_poset(Rng& rng)
{
    const int n = uniform(rng, 0, 8);
    std::vector<Index> ranks;
    for (int i = 0; i < n; ++i)
        ranks.push_back(uniform(rng, 1, 4));
    std::sort(ranks.begin(), ranks.end());
    std::vector<char> rel(static_cast<std::size_t>(n * n), 0);
    for (int a = 0; a < n; ++a)
    {
        for (int b = a + 1; b < n; ++b)
        {
            if (ranks[static_cast<std::size_t>(a)] < ranks[static_cast<std::size_t>(b)] && uniform(rng, 0, 2) > 0)
                rel[static_cast<std::size_t>(a * n + b)] = 1;
        }
    }
    for (int k = 0; k < n; ++k)   // transitive closure
    {
        for (int a = 0; a < n; ++a)
        {
            for (int b = 0; b < n; ++b)
            {
                if (rel[static_cast<std::size_t>(a * n + k)] && rel[static_cast<std::size_t>(k * n + b)])
                    rel[static_cast<std::size_t>(a * n + b)] = 1;
            }
        }
    }
    return RankedPoset(std::move(ranks), std::move(rel));
}

Result boundary_squares_to_zero(Rng& rng)
{
    Result res;
    for (int t = 0; t < 150; ++t)
    {
        const OrderComplex k = order_complex(random_poset(rng));
        const ChainComplex cc(k);
        bool ok = true;
        for (int p = 0; p <= k.dimension() + 1; ++p)
        {
            const RationalMatrix prod = cc.boundary(p) * cc.boundary(p + 1);
            ok = ok && prod.isZero();
        }
        res.check(ok, "boundary of a boundary is nonzero");
    }
    return res;
}

Result euler_consistency(Rng& rng)
{
    Result res;
    for (int t = 0; t < 150; ++t)
    {
        const OrderComplex k = order_complex(random_poset(rng));
        long chains = 0, betti = 0;
        for (int d = -1; d <= k.dimension(); ++d)
        {
            const long sign = (d % 2 == 0) ? 1 : -1;
            chains += sign * static_cast<long>(k.count(d));
            betti += sign * reduced_betti(k, d);
        }
        res.check(chains == betti, "Euler characteristic mismatch");
    }
    return res;
}

Result trace_at_identity(Rng& rng)
{
    Result res;
    for (int t = 0; t < 100; ++t)
    {
        const ArrangementSpec spec = random_signed_spec(rng);
        const MultiIndex level = random_level_above(rng, spec.max_degree(), 1);
        const int i = uniform(rng, 1, std::min<int>(4, static_cast<int>(ambient_dim(level, spec.r))));
        const auto lat = build_lattice(spec, level, i);
        const Rational tr = equivariant_trace(lat, PermTuple::identity(level), i);
        res.check(tr == Rational(gm_betti(lat, i).total), "identity trace differs from Betti number");
    }
    return res;
}

Result trace_class_function(Rng& rng)
{
    Result res;
    for (int n : {4, 5})
    {
        const auto lat = build_lattice(family_mkr(1, 2, 1), MultiIndex{n}, n - 1);
        for (int i = 1; i <= n - 1; ++i)
        {
            std::vector<PermTuple> gs;
            const int pairs = n == 4 ? 17 : 14;
            for (int t = 0; t < pairs; ++t)
            {
                const PermTuple g = random_perm(rng, MultiIndex{n});
                const PermTuple h = random_perm(rng, MultiIndex{n});
                gs.push_back(g);
                gs.push_back(compose(compose(h, g), h.inverse()));
            }
            const auto tr = equivariant_traces(lat, gs, i);
            for (std::size_t t = 0; t < gs.size(); t += 2)
                res.check(tr[t] == tr[t + 1], "trace is not a class function");
        }
    }
    return res;
}

Result contribution_bounds(Rng& rng)
{
    Result res;
    for (int t = 0; t < 100; ++t)
    {
        const ArrangementSpec spec = random_signed_spec(rng);
        const MultiIndex level = random_level_above(rng, spec.max_degree(), 1);
        const Index full = ambient_dim(level, spec.r);
        const auto lat = build_lattice(spec, level, full);
        const int i = uniform(rng, 1, static_cast<int>(full));
        const GMReport loose = gm_betti(lat, i, false);
        bool inside = true;
        for (const auto& contrib : loose.contributions)
            inside = inside && 2 * contrib.codim >= i && contrib.codim <= i;
        res.check(inside && loose.total == gm_betti(lat, i).total, "contribution outside the codim window");
    }
    return res;
}

// ------------------------------------------------------------------ characters

Result fit_reproduces(Rng& rng)
{
    Result res;
    for (int t = 0; t < 100; ++t)
    {
        const bool two = t % 2 == 1;
        const MultiIndex bound = two ? MultiIndex{1, 1} : MultiIndex{uniform(rng, 1, 3)};
        const CharacterPolynomial p = random_polynomial(rng, bound);
        std::vector<ClassFunction> samples;
        const MultiIndex top = two ? MultiIndex{3, 3} : MultiIndex{bound[0] + 3};
        for (const auto& n : levels_between(bound, top))
            samples.push_back(class_function(p, n));
        const CharacterPolynomial q = fit_character_polynomial(samples, bound);
        bool ok = q == p;
        for (const auto& s : samples)
            ok = ok && class_function(q, s.level()) == s;
        res.check(ok, "fit did not reproduce " + to_string(p));
    }
    return res;
}

Result mn_orthogonality(Rng&)
{
    Result res;
    for (int n = 1; n <= 6; ++n)
    {
        const auto parts = partitions_of(n);
        for (const auto& la : parts)
        {
            for (const auto& mu : parts)
            {
                const ClassFunction a(MultiIndex{n}, [&](const ConjClass& c) {
                    return Rational(irreducible_character(la, c.parts[0]));
                });
                const ClassFunction b(MultiIndex{n}, [&](const ConjClass& c) {
                    return Rational(irreducible_character(mu, c.parts[0]));
                });
                res.check(inner_product(a, b) == (la == mu ? 1 : 0), "irreducible characters are not orthonormal");
            }
        }
    }
    return res;
}

Result engine_characters_integral(Rng& rng)
{
    Result res;
    for (int t = 0; t < 100; ++t)
    {
        const ArrangementSpec spec = random_signed_spec(rng);
        const MultiIndex level = random_level_above(rng, spec.max_degree(), 1);
        const int i = uniform(rng, 0, 3);
        const auto lat = build_lattice(spec, level, std::max(i, 1));
        const ClassFunction chi = character_of_cohomology(lat, i);
        bool ok = true;
        try
        {
            const Rational inv = invariants_dim(chi);
            ok = inv >= 0;
        }
        catch (const std::domain_error&)
        {
            ok = false;
        }
        for (const auto& [lambda, mult] : irreducible_multiplicities(chi))
            ok = ok && is_integer(mult) && mult >= 0;
        res.check(ok, "non-integral multiplicity for " + spec.serialize() + " at " + to_string(level));
    }
    return res;
}

Result inner_product_stabilizes(Rng& rng)
{
    Result res;
    for (int t = 0; t < 100; ++t)
    {
        const CharacterPolynomial p = random_polynomial(rng, MultiIndex{uniform(rng, 0, 3)});
        const CharacterPolynomial q = random_polynomial(rng, MultiIndex{uniform(rng, 0, 3)});
        const int onset = p.multidegree()[0] + q.multidegree()[0];
        std::set<Rational> seen;
        for (int n = onset; n <= 8; ++n)
            seen.insert(inner_product(class_function(p, MultiIndex{n}), class_function(q, MultiIndex{n})));
        res.check(seen.size() <= 1, "inner product of " + to_string(p) + " and " + to_string(q) + " not stable");
    }
    return res;
}

Result free_decomposition(Rng& rng)
{
    Result res;
    const ArrangementSpec braid = family_mkr(1, 2, 1);
    for (int i = 1; i <= 3; ++i)
    {
        std::vector<MultiIndex> levels;
        for (int n = 1; n <= 6; ++n)
            levels.push_back(MultiIndex{n});
        res.check(verify_free_decomposition(braid, i, levels).ok, "braid H^" + std::to_string(i) + " not free");
    }
    const ArrangementSpec rm = family_mkr(2, 1, 1);
    for (int i = 1; i <= 2; ++i)
        res.check(verify_free_decomposition(rm, i, levels_between(MultiIndex{0, 0}, MultiIndex{3, 3})).ok,
                  "rational-maps H^" + std::to_string(i) + " not free");
    for (int t = 0; t < 100; ++t)
    {
        const ArrangementSpec spec = normalize(random_signed_spec(rng));
        const int i = uniform(rng, 1, 2);
        const MultiIndex top = random_level_above(rng, spec.max_degree(), 1);
        const FreenessReport r = verify_free_decomposition(spec, i, up_to(top));
        res.check(r.ok, "H^" + std::to_string(i) + " of " + spec.serialize() + " not free: " + r.mismatch);
    }
    return res;
}

// ------------------------------------------------------------------ cli

std::map<std::string, std::string> read_tree(const std::filesystem::path& dir)
{
    std::map<std::string, std::string> out;
    for (const auto& e : std::filesystem::recursive_directory_iterator(dir))
    {
        if (!e.is_regular_file())
            continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        out[std::filesystem::relative(e.path(), dir).string()] = buf.str();
    }
    return out;
}

std::filesystem::path scratch_dir(const std::string& tag)
{
    const auto dir = std::filesystem::temp_directory_path()
                     / ("arrstab-props-" + tag + "-" + std::to_string(std::random_device{}()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string custom_config(const ArrangementSpec& spec, const MultiIndex& lo, const MultiIndex& hi, int imax,
                          const std::string& extra)
{
    auto list = [](const MultiIndex& n) {
        std::string s = "[";
        for (std::size_t j = 0; j < n.size(); ++j)
            s += (j ? "," : "") + std::to_string(n[j]);
        return s + "]";
    };
    std::string gens;
    for (const auto& g : spec.generators)
    {
        std::string rows;
        const auto& c = g.subspace.constraints();
        for (Index i = 0; i < c.rows(); ++i)
        {
            rows += i ? ",[" : "[";
            for (Index j = 0; j < c.cols(); ++j)
                rows += (j ? ",\"" : "\"") + format_scalar(c(i, j)) + "\"";
            rows += "]";
        }
        gens += (gens.empty() ? "" : ",") + std::string("{\"degree\":") + list(g.degree) + ",\"constraints\":[" + rows + "]}";
    }
    return "{\"family\":{\"name\":\"custom\",\"m\":" + std::to_string(spec.m) + ",\"r\":" + std::to_string(spec.r)
           + ",\"generators\":[" + gens + "]},\"levels\":{\"min\":" + list(lo) + ",\"max\":" + list(hi)
           + "},\"i_max\":" + std::to_string(imax) + extra + "}";
}

Result warm_cache_identical(Rng& rng)
{
    Result res;
    const auto dir = scratch_dir("cache");
    for (int t = 0; t < 100; ++t)
    {
        const ArrangementSpec spec = random_signed_spec(rng);
        const MultiIndex lo = spec.max_degree();
        const MultiIndex hi = random_level_above(rng, lo, 1);
        const JobConfig cfg = parse_config(custom_config(spec, lo, hi, uniform(rng, 1, 2),
                                                         R"(,"outputs":["betti","characters","stability","normalize"])"));
        const auto case_dir = dir / std::to_string(t);
        std::ostringstream out, err;
        const RunOptions cold{(case_dir / "cache").string(), (case_dir / "cold").string(), 1, false};
        const RunOptions warm{(case_dir / "cache").string(), (case_dir / "warm").string(), 1, false};
        const int a = run(cfg, cold, out, err);
        const int b = run(cfg, warm, out, err);
        bool same = a == b && read_tree(case_dir / "cold") == read_tree(case_dir / "warm");
        if (t % 10 == 0)
        {
            // A corrupted cache entry is detected and rebuilt.
            for (const auto& e : std::filesystem::directory_iterator(case_dir / "cache"))
                std::ofstream(e.path(), std::ios::app) << "tampered\n";
            const RunOptions again{(case_dir / "cache").string(), (case_dir / "again").string(), 1, false};
            same = same && run(cfg, again, out, err) == a && read_tree(case_dir / "cold") == read_tree(case_dir / "again");
        }
        res.check(same, "rerun differs for " + spec.serialize());
        std::filesystem::remove_all(case_dir);
    }
    std::filesystem::remove_all(dir);
    return res;
}

Result exit_status_contract(Rng& rng)
{
    Result res;
    const auto dir = scratch_dir("exit");
    std::set<int> seen;
    for (int t = 0; t < 100; ++t)
    {
        const ArrangementSpec spec = random_signed_spec(rng);
        const MultiIndex hi = random_level_above(rng, spec.max_degree(), 2);
        MultiIndex bound = random_level(rng, spec.generators[0].degree.size(), 0, 2);
        std::string bound_json = "[";
        for (std::size_t j = 0; j < bound.size(); ++j)
            bound_json += (j ? "," : "") + std::to_string(bound[j]);
        bound_json += "]";
        const std::string extra = R"(,"outputs":["fit","stability"],"fit":{"degrees":[1],"bound":)" + bound_json + "}";
        const auto out_dir = dir / std::to_string(t);
        std::ostringstream out, err;
        const int code = run(parse_config(custom_config(spec, MultiIndex::zeros(bound.size()), hi, 1, extra)),
                             RunOptions{(dir / "cache").string(), out_dir.string(), 1, false}, out, err);
        std::ifstream in(out_dir / "report.json");
        std::ostringstream buf;
        buf << in.rdbuf();
        const bool falsified = buf.str().find("\"falsifications\": []") == std::string::npos;
        const bool errored = buf.str().find("\"errors\": []") == std::string::npos;
        const int expected = falsified ? 2 : (errored ? 1 : 0);
        res.check(code == expected, "exit status " + std::to_string(code) + " for " + spec.serialize());
        seen.insert(code);
    }
    res.check(seen == std::set<int>{0, 1, 2}, "random configs did not reach every exit status");
    bool rejected = false;
    try
    {
        parse_config(R"({"family": {"name": "mkr", "m": 1, "k": 0, "r": 1}, "levels": {"min": [2], "max": [3]},
                         "i_max": 1})");
    }
    catch (const ConfigError&)
    {
        rejected = true;
    }
    res.check(rejected, "k = 0 accepted");
    std::filesystem::remove_all(dir);
    return res;
}

}  // namespace

const std::vector<Property>& all_properties()
{
    static const std::vector<Property> props{
        {"exactlin", "rref is idempotent and preserves the row space", rref_idempotent},
        {"exactlin", "intersection is commutative, associative, idempotent", intersect_laws},
        {"exactlin", "mutual containment implies identical keys", contains_antisymmetric},
        {"exactlin", "direct image inverts preimage above the kernel", image_roundtrip},
        {"exactlin", "surjective preimage keeps codimension", preimage_codim},
        {"fim", "injection count factors through binomial sets", injection_counts},
        {"fim", "class sizes sum to the group order", class_sizes},
        {"fim", "induced maps are contravariant", contravariance},
        {"fim", "block permutation action is a homomorphism", action_homomorphism},
        {"arrangement", "braid lattice sizes are Bell numbers minus one", bell_census},
        {"arrangement", "lattices are saturated under intersection", saturation},
        {"arrangement", "group action preserves order, codim, composition", action_on_lattice},
        {"arrangement", "normalize is idempotent with normal primitive output", normalize_idempotent},
        {"arrangement", "normalized lattices agree above the generator degrees", normalize_limit},
        {"arrangement", "orbit blocks split evenly over binomial classes", orbit_blocks},
        {"homology", "boundary squares to zero", boundary_squares_to_zero},
        {"homology", "Euler characteristic of chains equals that of homology", euler_consistency},
        {"homology", "identity trace equals the Betti number", trace_at_identity},
        {"homology", "traces are class functions", trace_class_function},
        {"homology", "contributions vanish outside the codim window", contribution_bounds},
        {"characters", "fitted polynomials reproduce their samples", fit_reproduces},
        {"characters", "irreducible characters are orthonormal", mn_orthogonality},
        {"characters", "engine characters have integral multiplicities", engine_characters_integral},
        {"characters", "inner products stabilize past the degree sum", inner_product_stabilizes},
        {"characters", "cohomology decomposes into induced modules", free_decomposition},
        {"cli", "warm-cache reruns are byte-identical", warm_cache_identical},
        {"cli", "exit status 2 exactly when a falsification is reported", exit_status_contract},
    };
    return props;
}

}  // namespace props
