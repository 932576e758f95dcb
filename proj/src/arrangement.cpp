#include "arrstab/arrangement.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace arrstab {

namespace {

// Points of factor j carry coordinates [coordinate(n,r,j,i,0), +r).
std::vector<std::vector<bool>> support_mask(const Subspace& x, const MultiIndex& n, int r)
{
    std::vector<std::vector<bool>> used(n.size());
    const auto& c = x.constraints();
    for (std::size_t j = 0; j < n.size(); ++j)
    {
        used[j].assign(static_cast<std::size_t>(n[j]), false);
        for (int i = 0; i < n[j]; ++i)
        {
            for (int t = 0; t < r && !used[j][static_cast<std::size_t>(i)]; ++t)
            {
                const Index col = coordinate(n, r, j, i, t);
                for (Index row = 0; row < c.rows(); ++row)
                {
                    if (c(row, col) != 0)
                    {
                        used[j][static_cast<std::size_t>(i)] = true;
                        break;
                    }
                }
            }
        }
    }
    return used;
}

std::vector<PermTuple> group_generators(const MultiIndex& n)
{
    std::vector<PermTuple> gens;
    const PermTuple id = PermTuple::identity(n);
    for (std::size_t j = 0; j < n.size(); ++j)
    {
        if (n[j] < 2)
            continue;
        auto swap = id.perms();
        std::swap(swap[j][0], swap[j][1]);
        gens.emplace_back(std::move(swap));
        if (n[j] > 2)
        {
            auto cycle = id.perms();
            for (int i = 0; i < n[j]; ++i)
                cycle[j][static_cast<std::size_t>(i)] = (i + 1) % n[j];
            gens.emplace_back(std::move(cycle));
        }
    }
    return gens;
}

bool all_points(const std::vector<std::vector<bool>>& mask)
{
    for (const auto& factor : mask)
    {
        if (std::find(factor.begin(), factor.end(), false) != factor.end())
            return false;
    }
    return true;
}

}  // namespace

void ArrangementSpec::validate() const
{
    if (m < 1)
        throw std::invalid_argument("arrangement needs m >= 1");
    if (r < 1)
        throw std::invalid_argument("arrangement needs r >= 1");
    for (std::size_t a = 0; a < generators.size(); ++a)
    {
        const auto& g = generators[a];
        const std::string where = "generator " + std::to_string(a);
        if (g.degree.size() != static_cast<std::size_t>(m))
            throw std::invalid_argument(where + ": degree has " + std::to_string(g.degree.size())
                                        + " entries, expected " + std::to_string(m));
        if (g.subspace.ambient_dim() != ambient_dim(g.degree, r))
            throw std::invalid_argument(where + ": subspace lives in dimension "
                                        + std::to_string(g.subspace.ambient_dim()) + ", expected "
                                        + std::to_string(ambient_dim(g.degree, r)));
        if (g.subspace.codim() < 1)
            throw std::invalid_argument(where + ": generator must have positive codimension");
    }
}

std::string ArrangementSpec::serialize() const
{
    std::string s = "m=" + std::to_string(m) + ";r=" + std::to_string(r);
    for (const auto& g : generators)
        s += "\n" + to_string(g.degree) + "@" + g.subspace.key();
    return s;
}

MultiIndex ArrangementSpec::max_degree() const
{
    MultiIndex out = MultiIndex::zeros(static_cast<std::size_t>(m));
    for (const auto& g : generators)
        out = componentwise_max(out, g.degree);
    return out;
}

Subspace diagonal(const MultiIndex& degree, int r)
{
    const Index dim = ambient_dim(degree, r);
    const Index points = degree.total();
    RationalMatrix rows = RationalMatrix::Zero(std::max<Index>(points - 1, 0) * r, dim);
    for (Index p = 1; p < points; ++p)
    {
        for (int t = 0; t < r; ++t)
        {
            rows((p - 1) * r + t, t) = 1;
            rows((p - 1) * r + t, p * r + t) = -1;
        }
    }
    return Subspace::from_constraints(dim, rows);
}

ArrangementSpec family_mkr(int m, int k, int r)
{
    if (m < 1 || k < 1 || r < 1)
        throw std::invalid_argument("family_mkr needs m, k, r >= 1");
    ArrangementSpec spec;
    spec.m = m;
    spec.r = r;
    const MultiIndex degree(std::vector<int>(static_cast<std::size_t>(m), k));
    spec.generators.push_back({degree, diagonal(degree, r)});
    return spec;
}

RankedPoset::RankedPoset(std::vector<Index> ranks, std::vector<char> relation)
    : ranks_(std::move(ranks)), rel_(std::move(relation))
{
    if (rel_.size() != ranks_.size() * ranks_.size())
        throw std::invalid_argument("relation table has the wrong size");
}

std::pair<RankedPoset, std::vector<std::size_t>> RankedPoset::below(std::size_t x) const
{
    std::vector<std::size_t> ids;
    for (std::size_t a = 0; a < size(); ++a)
    {
        if (less(a, x))
            ids.push_back(a);
    }
    std::vector<Index> ranks;
    std::vector<char> rel(ids.size() * ids.size(), 0);
    for (std::size_t a = 0; a < ids.size(); ++a)
    {
        ranks.push_back(rank(ids[a]));
        for (std::size_t b = 0; b < ids.size(); ++b)
            rel[a * ids.size() + b] = less(ids[a], ids[b]) ? 1 : 0;
    }
    return {RankedPoset(std::move(ranks), std::move(rel)), std::move(ids)};
}

IntersectionLattice::IntersectionLattice(MultiIndex level, int r, Index max_codim,
                                         std::vector<Subspace> elements,
                                         std::vector<std::vector<Witness>> provenance)
    : level_(std::move(level)), r_(r), max_codim_(max_codim)
{
    if (provenance.size() != elements.size())
        provenance.resize(elements.size());
    std::vector<std::size_t> order(elements.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return canonical_less(elements[a], elements[b]);
    });
    for (std::size_t k : order)
    {
        if (!elements_.empty() && elements_.back() == elements[k])
            continue;
        index_.emplace(elements[k].key(), elements_.size());
        elements_.push_back(std::move(elements[k]));
        provenance_.push_back(std::move(provenance[k]));
    }
    const std::size_t n = elements_.size();
    rel_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
    {
        for (std::size_t b = a + 1; b < n; ++b)
        {
            if (elements_[a].codim() < elements_[b].codim() && contains(elements_[a], elements_[b]))
                rel_[a * n + b] = 1;
        }
    }
}

std::optional<std::size_t> IntersectionLattice::find(const Subspace& x) const
{
    const auto it = index_.find(x.key());
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

RankedPoset IntersectionLattice::poset() const
{
    std::vector<Index> ranks;
    for (const auto& e : elements_)
        ranks.push_back(e.codim());
    return RankedPoset(std::move(ranks), rel_);
}

IntersectionLattice build_lattice(const ArrangementSpec& spec, const MultiIndex& n, Index max_codim)
{
    if (max_codim < 1)
        throw std::invalid_argument("build_lattice needs max_codim >= 1");
    spec.validate();
    if (n.size() != static_cast<std::size_t>(spec.m))
        throw std::invalid_argument("level " + to_string(n) + " does not have m entries");

    std::vector<Subspace> elements;
    std::vector<std::vector<Witness>> provenance;
    std::unordered_map<std::string, std::size_t> seen;

    auto insert = [&](Subspace x, std::vector<Witness> why) {
        if (seen.count(x.key()) != 0)
            return false;
        seen.emplace(x.key(), elements.size());
        elements.push_back(std::move(x));
        provenance.push_back(std::move(why));
        return true;
    };

    // Every preimage of a generator, then closure under intersection with those seeds.
    std::vector<std::size_t> seeds;
    for (std::size_t a = 0; a < spec.generators.size(); ++a)
    {
        const auto& gen = spec.generators[a];
        if (gen.subspace.codim() > max_codim || !leq(gen.degree, n))
            continue;
        for (auto& f : enumerate_injections(gen.degree, n))
        {
            Subspace x = preimage(induced_linear_map(f, spec.r), gen.subspace);
            if (insert(std::move(x), {Witness{a, f}}))
                seeds.push_back(elements.size() - 1);
        }
    }
    for (std::size_t k = 0; k < elements.size(); ++k)
    {
        for (std::size_t s : seeds)
        {
            Subspace y = intersect(elements[k], elements[s]);
            if (y.codim() > max_codim || seen.count(y.key()) != 0)
                continue;
            std::vector<Witness> why = provenance[k];
            why.insert(why.end(), provenance[s].begin(), provenance[s].end());
            insert(std::move(y), std::move(why));
        }
    }
    return IntersectionLattice(n, spec.r, max_codim, std::move(elements), std::move(provenance));
}

RankedPoset lower_interval(const IntersectionLattice& lat, std::size_t x, std::vector<std::size_t>* ids)
{
    if (x >= lat.size())
        throw std::out_of_range("lower_interval: element index out of range");
    std::vector<std::size_t> below;
    for (std::size_t a = 0; a < x; ++a)
    {
        if (lat.less(a, x))
            below.push_back(a);
    }
    std::vector<Index> ranks;
    std::vector<char> rel(below.size() * below.size(), 0);
    for (std::size_t a = 0; a < below.size(); ++a)
    {
        ranks.push_back(lat.codim(below[a]));
        for (std::size_t b = a + 1; b < below.size(); ++b)
            rel[a * below.size() + b] = lat.less(below[a], below[b]) ? 1 : 0;
    }
    if (ids != nullptr)
        *ids = below;
    return RankedPoset(std::move(ranks), std::move(rel));
}

Subspace act(const PermTuple& g, const Subspace& x, int r)
{
    // preimage under g^{-1} is the image under g, and avoids a span computation.
    return preimage(act_on_vector(g.inverse(), r), x);
}

std::vector<std::size_t> act(const PermTuple& g, const IntersectionLattice& lat)
{
    if (g.level() != lat.level())
        throw std::invalid_argument("act: permutation level differs from lattice level");
    const LinearMap inv = act_on_vector(g.inverse(), lat.r());
    std::vector<std::size_t> perm(lat.size());
    for (std::size_t k = 0; k < lat.size(); ++k)
    {
        const auto image = lat.find(preimage(inv, lat.element(k)));
        if (!image)
            throw std::logic_error("act: image of element " + std::to_string(k) + " is not in the lattice");
        perm[k] = *image;
    }
    return perm;
}

Injection support(const Subspace& x, const MultiIndex& n, int r)
{
    const auto mask = support_mask(x, n, r);
    Injection f{n, {}};
    for (const auto& factor : mask)
    {
        std::vector<int> img;
        for (std::size_t i = 0; i < factor.size(); ++i)
        {
            if (factor[i])
                img.push_back(static_cast<int>(i));
        }
        f.images.push_back(std::move(img));
    }
    return f;
}

bool is_primitive(const ArrangementSpec& spec, const MultiIndex& degree, const Subspace& x)
{
    if (x.ambient_dim() != ambient_dim(degree, spec.r))
        throw std::invalid_argument("is_primitive: subspace does not live at the given degree");
    for (const auto& c : levels_between(MultiIndex::zeros(degree.size()), degree))
    {
        if (c == degree)
            continue;
        // ker V(f) depends only on the image of f, so one injection per binomial class suffices.
        for (const auto& f : binomial_representatives(c, degree))
        {
            if (contains(x, kernel_of_induced_map(f, spec.r)))
                return false;
        }
    }
    return true;
}

NormalityReport verify_normal(const ArrangementSpec& spec, const std::vector<MultiIndex>& degrees)
{
    spec.validate();
    NormalityReport report;
    std::map<MultiIndex, IntersectionLattice> lattices;
    auto lattice_at = [&](const MultiIndex& d) -> const IntersectionLattice& {
        auto it = lattices.find(d);
        if (it == lattices.end())
        {
            const Index full = std::max<Index>(ambient_dim(d, spec.r), 1);
            it = lattices.emplace(d, build_lattice(spec, d, full)).first;
        }
        return it->second;
    };

    for (const auto& d : degrees)
    {
        for (const auto& c : degrees)
        {
            if (c == d || !leq(c, d))
                continue;
            const auto& upper = lattice_at(d);
            const auto& lower = lattice_at(c);
            for (const auto& f : binomial_representatives(c, d))
            {
                const LinearMap vf = induced_linear_map(f, spec.r);
                const Subspace ker = kernel_of_induced_map(f, spec.r);
                for (std::size_t k = 0; k < upper.size(); ++k)
                {
                    const Subspace& x = upper.element(k);
                    if (!contains(x, ker))
                        continue;
                    ++report.checks;
                    const Subspace z = direct_image(vf, x);
                    if (!lower.find(z))
                    {
                        report.normal = false;
                        report.violation = "element " + x.key() + " at " + to_string(d)
                                           + " contains ker V(" + to_string(f) + ") but its image "
                                           + z.key() + " is not in the lattice at " + to_string(c);
                        return report;
                    }
                }
            }
        }
    }
    return report;
}

ArrangementSpec normalize(const ArrangementSpec& spec)
{
    spec.validate();
    ArrangementSpec out;
    out.m = spec.m;
    out.r = spec.r;
    for (const auto& gen : spec.generators)
    {
        auto candidates = levels_between(MultiIndex::zeros(gen.degree.size()), gen.degree);
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const MultiIndex& a, const MultiIndex& b) { return a.total() < b.total(); });
        bool placed = false;
        for (const auto& e : candidates)
        {
            for (const auto& f : binomial_representatives(e, gen.degree))
            {
                if (!contains(gen.subspace, kernel_of_induced_map(f, spec.r)))
                    continue;
                Generator g{e, direct_image(induced_linear_map(f, spec.r), gen.subspace)};
                if (std::find(out.generators.begin(), out.generators.end(), g) == out.generators.end())
                    out.generators.push_back(std::move(g));
                placed = true;
                break;
            }
            if (placed)
                break;
        }
    }
    return out;
}

std::vector<Subspace> orbit(const Subspace& x, const MultiIndex& degree, int r)
{
    std::vector<LinearMap> moves;
    for (const auto& g : group_generators(degree))
        moves.push_back(act_on_vector(g.inverse(), r));
    std::vector<Subspace> out{x};
    std::unordered_set<std::string> seen{x.key()};
    for (std::size_t k = 0; k < out.size(); ++k)
    {
        for (const auto& mv : moves)
        {
            Subspace y = preimage(mv, out[k]);
            if (seen.insert(y.key()).second)
                out.push_back(std::move(y));
        }
    }
    return out;
}

std::vector<PrimitiveClass> primitive_classes(const ArrangementSpec& spec, Index max_codim)
{
    spec.validate();
    const MultiIndex cmax = spec.max_degree();
    const MultiIndex zero = MultiIndex::zeros(cmax.size());
    const NormalityReport normal = verify_normal(spec, levels_between(zero, cmax));
    if (!normal.normal)
        throw std::invalid_argument("primitive_classes needs a normal arrangement: " + normal.violation);

    std::vector<PrimitiveClass> out;
    const MultiIndex bound = degree_times(static_cast<int>(max_codim), cmax);
    for (const auto& e : levels_between(zero, bound))
    {
        if (e.total() == 0)
            continue;
        const IntersectionLattice lat = build_lattice(spec, e, max_codim);
        std::unordered_set<std::string> covered;
        for (const auto& x : lat.elements())
        {
            if (covered.count(x.key()) != 0 || !all_points(support_mask(x, e, spec.r)))
                continue;
            const auto members = orbit(x, e, spec.r);
            for (const auto& y : members)
                covered.insert(y.key());
            out.push_back({e, x, group_order(e) / members.size()});
        }
    }
    return out;
}

OrbitDecomposition orbit_decomposition(const IntersectionLattice& lat, const std::vector<PrimitiveClass>& classes)
{
    // Keys alone are ambiguous across degrees of equal total, e.g. (2,1) and (1,2).
    std::unordered_map<std::string, std::size_t> owner;
    auto tag = [](const MultiIndex& d, const Subspace& y) { return to_string(d) + "@" + y.key(); };
    for (std::size_t c = 0; c < classes.size(); ++c)
    {
        for (const auto& y : orbit(classes[c].subspace, classes[c].degree, lat.r()))
        {
            const auto [it, fresh] = owner.emplace(tag(classes[c].degree, y), c);
            if (!fresh && it->second != c)
                throw std::runtime_error("orbit_decomposition: primitive classes " + std::to_string(it->second)
                                         + " and " + std::to_string(c) + " overlap");
        }
    }

    OrbitDecomposition out;
    for (std::size_t k = 0; k < lat.size(); ++k)
    {
        Injection f = support(lat.element(k), lat.level(), lat.r());
        const Subspace z = direct_image(induced_linear_map(f, lat.r()), lat.element(k));
        const auto it = owner.find(tag(f.source(), z));
        if (it == owner.end())
            throw std::runtime_error("orbit_decomposition: element " + std::to_string(k) + " ("
                                     + lat.element(k).key() + ") matches no primitive class");
        out.class_of.push_back(it->second);
        out.binomial_class_of.push_back(std::move(f));
    }
    return out;
}

StabilityCheck verify_downward_stability(const ArrangementSpec& spec, const MultiIndex& c, const MultiIndex& d,
                                         Index max_codim)
{
    if (!leq(c, d))
        throw std::invalid_argument("verify_downward_stability needs c <= d");
    StabilityCheck out;
    const IntersectionLattice lc = build_lattice(spec, c, max_codim);
    const IntersectionLattice ld = build_lattice(spec, d, max_codim);

    for (const auto& f : binomial_representatives(c, d))
    {
        const LinearMap vf = induced_linear_map(f, spec.r);
        std::vector<std::size_t> image(lc.size());
        for (std::size_t k = 0; k < lc.size(); ++k)
        {
            const auto y = ld.find(preimage(vf, lc.element(k)));
            if (!y)
            {
                out.isomorphic = false;
                out.violation = "preimage of element " + std::to_string(k) + " under " + to_string(f)
                                + " is missing at " + to_string(d);
                return out;
            }
            image[k] = *y;
        }
        for (std::size_t x = 0; x < lc.size(); ++x)
        {
            ++out.checks;
            std::vector<std::size_t> src, dst;
            lower_interval(lc, x, &src);
            lower_interval(ld, image[x], &dst);
            std::vector<std::size_t> mapped;
            for (std::size_t a : src)
                mapped.push_back(image[a]);
            std::vector<std::size_t> sorted = mapped;
            std::sort(sorted.begin(), sorted.end());
            bool ok = sorted == dst;
            for (std::size_t a = 0; ok && a < src.size(); ++a)
            {
                ok = lc.codim(src[a]) == ld.codim(mapped[a]);
                for (std::size_t b = 0; ok && b < src.size(); ++b)
                    ok = lc.less(src[a], src[b]) == ld.less(mapped[a], mapped[b]);
            }
            if (!ok)
            {
                out.isomorphic = false;
                out.violation = "lower interval of element " + std::to_string(x) + " at " + to_string(c)
                                + " is not isomorphic to its image under " + to_string(f);
                return out;
            }
        }
    }
    return out;
}

}  // namespace arrstab
