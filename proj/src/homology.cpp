#include "arrstab/homology.hpp"

#include <algorithm>
#include <stdexcept>

#include "arrstab/parallel.hpp"

namespace arrstab {

std::size_t ChainHash::operator()(const Chain& c) const noexcept
{
    std::size_t h = c.size();
    for (std::size_t v : c)
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

OrderComplex::OrderComplex(const RankedPoset& p) : vertices_(p.size())
{
    chains_.push_back({Chain{}});
    Chain cur;
    auto extend = [&](auto&& self, std::size_t top) -> void {
        const std::size_t dim = cur.size();   // index into chains_ for a chain of cur.size() vertices
        if (chains_.size() <= dim)
            chains_.resize(dim + 1);
        chains_[dim].push_back(cur);
        for (std::size_t b = 0; b < p.size(); ++b)
        {
            if (p.less(top, b))
            {
                cur.push_back(b);
                self(self, b);
                cur.pop_back();
            }
        }
    };
    for (std::size_t a = 0; a < p.size(); ++a)
    {
        cur.assign(1, a);
        extend(extend, a);
    }
    lookup_.resize(chains_.size());
    for (std::size_t d = 0; d < chains_.size(); ++d)
    {
        std::sort(chains_[d].begin(), chains_[d].end());
        for (std::size_t k = 0; k < chains_[d].size(); ++k)
            lookup_[d].emplace(chains_[d][k], k);
    }
}

const std::vector<Chain>& OrderComplex::chains(int p) const
{
    static const std::vector<Chain> none;
    if (p < -1 || static_cast<std::size_t>(p + 1) >= chains_.size())
        return none;
    return chains_[static_cast<std::size_t>(p + 1)];
}

std::optional<std::size_t> OrderComplex::find(int p, const Chain& c) const
{
    if (p < -1 || static_cast<std::size_t>(p + 1) >= lookup_.size())
        return std::nullopt;
    const auto& table = lookup_[static_cast<std::size_t>(p + 1)];
    const auto it = table.find(c);
    if (it == table.end())
        return std::nullopt;
    return it->second;
}

OrderComplex order_complex(const RankedPoset& p)
{
    return OrderComplex(p);
}

RationalMatrix ChainComplex::boundary(int p) const
{
    const auto& cols = k_->chains(p);
    const Index nrows = static_cast<Index>(k_->count(p - 1));
    RationalMatrix d = RationalMatrix::Zero(nrows, static_cast<Index>(cols.size()));
    if (nrows == 0)
        return d;
    Chain face;
    for (std::size_t c = 0; c < cols.size(); ++c)
    {
        const Chain& chain = cols[c];
        for (std::size_t drop = 0; drop < chain.size(); ++drop)
        {
            face.clear();
            for (std::size_t v = 0; v < chain.size(); ++v)
            {
                if (v != drop)
                    face.push_back(chain[v]);
            }
            const auto row = k_->find(p - 1, face);
            if (!row)
                throw std::logic_error("order complex is missing a face");
            d(static_cast<Index>(*row), static_cast<Index>(c)) = (drop % 2 == 0) ? 1 : -1;
        }
    }
    return d;
}

Index reduced_betti(const OrderComplex& k, int d)
{
    if (d < -1 || d > k.dimension())
        return 0;
    const ChainComplex cc(k);
    const Index cycles = static_cast<Index>(k.count(d)) - rank(cc.boundary(d));
    return cycles - rank(cc.boundary(d + 1));
}

std::map<Index, Index> whitney_homology_dims(const RankedPoset& p)
{
    std::map<Index, Index> out;
    for (std::size_t x = 0; x < p.size(); ++x)
    {
        const Index n = p.rank(x);
        const auto [sub, ids] = p.below(x);
        out[n] += reduced_betti(order_complex(sub), static_cast<int>(n) - 2);
    }
    return out;
}

namespace {

void require_degree(const IntersectionLattice& lat, int i)
{
    if (i < 1)
        throw std::invalid_argument("cohomological degree must be >= 1 (H^0 is handled by convention)");
    if (lat.max_codim() < i)
        throw std::invalid_argument("lattice truncated at codim " + std::to_string(lat.max_codim())
                                    + " cannot give H^" + std::to_string(i));
}

bool in_range(Index cd, int i)
{
    return 2 * cd >= i && cd <= i;
}

}  // namespace

GMReport gm_betti(const IntersectionLattice& lat, int i, bool filter)
{
    require_degree(lat, i);
    GMReport report;
    report.level = lat.level();
    report.degree = i;
    for (std::size_t x = 0; x < lat.size(); ++x)
    {
        const Index cd = lat.codim(x);
        if (filter && !in_range(cd, i))
            continue;
        const int local = static_cast<int>(2 * cd) - i - 2;
        if (local < -1)
            continue;
        const Index b = reduced_betti(order_complex(lower_interval(lat, x)), local);
        if (b == 0)
            continue;
        report.contributions.push_back({x, cd, local, b});
        report.total += b;
    }
    return report;
}

LocalHomology::LocalHomology(const IntersectionLattice& lat, std::size_t x, int degree) : degree_(degree)
{
    const RankedPoset p = lower_interval(lat, x, &ids_);
    for (std::size_t k = 0; k < ids_.size(); ++k)
        local_of_.emplace(ids_[k], k);
    complex_ = std::make_unique<OrderComplex>(p);
    if (degree < -1 || degree > complex_->dimension())
        return;
    const ChainComplex cc(*complex_);
    cycles_ = row_reduce(cc.boundary(degree));
    boundaries_ = row_reduce(cc.boundary(degree + 1).transpose().eval());
    free_ = free_columns(cycles_, static_cast<Index>(complex_->count(degree)));
    betti_ = static_cast<Index>(free_.size()) - boundaries_.rank();
}

Rational LocalHomology::trace(const std::vector<std::size_t>& lattice_perm) const
{
    if (betti_ == 0)
        return Rational(0);
    const auto& chains = complex_->chains(degree_);
    // sigma^{-1} on q-chains.
    std::vector<Index> preimage_of(chains.size());
    Chain image;
    for (std::size_t c = 0; c < chains.size(); ++c)
    {
        image.clear();
        for (std::size_t v : chains[c])
            image.push_back(local_of_.at(lattice_perm[ids_[v]]));
        const auto target = complex_->find(degree_, image);
        if (!target)
            throw std::logic_error("lattice permutation does not preserve the lower interval");
        preimage_of[*target] = static_cast<Index>(c);
    }

    std::vector<Index> row_of_pivot(chains.size(), -1);
    for (std::size_t r = 0; r < cycles_.pivots.size(); ++r)
        row_of_pivot[static_cast<std::size_t>(cycles_.pivots[r])] = static_cast<Index>(r);

    Rational tr_cycles = 0;
    for (Index f : free_)
    {
        const Index s = preimage_of[static_cast<std::size_t>(f)];
        if (s == f)
            tr_cycles += 1;
        else if (row_of_pivot[static_cast<std::size_t>(s)] >= 0)
            tr_cycles -= cycles_.rows(row_of_pivot[static_cast<std::size_t>(s)], f);
    }
    Rational tr_boundaries = 0;
    for (std::size_t j = 0; j < boundaries_.pivots.size(); ++j)
    {
        const Index p = boundaries_.pivots[j];
        tr_boundaries += boundaries_.rows(static_cast<Index>(j), preimage_of[static_cast<std::size_t>(p)]);
    }
    return tr_cycles - tr_boundaries;
}

std::vector<Rational> equivariant_traces(const IntersectionLattice& lat, const std::vector<PermTuple>& gs, int i,
                                         int jobs)
{
    require_degree(lat, i);
    std::vector<std::size_t> candidates;
    for (std::size_t x = 0; x < lat.size(); ++x)
    {
        if (in_range(lat.codim(x), i))
            candidates.push_back(x);
    }
    std::vector<std::unique_ptr<LocalHomology>> local(candidates.size());
    parallel_for(candidates.size(), jobs, [&](std::size_t k) {
        const std::size_t x = candidates[k];
        local[k] = std::make_unique<LocalHomology>(lat, x, static_cast<int>(2 * lat.codim(x)) - i - 2);
    });

    std::vector<Rational> out(gs.size());
    parallel_for(gs.size(), jobs, [&](std::size_t g) {
        const std::vector<std::size_t> perm = act(gs[g], lat);
        Rational sum = 0;
        for (std::size_t k = 0; k < candidates.size(); ++k)
        {
            const std::size_t x = candidates[k];
            if (perm[x] == x && local[k]->betti() != 0)
                sum += local[k]->trace(perm);
        }
        out[g] = sum;
    });
    return out;
}

Rational equivariant_trace(const IntersectionLattice& lat, const PermTuple& g, int i)
{
    return equivariant_traces(lat, {g}, i, 1).front();
}

void write_gm_table(std::ostream& os, const GMReport& report)
{
    os << "element,codim,local_degree,local_betti\n";
    for (const auto& c : report.contributions)
        os << c.element << ',' << c.codim << ',' << c.local_degree << ',' << c.local_betti << '\n';
    os << "total,,," << report.total << '\n';
    if (!report.characters.empty())
    {
        os << "\nclass,value\n";
        for (const auto& [cls, value] : report.characters)
            os << to_string(cls) << ',' << to_string(value) << '\n';
    }
}

}  // namespace arrstab
