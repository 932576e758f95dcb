#include "arrstab/fim.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace arrstab {

namespace {

void require_same_length(const MultiIndex& a, const MultiIndex& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("multi-index length mismatch: " + to_string(a) + " vs " + to_string(b));
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = text.find(sep, start);
        if (pos == std::string_view::npos)
        {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

int parse_int(std::string_view s)
{
    if (s.empty())
        throw std::invalid_argument("expected an integer");
    int v = 0;
    for (char ch : s)
    {
        if (ch < '0' || ch > '9')
            throw std::invalid_argument("expected a nonnegative integer, got '" + std::string(s) + "'");
        v = v * 10 + (ch - '0');
    }
    return v;
}

// Cartesian product over factors of per-factor choices, first factor outermost.
template <typename T>
std::vector<std::vector<T>> product(const std::vector<std::vector<T>>& choices)
{
    std::vector<std::vector<T>> out{{}};
    for (const auto& options : choices)
    {
        std::vector<std::vector<T>> next;
        next.reserve(out.size() * options.size());
        for (const auto& prefix : out)
        {
            for (const auto& opt : options)
            {
                next.push_back(prefix);
                next.back().push_back(opt);
            }
        }
        out = std::move(next);
    }
    return out;
}

std::vector<std::vector<int>> injective_sequences(int c, int d)
{
    std::vector<std::vector<int>> out;
    if (c > d)
        return out;
    std::vector<int> cur;
    std::vector<bool> used(static_cast<std::size_t>(d), false);
    std::function<void()> rec = [&]() {
        if (static_cast<int>(cur.size()) == c)
        {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v < d; ++v)
        {
            if (used[static_cast<std::size_t>(v)])
                continue;
            used[static_cast<std::size_t>(v)] = true;
            cur.push_back(v);
            rec();
            cur.pop_back();
            used[static_cast<std::size_t>(v)] = false;
        }
    };
    rec();
    return out;
}

std::vector<std::vector<int>> increasing_sequences(int c, int d)
{
    std::vector<std::vector<int>> out;
    if (c > d)
        return out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int from) {
        if (static_cast<int>(cur.size()) == c)
        {
            out.push_back(cur);
            return;
        }
        for (int v = from; v < d; ++v)
        {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

std::uint64_t binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries))
{
    for (int e : entries_)
    {
        if (e < 0)
            throw std::invalid_argument("multi-index entries must be nonnegative");
    }
}

int MultiIndex::total() const
{
    return std::accumulate(entries_.begin(), entries_.end(), 0);
}

bool leq(const MultiIndex& a, const MultiIndex& b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t j = 0; j < a.size(); ++j)
    {
        if (a[j] > b[j])
            return false;
    }
    return true;
}

std::string to_string(const MultiIndex& n)
{
    std::string s;
    for (std::size_t j = 0; j < n.size(); ++j)
    {
        if (j > 0)
            s += '|';
        s += std::to_string(n[j]);
    }
    return s;
}

MultiIndex parse_multi_index(std::string_view text)
{
    std::vector<int> entries;
    for (auto piece : split(text, '|'))
        entries.push_back(parse_int(piece));
    return MultiIndex(std::move(entries));
}

MultiIndex degree_add(const MultiIndex& c, const MultiIndex& d)
{
    require_same_length(c, d);
    std::vector<int> e(c.size());
    for (std::size_t j = 0; j < c.size(); ++j)
        e[j] = c[j] + d[j];
    return MultiIndex(std::move(e));
}

MultiIndex degree_times(int i, const MultiIndex& c)
{
    if (i < 0)
        throw std::invalid_argument("degree_times: negative multiplier");
    std::vector<int> e(c.size());
    for (std::size_t j = 0; j < c.size(); ++j)
        e[j] = i * c[j];
    return MultiIndex(std::move(e));
}

MultiIndex componentwise_max(const MultiIndex& a, const MultiIndex& b)
{
    require_same_length(a, b);
    std::vector<int> e(a.size());
    for (std::size_t j = 0; j < a.size(); ++j)
        e[j] = std::max(a[j], b[j]);
    return MultiIndex(std::move(e));
}

std::vector<MultiIndex> levels_between(const MultiIndex& lo, const MultiIndex& hi)
{
    require_same_length(lo, hi);
    std::vector<std::vector<int>> choices;
    for (std::size_t j = 0; j < lo.size(); ++j)
    {
        std::vector<int> range;
        for (int v = lo[j]; v <= hi[j]; ++v)
            range.push_back(v);
        choices.push_back(std::move(range));
    }
    std::vector<MultiIndex> out;
    for (auto& entries : product(choices))
        out.emplace_back(std::move(entries));
    return out;
}

Index ambient_dim(const MultiIndex& n, int r)
{
    return static_cast<Index>(r) * n.total();
}

Index coordinate(const MultiIndex& n, int r, std::size_t j, int i, int t)
{
    Index offset = 0;
    for (std::size_t k = 0; k < j; ++k)
        offset += n[k];
    return static_cast<Index>(r) * (offset + i) + t;
}

MultiIndex Injection::source() const
{
    std::vector<int> e;
    e.reserve(images.size());
    for (const auto& comp : images)
        e.push_back(static_cast<int>(comp.size()));
    return MultiIndex(std::move(e));
}

Injection compose(const Injection& f, const Injection& g)
{
    if (g.target != f.source())
        throw std::invalid_argument("compose: target of g is not the source of f");
    Injection h{f.target, {}};
    h.images.resize(g.images.size());
    for (std::size_t j = 0; j < g.images.size(); ++j)
    {
        for (int gi : g.images[j])
            h.images[j].push_back(f.images[j][static_cast<std::size_t>(gi)]);
    }
    return h;
}

std::string to_string(const Injection& f)
{
    std::string s;
    for (std::size_t j = 0; j < f.images.size(); ++j)
    {
        if (j > 0)
            s += '|';
        for (std::size_t i = 0; i < f.images[j].size(); ++i)
        {
            if (i > 0)
                s += ',';
            s += std::to_string(f.images[j][i] + 1);
        }
    }
    return s;
}

Injection parse_injection(std::string_view text, const MultiIndex& target)
{
    Injection f{target, {}};
    const auto factors = split(text, '|');
    if (factors.size() != target.size())
        throw std::invalid_argument("injection has the wrong number of factors");
    for (std::size_t j = 0; j < factors.size(); ++j)
    {
        std::vector<int> comp;
        if (!factors[j].empty())
        {
            for (auto piece : split(factors[j], ','))
            {
                const int v = parse_int(piece) - 1;
                if (v < 0 || v >= target[j])
                    throw std::invalid_argument("injection image out of range");
                comp.push_back(v);
            }
        }
        std::vector<int> sorted = comp;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("injection is not injective");
        f.images.push_back(std::move(comp));
    }
    return f;
}

std::vector<Injection> enumerate_injections(const MultiIndex& c, const MultiIndex& d)
{
    require_same_length(c, d);
    std::vector<std::vector<std::vector<int>>> choices;
    for (std::size_t j = 0; j < c.size(); ++j)
        choices.push_back(injective_sequences(c[j], d[j]));
    std::vector<Injection> out;
    for (auto& images : product(choices))
        out.push_back(Injection{d, std::move(images)});
    return out;
}

std::vector<Injection> binomial_representatives(const MultiIndex& c, const MultiIndex& d)
{
    require_same_length(c, d);
    std::vector<std::vector<std::vector<int>>> choices;
    for (std::size_t j = 0; j < c.size(); ++j)
        choices.push_back(increasing_sequences(c[j], d[j]));
    std::vector<Injection> out;
    for (auto& images : product(choices))
        out.push_back(Injection{d, std::move(images)});
    return out;
}

std::uint64_t binomial_set_size(const MultiIndex& c, const MultiIndex& d)
{
    require_same_length(c, d);
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < c.size(); ++j)
        total *= binomial(d[j], c[j]);
    return total;
}

LinearMap induced_linear_map(const Injection& f, int r)
{
    const MultiIndex c = f.source();
    const MultiIndex& d = f.target;
    RationalMatrix m = RationalMatrix::Zero(ambient_dim(c, r), ambient_dim(d, r));
    for (std::size_t j = 0; j < c.size(); ++j)
    {
        for (int i = 0; i < c[j]; ++i)
        {
            for (int t = 0; t < r; ++t)
                m(coordinate(c, r, j, i, t), coordinate(d, r, j, f.images[j][static_cast<std::size_t>(i)], t)) = 1;
        }
    }
    return LinearMap{std::move(m)};
}

Subspace kernel_of_induced_map(const Injection& f, int r)
{
    return Subspace::from_constraints(ambient_dim(f.target, r), induced_linear_map(f, r).matrix);
}

PermTuple::PermTuple(std::vector<std::vector<int>> perms) : perms_(std::move(perms))
{
    for (const auto& p : perms_)
    {
        std::vector<int> sorted = p;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
        {
            if (sorted[i] != static_cast<int>(i))
                throw std::invalid_argument("not a permutation");
        }
    }
}

PermTuple PermTuple::identity(const MultiIndex& n)
{
    std::vector<std::vector<int>> perms;
    for (std::size_t j = 0; j < n.size(); ++j)
    {
        std::vector<int> p(static_cast<std::size_t>(n[j]));
        std::iota(p.begin(), p.end(), 0);
        perms.push_back(std::move(p));
    }
    return PermTuple(std::move(perms));
}

MultiIndex PermTuple::level() const
{
    std::vector<int> e;
    for (const auto& p : perms_)
        e.push_back(static_cast<int>(p.size()));
    return MultiIndex(std::move(e));
}

PermTuple PermTuple::inverse() const
{
    std::vector<std::vector<int>> inv = perms_;
    for (std::size_t j = 0; j < perms_.size(); ++j)
    {
        for (std::size_t i = 0; i < perms_[j].size(); ++i)
            inv[j][static_cast<std::size_t>(perms_[j][i])] = static_cast<int>(i);
    }
    return PermTuple(std::move(inv));
}

PermTuple compose(const PermTuple& g, const PermTuple& h)
{
    if (g.level() != h.level())
        throw std::invalid_argument("compose: permutation levels differ");
    std::vector<std::vector<int>> out = h.perms();
    for (std::size_t j = 0; j < out.size(); ++j)
    {
        for (auto& v : out[j])
            v = g(j, v);
    }
    return PermTuple(std::move(out));
}

std::vector<PermTuple> enumerate_perm_tuples(const MultiIndex& n)
{
    std::vector<std::vector<std::vector<int>>> choices;
    for (std::size_t j = 0; j < n.size(); ++j)
        choices.push_back(injective_sequences(n[j], n[j]));
    std::vector<PermTuple> out;
    for (auto& perms : product(choices))
        out.emplace_back(std::move(perms));
    return out;
}

LinearMap act_on_vector(const PermTuple& g, int r)
{
    const MultiIndex n = g.level();
    const Index dim = ambient_dim(n, r);
    RationalMatrix m = RationalMatrix::Zero(dim, dim);
    for (std::size_t j = 0; j < n.size(); ++j)
    {
        for (int i = 0; i < n[j]; ++i)
        {
            for (int t = 0; t < r; ++t)
                m(coordinate(n, r, j, g(j, i), t), coordinate(n, r, j, i, t)) = 1;
        }
    }
    return LinearMap{std::move(m)};
}

std::vector<Partition> partitions_of(int n)
{
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0)
        {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p)
        {
            cur.push_back(p);
            rec(remaining - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t factorial(int n)
{
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i)
        f *= static_cast<std::uint64_t>(i);
    return f;
}

std::uint64_t centralizer_order(const Partition& lambda)
{
    std::uint64_t z = 1;
    std::size_t i = 0;
    while (i < lambda.size())
    {
        std::size_t j = i;
        while (j < lambda.size() && lambda[j] == lambda[i])
            ++j;
        const int mult = static_cast<int>(j - i);
        for (int e = 0; e < mult; ++e)
            z *= static_cast<std::uint64_t>(lambda[i]);
        z *= factorial(mult);
        i = j;
    }
    return z;
}

MultiIndex ConjClass::level() const
{
    std::vector<int> e;
    for (const auto& p : parts)
        e.push_back(std::accumulate(p.begin(), p.end(), 0));
    return MultiIndex(std::move(e));
}

int ConjClass::cycle_count(std::size_t j, int k) const
{
    return static_cast<int>(std::count(parts[j].begin(), parts[j].end(), k));
}

ConjClass make_conj_class(std::vector<Partition> parts)
{
    ConjClass c;
    std::uint64_t size = 1;
    for (auto& p : parts)
    {
        std::sort(p.begin(), p.end(), std::greater<>());
        if (!p.empty() && p.back() <= 0)
            throw std::invalid_argument("partition parts must be positive");
        const int n = std::accumulate(p.begin(), p.end(), 0);
        size *= factorial(n) / centralizer_order(p);
    }
    c.parts = std::move(parts);
    c.size = size;
    return c;
}

std::uint64_t group_order(const MultiIndex& n)
{
    std::uint64_t g = 1;
    for (int e : n.entries())
        g *= factorial(e);
    return g;
}

std::vector<ConjClass> conj_classes(const MultiIndex& n)
{
    std::vector<std::vector<Partition>> choices;
    for (int e : n.entries())
        choices.push_back(partitions_of(e));
    std::vector<ConjClass> out;
    for (auto& parts : product(choices))
        out.push_back(make_conj_class(std::move(parts)));
    return out;
}

PermTuple class_representative(const ConjClass& c)
{
    std::vector<std::vector<int>> perms;
    for (const auto& lambda : c.parts)
    {
        std::vector<int> p;
        int start = 0;
        for (int len : lambda)
        {
            for (int k = 0; k < len; ++k)
                p.push_back(start + (k + 1) % len);
            start += len;
        }
        perms.push_back(std::move(p));
    }
    return PermTuple(std::move(perms));
}

ConjClass cycle_type(const PermTuple& g)
{
    std::vector<Partition> parts;
    for (const auto& p : g.perms())
    {
        std::vector<bool> seen(p.size(), false);
        Partition lambda;
        for (std::size_t i = 0; i < p.size(); ++i)
        {
            if (seen[i])
                continue;
            int len = 0;
            std::size_t k = i;
            while (!seen[k])
            {
                seen[k] = true;
                k = static_cast<std::size_t>(p[k]);
                ++len;
            }
            lambda.push_back(len);
        }
        parts.push_back(std::move(lambda));
    }
    return make_conj_class(std::move(parts));
}

std::string to_string(const ConjClass& c)
{
    std::string s;
    for (std::size_t j = 0; j < c.parts.size(); ++j)
    {
        if (j > 0)
            s += '|';
        for (std::size_t i = 0; i < c.parts[j].size(); ++i)
        {
            if (i > 0)
                s += '+';
            s += std::to_string(c.parts[j][i]);
        }
    }
    return s;
}

ConjClass parse_conj_class(std::string_view text)
{
    std::vector<Partition> parts;
    for (auto factor : split(text, '|'))
    {
        Partition p;
        if (!factor.empty())
        {
            for (auto piece : split(factor, '+'))
                p.push_back(parse_int(piece));
        }
        parts.push_back(std::move(p));
    }
    return make_conj_class(std::move(parts));
}

}  // namespace arrstab
