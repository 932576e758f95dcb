/**
 * The indexing category FI^m.
 *
 * Objects are multi-indices n = (n_1, ..., n_m); morphisms are m-tuples of
 * injections; the automorphism group of n is S_{n_1} x ... x S_{n_m}.
 *
 * Points are 0-based internally and 1-based in every textual form. The
 * vector space attached to n is V^n with V = Q^r, coordinates ordered
 * block-major: factor, then point, then vector component.
 */

#ifndef ARRSTAB_FIM_HPP
#define ARRSTAB_FIM_HPP

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "arrstab/exactlin.hpp"

namespace arrstab {

class MultiIndex
{
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries);
    MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

    static MultiIndex zeros(std::size_t m) { return MultiIndex(std::vector<int>(m, 0)); }

    std::size_t size() const { return entries_.size(); }
    int operator[](std::size_t j) const { return entries_[j]; }
    const std::vector<int>& entries() const { return entries_; }
    int total() const;

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

private:
    std::vector<int> entries_;
};

/// Componentwise a <= b (false when lengths differ).
bool leq(const MultiIndex& a, const MultiIndex& b);

/// Rendered "n1|n2|...".
std::string to_string(const MultiIndex& n);
MultiIndex parse_multi_index(std::string_view text);

MultiIndex degree_add(const MultiIndex& c, const MultiIndex& d);
MultiIndex degree_times(int i, const MultiIndex& c);
MultiIndex componentwise_max(const MultiIndex& a, const MultiIndex& b);

/// All multi-indices in the box [lo, hi], lexicographic.
std::vector<MultiIndex> levels_between(const MultiIndex& lo, const MultiIndex& hi);

/// dim V^n = r * (n_1 + ... + n_m).
Index ambient_dim(const MultiIndex& n, int r);

/// Coordinate of vector component t of point i in factor j.
Index coordinate(const MultiIndex& n, int r, std::size_t j, int i, int t);

struct Injection
{
    MultiIndex target;
    std::vector<std::vector<int>> images;   // images[j][i] = f_j(i)

    MultiIndex source() const;

    friend bool operator==(const Injection&, const Injection&) = default;
    friend auto operator<=>(const Injection&, const Injection&) = default;
};

/// f o g.
Injection compose(const Injection& f, const Injection& g);

/// Component images, 1-based: "1,3|2".
std::string to_string(const Injection& f);
Injection parse_injection(std::string_view text, const MultiIndex& target);

/// Hom(c, d), lexicographic by component images.
std::vector<Injection> enumerate_injections(const MultiIndex& c, const MultiIndex& d);

/// One order-preserving injection per class of Hom(c, d) / S_c.
std::vector<Injection> binomial_representatives(const MultiIndex& c, const MultiIndex& d);

/// |Hom(c, d) / S_c| = prod_j C(d_j, c_j).
std::uint64_t binomial_set_size(const MultiIndex& c, const MultiIndex& d);

/// V(f): V^d -> V^c, precomposition with f.
LinearMap induced_linear_map(const Injection& f, int r);

/// ker V(f): vectors supported away from the image of f.
Subspace kernel_of_induced_map(const Injection& f, int r);

class PermTuple
{
public:
    PermTuple() = default;
    explicit PermTuple(std::vector<std::vector<int>> perms);

    static PermTuple identity(const MultiIndex& n);

    MultiIndex level() const;
    const std::vector<std::vector<int>>& perms() const { return perms_; }
    int operator()(std::size_t j, int i) const { return perms_[j][static_cast<std::size_t>(i)]; }

    PermTuple inverse() const;

    friend bool operator==(const PermTuple&, const PermTuple&) = default;
    friend auto operator<=>(const PermTuple&, const PermTuple&) = default;

private:
    std::vector<std::vector<int>> perms_;
};

/// (g h)(i) = g(h(i)).
PermTuple compose(const PermTuple& g, const PermTuple& h);

/// Every element of S_n, lexicographic.
std::vector<PermTuple> enumerate_perm_tuples(const MultiIndex& n);

/// Block permutation matrix on V^n: point i of factor j moves to point g_j(i).
LinearMap act_on_vector(const PermTuple& g, int r);

using Partition = std::vector<int>;

/// Partitions of n with weakly decreasing parts, lexicographically ascending.
std::vector<Partition> partitions_of(int n);

/// z_lambda = prod_k k^{m_k} m_k!.
std::uint64_t centralizer_order(const Partition& lambda);

std::uint64_t factorial(int n);

struct ConjClass
{
    std::vector<Partition> parts;
    std::uint64_t size = 1;

    MultiIndex level() const;

    /// Number of parts equal to k in factor j.
    int cycle_count(std::size_t j, int k) const;

    friend bool operator==(const ConjClass& a, const ConjClass& b) { return a.parts == b.parts; }
    friend auto operator<=>(const ConjClass& a, const ConjClass& b) { return a.parts <=> b.parts; }
};

ConjClass make_conj_class(std::vector<Partition> parts);

/// |S_n| = prod_j n_j!.
std::uint64_t group_order(const MultiIndex& n);

std::vector<ConjClass> conj_classes(const MultiIndex& n);

/// Cycles of the given sizes on consecutive blocks of points.
PermTuple class_representative(const ConjClass& c);

ConjClass cycle_type(const PermTuple& g);

/// Parts joined by '+', factors by '|': "2+1|1+1".
std::string to_string(const ConjClass& c);
ConjClass parse_conj_class(std::string_view text);

}  // namespace arrstab

#endif
