/**
 * FI^m-arrangements given by finitely many generating subspaces, and the
 * intersection lattice they induce at each level.
 *
 * Lattice elements are ordered by reverse inclusion: a < b means a strictly
 * contains b. Elements are stored sorted by (codim, canonical key), which
 * is a linear extension of that order. The ambient space is never stored.
 */

#ifndef ARRSTAB_ARRANGEMENT_HPP
#define ARRSTAB_ARRANGEMENT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "arrstab/exactlin.hpp"
#include "arrstab/fim.hpp"

namespace arrstab {

struct Generator
{
    MultiIndex degree;
    Subspace subspace;

    friend bool operator==(const Generator& a, const Generator& b)
    {
        return a.degree == b.degree && a.subspace == b.subspace;
    }
};

struct ArrangementSpec
{
    int m = 1;
    int r = 1;
    std::vector<Generator> generators;

    /// Throws std::invalid_argument describing the first broken invariant.
    void validate() const;

    /// Deterministic text form, used for cache keys.
    std::string serialize() const;

    /// Componentwise maximum of the generator degrees.
    MultiIndex max_degree() const;

    friend bool operator==(const ArrangementSpec&, const ArrangementSpec&) = default;
};

/// The diagonal of V^degree: all points equal.
Subspace diagonal(const MultiIndex& degree, int r);

/// Single generator: the diagonal at degree (k, ..., k).
ArrangementSpec family_mkr(int m, int k, int r);

struct Witness
{
    std::size_t generator;
    Injection map;
};

/// Finite poset with an integer rank, stored as a dense strict-order table.
class RankedPoset
{
public:
    RankedPoset() = default;
    RankedPoset(std::vector<Index> ranks, std::vector<char> relation);

    std::size_t size() const { return ranks_.size(); }
    Index rank(std::size_t a) const { return ranks_[a]; }
    bool less(std::size_t a, std::size_t b) const { return rel_[a * ranks_.size() + b] != 0; }

    /// Elements strictly below x, with their original indices.
    std::pair<RankedPoset, std::vector<std::size_t>> below(std::size_t x) const;

private:
    std::vector<Index> ranks_;
    std::vector<char> rel_;
};

class IntersectionLattice
{
public:
    IntersectionLattice() = default;

    /// Sorts, deduplicates and precomputes the order.
    IntersectionLattice(MultiIndex level, int r, Index max_codim, std::vector<Subspace> elements,
                        std::vector<std::vector<Witness>> provenance);

    const MultiIndex& level() const { return level_; }
    int r() const { return r_; }
    Index max_codim() const { return max_codim_; }
    std::size_t size() const { return elements_.size(); }

    const std::vector<Subspace>& elements() const { return elements_; }
    const Subspace& element(std::size_t k) const { return elements_[k]; }
    const std::vector<Witness>& provenance(std::size_t k) const { return provenance_[k]; }
    Index codim(std::size_t k) const { return elements_[k].codim(); }

    /// a < b: a strictly contains b.
    bool less(std::size_t a, std::size_t b) const { return rel_[a * size() + b] != 0; }

    std::optional<std::size_t> find(const Subspace& x) const;

    RankedPoset poset() const;

private:
    MultiIndex level_;
    int r_ = 1;
    Index max_codim_ = 0;
    std::vector<Subspace> elements_;
    std::vector<std::vector<Witness>> provenance_;
    std::vector<char> rel_;
    std::unordered_map<std::string, std::size_t> index_;
};

IntersectionLattice build_lattice(const ArrangementSpec& spec, const MultiIndex& n, Index max_codim);

/// Induced subposet on the elements strictly containing lat.element(x).
RankedPoset lower_interval(const IntersectionLattice& lat, std::size_t x,
                           std::vector<std::size_t>* ids = nullptr);

/// perm[k] = index of g . element(k). Throws std::logic_error if an image is missing.
std::vector<std::size_t> act(const PermTuple& g, const IntersectionLattice& lat);

/// Image of one subspace of V^n under g.
Subspace act(const PermTuple& g, const Subspace& x, int r);

/// Points (factor, point) on which x depends, as an order-preserving injection into n.
Injection support(const Subspace& x, const MultiIndex& n, int r);

bool is_primitive(const ArrangementSpec& spec, const MultiIndex& degree, const Subspace& x);

struct NormalityReport
{
    bool normal = true;
    std::string violation;
    std::size_t checks = 0;
};

NormalityReport verify_normal(const ArrangementSpec& spec, const std::vector<MultiIndex>& degrees);

ArrangementSpec normalize(const ArrangementSpec& spec);

struct PrimitiveClass
{
    MultiIndex degree;
    Subspace subspace;
    std::uint64_t stabilizer_order = 1;
};

/// Keys of the S_degree-orbit of x, breadth first from x.
std::vector<Subspace> orbit(const Subspace& x, const MultiIndex& degree, int r);

std::vector<PrimitiveClass> primitive_classes(const ArrangementSpec& spec, Index max_codim);

struct OrbitDecomposition
{
    std::vector<std::size_t> class_of;        // per lattice element
    std::vector<Injection> binomial_class_of; // order-preserving injection from the class degree
};

OrbitDecomposition orbit_decomposition(const IntersectionLattice& lat,
                                       const std::vector<PrimitiveClass>& classes);

struct StabilityCheck
{
    bool isomorphic = true;
    std::string violation;
    std::size_t checks = 0;
};

StabilityCheck verify_downward_stability(const ArrangementSpec& spec, const MultiIndex& c,
                                         const MultiIndex& d, Index max_codim);

}  // namespace arrstab

#endif
