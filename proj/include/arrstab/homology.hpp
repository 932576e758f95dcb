/**
 * Order complexes, reduced rational homology, and the assembly of the
 * cohomology of an arrangement complement from its intersection lattice:
 *
 *     H^i(M) = sum over x in L of  H~_{2 cd(x) - i - 2}( Delta(L^{<x}) ).
 *
 * Only x with ceil(i/2) <= cd(x) <= i can contribute; `gm_betti` applies
 * that filter by default and can be asked not to.
 */

#ifndef ARRSTAB_HOMOLOGY_HPP
#define ARRSTAB_HOMOLOGY_HPP

#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <vector>

#include "arrstab/arrangement.hpp"

namespace arrstab {

using Chain = std::vector<std::size_t>;

struct ChainHash
{
    std::size_t operator()(const Chain& c) const noexcept;
};

/// Strict chains of a poset, grouped by dimension. Dimension -1 holds the empty chain.
class OrderComplex
{
public:
    explicit OrderComplex(const RankedPoset& p);

    std::size_t vertex_count() const { return vertices_; }
    /// Largest p with a p-chain, or -1 for the empty complex.
    int dimension() const { return static_cast<int>(chains_.size()) - 2; }

    /// Chains of dimension p (p >= -1), each listed bottom to top.
    const std::vector<Chain>& chains(int p) const;
    std::size_t count(int p) const { return chains(p).size(); }
    std::optional<std::size_t> find(int p, const Chain& c) const;

private:
    std::size_t vertices_;
    std::vector<std::vector<Chain>> chains_;   // chains_[p + 1]
    std::vector<std::unordered_map<Chain, std::size_t, ChainHash>> lookup_;
};

OrderComplex order_complex(const RankedPoset& p);

/// The augmented chain complex with boundary maps d_p : C_p -> C_{p-1}.
class ChainComplex
{
public:
    explicit ChainComplex(const OrderComplex& k) : k_(&k) {}

    /// Matrix of d_p (rows: (p-1)-chains, cols: p-chains); zero-sized outside the complex.
    RationalMatrix boundary(int p) const;

private:
    const OrderComplex* k_;
};

/// dim H~_d over the rationals.
Index reduced_betti(const OrderComplex& k, int d);

/// Rank n -> sum over rank-n elements x of dim H~_{n-2}(Delta(P^{<x})).
std::map<Index, Index> whitney_homology_dims(const RankedPoset& p);

struct Contribution
{
    std::size_t element;
    Index codim;
    int local_degree;
    Index local_betti;
};

struct GMReport
{
    MultiIndex level;
    int degree = 0;
    Index total = 0;
    std::vector<Contribution> contributions;
    std::vector<std::pair<ConjClass, Rational>> characters;
};

GMReport gm_betti(const IntersectionLattice& lat, int i, bool filter = true);

/**
 * Reduced homology of one lower interval in one degree, prepared for traces
 * of poset automorphisms fixing the element.
 */
class LocalHomology
{
public:
    LocalHomology(const IntersectionLattice& lat, std::size_t x, int degree);

    Index betti() const { return betti_; }

    /// Trace of the automorphism induced by a lattice permutation that fixes x.
    Rational trace(const std::vector<std::size_t>& lattice_perm) const;

private:
    int degree_;
    std::vector<std::size_t> ids_;
    std::unordered_map<std::size_t, std::size_t> local_of_;
    std::unique_ptr<OrderComplex> complex_;
    RowEchelon<Rational> cycles_;      // RREF of d_q
    RowEchelon<Rational> boundaries_;  // RREF of d_{q+1}^T
    std::vector<Index> free_;
    Index betti_ = 0;
};

Rational equivariant_trace(const IntersectionLattice& lat, const PermTuple& g, int i);

/// Traces for several group elements, sharing the per-element homology work across `jobs` threads.
std::vector<Rational> equivariant_traces(const IntersectionLattice& lat, const std::vector<PermTuple>& gs,
                                         int i, int jobs = 1);

/// CSV: element,codim,local_degree,local_betti then a totals row; character table if present.
void write_gm_table(std::ostream& os, const GMReport& report);

}  // namespace arrstab

#endif
