/**
 * Exact linear algebra over a field: reduced row echelon forms, kernels,
 * and linear subspaces stored in canonical annihilator form.
 *
 * Everything here is templated on the scalar type. The engine instantiates
 * it with `Rational`, but any exact field type that Eigen accepts works
 * (the unit tests also run the row reduction over a prime field).
 *
 * A subspace W of k^N is stored as the RREF of a constraint matrix C with
 * W = ker C. The RREF is unique, so two subspaces are equal iff their
 * serialized keys are byte-identical.
 */

#ifndef ARRSTAB_EXACTLIN_HPP
#define ARRSTAB_EXACTLIN_HPP

#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "arrstab/rational.hpp"

namespace arrstab {

using Eigen::Index;

template <typename Scalar>
struct RowEchelon
{
    Mat<Scalar> rows;            // nonzero rows only
    std::vector<Index> pivots;   // pivot column of each row, strictly increasing

    Index rank() const { return rows.rows(); }
};

/**
 * Gauss-Jordan elimination to the unique reduced row echelon form.
 *
 * Pivots are scaled to 1, entries above and below each pivot are cleared
 * and zero rows are dropped. Row operations only touch the nonzero columns
 * of the pivot row, which keeps sparse boundary matrices cheap.
 */
template <typename Derived>
RowEchelon<typename Derived::Scalar> row_reduce(const Eigen::MatrixBase<Derived>& input)
{
    using Scalar = typename Derived::Scalar;
    Mat<Scalar> a = input;
    const Index nrows = a.rows();
    const Index ncols = a.cols();

    std::vector<Index> pivots;
    std::vector<Index> support;
    Index prow = 0;
    for (Index col = 0; col < ncols && prow < nrows; ++col)
    {
        Index sel = -1;
        for (Index i = prow; i < nrows; ++i)
        {
            if (a(i, col) != 0)
            {
                sel = i;
                break;
            }
        }
        if (sel < 0)
            continue;
        if (sel != prow)
            a.row(sel).swap(a.row(prow));

        const Scalar inv = Scalar(1) / a(prow, col);
        support.clear();
        for (Index j = col; j < ncols; ++j)
        {
            if (a(prow, j) != 0)
            {
                a(prow, j) *= inv;
                support.push_back(j);
            }
        }
        for (Index i = 0; i < nrows; ++i)
        {
            if (i == prow || a(i, col) == 0)
                continue;
            const Scalar factor = a(i, col);
            for (Index j : support)
                a(i, j) -= factor * a(prow, j);
        }
        pivots.push_back(col);
        ++prow;
    }

    RowEchelon<Scalar> out;
    out.rows = a.topRows(prow);
    out.pivots = std::move(pivots);
    return out;
}

template <typename Derived>
Mat<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& m)
{
    return row_reduce(m).rows;
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m)
{
    return row_reduce(m).rank();
}

/// Free (non-pivot) columns of an echelon form with `ncols` columns.
template <typename Scalar>
std::vector<Index> free_columns(const RowEchelon<Scalar>& ech, Index ncols)
{
    std::vector<Index> out;
    std::size_t k = 0;
    for (Index c = 0; c < ncols; ++c)
    {
        if (k < ech.pivots.size() && ech.pivots[k] == c)
            ++k;
        else
            out.push_back(c);
    }
    return out;
}

/**
 * Kernel basis from an echelon form, one column per free variable. The
 * basis vector for free column f has a 1 at f and 0 at every other free
 * column.
 */
template <typename Scalar>
Mat<Scalar> nullspace(const RowEchelon<Scalar>& ech, Index ncols)
{
    const std::vector<Index> free = free_columns(ech, ncols);
    Mat<Scalar> basis = Mat<Scalar>::Zero(ncols, static_cast<Index>(free.size()));
    for (std::size_t k = 0; k < free.size(); ++k)
    {
        const Index f = free[k];
        basis(f, static_cast<Index>(k)) = Scalar(1);
        for (std::size_t i = 0; i < ech.pivots.size(); ++i)
            basis(ech.pivots[i], static_cast<Index>(k)) = -ech.rows(static_cast<Index>(i), f);
    }
    return basis;
}

template <typename Derived>
Mat<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& m)
{
    return nullspace(row_reduce(m), m.cols());
}

template <typename Scalar>
std::string format_scalar(const Scalar& x)
{
    if constexpr (std::is_same_v<Scalar, Rational>)
        return to_string(x);
    else
    {
        std::ostringstream os;
        os << x;
        return os.str();
    }
}

template <typename Scalar>
struct BasicLinearMap
{
    Mat<Scalar> matrix;   // rows = target dimension, cols = source dimension

    Index source_dim() const { return matrix.cols(); }
    Index target_dim() const { return matrix.rows(); }
};

template <typename Scalar>
class BasicSubspace
{
public:
    BasicSubspace() : BasicSubspace(0, RowEchelon<Scalar>{Mat<Scalar>(0, 0), {}}) {}

    static BasicSubspace ambient(Index n)
    {
        return BasicSubspace(n, RowEchelon<Scalar>{Mat<Scalar>(0, n), {}});
    }

    /// The solution set {v : rows * v = 0} of k^n.
    template <typename Derived>
    static BasicSubspace from_constraints(Index n, const Eigen::MatrixBase<Derived>& rows)
    {
        if (rows.cols() != n)
        {
            throw std::invalid_argument("constraint matrix has " + std::to_string(rows.cols())
                                        + " columns, expected " + std::to_string(n));
        }
        if (rows.rows() == 0)
            return ambient(n);
        return BasicSubspace(n, row_reduce(rows));
    }

    /// The span of the given columns inside k^n.
    template <typename Derived>
    static BasicSubspace span(Index n, const Eigen::MatrixBase<Derived>& columns)
    {
        if (columns.rows() != n)
            throw std::invalid_argument("spanning vectors have the wrong length");
        if (columns.cols() == 0)
            return from_constraints(n, Mat<Scalar>::Identity(n, n));
        // Annihilator of the span = left kernel of the spanning matrix.
        const Mat<Scalar> annihilator = nullspace(columns.transpose().eval());
        return from_constraints(n, annihilator.transpose().eval());
    }

    Index ambient_dim() const { return ambient_; }
    Index codim() const { return ech_.rank(); }
    Index dim() const { return ambient_ - codim(); }

    const Mat<Scalar>& constraints() const { return ech_.rows; }
    const std::vector<Index>& pivots() const { return ech_.pivots; }
    const RowEchelon<Scalar>& echelon() const { return ech_; }

    /// Canonical serialization: "N:" followed by RREF rows joined by ';'.
    const std::string& key() const { return key_; }

    /// Column basis of the subspace.
    Mat<Scalar> basis() const { return nullspace(ech_, ambient_); }

    friend bool operator==(const BasicSubspace& a, const BasicSubspace& b) { return a.key_ == b.key_; }

private:
    BasicSubspace(Index n, RowEchelon<Scalar> ech) : ambient_(n), ech_(std::move(ech))
    {
        std::string s = std::to_string(ambient_) + ":";
        for (Index i = 0; i < ech_.rows.rows(); ++i)
        {
            if (i > 0)
                s += ';';
            for (Index j = 0; j < ech_.rows.cols(); ++j)
            {
                if (j > 0)
                    s += ',';
                s += format_scalar(ech_.rows(i, j));
            }
        }
        key_ = std::move(s);
    }

    Index ambient_;
    RowEchelon<Scalar> ech_;
    std::string key_;
};

/// Ordering used for lattice elements: codimension first, then serialization.
template <typename Scalar>
bool canonical_less(const BasicSubspace<Scalar>& a, const BasicSubspace<Scalar>& b)
{
    if (a.codim() != b.codim())
        return a.codim() < b.codim();
    return a.key() < b.key();
}

namespace detail {

inline void require_same_ambient(Index a, Index b)
{
    if (a != b)
        throw std::invalid_argument("ambient dimension mismatch: " + std::to_string(a) + " vs "
                                    + std::to_string(b));
}

}  // namespace detail

template <typename Scalar>
BasicSubspace<Scalar> intersect(const BasicSubspace<Scalar>& a, const BasicSubspace<Scalar>& b)
{
    detail::require_same_ambient(a.ambient_dim(), b.ambient_dim());
    Mat<Scalar> stacked(a.codim() + b.codim(), a.ambient_dim());
    stacked << a.constraints(), b.constraints();
    return BasicSubspace<Scalar>::from_constraints(a.ambient_dim(), stacked);
}

/// True iff b is a subset of a, i.e. every constraint of a lies in the row space of b.
template <typename Scalar>
bool contains(const BasicSubspace<Scalar>& a, const BasicSubspace<Scalar>& b)
{
    detail::require_same_ambient(a.ambient_dim(), b.ambient_dim());
    if (a.codim() > b.codim())
        return false;
    const auto& brows = b.constraints();
    const auto& bpiv = b.pivots();
    Vec<Scalar> v(a.ambient_dim());
    for (Index r = 0; r < a.codim(); ++r)
    {
        v = a.constraints().row(r).transpose();
        for (std::size_t k = 0; k < bpiv.size(); ++k)
        {
            const Scalar c = v(bpiv[k]);
            if (c != 0)
                v -= c * brows.row(static_cast<Index>(k)).transpose();
        }
        for (Index j = 0; j < v.size(); ++j)
        {
            if (v(j) != 0)
                return false;
        }
    }
    return true;
}

/// {w : f(w) in x}.
template <typename Scalar>
BasicSubspace<Scalar> preimage(const BasicLinearMap<Scalar>& f, const BasicSubspace<Scalar>& x)
{
    if (f.target_dim() != x.ambient_dim())
        throw std::invalid_argument("preimage: map target does not match subspace ambient");
    const Mat<Scalar> pulled = x.constraints() * f.matrix;
    return BasicSubspace<Scalar>::from_constraints(f.source_dim(), pulled);
}

/// f(x), computed by mapping a basis of x.
template <typename Scalar>
BasicSubspace<Scalar> direct_image(const BasicLinearMap<Scalar>& f, const BasicSubspace<Scalar>& x)
{
    if (f.source_dim() != x.ambient_dim())
        throw std::invalid_argument("direct_image: map source does not match subspace ambient");
    const Mat<Scalar> image = f.matrix * x.basis();
    return BasicSubspace<Scalar>::span(f.target_dim(), image);
}

using Subspace = BasicSubspace<Rational>;
using LinearMap = BasicLinearMap<Rational>;

}  // namespace arrstab

#endif
