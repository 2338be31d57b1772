#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chipfire/digraph.hpp"
#include "chipfire/numbers.hpp"

namespace chipfire {

/// Counter for the unit-cost arithmetic operations a solve performs. The
/// count depends only on the graph (pivot structure), never on the chip
/// magnitudes, which is what makes the Eulerian route strongly polynomial.
struct OpCount {
  std::uint64_t ops = 0;
};

/// Smith normal form U*A*V = D with U, V unimodular and D diagonal with the
/// usual divisibility chain. Exact, deterministic.
struct SmithForm {
  Mat u;  // rows x rows
  Mat d;  // rows x cols, diagonal
  Mat v;  // cols x cols
};

SmithForm smith_normal_form(Mat a);

/// Some integer solution z of A z = b, or absent when none exists.
std::optional<Vec> solve_integer_linear(const Mat& a, const Vec& b);

/// The unique primitive period vector of the subgraph induced by `component`
/// (strictly positive there, entry gcd 1, L*p = 0), embedded as a full-length
/// vector that is zero outside the component. Throws InvalidComponent when
/// the vertex set is not strongly connected in g.
Vec primitive_period_vector(const Digraph& g, const std::vector<int>& component);

/// Primitive period vectors of all sink components, full-length. These span
/// the nonnegative kernel of the Laplacian.
std::vector<Vec> sink_period_vectors(const Digraph& g, const SccDecomposition& scc);

/// per(G): sum of the primitive period entries over all strongly connected
/// components.
Int period_sum(const Digraph& g);

/// Some integer z with x = y + L z, or absent when x and y are not linearly
/// equivalent. Decided exactly on the integer lattice.
std::optional<Vec> linear_equivalent(const Digraph& g, const Vec& x, const Vec& y);

/// The unique reduced nonnegative f with y = x + L f, or absent when no
/// nonnegative integer solution exists. For Eulerian graphs this takes the
/// strongly polynomial route (pin vertex 0, solve the nonsingular minor
/// exactly over rationals, shift by copies of the all-ones kernel vector);
/// otherwise an integer solve followed by sink-component period repair.
std::optional<Vec> solve_nonneg_firing(const Digraph& g, const Vec& x, const Vec& y,
                                       OpCount* ops = nullptr);

namespace detail {
// The two routes behind solve_nonneg_firing, exposed so tests can check them
// against each other on Eulerian inputs. Both return the reduced solution.
std::optional<Vec> solve_nonneg_eulerian(const Digraph& g, const Vec& x, const Vec& y,
                                         OpCount* ops);
std::optional<Vec> solve_nonneg_general(const Digraph& g, const Vec& x, const Vec& y);
}  // namespace detail

/// Subtract from f the largest multiple of each sink component's primitive
/// period vector that keeps f nonnegative. The result is the unique reduced
/// vector with the same Laplacian image.
Vec reduce_firing_vector(const Digraph& g, Vec f);

/// True iff f >= p for no nonzero period vector p, i.e. on every sink
/// component some vertex has f(v) < p_i(v).
bool is_reduced(const Digraph& g, const Vec& f);

}  // namespace chipfire
