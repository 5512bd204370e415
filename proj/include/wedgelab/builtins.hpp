#ifndef WEDGELAB_BUILTINS_HPP
#define WEDGELAB_BUILTINS_HPP

#include <string>

#include "wedgelab/lie_algebra.hpp"

namespace wedgelab {

/// sl(2,R) in the basis (h, e, f) with h = diag(1/2,-1/2), e upper, f lower.
AlgebraPtr sl2();

/// so(1,d) for the form diag(1,-1,...,-1) on R^{1+d}. Basis order: boosts
/// X_{0j} = E_{0j} + E_{j0} (j = 1..d), then rotations -E_{ij} + E_{ji}
/// (1 <= i < j). The first basis element is the Euler boost mixing x_0, x_1.
AlgebraPtr so1d(int d);

/// so(2,d) for the form diag(1,1,-1,...,-1) on R^{2+d}. Basis starts with the
/// Euler boost E_{02} + E_{20} (one + and one - direction).
AlgebraPtr so2d(int d);

/// su(1,1) realified: complex matrices Z with Z* eta + eta Z = 0,
/// eta = diag(1,-1), represented as real 4x4 blocks [[X,-Y],[Y,X]].
/// Basis (k, h, b): k = i/2 diag(1,-1) elliptic, h = 1/2 offdiag(1,1) Euler,
/// b = 1/2 offdiag(i,-i).
AlgebraPtr su11_real();

/// Lookup by name: "sl2", "so12".."so14", "so23".."so24", "su11".
AlgebraPtr builtin_algebra(const std::string& name);

/// JSON schema { "name", "matrix_size", "basis": [[row-major]], "tolerance"? }.
std::string algebra_to_json(const LieAlgebra& algebra);
AlgebraPtr algebra_from_json(const std::string& text);
AlgebraPtr algebra_from_json_file(const std::string& path);

/// Realify a complex matrix as [[Re, -Im], [Im, Re]].
MatrixXd realify(const Eigen::MatrixXcd& z);

}  // namespace wedgelab

#endif
