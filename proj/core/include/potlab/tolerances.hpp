#pragma once

// Numerical tolerances shared by the library and its tests.

namespace potlab::tol {

// Rotation matrices: ||a^T a - I||_F and |det a - 1|.
inline constexpr double kOrthogonality = 1e-12;
// A point counts as a unit vector when | ||z|| - 1 | is below this.
inline constexpr double kUnitNorm = 1e-10;
// Gram-Schmidt drops candidates whose residual norm falls below this.
inline constexpr double kGramSchmidtResidual = 1e-8;
// rotation_to returns the identity when ||z - e1|| is below this.
inline constexpr double kReferencePoint = 1e-8;
// A point is on a sphere when | ||z - y|| - r | is below this.
inline constexpr double kOnSphere = 1e-10;
// Exit points recorded by the path engines.
inline constexpr double kExitOnSphere = 1e-9;
// Central-difference step for the Laplacian witness.
inline constexpr double kLaplacianStep = 1e-3;
// Harmonicity witness: |finite-difference Laplacian|.
inline constexpr double kHarmonicLaplacian = 1e-4;
// Allowed downward step of a Hardy integral on a radius grid.
inline constexpr double kMonotoneStep = 1e-8;
// lambda_bar switches to its power series below this |v|.
inline constexpr double kLambdaSeriesCutoff = 1e-4;
// walk-on-spheres treats ||x||/r below this as the centre.
inline constexpr double kCentreStart = 1e-12;

}  // namespace potlab::tol
