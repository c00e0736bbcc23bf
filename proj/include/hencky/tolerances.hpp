#pragma once

// Central tolerance table. Every numerical threshold used by the library is
// named here; the verification tolerances (exact_path_rel, fd_path_rel) can be
// overridden at run time through PathTolerances.

namespace hencky::tol {

// 3x3 symmetric Jacobi eigensolver
inline constexpr double eig_offdiag_rel = 1e-14;     // stop when off(A) <= this * ||A||_F
inline constexpr int eig_max_sweeps = 50;
inline constexpr double eig_reconstruct_rel = 1e-12; // Q diag(l) Q^T must rebuild A this well

// rotations and unit vectors
inline constexpr double rotation_orthogonality = 1e-12; // ||R^T R - I||_F and |det R - 1|
inline constexpr double unit_vector = 1e-12;

// kinematics
inline constexpr double defgrad_det_floor = 1e-8;  // det F must stay above this
inline constexpr double stretch_floor = 1e-8;      // smallest admissible eigenvalue of U

// derivative of the exponential
inline constexpr double spectral_gap_rel = 1e-8;        // divided-difference vs midpoint switch
inline constexpr double quadrature_asymmetry_rel = 1e-12;
inline constexpr double fd_step_base = 1e-5;            // central-difference step, scaled by 1 + ||A||_F

// constitutive checks
inline constexpr double coaxiality_check_rel = 1e-10;   // h(B)B vs B^1/2 h(B) B^1/2
inline constexpr double isotropy_residual_rel = 1e-10;
inline constexpr double exact_path_rel = 1e-9;          // spectral/algebraic stress paths
inline constexpr double fd_path_rel = 1e-6;             // finite-difference stress path

// pow_sym treats |lambda| below this as zero when a negative power is requested
inline constexpr double pow_zero_floor = 1e-300;

// conjugate solver
inline constexpr double newton_grad_tol = 1e-10;   // ||grad g||_inf <= tol * (1 + |g|)
inline constexpr double newton_unbounded_norm = 50.0;
inline constexpr int newton_max_iterations = 100;
inline constexpr int newton_max_backtracks = 30;
inline constexpr double hessian_fd_step = 1e-6;
inline constexpr double convexity_eig_floor = -1e-8;  // Hessian eigenvalue below this flags non-convexity

// input parsing
inline constexpr double symmetry_parse_rel = 1e-12;

}  // namespace hencky::tol

namespace hencky {

// Run-time overridable pair used by verify_theorem and the verification sweeps.
struct PathTolerances {
  double exact_rel = tol::exact_path_rel;
  double fd_rel = tol::fd_path_rel;
};

}  // namespace hencky
