#ifndef HGO_GEOD_HPP
#define HGO_GEOD_HPP

#include "hgo/isometry.hpp"

#include <Eigen/Dense>
#include <ostream>

namespace hgo {

struct GeodesicState {
    double t = 0;
    Eigen::VectorXd z;
    Eigen::VectorXd x;
};

Eigen::VectorXd to_double(const RatVec& v);
Eigen::MatrixXd to_double(const RatMatrix& M);

// Closed form of the geodesic through e with initial velocity (zdot0, xdot0):
//   x(t) = int_0^t exp(s J) xdot0 ds,  z(t) = t zdot0 + 1/2 int_0^t [x, x'] ds,
// composite 3-point Gauss-Legendre on `steps` panels.
GeodesicState geodesic(const HTypeAlgebra& alg, const Eigen::VectorXd& zdot0, const Eigen::VectorXd& xdot0, double t,
                       int steps);

// Orbit of exp(t (D, T)) through e for D = (C, A) in h:
//   w(t) = int_0^t exp(s A) wdot0 ds,  v(t) = int_0^t exp(s C) vdot0 + 1/2 [w, w'] ds.
GeodesicState orbit(const HTypeAlgebra& alg, const Eigen::MatrixXd& C, const Eigen::MatrixXd& A, const Eigen::VectorXd& vdot0,
                    const Eigen::VectorXd& wdot0, double t, int steps);

double state_distance(const GeodesicState& a, const GeodesicState& b);

// Max over the panel endpoints t_k = k t_end / steps of the sup-norm gap
// between geodesic(Z, X) and the orbit of the witness B (C recovered exactly
// from B). Throws if C does not exist.
double compare(const HTypeAlgebra& alg, const RatVec& Z, const RatVec& X, const RatMatrix& B, double t_end, int steps);

// Same with a floating-point A (for perturbation tests); C = 0.
double compare_numeric(const HTypeAlgebra& alg, const RatVec& Z, const RatVec& X, const Eigen::MatrixXd& A, double t_end,
                       int steps);

// Empirical order log2(e(n)/e(2n)) of geodesic(t) against a reference with
// ref_steps panels.
double convergence_order(const HTypeAlgebra& alg, const RatVec& Z, const RatVec& X, double t, int steps, int ref_steps);

// "t,z1..zn,x1..xd" rows at t = k*t_end/samples, k = 0..samples.
void write_trace_csv(std::ostream& os, const HTypeAlgebra& alg, const Eigen::VectorXd& zdot0, const Eigen::VectorXd& xdot0,
                     double t_end, int samples, int steps);

}  // namespace hgo

#endif  // HGO_GEOD_HPP
