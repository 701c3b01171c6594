#pragma once

#include <complex>

#include "error.hpp"

namespace dslit {

using Complex = std::complex<double>;

inline constexpr double kAlgebraTol = 1e-12; // tolerance for closed-form identities

// Pure path-qubit state: alpha on |0> (inferior slit), beta on |1> (superior slit).
struct QubitState {
    Complex alpha;
    Complex beta;

    QubitState(Complex a, Complex b);

    // Rescales (a, b) to unit norm instead of rejecting it.
    static QubitState normalized(Complex a, Complex b);

    static QubitState zero() { return {{1.0, 0.0}, {0.0, 0.0}}; }
    static QubitState one() { return {{0.0, 0.0}, {1.0, 0.0}}; }
    static QubitState plus();
    static QubitState minus();
};

// 2x2 density matrix in the slit basis. Validated on construction:
// Hermitian, unit trace, positive semidefinite, purity in [1/2, 1].
struct MixedState {
    Complex rho00;
    Complex rho01;
    Complex rho10;
    Complex rho11;

    MixedState(Complex r00, Complex r01, Complex r10, Complex r11);

    static MixedState pure(const QubitState& psi);
    static MixedState maximally_mixed() { return {{0.5, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.5, 0.0}}; }

    double purity() const; // Tr(rho^2)
};

// One-bit function f, stored as (f(0), f(1)). Constant iff f0 == f1.
struct OracleFunction {
    int f0;
    int f1;

    OracleFunction(int f0_, int f1_);
    bool constant() const { return f0 == f1; }
};

// Diagonal map diag(m0, m1) acting on the slit amplitudes. |m_k| <= 1
// (attenuation only); unitary when both moduli are 1.
struct DiagonalMap {
    Complex m0;
    Complex m1;

    DiagonalMap(Complex m0_, Complex m1_);
    bool unitary(double tol = kAlgebraTol) const;
};

struct AppliedState {
    QubitState state;
    double survival; // post-selection probability ||m psi||^2
};

// The four oracle unitaries: diag((-1)^f0, (-1)^f1).
DiagonalMap oracle_unitary(const OracleFunction& f);

// General SLM action diag(A0 e^{i phi0}, A1 e^{i phi1}); rejects A outside [0, 1].
DiagonalMap slm_map(double a0, double phi0, double a1, double phi1);

// Applies a diagonal map as a trace-decreasing post-selected channel and
// renormalizes. Throws Errc::domain when the state is annihilated.
AppliedState apply_map(const DiagonalMap& m, const QubitState& psi);

// Density-matrix version: returns (m rho m^dag / survival, survival).
struct AppliedMixedState {
    MixedState state;
    double survival;
};
AppliedMixedState apply_map(const DiagonalMap& m, const MixedState& rho);

// Runs the one-query algorithm: oracle on |+>, giving |+> (constant) or |-> (balanced)
// up to a global phase.
QubitState deutsch_output(const OracleFunction& f);

// <a|b>; |overlap|^2 is the Born probability.
Complex overlap(const QubitState& a, const QubitState& b);

} // namespace dslit
