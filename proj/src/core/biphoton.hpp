#pragma once

#include "geometry.hpp"
#include "qubit.hpp"

namespace dslit {

// The SPDC source prepares the path Bell state (|0_s 1_i> + |1_s 0_i>)/sqrt(2);
// nothing else is supported.
enum class BiphotonState { PsiPlus };

// Idler detector opening used to herald the signal qubit. width = 0 is an
// idealized point detector.
struct HeraldWindow {
    double center; // meters
    double width;  // meters, >= 0

    HeraldWindow(double c, double w);
};

// Relative phase picked up by the heralded signal state when the idler fires
// at x_i: phi = 2 pi * slit_separation * x_i / (lambda f). Linear and odd.
double herald_phase(double x_i, const SlitGeometry& g);

// Point-herald conditional state (|0> + e^{i phi(x_i)} |1>)/sqrt(2).
QubitState conditional_signal_state(double x_i, const SlitGeometry& g);

// Finite-window herald: envelope-weighted average of the conditional
// projectors over the window. The idler marginal of psi+ is maximally mixed,
// so the weight is the fringe-free envelope; only the coherences shrink as
// the window widens.
MixedState heralded_mixed_state(const HeraldWindow& w, const PatternModel& model);

// Checks that applying the oracle to the heralded state equals heralding
// after the oracle acted on the signal half of psi+, entrywise within tol.
bool verify_commutation(const OracleFunction& f, const HeraldWindow& w, const PatternModel& model,
                        double tol = 1e-9);

} // namespace dslit
