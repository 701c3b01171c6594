#include "qubit.hpp"

#include <cmath>

namespace dslit {

namespace {

bool finite(Complex z)
{
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

} // namespace

QubitState::QubitState(Complex a, Complex b) : alpha(a), beta(b)
{
    if (!finite(a) || !finite(b))
        fail(Errc::invalid_argument, "qubit state has non-finite amplitudes");
    const double norm2 = std::norm(a) + std::norm(b);
    if (std::abs(norm2 - 1.0) > 1e-9)
        fail(Errc::invalid_argument, "qubit state is not normalized");
}

QubitState QubitState::normalized(Complex a, Complex b)
{
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    if (!(norm > 0.0) || !std::isfinite(norm))
        fail(Errc::domain, "cannot normalize a zero or non-finite state");
    return {a / norm, b / norm};
}

QubitState QubitState::plus()
{
    const double s = 1.0 / std::sqrt(2.0);
    return {{s, 0.0}, {s, 0.0}};
}

QubitState QubitState::minus()
{
    const double s = 1.0 / std::sqrt(2.0);
    return {{s, 0.0}, {-s, 0.0}};
}

MixedState::MixedState(Complex r00, Complex r01, Complex r10, Complex r11)
    : rho00(r00), rho01(r01), rho10(r10), rho11(r11)
{
    if (!finite(r00) || !finite(r01) || !finite(r10) || !finite(r11))
        fail(Errc::invalid_argument, "density matrix has non-finite entries");
    if (std::abs(r10 - std::conj(r01)) > 1e-9)
        fail(Errc::invalid_argument, "density matrix is not Hermitian");
    if (std::abs(r00.imag()) > 1e-9 || std::abs(r11.imag()) > 1e-9)
        fail(Errc::invalid_argument, "density matrix diagonal is not real");
    const double trace = r00.real() + r11.real();
    if (std::abs(trace - 1.0) > 1e-9)
        fail(Errc::invalid_argument, "density matrix trace is not 1");
    // Eigenvalues of [[p, c], [c*, 1-p]]: (1 +- sqrt((2p-1)^2 + 4|c|^2)) / 2.
    const double disc = std::sqrt(std::pow(r00.real() - r11.real(), 2) + 4.0 * std::norm(r01));
    const double lambda_min = 0.5 * (trace - disc);
    if (lambda_min < -1e-9)
        fail(Errc::invalid_argument, "density matrix is not positive semidefinite");
}

MixedState MixedState::pure(const QubitState& psi)
{
    return {psi.alpha * std::conj(psi.alpha), psi.alpha * std::conj(psi.beta),
            psi.beta * std::conj(psi.alpha), psi.beta * std::conj(psi.beta)};
}

double MixedState::purity() const
{
    return std::norm(rho00) + std::norm(rho11) + 2.0 * std::norm(rho01);
}

OracleFunction::OracleFunction(int f0_, int f1_) : f0(f0_), f1(f1_)
{
    if ((f0 != 0 && f0 != 1) || (f1 != 0 && f1 != 1))
        fail(Errc::invalid_argument, "oracle function values must be bits");
}

DiagonalMap::DiagonalMap(Complex m0_, Complex m1_) : m0(m0_), m1(m1_)
{
    if (!finite(m0) || !finite(m1))
        fail(Errc::invalid_argument, "diagonal map has non-finite entries");
    if (std::abs(m0) > 1.0 + kAlgebraTol || std::abs(m1) > 1.0 + kAlgebraTol)
        fail(Errc::invalid_argument, "diagonal map entries exceed unit modulus (unphysical gain)");
}

bool DiagonalMap::unitary(double tol) const
{
    return std::abs(std::abs(m0) - 1.0) <= tol && std::abs(std::abs(m1) - 1.0) <= tol;
}

DiagonalMap oracle_unitary(const OracleFunction& f)
{
    return {{f.f0 == 0 ? 1.0 : -1.0, 0.0}, {f.f1 == 0 ? 1.0 : -1.0, 0.0}};
}

DiagonalMap slm_map(double a0, double phi0, double a1, double phi1)
{
    if (!(a0 >= 0.0 && a0 <= 1.0) || !(a1 >= 0.0 && a1 <= 1.0))
        fail(Errc::invalid_argument, "SLM attenuation must lie in [0, 1]");
    return {std::polar(a0, phi0), std::polar(a1, phi1)};
}

AppliedState apply_map(const DiagonalMap& m, const QubitState& psi)
{
    const Complex a = m.m0 * psi.alpha;
    const Complex b = m.m1 * psi.beta;
    const double survival = std::norm(a) + std::norm(b);
    if (survival <= 0.0)
        fail(Errc::domain, "state annihilated: map absorbed all amplitude");
    if (m.unitary())
        return {QubitState(a, b), 1.0};
    const double s = std::sqrt(survival);
    return {QubitState::normalized(a / s, b / s), survival};
}

AppliedMixedState apply_map(const DiagonalMap& m, const MixedState& rho)
{
    // (m rho m^dag)_{jk} = m_j rho_{jk} conj(m_k)
    const Complex r00 = m.m0 * rho.rho00 * std::conj(m.m0);
    const Complex r01 = m.m0 * rho.rho01 * std::conj(m.m1);
    const Complex r10 = m.m1 * rho.rho10 * std::conj(m.m0);
    const Complex r11 = m.m1 * rho.rho11 * std::conj(m.m1);
    const double survival = r00.real() + r11.real();
    if (survival <= 0.0)
        fail(Errc::domain, "state annihilated: map absorbed all amplitude");
    return {MixedState(r00 / survival, r01 / survival, r10 / survival, r11 / survival), survival};
}

QubitState deutsch_output(const OracleFunction& f)
{
    return apply_map(oracle_unitary(f), QubitState::plus()).state;
}

Complex overlap(const QubitState& a, const QubitState& b)
{
    return std::conj(a.alpha) * b.alpha + std::conj(a.beta) * b.beta;
}

} // namespace dslit
