// Dirichlet L-functions on the critical line and isolation of their
// nontrivial zeros up to a height T, with persisted, certified zero sets.
//
// L(s,chi) for primitive chi is assembled from Hurwitz zeta values,
//     L(s,chi) = q^{-s} sum_{a=1..q} chi(a) zeta(s, a/q),
// and zeta(s,a) is computed by Euler-Maclaurin with truncation
// N = max(30, ceil(1.3 |Im s|)) and Bernoulli numbers through B_24.
//
// Zero detection works on the rotated completed function
//     Z(t) = e^{i theta(t)} L(1/2 + it),
//     theta(t) = Im log Gamma((1/2 + a_chi + it)/2) + (t/2) log(q/pi),
// which is real on the line for real primitive characters (sign changes +
// bisection). For complex characters Z is genuinely complex: |Z| minima are
// flagged together with the phase winding across them and refined by
// minimizing |Z|^2. A zero set is certified when the count matches the
// smooth term of the zero-counting formula within +-(3 + log T) and every
// residual |L(1/2 + i gamma)| is <= 1e-8.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cheb/characters.hpp"
#include "cheb/util.hpp"

namespace cheb {

struct ZeroSet {
    std::uint64_t q = 1;        // modulus of the character the set was built for
    std::uint64_t index = 0;
    std::uint64_t conductor = 1;
    int parity = 0;
    double height_limit = 0.0;  // T
    bool real_character = true; // positive ordinates only when true
    std::vector<double> ordinates; // strictly increasing; signed when complex
    bool certified = false;
    double residual_bound = 0.0;   // max |L(1/2 + i gamma)| over claimed zeros
    std::string diagnostics;

    std::string descriptor() const { return std::to_string(q) + ":" + std::to_string(index); }
    // Count of zeros with |gamma| <= T implied by the stored ordinates.
    std::size_t count_both_signs() const {
        return real_character ? 2 * ordinates.size() : ordinates.size();
    }
    // Explicit signed list (+-gamma for real characters).
    std::vector<double> signed_ordinates() const;
};

// log Gamma, principal branch, valid for Re z > 0.
cplx log_gamma(cplx z);

// Hurwitz zeta(s, a) for 0 < a <= 1, s != 1, |Im s| <= 500; absolute error
// target 1e-10 in that range.
cplx hurwitz_zeta(cplx s, double a);

// L(s, chi) for primitive chi; throws std::invalid_argument for imprimitive
// input (reduce through conductor_and_inducer first).
cplx l_value(const DirichletCharacter& chi, cplx s);

// Rotation phase theta(t) of the completed function on the critical line.
double completed_phase(const DirichletCharacter& chi, double t);

// Z(t) = e^{i theta(t)} L(1/2 + it, chi); real-valued for real primitive chi.
cplx rotated_l(const DirichletCharacter& chi, double t);

// Smooth main term of the zero-counting formula: (T/pi) log(qT/2pi) - T/pi,
// counting zeros with |Im rho| <= T (both signs).
double zero_count_estimate(std::uint64_t q, double T);

struct ZeroSearchOptions {
    double grid_step = 0.01;
    unsigned max_threads = 0; // 0 = hardware default
};

// Locates all zeros with |gamma| <= T (T <= 200) of L(s, chi) for primitive
// chi. On certification failure the grid step is halved once and the scan
// repeated; a still-failing set is returned with certified = false and
// diagnostics, never silently truncated.
ZeroSet find_zeros(const DirichletCharacter& chi, double T, const ZeroSearchOptions& opt = {});

// Zero-database text file: header
//   # CHEBZEROS1 q=<q> index=<i> conductor=<f> parity=<0|1> T=<T> certified=<bool>
// then one fixed-point ordinate per line, 12 decimal places.
void write_zero_file(const std::string& path, const ZeroSet& zs);
bool read_zero_file(const std::string& path, ZeroSet& out);

} // namespace cheb
