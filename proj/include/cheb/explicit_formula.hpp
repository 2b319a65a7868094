// Assembly of the truncated explicit formula for a discrepancy pair
// (prime set, reference count), and the statistics built on it.
//
// For a residue-type set S (weights w_a on residues a mod q) and a reference
// f(x), the normalized discrepancy is
//
//     Delta(x) = (log x / sqrt x) (S(x) - f(x)),
//
// and on a logarithmic scale Delta(e^y) is approximated by the finite
// oscillating sum
//
//     sum_{0 < |gamma| < T} alpha_rho e^{i gamma y} / rho  +  nu,
//     rho = 1/2 + i gamma,
//
// where the alpha_rho collect -c_chi = -(1/phi(q)) sum_a w_a conj(chi(a))
// over the zeros of each L(s, chi_1) (chi_1 the primitive inducer; the
// principal character contributes through zeta's zeros), and the reference
// choice shifts both the zero coefficients and the constant:
//
//     reference a/b pi(x):      zeta terms cancel,      nu = a/b - kappa
//     reference a/b Li(x):      zeta terms survive,     nu =     - kappa
//     reference a/b pi(x,F):    zeta and chi_D cancel/enter, nu = a/b - kappa
//     reference Q(x):           Q's own terms subtract, nu = kappa_Q - kappa
//
// kappa = (1/phi(q)) sum_a w_a #{b : b^2 = a mod q} is the prime-square
// bias weight. Zeros within 1e-6 of the real axis would be folded into nu
// (as 2 alpha); coincident ordinates across characters are merged at 1e-6
// with a diagnostic.
//
// Two mean squares are measured and predicted:
//   smoothed:   (1/Y) int_{log 2}^{Y} |M(e^y)|^2 dy
//                 -> sum |alpha|^2 / (|rho|^2 |1 + i gamma|^2) + nu^2,
//               M(x) = (1/x) int_2^x Delta(t) dt (exact piecewise),
//   unsmoothed: (1/(Y/2)) int_{Y/2}^{Y} |Delta(e^y)|^2 dy
//                 -> sum |alpha|^2 / |rho|^2 + nu^2,
// plus the mean square of the truncation residual
//     r(y,T) = Delta(e^y) - zero sum - nu.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cheb/characters.hpp"
#include "cheb/counting.hpp"
#include "cheb/frobenius.hpp"
#include "cheb/lfunc.hpp"
#include "cheb/primesets.hpp"
#include "cheb/sieve.hpp"
#include "cheb/util.hpp"

namespace cheb {

// ---------------------------------------------------------------------------
// Reference counts
// ---------------------------------------------------------------------------
struct ReferenceSpec {
    enum class Kind { pi_scaled, li_scaled, pi_field, other_set };
    Kind kind = Kind::pi_scaled;
    std::optional<Rat64> scale_override; // default: the set's density
    QuadraticField field;                // pi_field only
    std::shared_ptr<PrimeSetSpec> other; // other_set only

    static ReferenceSpec pi_scaled(std::optional<Rat64> scale = std::nullopt);
    static ReferenceSpec li_scaled(std::optional<Rat64> scale = std::nullopt);
    static ReferenceSpec quadratic_field(const QuadraticField& F,
                                         std::optional<Rat64> scale = std::nullopt);
    static ReferenceSpec other_set_of(PrimeSetSpec q);

    std::string to_string() const;
};

// Parses "pi", "pi-half", "li", "field:<d>", "set:<set spec>".
ReferenceSpec parse_reference_spec(const std::string& text);

// ---------------------------------------------------------------------------
// Zero database
// ---------------------------------------------------------------------------
class ZeroDatabase {
public:
    void add(ZeroSet zs);
    const ZeroSet* find(const std::string& descriptor) const;
    // Returns the stored set if it covers height T (certified unless
    // allow_uncertified); otherwise computes it with find_zeros and stores it.
    const ZeroSet& ensure(const DirichletCharacter& chi, double T,
                          const ZeroSearchOptions& opt = {});
    const std::map<std::string, ZeroSet>& all() const { return sets_; }

private:
    std::map<std::string, ZeroSet> sets_;
};

// ---------------------------------------------------------------------------
// Discrepancy model
// ---------------------------------------------------------------------------
struct ZeroTerm {
    double gamma = 0.0;      // signed ordinate
    cplx alpha;              // coefficient
    std::string source;      // primitive character descriptor, "merged" if combined
};

struct DiscrepancyModel {
    PrimeSetSpec set;
    ReferenceSpec reference;
    const PrimeTable* table = nullptr;

    cplx scale;                    // a/b (or the weighted mean lambda)
    Rat64 kappa;                   // set-side square-root weight
    cplx nu;                       // constant term
    double T = 0.0;                // truncation height of the alpha map
    std::vector<ZeroTerm> zero_terms;
    int merged_ordinates = 0;
    bool has_predictions = false;  // false for empirical-only models (P_odd)
    bool certified = false;
    std::vector<std::string> diagnostics;

    // per-character coefficients on primitive inducers (descriptor -> c_eff)
    std::map<std::string, cplx> character_coefficients;

    // evaluation state: jump events and exact cumulative integrals
    std::vector<double> event_points;  // sorted, first entry is 2.0
    std::vector<cplx> event_levels;    // D(t) level on [u_i, u_{i+1})
    std::vector<cplx> event_cumint;    // integral of (log t/sqrt t) D up to u_i
    // smooth reference part (li-scaled): Li interpolant + cumulative J
    std::shared_ptr<const void> li_state;
};

// The combined c coefficients per primitive character descriptor for a
// set/reference pair, before any zeros are attached. Exact cancellations
// are pruned; the keys name the zero sets a model will need.
std::map<std::string, cplx> character_coefficient_map(const PrimeSetSpec& set,
                                                      const ReferenceSpec& reference);

// Builds the full analytic model. Throws procedural_set_error for sets with
// no L-function structure (P_odd, procedural), std::invalid_argument for
// non-abelian Frobenius input, uncertified_error when the zero database
// cannot supply certified zeros to height T (unless allow_uncertified).
DiscrepancyModel build_model(const PrimeSetSpec& set, const ReferenceSpec& reference,
                             const PrimeTable& table, const ZeroDatabase& db, double T,
                             bool allow_uncertified = false);

// Counting-only model: Delta, M and the empirical mean squares work, and the
// predictions are absent. Accepts any countable set, including P_odd.
DiscrepancyModel build_empirical_model(const PrimeSetSpec& set, const ReferenceSpec& reference,
                                       const PrimeTable& table);

// Delta(x) = (log x / sqrt x)(S(x) - f(x)); exact from counts.
double delta(const DiscrepancyModel& model, double x);
cplx delta_value(const DiscrepancyModel& model, double x); // complex for weighted sets

// M(x) = (1/x) int_2^x Delta(t) dt, exact piecewise between jumps
// (plus machine-accurate quadrature of the smooth Li part when present).
double m_average(const DiscrepancyModel& model, double x);

// Finite zero sum sum_{0<|gamma|<T} alpha e^{i gamma y} / rho.
cplx zero_sum_value(const DiscrepancyModel& model, double y, double T);

struct SmoothedMeanSquare {
    double empirical = 0.0;
    std::optional<double> prediction;
    double grid_step = 1e-3;
};
SmoothedMeanSquare mean_square_smoothed(const DiscrepancyModel& model, double Y);

struct UnsmoothedMeanSquare {
    double empirical = 0.0;
    std::optional<double> prediction;
    std::optional<double> residual_mean_square; // mean square of r(y,T)
    bool lemma_hypothesis_ok = true;            // Y > sqrt(T)/log T
    double grid_step = 1e-3;
};
UnsmoothedMeanSquare mean_square_unsmoothed(const DiscrepancyModel& model, double Y, double T);

// ---------------------------------------------------------------------------
// Truncated explicit formula for a single character
// ---------------------------------------------------------------------------

// -sum_{|gamma|<T} x^rho / rho over the zeros of L(s, chi); zeros must be
// certified to height >= T unless allow_uncertified.
cplx truncated_psi_chi(const DirichletCharacter& chi, double x, double T, const ZeroSet& zeros,
                       bool allow_uncertified = false);

struct TruncationCalibration {
    double max_abs_error = 0.0;  // max |psi(x,chi) - truncated|
    double envelope_constant = 0.0; // max error / (x log(xT)^2 / T + log x)
    double at_x = 0.0;           // where the max occurred
};
// Calibrates the error envelope over a log-spaced grid of n_points in
// [x_lo, x_hi] against the exact psi(x,chi).
TruncationCalibration calibrate_truncation(const PrimeTable& table, const DirichletCharacter& chi,
                                           const ZeroSet& zeros, double T, double x_lo,
                                           double x_hi, int n_points);

// ---------------------------------------------------------------------------
// Dirichlet-integral identity (Re s > 1)
// ---------------------------------------------------------------------------
struct DirichletIntegralCheck {
    cplx lhs;        // exact piecewise integral up to x_cut
    cplx rhs;        // (1/s) sum_chi c_chi log L(s,chi) + ramified correction
    double gap = 0.0;
    double tail_bound = 0.0; // analytic bound on the truncated tail
};
// Residue classes only (no exceptions). Requires Re s >= 1.5, x_cut <= x_max.
DirichletIntegralCheck dirichlet_integral_check(const ResidueUnionSpec& set, cplx s, double x_cut,
                                                const PrimeTable& table);

} // namespace cheb
