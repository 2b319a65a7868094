#include "cheb/explicit_formula.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cheb {

// ---------------------------------------------------------------------------
// ReferenceSpec
// ---------------------------------------------------------------------------
ReferenceSpec ReferenceSpec::pi_scaled(std::optional<Rat64> scale) {
    ReferenceSpec r;
    r.kind = Kind::pi_scaled;
    r.scale_override = scale;
    return r;
}
ReferenceSpec ReferenceSpec::li_scaled(std::optional<Rat64> scale) {
    ReferenceSpec r;
    r.kind = Kind::li_scaled;
    r.scale_override = scale;
    return r;
}
ReferenceSpec ReferenceSpec::quadratic_field(const QuadraticField& F, std::optional<Rat64> scale) {
    ReferenceSpec r;
    r.kind = Kind::pi_field;
    r.field = F;
    r.scale_override = scale;
    return r;
}
ReferenceSpec ReferenceSpec::other_set_of(PrimeSetSpec q) {
    ReferenceSpec r;
    r.kind = Kind::other_set;
    r.other = std::make_shared<PrimeSetSpec>(std::move(q));
    return r;
}

std::string ReferenceSpec::to_string() const {
    switch (kind) {
        case Kind::pi_scaled:
            if (scale_override && *scale_override == Rat64(1, 2)) return "pi-half";
            return "pi";
        case Kind::li_scaled: return "li";
        case Kind::pi_field: return "field:" + std::to_string(field.d);
        case Kind::other_set: return "set:" + other->to_string();
    }
    return "";
}

ReferenceSpec parse_reference_spec(const std::string& text) {
    if (text == "pi") return ReferenceSpec::pi_scaled();
    if (text == "pi-half") return ReferenceSpec::pi_scaled(Rat64(1, 2));
    if (text == "li") return ReferenceSpec::li_scaled();
    if (text.rfind("field:", 0) == 0) {
        long long d = std::stoll(text.substr(6));
        return ReferenceSpec::quadratic_field(QuadraticField(d));
    }
    if (text.rfind("set:", 0) == 0) return ReferenceSpec::other_set_of(parse_set_spec(text.substr(4)));
    throw parse_error("unknown reference spec '" + text + "'", 0);
}

// ---------------------------------------------------------------------------
// ZeroDatabase
// ---------------------------------------------------------------------------
void ZeroDatabase::add(ZeroSet zs) {
    sets_[zs.descriptor()] = std::move(zs);
}

const ZeroSet* ZeroDatabase::find(const std::string& descriptor) const {
    auto it = sets_.find(descriptor);
    return it == sets_.end() ? nullptr : &it->second;
}

const ZeroSet& ZeroDatabase::ensure(const DirichletCharacter& chi, double T,
                                    const ZeroSearchOptions& opt) {
    std::string desc = chi.descriptor();
    auto it = sets_.find(desc);
    if (it != sets_.end() && it->second.height_limit >= T && it->second.certified)
        return it->second;
    ZeroSet zs = find_zeros(chi, T, opt);
    return sets_[desc] = std::move(zs);
}

// ---------------------------------------------------------------------------
// Residue-side data: weights per residue class
// ---------------------------------------------------------------------------
namespace {

struct ResidueData {
    std::uint64_t q = 1;
    std::vector<cplx> weights; // indexed by residue; zero off the support
};

ResidueData residue_data_for(const PrimeSetSpec& set) {
    switch (set.kind()) {
        case PrimeSetSpec::Kind::residue_union: {
            const auto& s = set.as_residue();
            ResidueData rd;
            rd.q = s.q;
            rd.weights.assign(s.q, cplx{0.0, 0.0});
            for (std::uint64_t a : s.classes) rd.weights[a] = cplx{1.0, 0.0};
            return rd;
        }
        case PrimeSetSpec::Kind::frobenius_union: {
            const auto& s = set.as_frobenius();
            const auto& ext = extension_by_id(s.extension_id);
            if (!ext.abelian_reduction)
                throw std::invalid_argument(
                    "extension " + s.extension_id +
                    " is non-abelian: no Dirichlet reduction, zeros unavailable");
            const auto& red = *ext.abelian_reduction;
            ResidueData rd;
            rd.q = red.q;
            rd.weights.assign(red.q, cplx{0.0, 0.0});
            for (const auto& id : s.class_ids)
                for (const auto& [cid, residues] : red.class_residues)
                    if (cid == id)
                        for (std::uint64_t a : residues) rd.weights[a] = cplx{1.0, 0.0};
            return rd;
        }
        case PrimeSetSpec::Kind::weighted: {
            const auto& s = set.as_weighted();
            const auto& ext = extension_by_id(s.extension_id);
            if (!ext.abelian_reduction)
                throw std::invalid_argument(
                    "extension " + s.extension_id +
                    " is non-abelian: no Dirichlet reduction, zeros unavailable");
            const auto& red = *ext.abelian_reduction;
            ResidueData rd;
            rd.q = red.q;
            rd.weights.assign(red.q, cplx{0.0, 0.0});
            for (const auto& [id, w] : s.weights)
                for (const auto& [cid, residues] : red.class_residues)
                    if (cid == id)
                        for (std::uint64_t a : residues) rd.weights[a] += w;
            return rd;
        }
        default:
            throw procedural_set_error(
                "set '" + set.to_string() +
                "' has no L-function structure; explicit-formula assembly refused");
    }
}

// (1/phi) sum_a w_a #{b : b^2 = a mod q}
cplx kappa_of(const ResidueData& rd) {
    std::vector<std::uint32_t> sq(rd.q, 0);
    for (std::uint64_t b = 0; b < rd.q; ++b) ++sq[b * b % rd.q];
    cplx total{0.0, 0.0};
    for (std::uint64_t a = 0; a < rd.q; ++a)
        if (rd.weights[a] != cplx{0.0, 0.0}) total += rd.weights[a] * static_cast<double>(sq[a]);
    return total / static_cast<double>(euler_phi(rd.q));
}

void accumulate_character_coefficients(const ResidueData& rd, cplx sign,
                                       std::map<std::string, cplx>& coef) {
    auto group = character_group(rd.q);
    double phi = static_cast<double>(euler_phi(rd.q));
    for (const auto& chi : group) {
        cplx c{0.0, 0.0};
        for (std::uint64_t a = 0; a < rd.q; ++a) {
            if (rd.weights[a] == cplx{0.0, 0.0}) continue;
            auto v = chi.value(static_cast<long long>(a));
            if (!v) continue;
            c += rd.weights[a] * v->conjugate().to_complex();
        }
        c /= phi;
        if (std::abs(c) < 1e-14) continue;
        auto [f, chi1] = chi.conductor_and_inducer();
        (void)f;
        coef[chi1.descriptor()] += sign * c;
    }
}

// The primitive quadratic character attached to a fundamental discriminant.
DirichletCharacter discriminant_character(long long D) {
    std::uint64_t q = static_cast<std::uint64_t>(D < 0 ? -D : D);
    for (const auto& chi : character_group(q)) {
        if (!chi.is_primitive() && q > 1) continue;
        bool match = true;
        for (std::uint64_t a = 0; a < q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            double expect = static_cast<double>(kronecker_symbol(D, static_cast<long long>(a)));
            if (std::abs(chi.eval(static_cast<long long>(a)).real() - expect) > 1e-12 ||
                std::abs(chi.eval(static_cast<long long>(a)).imag()) > 1e-12) {
                match = false;
                break;
            }
        }
        if (match) return chi;
    }
    throw std::logic_error("no primitive character matches discriminant " + std::to_string(D));
}

// ---------------------------------------------------------------------------
// Smooth Li reference state: a dense log-spaced Li interpolant with exact
// slopes, plus the cumulative integral J(x) = int_2^x (log t/sqrt t) Li(t) dt.
// ---------------------------------------------------------------------------
const double kGl8Nodes[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                             -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                             0.7966664774136267,  0.9602898564975363};
const double kGl8Weights[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                               0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                               0.2223810344533745, 0.1012285362903763};

struct LiRefState {
    double u0 = 0.0, du = 0.0;
    std::vector<double> li_val; // Li(e^{u_i})
    std::vector<double> j_cum;  // J at u_i

    double li_at(double x) const {
        double u = std::log(x);
        if (u <= u0) return 0.0;
        double pos = (u - u0) / du;
        std::size_t i = std::min(static_cast<std::size_t>(pos), li_val.size() - 2);
        double t = (u - (u0 + static_cast<double>(i) * du)) / du;
        double ui = u0 + static_cast<double>(i) * du;
        double ui1 = ui + du;
        // Hermite with exact slopes d/du Li(e^u) = e^u / u
        double m0 = std::exp(ui) / ui * du;
        double m1 = std::exp(ui1) / ui1 * du;
        double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * li_val[i] + (t3 - 2 * t2 + t) * m0 +
               (-2 * t3 + 3 * t2) * li_val[i + 1] + (t3 - t2) * m1;
    }

    double j_partial(double ua, double ub) const {
        double mid = 0.5 * (ua + ub), half = 0.5 * (ub - ua);
        double sum = 0.0;
        for (int k = 0; k < 8; ++k) {
            double u = mid + half * kGl8Nodes[k];
            sum += kGl8Weights[k] * u * std::exp(0.5 * u) * li_at(std::exp(u));
        }
        return half * sum;
    }

    double j_at(double x) const {
        double u = std::log(x);
        if (u <= u0) return 0.0;
        double pos = (u - u0) / du;
        std::size_t i = std::min(static_cast<std::size_t>(pos), j_cum.size() - 2);
        double ui = u0 + static_cast<double>(i) * du;
        return j_cum[i] + j_partial(ui, u);
    }
};

std::shared_ptr<const LiRefState> build_li_state(double x_max) {
    auto st = std::make_shared<LiRefState>();
    const std::size_t n = 1 << 15;
    st->u0 = std::log(2.0);
    st->du = (std::log(x_max) - st->u0) / static_cast<double>(n);
    st->li_val.resize(n + 1);
    st->li_val[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ua = st->u0 + static_cast<double>(i) * st->du;
        double ub = ua + st->du;
        st->li_val[i + 1] =
            st->li_val[i] +
            adaptive_simpson([](double u) { return std::exp(u) / u; }, ua, ub, 1e-13);
    }
    st->j_cum.resize(n + 1);
    st->j_cum[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ua = st->u0 + static_cast<double>(i) * st->du;
        st->j_cum[i + 1] = st->j_cum[i] + st->j_partial(ua, ua + st->du);
    }
    return st;
}

// antiderivative of log t / sqrt t
double step_antiderivative(double t) { return 2.0 * std::sqrt(t) * (std::log(t) - 2.0); }

void build_events(DiscrepancyModel& model, const PrimeTable& table) {
    std::vector<std::pair<double, cplx>> events;

    // set side
    if (model.set.kind() == PrimeSetSpec::Kind::weighted) {
        WeightedCounter wc = materialize_weighted(model.set, table);
        for (const auto& [w, members] : wc.classes)
            for (std::uint64_t p : members) events.push_back({static_cast<double>(p), w});
    } else {
        SetCounter sc = materialize(model.set, table);
        for (std::uint64_t p : sc.members)
            events.push_back({static_cast<double>(p), cplx{1.0, 0.0}});
    }

    // reference side
    switch (model.reference.kind) {
        case ReferenceSpec::Kind::pi_scaled:
            for (std::uint64_t p : table.primes)
                events.push_back({static_cast<double>(p), -model.scale});
            break;
        case ReferenceSpec::Kind::li_scaled: break; // smooth
        case ReferenceSpec::Kind::pi_field: {
            auto norms = dedekind_norms(table, model.reference.field);
            for (std::uint64_t n : norms)
                events.push_back({static_cast<double>(n), -model.scale});
            break;
        }
        case ReferenceSpec::Kind::other_set: {
            SetCounter sc = materialize(*model.reference.other, table);
            for (std::uint64_t p : sc.members)
                events.push_back({static_cast<double>(p), cplx{-1.0, 0.0}});
            break;
        }
    }

    std::sort(events.begin(), events.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    model.event_points.clear();
    model.event_levels.clear();
    model.event_cumint.clear();
    model.event_points.push_back(2.0);
    cplx level{0.0, 0.0};
    std::size_t i = 0;
    while (i < events.size() && events[i].first <= 2.0) level += events[i++].second;
    model.event_levels.push_back(level);
    model.event_cumint.push_back(cplx{0.0, 0.0});
    while (i < events.size()) {
        double u = events[i].first;
        cplx h{0.0, 0.0};
        while (i < events.size() && events[i].first == u) h += events[i++].second;
        double prev = model.event_points.back();
        model.event_cumint.push_back(model.event_cumint.back() +
                                     model.event_levels.back() *
                                         (step_antiderivative(u) - step_antiderivative(prev)));
        model.event_points.push_back(u);
        level += h;
        model.event_levels.push_back(level);
    }

    if (model.reference.kind == ReferenceSpec::Kind::li_scaled)
        model.li_state = build_li_state(static_cast<double>(table.x_max));
}

const LiRefState* li_state_of(const DiscrepancyModel& model) {
    return static_cast<const LiRefState*>(model.li_state.get());
}

cplx counting_difference(const DiscrepancyModel& model, double x) {
    auto it = std::upper_bound(model.event_points.begin(), model.event_points.end(), x);
    std::size_t i = static_cast<std::size_t>(it - model.event_points.begin());
    cplx level = (i == 0) ? cplx{0.0, 0.0} : model.event_levels[i - 1];
    if (const LiRefState* st = li_state_of(model)) level -= model.scale * st->li_at(x);
    return level;
}

} // namespace

// ---------------------------------------------------------------------------
// Model construction
// ---------------------------------------------------------------------------
namespace {

cplx reference_scale(const PrimeSetSpec& set, const ReferenceSpec& ref) {
    if (ref.scale_override) return cplx{ref.scale_override->value(), 0.0};
    if (set.kind() == PrimeSetSpec::Kind::weighted) return set.weighted_mean();
    auto d = set.density();
    if (!d) throw procedural_set_error("set has no density; give an explicit reference scale");
    return cplx{d->value(), 0.0};
}

} // namespace

std::map<std::string, cplx> character_coefficient_map(const PrimeSetSpec& set,
                                                      const ReferenceSpec& reference) {
    ResidueData rd = residue_data_for(set);
    cplx scale = reference_scale(set, reference);
    std::map<std::string, cplx> coef;
    accumulate_character_coefficients(rd, cplx{1.0, 0.0}, coef);
    switch (reference.kind) {
        case ReferenceSpec::Kind::pi_scaled: coef["1:0"] -= scale; break;
        case ReferenceSpec::Kind::li_scaled: break;
        case ReferenceSpec::Kind::pi_field: {
            coef["1:0"] -= scale;
            auto chi_d = discriminant_character(reference.field.discriminant());
            coef[chi_d.descriptor()] -= scale;
            break;
        }
        case ReferenceSpec::Kind::other_set: {
            ResidueData rq = residue_data_for(*reference.other);
            auto ds = set.density();
            auto dq = reference.other->density();
            if (!ds || !dq || !(*ds == *dq))
                throw std::invalid_argument(
                    "other-set reference requires equal densities (main terms must cancel)");
            accumulate_character_coefficients(rq, cplx{-1.0, 0.0}, coef);
            break;
        }
    }
    for (auto it = coef.begin(); it != coef.end();) {
        if (std::abs(it->second) < 1e-12)
            it = coef.erase(it);
        else
            ++it;
    }
    return coef;
}

DiscrepancyModel build_model(const PrimeSetSpec& set, const ReferenceSpec& reference,
                             const PrimeTable& table, const ZeroDatabase& db, double T,
                             bool allow_uncertified) {
    DiscrepancyModel model;
    model.set = set;
    model.reference = reference;
    model.table = &table;
    model.T = T;
    model.has_predictions = true;
    model.certified = true;

    ResidueData rd = residue_data_for(set); // throws for procedural sets
    model.scale = reference_scale(set, reference);
    cplx kappa_set = kappa_of(rd);
    if (set.kind() == PrimeSetSpec::Kind::residue_union) {
        const auto& s = set.as_residue();
        model.kappa = kappa_residue(std::vector<long long>(s.classes.begin(), s.classes.end()), s.q);
    } else if (set.kind() == PrimeSetSpec::Kind::frobenius_union) {
        const auto& s = set.as_frobenius();
        model.kappa = kappa_chebotarev(extension_by_id(s.extension_id), s.class_ids);
    }

    cplx nu_ref{0.0, 0.0};
    switch (reference.kind) {
        case ReferenceSpec::Kind::pi_scaled:
        case ReferenceSpec::Kind::pi_field: nu_ref = model.scale; break;
        case ReferenceSpec::Kind::li_scaled: break;
        case ReferenceSpec::Kind::other_set:
            nu_ref = kappa_of(residue_data_for(*reference.other));
            break;
    }
    model.nu = -kappa_set + nu_ref;

    model.character_coefficients = character_coefficient_map(set, reference);
    const std::map<std::string, cplx>& coef = model.character_coefficients;

    // zeros
    std::vector<ZeroTerm> terms;
    for (const auto& [desc, c] : coef) {
        const ZeroSet* zs = db.find(desc);
        if (!zs)
            throw uncertified_error("zero database has no entry for character " + desc);
        if (zs->height_limit + 1e-12 < T)
            throw uncertified_error("zero set for " + desc + " only reaches T=" +
                                    std::to_string(zs->height_limit));
        if (!zs->certified) {
            if (!allow_uncertified)
                throw uncertified_error("zero set for " + desc + " is not certified");
            model.certified = false;
            model.diagnostics.push_back("using uncertified zeros for " + desc);
        }
        cplx alpha = -c;
        for (double g : zs->signed_ordinates()) {
            if (std::abs(g) >= T) continue;
            terms.push_back({g, alpha, desc});
        }
    }
    std::sort(terms.begin(), terms.end(),
              [](const ZeroTerm& a, const ZeroTerm& b) { return a.gamma < b.gamma; });

    // merge coincident ordinates across characters
    std::vector<ZeroTerm> merged;
    for (auto& t : terms) {
        if (!merged.empty() && std::abs(t.gamma - merged.back().gamma) <= 1e-6) {
            merged.back().alpha += t.alpha;
            merged.back().source = "merged";
            ++model.merged_ordinates;
        } else {
            merged.push_back(t);
        }
    }
    if (model.merged_ordinates > 0)
        model.diagnostics.push_back("merged " + std::to_string(model.merged_ordinates) +
                                    " coincident ordinates (tolerance 1e-6)");

    // fold zeros at the central point into the constant
    std::vector<ZeroTerm> kept;
    for (auto& t : merged) {
        if (std::abs(t.gamma) < 1e-6) {
            model.nu += 2.0 * t.alpha;
            model.diagnostics.push_back("folded ordinate " + std::to_string(t.gamma) +
                                        " into the constant term");
        } else {
            kept.push_back(t);
        }
    }
    model.zero_terms = std::move(kept);

    build_events(model, table);
    return model;
}

DiscrepancyModel build_empirical_model(const PrimeSetSpec& set, const ReferenceSpec& reference,
                                       const PrimeTable& table) {
    DiscrepancyModel model;
    model.set = set;
    model.reference = reference;
    model.table = &table;
    model.has_predictions = false;
    model.certified = false;
    model.scale = reference_scale(set, reference);
    build_events(model, table);
    return model;
}

// ---------------------------------------------------------------------------
// Evaluators
// ---------------------------------------------------------------------------
cplx delta_value(const DiscrepancyModel& model, double x) {
    if (!(x >= 2.0)) throw std::out_of_range("delta: requires x >= 2");
    if (x > static_cast<double>(model.table->x_max))
        throw std::out_of_range("delta: x exceeds table bound");
    return std::log(x) / std::sqrt(x) * counting_difference(model, x);
}

double delta(const DiscrepancyModel& model, double x) { return delta_value(model, x).real(); }

double m_average(const DiscrepancyModel& model, double x) {
    if (x > static_cast<double>(model.table->x_max))
        throw std::out_of_range("m_average: x exceeds table bound");
    if (x <= 2.0) return 0.0;
    auto it = std::upper_bound(model.event_points.begin(), model.event_points.end(), x);
    std::size_t i = static_cast<std::size_t>(it - model.event_points.begin()) - 1;
    cplx integral = model.event_cumint[i] +
                    model.event_levels[i] *
                        (step_antiderivative(x) - step_antiderivative(model.event_points[i]));
    if (const LiRefState* st = li_state_of(model)) integral -= model.scale * st->j_at(x);
    return integral.real() / x;
}

cplx zero_sum_value(const DiscrepancyModel& model, double y, double T) {
    cplx sum{0.0, 0.0};
    for (const ZeroTerm& t : model.zero_terms) {
        if (std::abs(t.gamma) >= T) continue;
        cplx rho{0.5, t.gamma};
        sum += t.alpha * cplx{std::cos(t.gamma * y), std::sin(t.gamma * y)} / rho;
    }
    return sum;
}

namespace {

// trapezoid of f over [a, b] with the given step (last panel shortened)
template <typename F>
double trapezoid(F f, double a, double b, double step) {
    if (b <= a) return 0.0;
    double sum = 0.0;
    double prev = f(a);
    double t = a;
    while (t < b) {
        double next_t = std::min(t + step, b);
        double cur = f(next_t);
        sum += 0.5 * (prev + cur) * (next_t - t);
        prev = cur;
        t = next_t;
    }
    return sum;
}

} // namespace

SmoothedMeanSquare mean_square_smoothed(const DiscrepancyModel& model, double Y) {
    if (std::exp(Y) > static_cast<double>(model.table->x_max) * (1.0 + 1e-12))
        throw std::out_of_range("mean_square_smoothed: e^Y exceeds table bound");
    SmoothedMeanSquare out;
    double a = std::log(2.0);
    double x_cap = static_cast<double>(model.table->x_max);
    out.empirical = trapezoid(
        [&](double y) {
            double m = m_average(model, std::min(std::exp(y), x_cap));
            return m * m;
        },
        a, Y, out.grid_step) / Y;
    if (model.has_predictions) {
        double pred = std::norm(model.nu);
        for (const ZeroTerm& t : model.zero_terms)
            pred += std::norm(t.alpha) / ((0.25 + t.gamma * t.gamma) * (1.0 + t.gamma * t.gamma));
        out.prediction = pred;
    }
    return out;
}

UnsmoothedMeanSquare mean_square_unsmoothed(const DiscrepancyModel& model, double Y, double T) {
    if (std::exp(Y) > static_cast<double>(model.table->x_max) * (1.0 + 1e-12))
        throw std::out_of_range("mean_square_unsmoothed: e^Y exceeds table bound");
    if (model.has_predictions && T > model.T + 1e-12)
        throw std::invalid_argument("mean_square_unsmoothed: T exceeds the model's zero height");
    UnsmoothedMeanSquare out;
    out.lemma_hypothesis_ok = Y > std::sqrt(T) / std::log(T);
    double a = Y / 2.0;
    double x_cap = static_cast<double>(model.table->x_max);
    out.empirical = trapezoid(
        [&](double y) {
            return std::norm(delta_value(model, std::min(std::exp(y), x_cap)));
        },
        a, Y, out.grid_step) / (Y / 2.0);
    if (model.has_predictions) {
        double pred = std::norm(model.nu);
        for (const ZeroTerm& t : model.zero_terms) {
            if (std::abs(t.gamma) >= T) continue;
            pred += std::norm(t.alpha) / (0.25 + t.gamma * t.gamma);
        }
        out.prediction = pred;
        out.residual_mean_square = trapezoid(
            [&](double y) {
                cplx r = delta_value(model, std::min(std::exp(y), x_cap)) -
                         zero_sum_value(model, y, T) - model.nu;
                return std::norm(r);
            },
            a, Y, out.grid_step) / (Y / 2.0);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Truncated explicit formula
// ---------------------------------------------------------------------------
cplx truncated_psi_chi(const DirichletCharacter& chi, double x, double T, const ZeroSet& zeros,
                       bool allow_uncertified) {
    if (!(x >= 2.0)) throw std::invalid_argument("truncated_psi_chi: requires x >= 2");
    if (!zeros.certified && !allow_uncertified)
        throw uncertified_error("truncated_psi_chi: zero set is not certified");
    if (zeros.height_limit + 1e-12 < T)
        throw std::invalid_argument("truncated_psi_chi: zero set does not reach T");
    (void)chi;
    double lx = std::log(x);
    double sx = std::sqrt(x);
    cplx sum{0.0, 0.0};
    for (double g : zeros.signed_ordinates()) {
        if (std::abs(g) >= T) continue;
        cplx rho{0.5, g};
        sum += cplx{std::cos(g * lx), std::sin(g * lx)} / rho;
    }
    return -sx * sum;
}

TruncationCalibration calibrate_truncation(const PrimeTable& table, const DirichletCharacter& chi,
                                           const ZeroSet& zeros, double T, double x_lo,
                                           double x_hi, int n_points) {
    TruncationCalibration cal;
    double lr = std::log(x_hi / x_lo);
    for (int i = 0; i < n_points; ++i) {
        // offset keeps grid points away from prime powers, where the
        // explicit formula converges to the jump midpoint
        double x = x_lo * std::exp(lr * (i + 0.5) / n_points) + 0.25;
        cplx exact = psi_chi(table, chi, x);
        cplx trunc = truncated_psi_chi(chi, x, T, zeros);
        double err = std::abs(exact - trunc);
        double envelope = x * std::pow(std::log(x * T), 2) / T + std::log(x);
        if (err > cal.max_abs_error) {
            cal.max_abs_error = err;
            cal.at_x = x;
        }
        cal.envelope_constant = std::max(cal.envelope_constant, err / envelope);
    }
    return cal;
}

// ---------------------------------------------------------------------------
// Dirichlet integral identity
// ---------------------------------------------------------------------------
DirichletIntegralCheck dirichlet_integral_check(const ResidueUnionSpec& set, cplx s, double x_cut,
                                                const PrimeTable& table) {
    if (s.real() < 1.5)
        throw std::invalid_argument("dirichlet_integral_check: requires Re s >= 1.5");
    if (x_cut > static_cast<double>(table.x_max))
        throw std::out_of_range("dirichlet_integral_check: x_cut exceeds table bound");
    if (!set.added.empty() || !set.removed.empty())
        throw std::invalid_argument(
            "dirichlet_integral_check: exception lists have no Dirichlet-series identity");

    std::uint64_t q = set.q;
    double phi = static_cast<double>(euler_phi(q));
    double density = static_cast<double>(set.classes.size()) / phi;

    // lhs: exact piecewise integral of the prime-power step function
    std::vector<char> in_class(q, 0);
    for (std::uint64_t a : set.classes) in_class[a] = 1;
    cplx x_term = std::exp(-s * std::log(x_cut));
    cplx lhs{0.0, 0.0};
    for (const PrimePower& pp : table.prime_powers) {
        if (static_cast<double>(pp.value) > x_cut) break;
        double h = (in_class[pp.value % q] ? 1.0 : 0.0) - density;
        if (h == 0.0) continue;
        h /= static_cast<double>(pp.k);
        cplx u_term = std::exp(-s * std::log(static_cast<double>(pp.value)));
        lhs += h * (u_term - x_term);
    }
    lhs /= s;

    // rhs: (1/s) sum_{chi != chi0} c_chi log L(s,chi) + ramified zeta part
    cplx rhs{0.0, 0.0};
    std::vector<long long> classes_ll(set.classes.begin(), set.classes.end());
    for (const auto& chi : character_group(q)) {
        if (chi.is_principal()) continue;
        cplx c = c_chi(classes_ll, q, chi);
        if (std::abs(c) < 1e-15) continue;
        auto [f, chi1] = chi.conductor_and_inducer();
        cplx logl = std::log(l_value(chi1, s));
        // restore the Euler factors dropped by the imprimitive character
        for (std::uint64_t p = 2; p <= q; ++p) {
            if (q % p != 0 || !std::binary_search(table.primes.begin(), table.primes.end(), p))
                continue;
            if (f % p == 0) continue;
            cplx factor = 1.0 - chi1.eval(static_cast<long long>(p % f)) *
                                    std::exp(-s * std::log(static_cast<double>(p)));
            logl += std::log(factor);
        }
        rhs += c * logl;
    }
    for (std::uint64_t p = 2; p <= q; ++p) {
        if (q % p != 0 || !std::binary_search(table.primes.begin(), table.primes.end(), p))
            continue;
        rhs += density * std::log(1.0 - std::exp(-s * std::log(static_cast<double>(p))));
    }
    rhs /= s;

    DirichletIntegralCheck out;
    out.lhs = lhs;
    out.rhs = rhs;
    out.gap = std::abs(lhs - rhs);
    // |numerator| <= C sqrt(x)/log x beyond the cut, C ~ density + kappa + 1
    double C = 3.0;
    out.tail_bound = C / std::log(x_cut) * std::pow(x_cut, 0.5 - s.real()) / (s.real() - 0.5);
    return out;
}

} // namespace cheb
