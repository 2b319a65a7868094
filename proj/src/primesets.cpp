#include "cheb/primesets.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <numeric>
#include <set>
#include <sstream>

#include "cheb/counting.hpp"

namespace cheb {

// ---------------------------------------------------------------------------
// Construction and validation
// ---------------------------------------------------------------------------
namespace {

void check_exception_lists(const std::vector<std::uint64_t>& added,
                           const std::vector<std::uint64_t>& removed) {
    std::set<std::uint64_t> a(added.begin(), added.end());
    if (a.size() != added.size())
        throw std::invalid_argument("duplicate primes in add list");
    std::set<std::uint64_t> r(removed.begin(), removed.end());
    if (r.size() != removed.size())
        throw std::invalid_argument("duplicate primes in remove list");
    for (std::uint64_t p : removed)
        if (a.count(p))
            throw std::invalid_argument("prime " + std::to_string(p) +
                                        " appears in both add and remove lists");
}

bool residue_union_contains(const ResidueUnionSpec& s, std::uint64_t p) {
    return std::binary_search(s.classes.begin(), s.classes.end(), p % s.q);
}

// Membership in the raw class union (before exceptions).
bool frobenius_union_contains(const FrobeniusUnionSpec& s, const ExtensionCatalogEntry& ext,
                              std::uint64_t p) {
    if (ext.is_ramified(p)) return false;
    std::string c = ext.classify(p);
    return std::find(s.class_ids.begin(), s.class_ids.end(), c) != s.class_ids.end();
}

void validate_exception_primality(const PrimeTable& table, const std::vector<std::uint64_t>& ps) {
    for (std::uint64_t p : ps) {
        if (p > table.x_max)
            throw std::invalid_argument("exception prime " + std::to_string(p) +
                                        " exceeds the sieve bound");
        if (!std::binary_search(table.primes.begin(), table.primes.end(), p))
            throw std::invalid_argument("exception entry " + std::to_string(p) +
                                        " is not prime");
    }
}

} // namespace

PrimeSetSpec PrimeSetSpec::residue(std::uint64_t q, const std::vector<long long>& classes,
                                   std::vector<std::uint64_t> added,
                                   std::vector<std::uint64_t> removed) {
    PrimeSetSpec s;
    s.kind_ = Kind::residue_union;
    s.residue_.q = q;
    s.residue_.classes = canonicalize_classes(classes, q);
    std::sort(added.begin(), added.end());
    std::sort(removed.begin(), removed.end());
    check_exception_lists(added, removed);
    for (std::uint64_t p : added)
        if (residue_union_contains(s.residue_, p))
            throw std::invalid_argument("added prime " + std::to_string(p) +
                                        " already lies in the residue union");
    for (std::uint64_t p : removed)
        if (!residue_union_contains(s.residue_, p))
            throw std::invalid_argument("removed prime " + std::to_string(p) +
                                        " does not lie in the residue union");
    s.residue_.added = std::move(added);
    s.residue_.removed = std::move(removed);
    return s;
}

PrimeSetSpec PrimeSetSpec::frobenius(const std::string& extension_id,
                                     std::vector<std::string> class_ids,
                                     std::vector<std::uint64_t> added,
                                     std::vector<std::uint64_t> removed) {
    const ExtensionCatalogEntry& ext = extension_by_id(extension_id); // validates id
    std::set<std::string> seen;
    for (const auto& c : class_ids) {
        ext.group.class_index(c); // validates
        if (!seen.insert(c).second)
            throw std::invalid_argument("duplicate conjugacy class id: " + c);
    }
    std::sort(added.begin(), added.end());
    std::sort(removed.begin(), removed.end());
    check_exception_lists(added, removed);
    PrimeSetSpec s;
    s.kind_ = Kind::frobenius_union;
    s.frobenius_.extension_id = extension_id;
    s.frobenius_.class_ids = std::move(class_ids);
    s.frobenius_.added = std::move(added);
    s.frobenius_.removed = std::move(removed);
    // exception-vs-union consistency needs the classifier
    for (std::uint64_t p : s.frobenius_.added)
        if (frobenius_union_contains(s.frobenius_, ext, p))
            throw std::invalid_argument("added prime " + std::to_string(p) +
                                        " already lies in the class union");
    for (std::uint64_t p : s.frobenius_.removed)
        if (!frobenius_union_contains(s.frobenius_, ext, p))
            throw std::invalid_argument("removed prime " + std::to_string(p) +
                                        " does not lie in the class union");
    return s;
}

PrimeSetSpec PrimeSetSpec::weighted(const std::string& extension_id,
                                    std::vector<std::pair<std::string, cplx>> weights) {
    const ExtensionCatalogEntry& ext = extension_by_id(extension_id);
    std::set<std::string> seen;
    double total = 0.0;
    for (auto& [id, w] : weights) {
        ext.group.class_index(id);
        if (!seen.insert(id).second)
            throw std::invalid_argument("duplicate conjugacy class id: " + id);
        total += std::abs(w);
    }
    if (total == 0.0)
        throw std::invalid_argument("weighted set requires sum |lambda_j| != 0");
    PrimeSetSpec s;
    s.kind_ = Kind::weighted;
    s.weighted_.extension_id = extension_id;
    s.weighted_.weights = std::move(weights);
    return s;
}

PrimeSetSpec PrimeSetSpec::podd() {
    PrimeSetSpec s;
    s.kind_ = Kind::odd_indexed;
    return s;
}

PrimeSetSpec PrimeSetSpec::procedural(std::string label,
                                      std::function<bool(std::uint64_t)> member) {
    PrimeSetSpec s;
    s.kind_ = Kind::procedural;
    s.procedural_.label = std::move(label);
    s.procedural_.member = std::move(member);
    return s;
}

const ResidueUnionSpec& PrimeSetSpec::as_residue() const {
    if (kind_ != Kind::residue_union) throw std::logic_error("not a residue union");
    return residue_;
}
const FrobeniusUnionSpec& PrimeSetSpec::as_frobenius() const {
    if (kind_ != Kind::frobenius_union) throw std::logic_error("not a frobenius union");
    return frobenius_;
}
const WeightedSpec& PrimeSetSpec::as_weighted() const {
    if (kind_ != Kind::weighted) throw std::logic_error("not a weighted set");
    return weighted_;
}
const ProceduralSpec& PrimeSetSpec::as_procedural() const {
    if (kind_ != Kind::procedural) throw std::logic_error("not a procedural set");
    return procedural_;
}

std::optional<Rat64> PrimeSetSpec::density() const {
    switch (kind_) {
        case Kind::residue_union:
            return Rat64(static_cast<long long>(residue_.classes.size()),
                         static_cast<long long>(euler_phi(residue_.q)));
        case Kind::frobenius_union: {
            const auto& ext = extension_by_id(frobenius_.extension_id);
            long long num = 0;
            for (const auto& id : frobenius_.class_ids)
                num += static_cast<long long>(ext.group.class_sizes[ext.group.class_index(id)]);
            return Rat64(num, static_cast<long long>(ext.group.order));
        }
        case Kind::odd_indexed: return Rat64(1, 2);
        default: return std::nullopt;
    }
}

cplx PrimeSetSpec::weighted_mean() const {
    const auto& ext = extension_by_id(as_weighted().extension_id);
    cplx sum{0.0, 0.0};
    for (const auto& [id, w] : weighted_.weights)
        sum += w * static_cast<double>(ext.group.class_sizes[ext.group.class_index(id)]);
    return sum / static_cast<double>(ext.group.order);
}

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------
namespace {

std::string join_u64(const std::vector<std::uint64_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

std::string format_weight(cplx w) {
    std::ostringstream os;
    os << w.real();
    if (w.imag() != 0.0) os << (w.imag() > 0 ? "+" : "") << w.imag() << "i";
    return os.str();
}

} // namespace

std::string PrimeSetSpec::to_string() const {
    switch (kind_) {
        case Kind::residue_union:
            return "residue q=" + std::to_string(residue_.q) + " classes=" +
                   join_u64(residue_.classes) + " add=" + join_u64(residue_.added) +
                   " remove=" + join_u64(residue_.removed);
        case Kind::frobenius_union: {
            std::string cls;
            for (std::size_t i = 0; i < frobenius_.class_ids.size(); ++i) {
                if (i) cls += ",";
                cls += frobenius_.class_ids[i];
            }
            return "frobenius ext=" + frobenius_.extension_id + " classes=" + cls +
                   " add=" + join_u64(frobenius_.added) + " remove=" + join_u64(frobenius_.removed);
        }
        case Kind::weighted: {
            std::string cls;
            for (std::size_t i = 0; i < weighted_.weights.size(); ++i) {
                if (i) cls += ",";
                cls += weighted_.weights[i].first + ":" + format_weight(weighted_.weights[i].second);
            }
            return "weighted ext=" + weighted_.extension_id + " classes=" + cls;
        }
        case Kind::odd_indexed: return "podd";
        case Kind::procedural: return "procedural:" + procedural_.label;
    }
    return "";
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------
namespace {

struct Tokenizer {
    const std::string& text;
    std::size_t pos = 0;

    void skip_spaces() {
        while (pos < text.size() && text[pos] == ' ') ++pos;
    }
    bool done() {
        skip_spaces();
        return pos >= text.size();
    }
    // reads a bare word up to a delimiter
    std::string word(const char* delims) {
        skip_spaces();
        return raw_word(delims);
    }
    // same, but an empty value before a delimiter stays empty
    std::string raw_word(const char* delims) {
        std::size_t start = pos;
        while (pos < text.size() && !strchr(delims, text[pos])) ++pos;
        return text.substr(start, pos - start);
    }
};

std::vector<std::uint64_t> parse_u64_list(const std::string& value, std::size_t value_pos) {
    std::vector<std::uint64_t> out;
    std::size_t i = 0;
    while (i < value.size()) {
        std::size_t j = value.find(',', i);
        if (j == std::string::npos) j = value.size();
        std::string item = value.substr(i, j - i);
        if (item.empty()) throw parse_error("empty list item", value_pos + i);
        for (char c : item)
            if (!isdigit(static_cast<unsigned char>(c)))
                throw parse_error("expected unsigned integer, got '" + item + "'", value_pos + i);
        out.push_back(std::stoull(item));
        i = j + 1;
    }
    return out;
}

std::vector<long long> parse_i64_list(const std::string& value, std::size_t value_pos) {
    std::vector<long long> out;
    for (auto v : parse_u64_list(value, value_pos)) out.push_back(static_cast<long long>(v));
    return out;
}

} // namespace

PrimeSetSpec parse_set_spec(const std::string& text) {
    Tokenizer tz{text};
    std::string kind = tz.word(" ");
    if (kind.empty()) throw parse_error("empty set specification", 0);

    if (kind == "podd") {
        if (!tz.done()) throw parse_error("unexpected trailing input after 'podd'", tz.pos);
        return PrimeSetSpec::podd();
    }

    if (kind != "residue" && kind != "frobenius" && kind != "weighted")
        throw parse_error("unknown set kind '" + kind + "'", 0);

    // key=value pairs
    std::vector<std::pair<std::string, std::pair<std::string, std::size_t>>> kvs;
    while (!tz.done()) {
        std::size_t key_pos = tz.pos;
        std::string key = tz.word("= ");
        if (tz.pos >= text.size() || text[tz.pos] != '=')
            throw parse_error("expected '=' after key '" + key + "'", key_pos);
        ++tz.pos; // consume '='
        std::size_t value_pos = tz.pos;
        std::string value = tz.raw_word(" ");
        kvs.push_back({key, {value, value_pos}});
    }

    auto find_kv = [&](const std::string& key) -> const std::pair<std::string, std::size_t>* {
        for (const auto& [k, v] : kvs)
            if (k == key) return &v;
        return nullptr;
    };
    auto require_kv = [&](const std::string& key) -> const std::pair<std::string, std::size_t>& {
        auto* v = find_kv(key);
        if (!v) throw parse_error("missing required key '" + key + "'", text.size());
        return *v;
    };
    // reject unknown keys
    auto known = (kind == "residue") ? std::vector<std::string>{"q", "classes", "add", "remove"}
                                     : std::vector<std::string>{"ext", "classes", "add", "remove"};
    if (kind == "weighted") known = {"ext", "classes"};
    for (const auto& [k, v] : kvs) {
        if (std::find(known.begin(), known.end(), k) == known.end())
            throw parse_error("unknown key '" + k + "'", v.second - k.size() - 1);
        std::size_t count = 0;
        for (const auto& [k2, v2] : kvs)
            if (k2 == k) ++count;
        if (count > 1) throw parse_error("duplicate key '" + k + "'", v.second - k.size() - 1);
    }

    if (kind == "residue") {
        const auto& qv = require_kv("q");
        for (char c : qv.first)
            if (!isdigit(static_cast<unsigned char>(c)))
                throw parse_error("q must be a positive integer", qv.second);
        std::uint64_t q = std::stoull(qv.first);
        const auto& cls = require_kv("classes");
        auto classes = parse_i64_list(cls.first, cls.second);
        std::vector<std::uint64_t> added, removed;
        if (auto* a = find_kv("add"); a && !a->first.empty()) added = parse_u64_list(a->first, a->second);
        if (auto* r = find_kv("remove"); r && !r->first.empty())
            removed = parse_u64_list(r->first, r->second);
        try {
            return PrimeSetSpec::residue(q, classes, added, removed);
        } catch (const std::invalid_argument& e) {
            throw parse_error(e.what(), cls.second);
        }
    }

    if (kind == "frobenius") {
        const auto& ext = require_kv("ext");
        const auto& cls = require_kv("classes");
        std::vector<std::string> ids;
        std::size_t i = 0;
        while (i <= cls.first.size()) {
            std::size_t j = cls.first.find(',', i);
            if (j == std::string::npos) j = cls.first.size();
            std::string item = cls.first.substr(i, j - i);
            if (item.empty()) throw parse_error("empty class id", cls.second + i);
            ids.push_back(item);
            i = j + 1;
        }
        std::vector<std::uint64_t> added, removed;
        if (auto* a = find_kv("add"); a && !a->first.empty()) added = parse_u64_list(a->first, a->second);
        if (auto* r = find_kv("remove"); r && !r->first.empty())
            removed = parse_u64_list(r->first, r->second);
        try {
            return PrimeSetSpec::frobenius(ext.first, ids, added, removed);
        } catch (const std::invalid_argument& e) {
            throw parse_error(e.what(), ext.second);
        }
    }

    // weighted
    const auto& ext = require_kv("ext");
    const auto& cls = require_kv("classes");
    std::vector<std::pair<std::string, cplx>> weights;
    std::size_t i = 0;
    while (i <= cls.first.size() && !cls.first.empty()) {
        std::size_t j = cls.first.find(',', i);
        if (j == std::string::npos) j = cls.first.size();
        std::string item = cls.first.substr(i, j - i);
        std::size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw parse_error("expected class:weight, got '" + item + "'", cls.second + i);
        std::string id = item.substr(0, colon);
        std::string wtext = item.substr(colon + 1);
        try {
            std::size_t used = 0;
            double w = std::stod(wtext, &used);
            if (used != wtext.size()) throw std::invalid_argument("trailing");
            weights.push_back({id, cplx{w, 0.0}});
        } catch (const std::exception&) {
            throw parse_error("bad weight '" + wtext + "'", cls.second + i + colon + 1);
        }
        i = j + 1;
        if (j == cls.first.size()) break;
    }
    try {
        return PrimeSetSpec::weighted(ext.first, weights);
    } catch (const std::invalid_argument& e) {
        throw parse_error(e.what(), ext.second);
    }
}

// ---------------------------------------------------------------------------
// Membership and counting
// ---------------------------------------------------------------------------
namespace {

// Applies fn to every member prime <= x, in increasing order.
template <typename F>
void for_each_member(const PrimeSetSpec& spec, const PrimeTable& table, double x, F fn) {
    switch (spec.kind()) {
        case PrimeSetSpec::Kind::residue_union: {
            const auto& s = spec.as_residue();
            validate_exception_primality(table, s.added);
            validate_exception_primality(table, s.removed);
            std::vector<char> in_class(s.q, 0);
            for (std::uint64_t a : s.classes) in_class[a] = 1;
            std::size_t ia = 0;
            for (std::uint64_t p : table.primes) {
                if (static_cast<double>(p) > x) break;
                while (ia < s.added.size() && s.added[ia] < p) {
                    fn(s.added[ia]);
                    ++ia;
                }
                if (ia < s.added.size() && s.added[ia] == p) {
                    fn(p); // added exceptions are outside the union
                    ++ia;
                    continue;
                }
                if (!in_class[p % s.q]) continue;
                if (std::binary_search(s.removed.begin(), s.removed.end(), p)) continue;
                fn(p);
            }
            while (ia < s.added.size() && static_cast<double>(s.added[ia]) <= x) {
                fn(s.added[ia]);
                ++ia;
            }
            break;
        }
        case PrimeSetSpec::Kind::frobenius_union: {
            const auto& s = spec.as_frobenius();
            const auto& ext = extension_by_id(s.extension_id);
            validate_exception_primality(table, s.added);
            validate_exception_primality(table, s.removed);
            std::vector<char> target(ext.group.class_ids.size(), 0);
            for (const auto& id : s.class_ids) target[ext.group.class_index(id)] = 1;
            std::size_t ia = 0;
            for (std::uint64_t p : table.primes) {
                if (static_cast<double>(p) > x) break;
                while (ia < s.added.size() && s.added[ia] < p) {
                    fn(s.added[ia]);
                    ++ia;
                }
                if (ia < s.added.size() && s.added[ia] == p) {
                    fn(p);
                    ++ia;
                    continue;
                }
                if (ext.is_ramified(p)) continue;
                if (!target[ext.group.class_index(ext.classify(p))]) continue;
                if (std::binary_search(s.removed.begin(), s.removed.end(), p)) continue;
                fn(p);
            }
            while (ia < s.added.size() && static_cast<double>(s.added[ia]) <= x) {
                fn(s.added[ia]);
                ++ia;
            }
            break;
        }
        case PrimeSetSpec::Kind::odd_indexed: {
            for (std::size_t i = 0; i < table.primes.size(); i += 2) {
                if (static_cast<double>(table.primes[i]) > x) break;
                fn(table.primes[i]);
            }
            break;
        }
        case PrimeSetSpec::Kind::procedural: {
            const auto& s = spec.as_procedural();
            for (std::uint64_t p : table.primes) {
                if (static_cast<double>(p) > x) break;
                if (s.member(p)) fn(p);
            }
            break;
        }
        case PrimeSetSpec::Kind::weighted:
            throw std::invalid_argument("weighted sets have no 0/1 membership; use count_weighted");
    }
}

} // namespace

bool contains_prime(const PrimeSetSpec& spec, const PrimeTable& table, std::uint64_t p) {
    switch (spec.kind()) {
        case PrimeSetSpec::Kind::residue_union: {
            const auto& s = spec.as_residue();
            if (std::binary_search(s.added.begin(), s.added.end(), p)) return true;
            if (std::binary_search(s.removed.begin(), s.removed.end(), p)) return false;
            return residue_union_contains(s, p);
        }
        case PrimeSetSpec::Kind::frobenius_union: {
            const auto& s = spec.as_frobenius();
            if (std::binary_search(s.added.begin(), s.added.end(), p)) return true;
            if (std::binary_search(s.removed.begin(), s.removed.end(), p)) return false;
            return frobenius_union_contains(s, extension_by_id(s.extension_id), p);
        }
        case PrimeSetSpec::Kind::odd_indexed: {
            auto it = std::lower_bound(table.primes.begin(), table.primes.end(), p);
            if (it == table.primes.end() || *it != p)
                throw std::invalid_argument("contains_prime: argument is not a prime in range");
            return ((it - table.primes.begin()) % 2) == 0; // 1st, 3rd, ... (0-based even)
        }
        case PrimeSetSpec::Kind::procedural: return spec.as_procedural().member(p);
        case PrimeSetSpec::Kind::weighted:
            throw std::invalid_argument("weighted sets have no 0/1 membership");
    }
    return false;
}

std::uint64_t SetCounter::count(double x) const {
    std::uint64_t xi = (x < 0) ? 0 : static_cast<std::uint64_t>(x);
    return static_cast<std::uint64_t>(std::upper_bound(members.begin(), members.end(), xi) -
                                      members.begin());
}

SetCounter materialize(const PrimeSetSpec& spec, const PrimeTable& table) {
    SetCounter sc;
    for_each_member(spec, table, static_cast<double>(table.x_max),
                    [&](std::uint64_t p) { sc.members.push_back(p); });
    return sc;
}

cplx WeightedCounter::count(double x) const {
    std::uint64_t xi = (x < 0) ? 0 : static_cast<std::uint64_t>(x);
    cplx total{0.0, 0.0};
    for (const auto& [w, members] : classes) {
        auto c = std::upper_bound(members.begin(), members.end(), xi) - members.begin();
        total += w * static_cast<double>(c);
    }
    return total;
}

WeightedCounter materialize_weighted(const PrimeSetSpec& spec, const PrimeTable& table) {
    const auto& s = spec.as_weighted();
    const auto& ext = extension_by_id(s.extension_id);
    WeightedCounter wc;
    std::vector<int> class_slot(ext.group.class_ids.size(), -1);
    for (const auto& [id, w] : s.weights) {
        class_slot[ext.group.class_index(id)] = static_cast<int>(wc.classes.size());
        wc.classes.push_back({w, {}});
    }
    for (std::uint64_t p : table.primes) {
        if (ext.is_ramified(p)) continue;
        int slot = class_slot[ext.group.class_index(ext.classify(p))];
        if (slot >= 0) wc.classes[slot].second.push_back(p);
    }
    return wc;
}

std::uint64_t count(const PrimeSetSpec& spec, const PrimeTable& table, double x) {
    if (x > static_cast<double>(table.x_max))
        throw std::out_of_range("count: x exceeds table bound");
    std::uint64_t n = 0;
    for_each_member(spec, table, x, [&](std::uint64_t) { ++n; });
    return n;
}

cplx count_weighted(const PrimeSetSpec& spec, const PrimeTable& table, double x) {
    if (x > static_cast<double>(table.x_max))
        throw std::out_of_range("count_weighted: x exceeds table bound");
    const auto& s = spec.as_weighted();
    const auto& ext = extension_by_id(s.extension_id);
    std::vector<cplx> weight_of(ext.group.class_ids.size(), cplx{0.0, 0.0});
    for (const auto& [id, w] : s.weights) weight_of[ext.group.class_index(id)] = w;
    cplx total{0.0, 0.0};
    for (std::uint64_t p : table.primes) {
        if (static_cast<double>(p) > x) break;
        if (ext.is_ramified(p)) continue;
        total += weight_of[ext.group.class_index(ext.classify(p))];
    }
    return total;
}

ResidueUnionSpec unify_moduli(const std::vector<std::pair<long long, std::uint64_t>>& classes,
                              std::uint64_t target_modulus) {
    if (classes.empty()) throw std::invalid_argument("unify_moduli: empty class list");
    std::uint64_t L = target_modulus ? target_modulus : 1;
    for (const auto& [a, q] : classes) {
        (void)a;
        if (q == 0) throw std::invalid_argument("unify_moduli: zero modulus");
        L = std::lcm(L, q);
    }
    auto is_prime_small = [](std::uint64_t p) {
        if (p < 2) return false;
        for (std::uint64_t f = 2; f * f <= p; ++f)
            if (p % f == 0) return false;
        return true;
    };
    std::set<std::uint64_t> residues;
    std::set<std::uint64_t> lost_prime_candidates;
    for (const auto& [a_raw, q] : classes) {
        long long r = a_raw % static_cast<long long>(q);
        if (r < 0) r += static_cast<long long>(q);
        std::uint64_t a = static_cast<std::uint64_t>(r);
        if (std::gcd(a, q) != 1)
            throw std::invalid_argument("unify_moduli: class " + std::to_string(a) +
                                        " not coprime to " + std::to_string(q));
        for (std::uint64_t b = a; b < L; b += q) {
            if (std::gcd(b, L) == 1) {
                residues.insert(b);
            } else {
                // A prime in a non-coprime class b mod L must divide L, hence
                // be <= L, hence equal b (or L itself when b = 0).
                if (is_prime_small(b)) lost_prime_candidates.insert(b);
                if (b == 0 && is_prime_small(L)) lost_prime_candidates.insert(L);
            }
        }
    }
    ResidueUnionSpec out;
    out.q = L;
    out.classes.assign(residues.begin(), residues.end());
    out.added.assign(lost_prime_candidates.begin(), lost_prime_candidates.end());
    return out;
}

std::uint64_t symmetric_difference_count(const PrimeSetSpec& a, const PrimeSetSpec& b,
                                         const PrimeTable& table, double x) {
    if (x > static_cast<double>(table.x_max))
        throw std::out_of_range("symmetric_difference_count: x exceeds table bound");
    std::vector<std::uint64_t> ma, mb;
    for_each_member(a, table, x, [&](std::uint64_t p) { ma.push_back(p); });
    for_each_member(b, table, x, [&](std::uint64_t p) { mb.push_back(p); });
    std::uint64_t diff = 0;
    std::size_t i = 0, j = 0;
    while (i < ma.size() || j < mb.size()) {
        if (i < ma.size() && j < mb.size() && ma[i] == mb[j]) {
            ++i;
            ++j;
        } else if (j >= mb.size() || (i < ma.size() && ma[i] < mb[j])) {
            ++diff;
            ++i;
        } else {
            ++diff;
            ++j;
        }
    }
    return diff;
}

double density_estimate(const PrimeSetSpec& spec, const PrimeTable& table, double x) {
    std::uint64_t total = pi(table, x);
    if (total == 0) return 0.0;
    return static_cast<double>(count(spec, table, x)) / static_cast<double>(total);
}

double podd_identity_check(const PrimeTable& table, double x) {
    // independent enumeration of odd-indexed primes
    std::uint64_t podd_count = 0, total = 0;
    for (std::uint64_t p : table.primes) {
        if (static_cast<double>(p) > x) break;
        ++total;
        if (total % 2 == 1) ++podd_count;
    }
    double diff = static_cast<double>(podd_count) - static_cast<double>(total) / 2.0;
    bool odd_interval = (total % 2 == 1); // p_{2j-1} <= x < p_{2j}
    double expected = odd_interval ? 0.5 : 0.0;
    if (diff != expected)
        throw identity_violation("P_odd(x) - pi(x)/2 = " + std::to_string(diff) +
                                 " violates the exact parity identity at x = " + std::to_string(x));
    return diff;
}

} // namespace cheb
