#include "jcover/modelcheck.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

#include "jcover/cache.hpp"
#include "jcover/errors.hpp"
#include "jcover/jfun.hpp"

namespace jcover::modelcheck {

namespace {

std::vector<unsigned long> divisors(unsigned long n) {
    std::vector<unsigned long> out;
    for (unsigned long d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

// Process-wide memo for pairwise relation verdicts; the back-and-forth
// search re-reads the same value pairs many times.
struct PairKey {
    JValue a, b;
    unsigned long level;
    bool operator<(const PairKey& o) const {
        if (level != o.level) return level < o.level;
        if (a < o.a) return true;
        if (o.a < a) return false;
        return b < o.b;
    }
};
std::mutex relation_mu;
std::map<PairKey, Tri> relation_memo;

Tri related(const JValue& x, const JValue& y, unsigned long level) {
    const JValue& lo = y < x ? y : x;
    const JValue& hi = y < x ? x : y;
    PairKey key{lo, hi, level};
    {
        std::lock_guard<std::mutex> lock(relation_mu);
        if (auto it = relation_memo.find(key); it != relation_memo.end())
            return it->second;
    }
    Tri v = hecke::related_at_level(lo, hi, level).verdict;
    std::lock_guard<std::mutex> lock(relation_mu);
    relation_memo.emplace(std::move(key), v);
    return v;
}

char tri_char(Tri t) { return t == Tri::yes ? 'y' : t == Tri::no ? 'n' : '?'; }

} // namespace

HPoint point_from_tau(std::string name, const halfplane::HalfPlanePoint& tau,
                      unsigned long level, long digits) {
    HPoint p{std::move(name), {}, fingal::TorsorLabel::base(level), std::nullopt};
    for (unsigned long m : divisors(level))
        p.orbit[m] = hecke::orbit_at_level(tau, m, digits);
    if (tau.is_exact()) p.cm_disc = tau.as_exact().d;
    return p;
}

HPoint point_from_values(std::string name, unsigned long level,
                         std::map<unsigned long, std::vector<JValue>> orbit,
                         fingal::TorsorLabel label, std::optional<mpz_class> cm_disc) {
    if (label.level() != level) throw domain_error("label level mismatch");
    for (unsigned long m : divisors(level)) {
        auto it = orbit.find(m);
        if (it == orbit.end() || it->second.size() != gl2q::psi(m))
            throw domain_error("orbit data must cover every divisor level with psi(M) values");
    }
    return HPoint{std::move(name), std::move(orbit), label, std::move(cm_disc)};
}

HPoint twist_point(const HPoint& p, const fingal::FiniteGroupElement& sigma) {
    if (sigma.level() != p.label.level())
        throw domain_error("twist level mismatch");
    HPoint out{p.name, {}, p.label.twisted(sigma), p.cm_disc};
    for (const auto& [m, values] : p.orbit) {
        auto pi = fingal::coset_permutation(sigma, m);
        std::vector<JValue> moved;
        moved.reserve(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) moved.push_back(values[pi[i]]);
        out.orbit.emplace(m, std::move(moved));
    }
    return out;
}

FiniteLevelStructure::FiniteLevelStructure(unsigned long level) : level_(level) {
    if (level == 0) throw domain_error("structure level must be positive");
}

std::size_t FiniteLevelStructure::add_point(HPoint p) {
    if (p.label.level() != level_)
        throw domain_error("point label level differs from the structure level");
    for (unsigned long m : divisors(level_)) {
        auto it = p.orbit.find(m);
        if (it == p.orbit.end() || it->second.size() != gl2q::psi(m))
            throw domain_error("point lacks orbit data at a divisor level");
    }
    points_.push_back(std::move(p));
    return points_.size() - 1;
}

std::vector<std::pair<std::size_t, std::size_t>>
FiniteLevelStructure::standard_fibers_violations() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < points_.size(); ++i)
        for (std::size_t k = i + 1; k < points_.size(); ++k) {
            if (points_[i].label == points_[k].label) continue;
            if (related(points_[i].base_j(), points_[k].base_j(), 1) == Tri::yes)
                out.emplace_back(i, k);
        }
    return out;
}

FiniteLevelStructure FiniteLevelStructure::identify_standard_fibers() const {
    FiniteLevelStructure out(level_);
    for (const auto& p : points_) {
        bool duplicate = false;
        for (const auto& q : out.points_)
            if (q.label == p.label && related(q.base_j(), p.base_j(), 1) == Tri::yes) {
                duplicate = true;
                break;
            }
        if (!duplicate) out.points_.push_back(p);
    }
    return out;
}

FiniteLevelStructure FiniteLevelStructure::twist_all(
    const fingal::FiniteGroupElement& sigma) const {
    FiniteLevelStructure out(level_);
    for (const auto& p : points_) out.points_.push_back(twist_point(p, sigma));
    return out;
}

namespace {

nlohmann::json jvalue_to_json(const JValue& v) {
    if (v.is_exact()) return nlohmann::json{{"q", v.rational().get_str()}};
    const Complex& z = v.complex_value();
    return nlohmann::json{{"re", z.re().to_decimal(v.digits() + 10)},
                          {"im", z.im().to_decimal(v.digits() + 10)},
                          {"digits", v.digits()}};
}

JValue jvalue_from_json(const nlohmann::json& j) {
    if (j.contains("q")) {
        mpq_class q(j.at("q").get<std::string>());
        q.canonicalize();
        return JValue::exact(std::move(q));
    }
    long digits = j.at("digits").get<long>();
    mpfr_prec_t bits = Real::bits_for_digits(digits + 12);
    return JValue::numeric(Complex(Real::parse(j.at("re").get<std::string>(), bits),
                                   Real::parse(j.at("im").get<std::string>(), bits)),
                           digits);
}

} // namespace

std::string FiniteLevelStructure::to_json() const {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : points_) {
        nlohmann::json orbit;
        for (const auto& [m, values] : p.orbit) {
            nlohmann::json vals = nlohmann::json::array();
            for (const auto& v : values) vals.push_back(jvalue_to_json(v));
            orbit[std::to_string(m)] = std::move(vals);
        }
        nlohmann::json pj{{"name", p.name},
                          {"label", nlohmann::json::parse(p.label.element().to_json())},
                          {"orbit", std::move(orbit)}};
        if (p.cm_disc) pj["disc"] = p.cm_disc->get_str();
        points.push_back(std::move(pj));
    }
    nlohmann::json j{{"level", level_}, {"points", std::move(points)}};
    return j.dump(2);
}

FiniteLevelStructure FiniteLevelStructure::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    FiniteLevelStructure out(j.at("level").get<unsigned long>());
    for (const auto& pj : j.at("points")) {
        std::map<unsigned long, std::vector<JValue>> orbit;
        for (const auto& [key, vals] : pj.at("orbit").items()) {
            std::vector<JValue> values;
            for (const auto& v : vals) values.push_back(jvalue_from_json(v));
            orbit.emplace(std::stoul(key), std::move(values));
        }
        auto label = fingal::TorsorLabel(fingal::FiniteGroupElement::from_json(
            pj.at("label").dump(), out.level(), fingal::Flavor::psl));
        std::optional<mpz_class> disc;
        if (pj.contains("disc")) disc = mpz_class(pj.at("disc").get<std::string>());
        out.add_point(point_from_values(pj.at("name").get<std::string>(), out.level(),
                                        std::move(orbit), label, std::move(disc)));
    }
    return out;
}

namespace {

struct Slot {
    std::size_t point;   // position in the tuple
    unsigned long level; // divisor level
    std::size_t idx;     // coset index
};

// All twists to minimize over: the full PSL(2, Z/N) right action; level 1
// has only the trivial twist.
std::vector<fingal::FiniteGroupElement> twist_group(unsigned long level) {
    if (level == 1)
        return {fingal::FiniteGroupElement::identity(1, fingal::Flavor::psl)};
    return fingal::group_elements(level, fingal::Flavor::psl);
}

} // namespace

FiniteLevelType finite_type(const FiniteLevelStructure& s,
                            const std::vector<std::size_t>& tuple,
                            unsigned long level) {
    if (level == 0 || s.level() % level != 0)
        throw domain_error("type level must divide the structure level");
    for (std::size_t i : tuple)
        if (i >= s.size()) throw domain_error("tuple index out of range");

    FiniteLevelType t;
    t.level_ = level;
    for (std::size_t i : tuple) {
        const auto& p = s.point(i);
        t.specials_.push_back(p.cm_disc ? p.cm_disc->get_str() : "-");
    }

    auto levels = divisors(level);

    // slots in tuple order, levels ascending, coset index ascending
    std::vector<Slot> slots;
    for (std::size_t pi = 0; pi < tuple.size(); ++pi)
        for (unsigned long m : levels)
            for (std::size_t idx = 0; idx < gl2q::psi(m); ++idx)
                slots.push_back({pi, m, idx});

    auto value_at = [&](const Slot& sl,
                        const std::map<unsigned long, std::vector<std::size_t>>& perms)
        -> const JValue& {
        const auto& p = s.point(tuple[sl.point]);
        std::size_t idx = perms.empty() ? sl.idx : perms.at(sl.level)[sl.idx];
        return p.orbit.at(sl.level)[idx];
    };

    // relation matrix on the unpermuted slots
    std::map<unsigned long, std::vector<std::size_t>> no_perm;
    const std::size_t m = slots.size();
    std::vector<std::vector<char>> eq(m, std::vector<char>(m, ' '));
    std::map<unsigned long, std::vector<std::vector<char>>> rel;
    for (unsigned long lv : levels)
        if (lv > 1) rel[lv].assign(m, std::vector<char>(m, ' '));

    bool determinate = true;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b) {
            const JValue& va = value_at(slots[a], no_perm);
            const JValue& vb = value_at(slots[b], no_perm);
            if (a != b) {
                Tri e = related(va, vb, 1);
                if (e == Tri::indeterminate) determinate = false;
                eq[a][b] = eq[b][a] = tri_char(e);
            }
            for (unsigned long lv : levels) {
                if (lv == 1) continue;
                Tri r = related(va, vb, lv);
                if (r == Tri::indeterminate) determinate = false;
                rel[lv][a][b] = rel[lv][b][a] = tri_char(r);
            }
        }
    t.determinate_ = determinate;

    // canonical form: minimize the serialized pattern over a common twist
    std::string best;
    for (const auto& sigma : twist_group(level)) {
        std::map<unsigned long, std::vector<std::size_t>> perms;
        for (unsigned long lv : levels) perms[lv] = fingal::coset_permutation(sigma, lv);
        // permuted slot index: slot (p, lv, i) reads original slot (p, lv, perm[i])
        std::vector<std::size_t> orig(m);
        for (std::size_t a = 0; a < m; ++a) {
            const Slot& sl = slots[a];
            std::size_t permuted = perms.at(sl.level)[sl.idx];
            // find the original slot position with the same (point, level)
            // block: fixed layout -> offset arithmetic
            orig[a] = a - sl.idx + permuted;
        }
        std::string ser;
        ser.reserve(m * m);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b) ser += eq[orig[a]][orig[b]];
        for (unsigned long lv : levels) {
            if (lv == 1) continue;
            const auto& rl = rel[lv];
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = a; b < m; ++b) ser += rl[orig[a]][orig[b]];
        }
        if (best.empty() || ser < best) best = std::move(ser);
    }
    t.canon_ = std::move(best);
    return t;
}

Tri FiniteLevelType::equivalent(const FiniteLevelType& o) const {
    if (!determinate_ || !o.determinate_) return Tri::indeterminate;
    if (level_ != o.level_ || specials_ != o.specials_) return Tri::no;
    return canon_ == o.canon_ ? Tri::yes : Tri::no;
}

std::optional<ExtensionResult> extend_partial_iso(
    const FiniteLevelStructure& source, const FiniteLevelStructure& target,
    const std::map<std::size_t, std::size_t>& partial, std::size_t new_point) {
    if (source.level() != target.level())
        throw domain_error("source and target live at different levels");
    const unsigned long level = source.level();
    if (new_point >= source.size()) throw domain_error("new point out of range");

    std::vector<std::size_t> domain, image;
    for (const auto& [a, b] : partial) {
        if (a >= source.size() || b >= target.size())
            throw domain_error("partial map index out of range");
        domain.push_back(a);
        image.push_back(b);
    }

    if (!domain.empty()) {
        // both structures share the field sort, so a partial isomorphism
        // fixes the base j-value of every mapped point
        for (const auto& [a, b] : partial) {
            Tri same = related(source.point(a).base_j(), target.point(b).base_j(), 1);
            if (same == Tri::indeterminate)
                throw precondition_error("mapped base values numerically indeterminate");
            if (same == Tri::no)
                throw precondition_error(
                    "partial map moves a base j-value (type mismatch at level 1)");
        }
        Tri pre = finite_type(source, domain, level)
                      .equivalent(finite_type(target, image, level));
        if (pre == Tri::indeterminate)
            throw precondition_error("partial map type is numerically indeterminate");
        if (pre == Tri::no)
            throw precondition_error("partial map does not preserve the finite type");
    }

    const HPoint& np = source.point(new_point);

    auto offset_of = [&](const HPoint& img) {
        return np.label.element().inverse() * img.label.element();
    };

    // already mapped: return the existing image
    if (auto it = partial.find(new_point); it != partial.end())
        return ExtensionResult{it->second, offset_of(target.point(it->second)), target};

    std::vector<std::size_t> ext_domain = domain;
    ext_domain.push_back(new_point);
    FiniteLevelType want = finite_type(source, ext_domain, level);

    auto try_candidate =
        [&](const FiniteLevelStructure& tgt,
            std::size_t cand) -> std::optional<FiniteLevelType> {
        std::vector<std::size_t> ext_image = image;
        ext_image.push_back(cand);
        FiniteLevelType got = finite_type(tgt, ext_image, level);
        if (want.equivalent(got) == Tri::yes) return got;
        return std::nullopt;
    };

    // special points are fixed data: match them directly, no torsor search
    if (np.cm_disc) {
        for (std::size_t c = 0; c < target.size(); ++c) {
            const HPoint& tp = target.point(c);
            if (tp.cm_disc != np.cm_disc) continue;
            if (related(tp.base_j(), np.base_j(), 1) != Tri::yes) continue;
            if (try_candidate(target, c))
                return ExtensionResult{c, offset_of(tp), target};
        }
        FiniteLevelStructure grown = target;
        std::size_t c = grown.add_point(np);
        if (try_candidate(grown, c))
            return ExtensionResult{c, offset_of(grown.point(c)),
                                   std::move(grown)};
        return std::nullopt;
    }

    for (const auto& sigma : twist_group(level)) {
        HPoint cand = twist_point(np, sigma);
        // reuse an existing target point carrying the same label over the
        // same base value, otherwise adjoin the twisted point
        std::optional<std::size_t> existing;
        for (std::size_t c = 0; c < target.size(); ++c) {
            const HPoint& tp = target.point(c);
            if (tp.label == cand.label &&
                related(tp.base_j(), np.base_j(), 1) == Tri::yes) {
                existing = c;
                break;
            }
        }
        if (existing) {
            if (try_candidate(target, *existing))
                return ExtensionResult{*existing, offset_of(target.point(*existing)),
                                       target};
        } else {
            FiniteLevelStructure grown = target;
            cand.name = np.name + "'";
            std::size_t c = grown.add_point(std::move(cand));
            if (try_candidate(grown, c)) {
                fingal::FiniteGroupElement tw = offset_of(grown.point(c));
                return ExtensionResult{c, std::move(tw), std::move(grown)};
            }
        }
    }
    return std::nullopt;
}

FiniteLevelStructure nonstandard_fiber_witness(unsigned long level) {
    if (level < 2) throw domain_error("the witness needs level >= 2");

    // synthetic exact orbit data: pairwise distinct values with no
    // accidental modular relations at desk scale
    std::map<unsigned long, std::vector<JValue>> orbit;
    for (unsigned long m : divisors(level)) {
        std::vector<JValue> vals;
        for (std::size_t idx = 0; idx < gl2q::psi(m); ++idx)
            vals.push_back(JValue::exact(
                mpq_class(10000019 + 101 * static_cast<long>(m * m) +
                          13 * static_cast<long>(idx))));
        orbit.emplace(m, std::move(vals));
    }
    HPoint base = point_from_values("w0", level, std::move(orbit),
                                    fingal::TorsorLabel::base(level));

    const auto& elems = fingal::group_elements(level, fingal::Flavor::psl);
    const fingal::FiniteGroupElement* sigma = nullptr;
    for (const auto& e : elems)
        if (!e.is_identity()) {
            sigma = &e;
            break;
        }
    HPoint other = twist_point(base, *sigma);
    other.name = "w1";

    FiniteLevelStructure s(level);
    s.add_point(std::move(base));
    s.add_point(std::move(other));
    return s;
}

unsigned long count_types_over_point(const HPoint& point, unsigned long level,
                                     const std::vector<fingal::FiniteGroupElement>& subgroup) {
    if (point.label.level() != level)
        throw domain_error("point fiber level differs from the requested level");
    const auto& elems = fingal::group_elements(level, fingal::Flavor::psl);
    std::map<fingal::FiniteGroupElement, std::size_t> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);

    std::vector<bool> seen(elems.size(), false);
    unsigned long orbits = 0;
    for (std::size_t start = 0; start < elems.size(); ++start) {
        if (seen[start]) continue;
        ++orbits;
        std::vector<std::size_t> stack{start};
        seen[start] = true;
        while (!stack.empty()) {
            std::size_t cur = stack.back();
            stack.pop_back();
            for (const auto& h : subgroup) {
                for (const auto& step : {elems[cur] * h, elems[cur] * h.inverse()}) {
                    std::size_t nxt = index.at(step);
                    if (!seen[nxt]) {
                        seen[nxt] = true;
                        stack.push_back(nxt);
                    }
                }
            }
        }
    }
    return orbits;
}

RelationReport orbit_relation_check(const std::vector<gl2q::GroupElement>& gs,
                                    unsigned samples, long digits,
                                    std::uint64_t seed) {
    if (gs.empty()) throw domain_error("need at least one group element");
    RelationReport report;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(0, 999999);

    for (unsigned s = 0; s < samples; ++s) {
        mpq_class x(dist(rng) - 500000, 1000000);
        mpq_class y = 1 + mpq_class(dist(rng), 1000000);
        x.canonicalize();
        y.canonicalize();
        auto tau = halfplane::HalfPlanePoint::numeric_rational(x, y, digits + 10);

        std::vector<JValue> values;
        values.reserve(gs.size());
        for (const auto& g : gs)
            values.push_back(JValue::numeric(
                jfun::evaluate_j(halfplane::apply(g, tau), digits), digits));

        for (std::size_t i = 0; i < gs.size(); ++i)
            for (std::size_t k = i + 1; k < gs.size(); ++k) {
                gl2q::GroupElement q = gs[i] * gs[k].inverse();
                if (!q.level().fits_ulong_p())
                    throw domain_error("pair level too large");
                unsigned long m = q.level().get_ui();
                auto verdict = hecke::related_at_level(values[i], values[k], m);
                bool pass = verdict.verdict == Tri::yes;
                report.entries.push_back({i, k, m, verdict.log10_residual,
                                          verdict.log10_bound, pass});
                report.max_log10_residual =
                    std::max(report.max_log10_residual, verdict.log10_residual);
                if (!pass) report.pass = false;
            }
    }
    return report;
}

} // namespace jcover::modelcheck
