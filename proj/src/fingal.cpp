#include "jcover/fingal.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace jcover::fingal {

namespace {

unsigned long gcd_ul(unsigned long a, unsigned long b) {
    while (b) {
        unsigned long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::vector<unsigned long> units_mod(unsigned long n) {
    std::vector<unsigned long> out;
    for (unsigned long u = 1; u < std::max(n, 2ul); ++u)
        if (gcd_ul(u, n) == 1) out.push_back(u);
    if (out.empty()) out.push_back(0); // level 1: the zero residue stands alone
    return out;
}

std::array<unsigned long, 4> scale(const std::array<unsigned long, 4>& m,
                                   unsigned long lambda, unsigned long n) {
    if (n == 1) return {0, 0, 0, 0};
    return {m[0] * lambda % n, m[1] * lambda % n, m[2] * lambda % n,
            m[3] * lambda % n};
}

std::array<unsigned long, 4> canonical_lift(const std::array<unsigned long, 4>& m,
                                            unsigned long n, Flavor flavor) {
    if (n == 1) return {0, 0, 0, 0};
    std::array<unsigned long, 4> best = m;
    if (flavor == Flavor::psl) {
        auto neg = scale(m, n - 1, n);
        if (neg < best) best = neg;
    } else {
        for (unsigned long lambda : units_mod(n)) {
            auto cand = scale(m, lambda, n);
            if (cand < best) best = cand;
        }
    }
    return best;
}

} // namespace

FiniteGroupElement FiniteGroupElement::make(unsigned long level, Flavor flavor, long a,
                                            long b, long c, long d) {
    if (level == 0) throw domain_error("level must be positive");
    auto red = [&](long v) {
        long m = static_cast<long>(level);
        return static_cast<unsigned long>(((v % m) + m) % m);
    };
    std::array<unsigned long, 4> m{red(a), red(b), red(c), red(d)};
    unsigned long det =
        (m[0] * m[3] % level + level * level - m[1] * m[2] % level) % level;
    if (level > 1) {
        if (flavor == Flavor::psl && det != 1)
            throw domain_error("determinant must be 1 mod N");
        if (flavor == Flavor::pgl && gcd_ul(det, level) != 1)
            throw domain_error("determinant must be a unit mod N");
    }
    return FiniteGroupElement(level, flavor, canonical_lift(m, level, flavor));
}

FiniteGroupElement FiniteGroupElement::identity(unsigned long level, Flavor flavor) {
    return make(level, flavor, 1, 0, 0, 1);
}

FiniteGroupElement FiniteGroupElement::reduce(const gl2q::GroupElement& g,
                                              unsigned long level) {
    if (g.level() != 1) throw domain_error("only level-1 elements reduce mod N");
    mpz_class n(static_cast<unsigned long>(level));
    auto red = [&](const mpz_class& v) {
        mpz_class r = ((v % n) + n) % n;
        return static_cast<long>(r.get_si());
    };
    return make(level, Flavor::psl, red(g.a()), red(g.b()), red(g.c()), red(g.d()));
}

unsigned long FiniteGroupElement::det() const {
    if (n_ == 1) return 0;
    return (m_[0] * m_[3] % n_ + n_ * n_ - m_[1] * m_[2] % n_) % n_;
}

bool FiniteGroupElement::is_identity() const {
    return *this == identity(n_, flavor_);
}

FiniteGroupElement FiniteGroupElement::operator*(const FiniteGroupElement& o) const {
    if (n_ != o.n_ || flavor_ != o.flavor_)
        throw domain_error("group elements live at different levels or flavors");
    if (n_ == 1) return *this;
    std::array<unsigned long, 4> p{
        (m_[0] * o.m_[0] + m_[1] * o.m_[2]) % n_,
        (m_[0] * o.m_[1] + m_[1] * o.m_[3]) % n_,
        (m_[2] * o.m_[0] + m_[3] * o.m_[2]) % n_,
        (m_[2] * o.m_[1] + m_[3] * o.m_[3]) % n_};
    return FiniteGroupElement(n_, flavor_, canonical_lift(p, n_, flavor_));
}

FiniteGroupElement FiniteGroupElement::inverse() const {
    // the adjugate inverts up to the determinant, which the scalar quotient
    // absorbs (and equals 1 for PSL anyway)
    if (n_ == 1) return *this;
    std::array<unsigned long, 4> adj{m_[3], (n_ - m_[1]) % n_, (n_ - m_[2]) % n_,
                                     m_[0]};
    return FiniteGroupElement(n_, flavor_, canonical_lift(adj, n_, flavor_));
}

FiniteGroupElement FiniteGroupElement::truncate(unsigned long target_level) const {
    if (target_level == 0 || n_ % target_level != 0)
        throw domain_error("truncation target must divide the level");
    if (target_level == n_) return *this;
    if (target_level == 1) return identity(1, flavor_);
    std::array<unsigned long, 4> m{m_[0] % target_level, m_[1] % target_level,
                                   m_[2] % target_level, m_[3] % target_level};
    return FiniteGroupElement(target_level, flavor_,
                              canonical_lift(m, target_level, flavor_));
}

std::strong_ordering FiniteGroupElement::operator<=>(const FiniteGroupElement& o) const {
    if (auto c = n_ <=> o.n_; c != 0) return c;
    if (auto c = flavor_ <=> o.flavor_; c != 0) return c;
    return m_ <=> o.m_;
}

std::string FiniteGroupElement::str() const {
    std::ostringstream os;
    os << "[[" << m_[0] << "," << m_[1] << "],[" << m_[2] << "," << m_[3] << "]]";
    return os.str();
}

std::string FiniteGroupElement::to_json() const {
    auto row = [](unsigned long x, unsigned long y) {
        return nlohmann::json::array({std::to_string(x), std::to_string(y)});
    };
    return nlohmann::json::array({row(m_[0], m_[1]), row(m_[2], m_[3])}).dump();
}

FiniteGroupElement FiniteGroupElement::from_json(const std::string& text,
                                                 unsigned long level, Flavor flavor) {
    nlohmann::json j = nlohmann::json::parse(text);
    auto ent = [&](int r, int c) {
        const auto& v = j.at(r).at(c);
        if (v.is_string()) return std::stol(v.get<std::string>());
        return v.get<long>();
    };
    return make(level, flavor, ent(0, 0), ent(0, 1), ent(1, 0), ent(1, 1));
}

namespace {
std::mutex enum_mu;
std::map<std::pair<unsigned long, Flavor>, std::vector<FiniteGroupElement>> enum_memo;
std::map<unsigned long, std::vector<CyclicSubgroup>> subgroup_memo;
} // namespace

const std::vector<FiniteGroupElement>& group_elements(unsigned long level,
                                                      Flavor flavor) {
    if (level < 2) throw domain_error("group enumeration needs level >= 2");
    std::lock_guard<std::mutex> lock(enum_mu);
    auto key = std::make_pair(level, flavor);
    if (auto it = enum_memo.find(key); it != enum_memo.end()) return it->second;

    std::vector<FiniteGroupElement> out;
    for (unsigned long a = 0; a < level; ++a)
        for (unsigned long b = 0; b < level; ++b)
            for (unsigned long c = 0; c < level; ++c)
                for (unsigned long d = 0; d < level; ++d) {
                    unsigned long det =
                        (a * d % level + level * level - b * c % level) % level;
                    if (flavor == Flavor::psl ? det != 1 : gcd_ul(det, level) != 1)
                        continue;
                    auto canon = canonical_lift({a, b, c, d}, level, flavor);
                    if (canon != std::array<unsigned long, 4>{a, b, c, d})
                        continue; // not the canonical lift; counted elsewhere
                    out.push_back(FiniteGroupElement::make(
                        level, flavor, static_cast<long>(a), static_cast<long>(b),
                        static_cast<long>(c), static_cast<long>(d)));
                }
    std::sort(out.begin(), out.end());
    return enum_memo.emplace(key, std::move(out)).first->second;
}

CyclicSubgroup CyclicSubgroup::of(unsigned long level, unsigned long u,
                                  unsigned long v) {
    if (level == 0) throw domain_error("level must be positive");
    if (level == 1) return CyclicSubgroup(1, 0, 0);
    u %= level;
    v %= level;
    if (gcd_ul(gcd_ul(u, v), level) != 1)
        throw domain_error("generator must have exact order N");
    std::pair<unsigned long, unsigned long> best{level, level};
    for (unsigned long lambda = 1; lambda < level; ++lambda) {
        if (gcd_ul(lambda, level) != 1) continue;
        std::pair<unsigned long, unsigned long> cand{u * lambda % level,
                                                     v * lambda % level};
        best = std::min(best, cand);
    }
    return CyclicSubgroup(level, best.first, best.second);
}

std::string CyclicSubgroup::str() const {
    std::ostringstream os;
    os << "<(" << u_ << "," << v_ << ")>";
    return os.str();
}

const std::vector<CyclicSubgroup>& cyclic_subgroups(unsigned long level) {
    if (level == 0) throw domain_error("level must be positive");
    std::lock_guard<std::mutex> lock(enum_mu);
    if (auto it = subgroup_memo.find(level); it != subgroup_memo.end())
        return it->second;
    std::vector<CyclicSubgroup> out;
    if (level == 1) {
        out.push_back(CyclicSubgroup::of(1, 0, 0));
    } else {
        for (unsigned long u = 0; u < level; ++u)
            for (unsigned long v = 0; v < level; ++v) {
                if (gcd_ul(gcd_ul(u, v), level) != 1) continue;
                auto c = CyclicSubgroup::of(level, u, v);
                if (c.generator() == std::make_pair(u, v)) out.push_back(c);
            }
        std::sort(out.begin(), out.end());
    }
    return subgroup_memo.emplace(level, std::move(out)).first->second;
}

CyclicSubgroup act_on_subgroups(const FiniteGroupElement& sigma,
                                const CyclicSubgroup& c) {
    if (sigma.level() != c.level())
        throw domain_error("action across different levels");
    unsigned long n = c.level();
    if (n == 1) return c;
    auto [u, v] = c.generator();
    const auto& m = sigma.entries();
    return CyclicSubgroup::of(n, (m[0] * u + m[1] * v) % n, (m[2] * u + m[3] * v) % n);
}

gl2q::GroupElement subgroup_to_coset(const CyclicSubgroup& c) {
    unsigned long n = c.level();
    if (n == 1) return gl2q::GroupElement::identity();
    auto [u, v] = c.generator();
    // Hermite basis of the lattice spanned by (v, u), (N, 0), (0, N):
    // a = gcd(v, N); the row (a, x*u) with x*v + y*N = a; d = N / a.
    mpz_class a, x, y;
    mpz_class vz(v), nz(n);
    mpz_gcdext(a.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), vz.get_mpz_t(),
               nz.get_mpz_t());
    mpz_class d = nz / a;
    mpz_class b = ((x * u) % d + d) % d;
    return gl2q::GroupElement::of(a, b, mpz_class(0), d);
}

CyclicSubgroup coset_to_subgroup(const gl2q::GroupElement& g) {
    if (!g.level().fits_ulong_p()) throw domain_error("level too large");
    unsigned long n = g.level().get_ui();
    const auto& bij = subgroup_coset_bijection(n);
    gl2q::CosetSystem cs(n);
    std::size_t idx = cs.index_of(g);
    return cyclic_subgroups(n)[bij.subgroup_of_coset[idx]];
}

SubgroupCosetBijection subgroup_coset_bijection(unsigned long level) {
    const auto& subs = cyclic_subgroups(level);
    gl2q::CosetSystem cs(level);
    if (subs.size() != cs.size())
        throw invariant_error("subgroup and coset counts disagree");
    SubgroupCosetBijection out;
    out.level = level;
    out.coset_of_subgroup.assign(subs.size(), 0);
    out.subgroup_of_coset.assign(subs.size(), subs.size());
    for (std::size_t s = 0; s < subs.size(); ++s) {
        std::size_t t = cs.index_of(subgroup_to_coset(subs[s]));
        out.coset_of_subgroup[s] = t;
        if (out.subgroup_of_coset[t] != subs.size())
            throw invariant_error("subgroup-coset map is not injective");
        out.subgroup_of_coset[t] = s;
    }
    return out;
}

std::vector<std::size_t> coset_permutation(const FiniteGroupElement& sigma,
                                           unsigned long target_level) {
    FiniteGroupElement s = sigma.level() == target_level
                               ? sigma
                               : sigma.truncate(target_level);
    const auto& subs = cyclic_subgroups(target_level);
    auto bij = subgroup_coset_bijection(target_level);
    std::vector<std::size_t> pi(subs.size());
    for (std::size_t t = 0; t < subs.size(); ++t) {
        const CyclicSubgroup& c = subs[bij.subgroup_of_coset[t]];
        CyclicSubgroup moved = target_level == 1 ? c : act_on_subgroups(s, c);
        auto it = std::lower_bound(subs.begin(), subs.end(), moved);
        pi[t] = bij.coset_of_subgroup[static_cast<std::size_t>(it - subs.begin())];
    }
    return pi;
}

TorsorLabel::TorsorLabel(FiniteGroupElement e) : e_(std::move(e)) {
    if (e_.flavor() != Flavor::psl)
        throw domain_error("torsor labels live in the PSL flavor");
}

TorsorLabel TorsorLabel::twisted(const FiniteGroupElement& sigma) const {
    return TorsorLabel(e_ * sigma);
}

TorsorLabel TorsorLabel::left_moved(const gl2q::GroupElement& gamma) const {
    return TorsorLabel(FiniteGroupElement::reduce(gamma, level()) * e_);
}

TorsorLabel truncate(const TorsorLabel& label, unsigned long target_level) {
    return TorsorLabel(label.element().truncate(target_level));
}

std::map<TorsorLabel, std::size_t> galois_shadow(
    const FiniteGroupElement& sigma, const std::map<TorsorLabel, std::size_t>& fiber) {
    std::map<TorsorLabel, std::size_t> out;
    for (const auto& [label, value] : fiber) {
        if (label.level() != sigma.level())
            throw domain_error("fiber and twist live at different levels");
        out.emplace(label.twisted(sigma.inverse()), value);
    }
    return out;
}

} // namespace jcover::fingal
