#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jcover/fingal.hpp"
#include "jcover/halfplane.hpp"
#include "jcover/hecke.hpp"

namespace jcover::modelcheck {

using hecke::JValue;
using hecke::Tri;

// An abstract point of the group-action sort inside a finite-level
// structure: its j-value data over the coset representatives of every level
// dividing the structure level, a torsor label placing it in the level-N
// fiber, and an optional CM discriminant marking it special.
struct HPoint {
    std::string name;
    // level M -> psi(M) values aligned with coset_representatives(M);
    // level 1 holds the single base j-value
    std::map<unsigned long, std::vector<JValue>> orbit;
    fingal::TorsorLabel label;
    std::optional<mpz_class> cm_disc;

    const JValue& base_j() const { return orbit.at(1).at(0); }
};

// Builds a point from an actual half-plane point: orbit values are computed
// numerically at the given precision, the label defaults to the base point.
HPoint point_from_tau(std::string name, const halfplane::HalfPlanePoint& tau,
                      unsigned long level, long digits);

// Builds a point with exact orbit data supplied directly (level 1 value
// first). Used for synthetic structures and tests.
HPoint point_from_values(std::string name, unsigned long level,
                         std::map<unsigned long, std::vector<JValue>> orbit,
                         fingal::TorsorLabel label,
                         std::optional<mpz_class> cm_disc = std::nullopt);

// The right torsor twist of a point: label moves to label * sigma and the
// orbit coordinates follow the induced coset permutation at each level.
HPoint twist_point(const HPoint& p, const fingal::FiniteGroupElement& sigma);

class FiniteLevelStructure {
  public:
    explicit FiniteLevelStructure(unsigned long level);

    unsigned long level() const { return level_; }
    std::size_t size() const { return points_.size(); }
    const HPoint& point(std::size_t i) const { return points_.at(i); }
    const std::vector<HPoint>& points() const { return points_; }

    // Validates levels, orbit lengths and label level; returns the index.
    std::size_t add_point(HPoint p);

    // Pairs of distinct points with equal base j-value and distinct labels:
    // the configurations the standard-fibers axiom forbids.
    std::vector<std::pair<std::size_t, std::size_t>> standard_fibers_violations() const;
    bool passes_standard_fibers() const {
        return standard_fibers_violations().empty();
    }

    // Merges points with equal base j-value and equal label (they denote
    // the same fiber point).
    FiniteLevelStructure identify_standard_fibers() const;

    // Every point twisted by the same sigma.
    FiniteLevelStructure twist_all(const fingal::FiniteGroupElement& sigma) const;

    std::string to_json() const;
    static FiniteLevelStructure from_json(const std::string& text);

  private:
    unsigned long level_;
    std::vector<HPoint> points_;
};

// The level-N quantifier-free type datum of a tuple: per-point special
// flags, and the equality and modular-polynomial relation pattern over all
// Hecke-orbit coordinates at levels dividing N. Stored canonically: the
// serialized pattern is minimized over a common right twist, so the type is
// invariant under twisting all points together (and under the modular group,
// whose coordinate action is a subset of the twist action).
class FiniteLevelType {
  public:
    unsigned long level() const { return level_; }
    bool determinate() const { return determinate_; }
    const std::string& canonical() const { return canon_; }
    const std::vector<std::string>& specials() const { return specials_; }

    // yes / no, or indeterminate when either side has undecided numeric
    // relations.
    Tri equivalent(const FiniteLevelType& o) const;
    bool operator==(const FiniteLevelType& o) const {
        return equivalent(o) == Tri::yes;
    }

  private:
    friend FiniteLevelType finite_type(const FiniteLevelStructure&,
                                       const std::vector<std::size_t>&, unsigned long);
    unsigned long level_ = 1;
    bool determinate_ = true;
    std::string canon_;
    std::vector<std::string> specials_;
};

// The complete level-N relation pattern of the tuple (N must divide the
// structure level). Indeterminate numeric relations are recorded, never
// silently resolved.
FiniteLevelType finite_type(const FiniteLevelStructure& s,
                            const std::vector<std::size_t>& tuple,
                            unsigned long level);

// One back-and-forth step. `partial` maps source point indices to target
// point indices and must preserve the finite type of its domain
// (precondition_error otherwise). The returned structure extends the target
// with the chosen image when it had to be freshly adjoined; the twist is the
// label offset between the new point and its image. Candidates are scanned
// in canonical twist order, so results are deterministic.
struct ExtensionResult {
    std::size_t image;
    fingal::FiniteGroupElement twist;
    FiniteLevelStructure extended_target;
};
std::optional<ExtensionResult> extend_partial_iso(
    const FiniteLevelStructure& source, const FiniteLevelStructure& target,
    const std::map<std::size_t, std::size_t>& partial, std::size_t new_point);

// A two-point structure over one base j-value whose labels differ: the
// finite-level witness of a fiber not collapsing to a single orbit. It
// always fails the standard-fibers check.
FiniteLevelStructure nonstandard_fiber_witness(unsigned long level);

// Orbit count of a subgroup of PSL2(Z/N) acting on the free fiber over the
// given point by right multiplication: the number of candidate types over
// the point at this level. The subgroup is given by generators.
unsigned long count_types_over_point(const HPoint& point, unsigned long level,
                                     const std::vector<fingal::FiniteGroupElement>& subgroup);

// Numerical check that tuples of orbit values satisfy their pairwise
// modular-polynomial relations: at `samples` random points tau, the values
// j(g_i tau), j(g_k tau) must satisfy Phi_M = 0 for M the level of
// g_i g_k^{-1}. Any residual above its certified bound fails the report
// (the relations hold identically, so a failure means a bug).
struct RelationReport {
    struct Entry {
        std::size_t i, k;
        unsigned long level;
        double log10_residual;
        double log10_bound;
        bool pass;
    };
    std::vector<Entry> entries;
    double max_log10_residual = -1e9;
    bool pass = true;
};
RelationReport orbit_relation_check(const std::vector<gl2q::GroupElement>& gs,
                                    unsigned samples, long digits,
                                    std::uint64_t seed = 1);

} // namespace jcover::modelcheck
