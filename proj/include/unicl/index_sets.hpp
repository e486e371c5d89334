#pragma once

#include <compare>
#include <map>
#include <vector>

#include "unicl/errors.hpp"

#include <nlohmann/json_fwd.hpp>

namespace unicl {

/// A nonempty subset S of {1, ..., d}, stored sorted strictly increasing.
/// The dimension d is not carried by the subset itself; use valid_for() to
/// check compatibility with a given dimension.
class SubsetIndex {
public:
    explicit SubsetIndex(std::vector<int> members);

    static SubsetIndex full(int d);
    static SubsetIndex single(int i) { return SubsetIndex({i}); }

    const std::vector<int>& members() const { return members_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool valid_for(int d) const { return members_.back() <= d; }
    bool contains(int i) const;
    bool disjoint_with(const SubsetIndex& other) const;

    bool operator==(const SubsetIndex&) const = default;
    /// Canonical order: cardinality first, then lexicographic on members.
    std::strong_ordering operator<=>(const SubsetIndex& other) const;

private:
    std::vector<int> members_;
};

/// An ordered division (left | right): two disjoint nonempty subsets of [d].
/// The union need not exhaust [d]. Reads as "left conditioned on right".
class DivisionIndex {
public:
    DivisionIndex(SubsetIndex left, SubsetIndex right);

    const SubsetIndex& left() const { return left_; }
    const SubsetIndex& right() const { return right_; }
    bool valid_for(int d) const { return left_.valid_for(d) && right_.valid_for(d); }

    bool operator==(const DivisionIndex&) const = default;
    std::strong_ordering operator<=>(const DivisionIndex& other) const;

private:
    SubsetIndex left_;
    SubsetIndex right_;
};

/// Non-negative weights over subsets (marginal factors) and divisions
/// (conditional factors). The total weight must be strictly positive.
struct WeightScheme {
    int d = 0;
    std::map<SubsetIndex, double> sigma;
    std::map<DivisionIndex, double> tau;

    /// Throws InvalidWeightScheme on any violated invariant.
    void validate() const;

    /// Equal weight w on every division of [d]; the d = 2 instance with
    /// w = 1/2 is the all-conditional scheme used by both bivariate models.
    static WeightScheme all_conditionals(int d, double w);

    /// Weight 1 on the full subset [d]: the ICL reduces to the joint density.
    static WeightScheme joint_only(int d);
};

/// All nonempty subsets of [d], ordered by cardinality then lexicographic.
/// Requires 1 <= d <= 16; the result has 2^d - 1 entries.
std::vector<SubsetIndex> enumerate_subsets(int d);

/// All ordered pairs of disjoint nonempty subsets of [d], in the canonical
/// subset order of the left component, then of the right. Requires
/// 1 <= d <= 10; the result has 3^d - 2^(d+1) + 1 entries.
std::vector<DivisionIndex> enumerate_divisions(int d);

/// Total weight; throws InvalidWeightScheme if it is not strictly positive.
double total_weight(const WeightScheme& w);

nlohmann::json weight_scheme_to_json(const WeightScheme& w);
WeightScheme weight_scheme_from_json(const nlohmann::json& j);

} // namespace unicl
