#include "unicl/index_sets.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

namespace unicl {

SubsetIndex::SubsetIndex(std::vector<int> members) : members_(std::move(members)) {
    if (members_.empty())
        throw std::invalid_argument("SubsetIndex: members must be nonempty");
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i] < 1)
            throw std::invalid_argument("SubsetIndex: members are 1-based positive integers");
        if (i > 0 && members_[i] <= members_[i - 1])
            throw std::invalid_argument("SubsetIndex: members must be sorted strictly increasing");
    }
}

SubsetIndex SubsetIndex::full(int d) {
    std::vector<int> m(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i)] = i + 1;
    return SubsetIndex(std::move(m));
}

bool SubsetIndex::contains(int i) const {
    return std::binary_search(members_.begin(), members_.end(), i);
}

bool SubsetIndex::disjoint_with(const SubsetIndex& other) const {
    auto a = members_.begin();
    auto b = other.members_.begin();
    while (a != members_.end() && b != other.members_.end()) {
        if (*a == *b) return false;
        if (*a < *b) ++a; else ++b;
    }
    return true;
}

std::strong_ordering SubsetIndex::operator<=>(const SubsetIndex& other) const {
    if (auto c = members_.size() <=> other.members_.size(); c != 0) return c;
    return members_ <=> other.members_;
}

DivisionIndex::DivisionIndex(SubsetIndex left, SubsetIndex right)
    : left_(std::move(left)), right_(std::move(right)) {
    if (!left_.disjoint_with(right_))
        throw std::invalid_argument("DivisionIndex: left and right must be disjoint");
}

std::strong_ordering DivisionIndex::operator<=>(const DivisionIndex& other) const {
    if (auto c = left_ <=> other.left_; c != 0) return c;
    return right_ <=> other.right_;
}

std::vector<SubsetIndex> enumerate_subsets(int d) {
    if (d < 1 || d > 16)
        throw std::invalid_argument("enumerate_subsets: d must be in [1, 16]");
    std::vector<SubsetIndex> out;
    out.reserve((std::size_t{1} << d) - 1);
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
        std::vector<int> m;
        for (int i = 0; i < d; ++i)
            if (mask & (1u << i)) m.push_back(i + 1);
        out.emplace_back(std::move(m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<DivisionIndex> enumerate_divisions(int d) {
    if (d < 1 || d > 10)
        throw std::invalid_argument("enumerate_divisions: d must be in [1, 10]");
    const std::vector<SubsetIndex> subsets = enumerate_subsets(d);
    std::vector<DivisionIndex> out;
    for (const SubsetIndex& left : subsets)
        for (const SubsetIndex& right : subsets)
            if (left.disjoint_with(right)) out.emplace_back(left, right);
    return out;
}

void WeightScheme::validate() const {
    if (d < 1) throw InvalidWeightScheme("WeightScheme: dimension must be positive");
    double total = 0.0;
    for (const auto& [s, w] : sigma) {
        if (!s.valid_for(d))
            throw InvalidWeightScheme("WeightScheme: subset index out of range for dimension");
        if (!(w >= 0.0)) throw InvalidWeightScheme("WeightScheme: negative sigma weight");
        total += w;
    }
    for (const auto& [t, w] : tau) {
        if (!t.valid_for(d))
            throw InvalidWeightScheme("WeightScheme: division index out of range for dimension");
        if (!(w >= 0.0)) throw InvalidWeightScheme("WeightScheme: negative tau weight");
        total += w;
    }
    if (!(total > 0.0))
        throw InvalidWeightScheme("WeightScheme: total weight must be strictly positive");
}

WeightScheme WeightScheme::all_conditionals(int d, double w) {
    WeightScheme ws;
    ws.d = d;
    for (DivisionIndex& t : enumerate_divisions(d)) ws.tau.emplace(std::move(t), w);
    ws.validate();
    return ws;
}

WeightScheme WeightScheme::joint_only(int d) {
    WeightScheme ws;
    ws.d = d;
    ws.sigma.emplace(SubsetIndex::full(d), 1.0);
    ws.validate();
    return ws;
}

double total_weight(const WeightScheme& w) {
    w.validate();
    double total = 0.0;
    for (const auto& [s, v] : w.sigma) total += v;
    for (const auto& [t, v] : w.tau) total += v;
    return total;
}

nlohmann::json weight_scheme_to_json(const WeightScheme& w) {
    w.validate();
    nlohmann::json j;
    j["d"] = w.d;
    j["sigma"] = nlohmann::json::array();
    for (const auto& [s, v] : w.sigma)
        j["sigma"].push_back({{"set", s.members()}, {"w", v}});
    j["tau"] = nlohmann::json::array();
    for (const auto& [t, v] : w.tau)
        j["tau"].push_back({{"left", t.left().members()}, {"right", t.right().members()}, {"w", v}});
    return j;
}

WeightScheme weight_scheme_from_json(const nlohmann::json& j) {
    WeightScheme w;
    w.d = j.at("d").get<int>();
    if (j.contains("sigma"))
        for (const auto& e : j.at("sigma"))
            w.sigma.emplace(SubsetIndex(e.at("set").get<std::vector<int>>()), e.at("w").get<double>());
    if (j.contains("tau"))
        for (const auto& e : j.at("tau"))
            w.tau.emplace(DivisionIndex(SubsetIndex(e.at("left").get<std::vector<int>>()),
                                        SubsetIndex(e.at("right").get<std::vector<int>>())),
                          e.at("w").get<double>());
    w.validate();
    return w;
}

} // namespace unicl
