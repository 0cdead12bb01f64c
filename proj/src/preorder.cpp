#include "mpdet/preorder.hpp"

#include <algorithm>
#include <stdexcept>

namespace mpdet {

FinitePreorder::FinitePreorder(std::vector<std::string> labels,
                               std::vector<std::vector<bool>> relation)
    : labels_(std::move(labels)), leq_(std::move(relation)) {
    const std::size_t n = labels_.size();
    if (leq_.size() != n) {
        throw std::invalid_argument("FinitePreorder: relation must be square over the labels");
    }
    for (const auto& row : leq_) {
        if (row.size() != n) {
            throw std::invalid_argument("FinitePreorder: relation must be square over the labels");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!leq_[i][i]) {
            throw std::invalid_argument("FinitePreorder: relation is not reflexive at " +
                                        labels_[i]);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!leq_[i][j]) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (leq_[j][k] && !leq_[i][k]) {
                    throw std::invalid_argument("FinitePreorder: relation is not transitive via " +
                                                labels_[j]);
                }
            }
        }
    }
}

const std::string& FinitePreorder::label(std::size_t i) const {
    if (i >= labels_.size()) {
        throw std::invalid_argument("FinitePreorder: element index out of range");
    }
    return labels_[i];
}

std::size_t FinitePreorder::index_of(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw std::invalid_argument("FinitePreorder: unknown label " + label);
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

bool FinitePreorder::leq(std::size_t a, std::size_t b) const {
    if (a >= size() || b >= size()) {
        throw std::invalid_argument("FinitePreorder: element index out of range");
    }
    return leq_[a][b];
}

void FinitePreorder::require_valid(const std::vector<std::size_t>& indices) const {
    for (const auto i : indices) {
        if (i >= size()) {
            throw std::invalid_argument("FinitePreorder: element index out of range");
        }
    }
}

std::vector<std::size_t> FinitePreorder::upper_bounds(
    const std::vector<std::size_t>& a_set) const {
    require_valid(a_set);
    std::vector<std::size_t> result;
    for (std::size_t u = 0; u < size(); ++u) {
        const bool bounds_all = std::all_of(a_set.begin(), a_set.end(),
                                            [&](std::size_t a) { return leq_[a][u]; });
        if (bounds_all) result.push_back(u);
    }
    return result;
}

std::vector<std::size_t> FinitePreorder::maximal_elements(
    const std::vector<std::size_t>& a_set) const {
    require_valid(a_set);
    std::vector<std::size_t> result;
    for (const auto m : a_set) {
        const bool maximal = std::all_of(a_set.begin(), a_set.end(), [&](std::size_t a) {
            return !leq_[m][a] || leq_[a][m];
        });
        if (maximal && std::find(result.begin(), result.end(), m) == result.end()) {
            result.push_back(m);
        }
    }
    return result;
}

std::vector<std::size_t> FinitePreorder::sup_set(const std::vector<std::size_t>& a_set) const {
    const auto uppers = upper_bounds(a_set);
    std::vector<std::size_t> result;
    for (const auto u : uppers) {
        const bool minimal = std::all_of(uppers.begin(), uppers.end(), [&](std::size_t v) {
            return !leq_[v][u] || leq_[u][v];
        });
        if (minimal) result.push_back(u);
    }
    return result;
}

MPVerdict check_mp(const FinitePreorder& preorder, const std::vector<std::size_t>& a_set,
                   const std::vector<std::size_t>& b_set) {
    MPVerdict verdict;

    const auto fail = [&](std::string reason) {
        verdict.holds = false;
        verdict.failure_reason = std::move(reason);
        return verdict;
    };

    const auto uppers_a = preorder.upper_bounds(a_set);
    const auto uppers_b = preorder.upper_bounds(b_set);

    // Lemma condition is reported regardless of the main verdict.
    bool cross_comparable = false;
    for (const auto a : a_set) {
        for (const auto b : b_set) {
            if (preorder.leq(a, b)) cross_comparable = true;
        }
    }
    verdict.lemma_condition =
        !cross_comparable && preorder.sup_set(a_set) == preorder.sup_set(b_set);

    if (a_set.empty() || b_set.empty()) {
        return fail("both subsets must be nonempty");
    }
    for (const auto a : a_set) {
        if (std::find(b_set.begin(), b_set.end(), a) != b_set.end()) {
            return fail("subsets are not disjoint at " + preorder.label(a));
        }
    }
    if (uppers_a != uppers_b) {
        return fail("upper-bound sets differ");
    }

    const auto find_unbounded = [&](const std::vector<std::size_t>& from,
                                    const std::vector<std::size_t>& other) {
        std::optional<std::size_t> witness;
        for (const auto x : from) {
            const bool has_upper = std::any_of(other.begin(), other.end(),
                                               [&](std::size_t u) { return preorder.leq(x, u); });
            if (!has_upper) {
                witness = x;
                break;
            }
        }
        return witness;
    };

    verdict.witness_a = find_unbounded(a_set, b_set);
    if (!verdict.witness_a) {
        return fail("every element of A has an upper bound in B");
    }
    verdict.witness_b = find_unbounded(b_set, a_set);
    if (!verdict.witness_b) {
        return fail("every element of B has an upper bound in A");
    }

    verdict.holds = true;
    verdict.witness_same_upper = uppers_a;
    return verdict;
}

}  // namespace mpdet
