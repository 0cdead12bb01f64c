#pragma once

// Finite preorders with upper-bound / maximal-element / least-upper-bound
// machinery, and the checker for the preorder form of the Multiplicity
// Principle: two disjoint subsets with identical upper-bound sets, each
// holding an element with no upper bound in the other.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace mpdet {

/// An explicit element list with a reflexive transitive boolean relation.
/// Both properties are verified at construction; violations throw
/// std::invalid_argument.
class FinitePreorder {
  public:
    FinitePreorder(std::vector<std::string> labels, std::vector<std::vector<bool>> relation);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const;
    std::size_t index_of(const std::string& label) const;

    bool leq(std::size_t a, std::size_t b) const;

    /// { u : for all a in A, leq(a, u) }. A must contain valid indices.
    std::vector<std::size_t> upper_bounds(const std::vector<std::size_t>& a_set) const;

    /// { m in A : for all a in A, leq(m, a) implies leq(a, m) }.
    std::vector<std::size_t> maximal_elements(const std::vector<std::size_t>& a_set) const;

    /// Minimal elements (under leq) of upper_bounds(A).
    std::vector<std::size_t> sup_set(const std::vector<std::size_t>& a_set) const;

  private:
    void require_valid(const std::vector<std::size_t>& indices) const;

    std::vector<std::string> labels_;
    std::vector<std::vector<bool>> leq_;
};

/// Outcome of a Multiplicity Principle check.
struct MPVerdict {
    bool holds = false;
    std::vector<std::size_t> witness_same_upper;  // the shared upper-bound set
    std::optional<std::size_t> witness_a;         // element of A with no upper bound in B
    std::optional<std::size_t> witness_b;         // element of B with no upper bound in A
    std::optional<std::string> failure_reason;
    // The sufficient condition from the stronger lemma:
    // (A x B) disjoint from leq, and sup_set(A) == sup_set(B).
    bool lemma_condition = false;
};

/// holds iff A and B are disjoint, share the same upper-bound set, and each
/// contains an element with no upper bound in the other.
MPVerdict check_mp(const FinitePreorder& preorder, const std::vector<std::size_t>& a_set,
                   const std::vector<std::size_t>& b_set);

}  // namespace mpdet
