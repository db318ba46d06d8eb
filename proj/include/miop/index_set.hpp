#pragma once

#include <string>
#include <vector>

namespace miop {

// Ordered list of distinct nonnegative seed labels d_1..d_M.
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(std::vector<long> labels);
    static IndexSet parse(const std::string& text);  // "2,3" or "{2,3}" or ""

    const std::vector<long>& labels() const { return d_; }
    int M() const { return static_cast<int>(d_.size()); }
    long operator[](std::size_t i) const { return d_[i]; }
    bool contains(long n) const;
    long sum() const;

    long ell() const;     // sum d_j - M(M-1)/2
    long ell_ka() const;  // sum d_j - M(M+1)/2
    long mu() const;      // smallest nonnegative integer not in D

    // {d_j + i}; throws if a label would become negative.
    IndexSet shifted(long i) const;
    bool all_above(long N) const;
    // m_j = d_j - N - 1, requires all_above(N).
    IndexSet primed(long N) const;

    std::string str() const;  // "{2,3}"
    friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.d_ == b.d_; }

private:
    std::vector<long> d_;
};

// prod_j (m - d_j) >= 0 for all m >= 0.
bool ka_admissible(const IndexSet& D);
// Complement gaps e_j - e_{j-1} are all odd.
bool ka_admissible_gaps(const IndexSet& D);

// d_j - d_{j-1} odd for the ascending labels, with d_0 = N.
bool parity_condition(const IndexSet& D, long N);

// All index sets of size M with labels in [lo, hi], ascending.
std::vector<IndexSet> enumerate_index_sets(int M, long lo, long hi);

}  // namespace miop
