#pragma once

#include "miop/scalar.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace miop {

using Matrix = std::vector<std::vector<Scalar>>;

// Determinant by fraction-free elimination with row pivoting.
Scalar determinant(Matrix m);
// Rank by Gaussian elimination.
std::size_t rank(Matrix m);

struct GridFunction {
    std::function<Scalar(long)> eval;
    long lo = 0, hi = 0;  // domain hint only
    std::string id;       // memo key; empty disables memoization

    Scalar operator()(long x) const { return eval(x); }
};

// Sample memo keyed by (function id, x), safe for concurrent use.
class SampleCache {
public:
    Scalar get(const GridFunction& f, long x);
    std::size_t size() const;
    void clear();

private:
    mutable std::mutex mu_;
    std::map<std::pair<std::string, long>, Scalar> data_;
};

// det(f_k(x+j-1)), j,k = 1..n; 1 for the empty list.
Scalar casoratian(const std::vector<GridFunction>& fs, long x, SampleCache* cache = nullptr);

}  // namespace miop
