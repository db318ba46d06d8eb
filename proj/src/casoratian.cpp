#include "miop/casoratian.hpp"

namespace miop {

Scalar determinant(Matrix m) {
    const std::size_t n = m.size();
    if (n == 0) return Scalar(1);
    Scalar prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return Scalar(0);
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = Scalar(0);
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

std::size_t rank(Matrix m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c].is_zero()) continue;
            Scalar f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

Scalar SampleCache::get(const GridFunction& f, long x) {
    if (f.id.empty()) return f(x);
    auto key = std::make_pair(f.id, x);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = data_.find(key);
        if (it != data_.end()) return it->second;
    }
    Scalar v = f(x);
    std::lock_guard<std::mutex> lock(mu_);
    data_.emplace(key, v);
    return v;
}

std::size_t SampleCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return data_.size();
}

void SampleCache::clear() {
    std::lock_guard<std::mutex> lock(mu_);
    data_.clear();
}

Scalar casoratian(const std::vector<GridFunction>& fs, long x, SampleCache* cache) {
    const std::size_t n = fs.size();
    Matrix m(n, std::vector<Scalar>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            long y = x + static_cast<long>(j);
            m[j][k] = cache ? cache->get(fs[k], y) : fs[k](y);
        }
    return determinant(std::move(m));
}

}  // namespace miop
