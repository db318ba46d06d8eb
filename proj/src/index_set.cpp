#include "miop/index_set.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace miop {

IndexSet::IndexSet(std::vector<long> labels) : d_(std::move(labels)) {
    std::set<long> seen;
    for (long v : d_) {
        if (v < 0) throw std::invalid_argument("IndexSet: negative label " + std::to_string(v));
        if (!seen.insert(v).second)
            throw std::invalid_argument("IndexSet: repeated label " + std::to_string(v));
    }
}

IndexSet IndexSet::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != '{' && c != '}' && c != '[' && c != ']' && c != ' ') s.push_back(c);
    std::vector<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("IndexSet: bad label '" + item + "'");
        }
        if (pos != item.size()) throw std::invalid_argument("IndexSet: bad label '" + item + "'");
        out.push_back(v);
    }
    return IndexSet(out);
}

bool IndexSet::contains(long n) const { return std::find(d_.begin(), d_.end(), n) != d_.end(); }

long IndexSet::sum() const {
    long s = 0;
    for (long v : d_) s += v;
    return s;
}

long IndexSet::ell() const { return sum() - static_cast<long>(M()) * (M() - 1) / 2; }
long IndexSet::ell_ka() const { return sum() - static_cast<long>(M()) * (M() + 1) / 2; }

long IndexSet::mu() const {
    long m = 0;
    while (contains(m)) ++m;
    return m;
}

IndexSet IndexSet::shifted(long i) const {
    std::vector<long> out;
    for (long v : d_) out.push_back(v + i);
    return IndexSet(out);
}

bool IndexSet::all_above(long N) const {
    return std::all_of(d_.begin(), d_.end(), [N](long v) { return v > N; });
}

IndexSet IndexSet::primed(long N) const {
    if (!all_above(N)) throw std::invalid_argument("IndexSet::primed: labels must exceed N");
    return shifted(-N - 1);
}

std::string IndexSet::str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < d_.size(); ++i) s += (i ? "," : "") + std::to_string(d_[i]);
    return s + "}";
}

bool ka_admissible(const IndexSet& D) {
    long top = 0;
    for (long v : D.labels()) top = std::max(top, v);
    for (long m = 0; m <= top + 1; ++m) {
        int sign = 1;
        for (long v : D.labels()) {
            if (m == v) { sign = 0; break; }
            if (m < v) sign = -sign;
        }
        if (sign < 0) return false;
    }
    return true;
}

bool ka_admissible_gaps(const IndexSet& D) {
    long top = 0;
    for (long v : D.labels()) top = std::max(top, v);
    std::vector<long> e;
    for (long m = 0; m <= top + 2; ++m)
        if (!D.contains(m)) e.push_back(m);
    for (std::size_t j = 1; j < e.size(); ++j)
        if ((e[j] - e[j - 1]) % 2 == 0) return false;
    return true;
}

bool parity_condition(const IndexSet& D, long N) {
    std::vector<long> d = D.labels();
    std::sort(d.begin(), d.end());
    long prev = N;
    for (long v : d) {
        if ((v - prev) % 2 == 0) return false;
        prev = v;
    }
    return true;
}

std::vector<IndexSet> enumerate_index_sets(int M, long lo, long hi) {
    std::vector<IndexSet> out;
    if (M < 0 || hi - lo + 1 < M) return out;
    std::vector<long> cur;
    auto rec = [&](auto&& self, long start) -> void {
        if (static_cast<int>(cur.size()) == M) {
            out.emplace_back(cur);
            return;
        }
        for (long v = start; v <= hi; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, lo);
    return out;
}

}  // namespace miop
