#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fraccal::detail {

// Pairwise (recursive-halving) summation over a fixed array.  The
// association tree depends only on the element count, never on thread
// scheduling, so sums are bit-reproducible for a given term order while
// the rounding error grows only like O(log n).
template <class T>
T pairwise_sum(const T* data, std::size_t n) {
    if (n == 0) return T{};
    if (n <= 8) {
        T s = data[0];
        for (std::size_t i = 1; i < n; ++i) s += data[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(v.data(), v.size());
}

// Streaming variant: terms arrive one at a time and are combined with the
// binary-counter scheme (level i holds a finished block of 2^i terms).
// The resulting association tree is again a pure function of the number
// of pushed terms, so interleaving production with summation keeps
// deterministic results without materialising the whole term array.
template <class T>
class StreamingPairwise {
  public:
    void push(const T& term) {
        T carry = term;
        std::size_t level = 0;
        while (level < filled_.size() && filled_[level]) {
            carry = levels_[level] + carry;
            filled_[level] = false;
            ++level;
        }
        if (level == filled_.size()) {
            levels_.push_back(carry);
            filled_.push_back(true);
        } else {
            levels_[level] = carry;
            filled_[level] = true;
        }
    }

    // Collapse from the lowest level upward; on a full binary count this
    // reproduces pairwise_sum over the same term order.
    T total() const {
        T s{};
        bool seeded = false;
        for (std::size_t i = 0; i < levels_.size(); ++i) {
            if (!filled_[i]) continue;
            if (!seeded) {
                s = levels_[i];
                seeded = true;
            } else {
                s = s + levels_[i];
            }
        }
        return s;
    }

    void reset() {
        levels_.clear();
        filled_.clear();
    }

  private:
    std::vector<T> levels_;
    std::vector<bool> filled_;
};

}  // namespace fraccal::detail
