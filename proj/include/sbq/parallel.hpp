#pragma once

#include <cstddef>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace sbq {

// Balanced reduction of a stream of terms.  Merging equal-weight partial
// sums (binary-counter style) keeps big-number operands of similar size,
// which is what makes exact reductions over 2^n terms affordable.
template <typename T, typename Combine>
class tree_accumulator {
public:
    explicit tree_accumulator(Combine combine) : combine_(std::move(combine)) {}

    void push(T value) {
        for (auto& slot : slots_) {
            if (!slot) {
                slot = std::move(value);
                return;
            }
            combine_(value, *slot);
            slot.reset();
        }
        slots_.emplace_back(std::move(value));
    }

    // Folds the remaining partials; empty stream yields `empty`.
    T finish(T empty) {
        std::optional<T> acc;
        for (auto& slot : slots_) {
            if (!slot) continue;
            if (!acc) {
                acc = std::move(*slot);
            } else {
                combine_(*acc, *slot);
            }
        }
        return acc ? std::move(*acc) : std::move(empty);
    }

private:
    Combine combine_;
    std::vector<std::optional<T>> slots_;
};

// Reduces leaf(0) .. leaf(count-1) with `combine`, splitting the index
// range over `threads` workers.  Partials are merged in index order, so
// the result for a given (count, threads) pair is deterministic; exact
// combines make it independent of the partition as well.
template <typename T, typename Leaf, typename Combine>
T parallel_reduce(std::size_t count, unsigned threads, T empty, Leaf leaf, Combine combine) {
    auto run_range = [&](std::size_t begin, std::size_t end) {
        tree_accumulator<T, Combine> acc(combine);
        for (std::size_t i = begin; i < end; ++i) acc.push(leaf(i));
        return acc.finish(empty);
    };

    if (threads <= 1 || count < 2 * threads) return run_range(0, count);

    std::vector<T> partials(threads, empty);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    const std::size_t chunk = count / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = (t + 1 == threads) ? count : begin + chunk;
        workers.emplace_back([&, t, begin, end] { partials[t] = run_range(begin, end); });
    }
    for (auto& w : workers) w.join();

    T total = std::move(partials[0]);
    for (unsigned t = 1; t < threads; ++t) combine(total, partials[t]);
    return total;
}

} // namespace sbq
