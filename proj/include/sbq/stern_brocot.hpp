#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "sbq/continued_fraction.hpp"
#include "sbq/parallel.hpp"
#include "sbq/rational.hpp"

namespace sbq {

// Depth guard for level construction.  Can be raised per run; the hard
// ceiling keeps p*q' comparisons inside unsigned 64-bit arithmetic
// (denominators grow at most like Fibonacci numbers).
inline constexpr int default_max_level = 24;
inline constexpr int absolute_max_level = 45;

// One reduced fraction of a level.  Numerators and denominators at the
// supported depths fit comfortably in 64 bits.
struct frac64 {
    std::uint64_t p = 0;
    std::uint64_t q = 1;

    friend bool operator==(frac64 a, frac64 b) { return a.p == b.p && a.q == b.q; }
    friend bool operator<(frac64 a, frac64 b) { return a.p * b.q < b.p * a.q; }
};

inline rational to_rational(frac64 f) {
    return rational(mpz_class(static_cast<unsigned long>(f.p)), mpz_class(static_cast<unsigned long>(f.q)));
}

inline frac64 mediant(frac64 a, frac64 b) { return {a.p + b.p, a.q + b.q}; }

// An ordered mediant-refinement level of [0,1]: 2^n + 1 fractions from 0/1
// to 1/1, neighbors unimodular, symmetric under x -> 1-x.
class level {
public:
    level(int n, std::vector<frac64> elems) : n_(n), elems_(std::move(elems)) {}

    int index() const { return n_; }
    std::size_t size() const { return elems_.size(); }
    frac64 operator[](std::size_t j) const { return elems_[j]; }
    const std::vector<frac64>& elements() const { return elems_; }

    // Full invariant check; throws cache_error(invariant) on any failure
    // so loaded files are never trusted.
    void validate() const {
        const std::size_t expected = (std::size_t{1} << n_) + 1;
        if (n_ < 0 || n_ > absolute_max_level || elems_.size() != expected)
            fail("element count");
        if (!(elems_.front() == frac64{0, 1}) || !(elems_.back() == frac64{1, 1}))
            fail("endpoints");
        for (std::size_t j = 0; j + 1 < elems_.size(); ++j) {
            const frac64 a = elems_[j], b = elems_[j + 1];
            if (a.q == 0 || b.q == 0) fail("zero denominator");
            if (std::gcd(a.p, a.q) != 1) fail("unreduced element");
            // unimodularity implies strict order and reducedness of b
            if (b.p * a.q - a.p * b.q != 1) fail("unimodular neighbors");
        }
        for (std::size_t j = 0; j < elems_.size(); ++j) {
            const frac64 a = elems_[j], b = elems_[elems_.size() - 1 - j];
            if (a.p * b.q + b.p * a.q != a.q * b.q) fail("symmetry");
        }
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw cache_error(cache_error::reason::invariant,
                          "level " + std::to_string(n_) + ": invariant violated: " + what);
    }

    int n_;
    std::vector<frac64> elems_;
};

// The new elements W_n of a level (odd indices of level n); W_0 is the
// bookkeeping convention {0/1, 1/1} and is flagged as such.
class new_elements {
public:
    static new_elements of_level(const level& L) {
        std::vector<frac64> w;
        w.reserve(L.size() / 2);
        for (std::size_t j = 1; j < L.size(); j += 2) w.push_back(L[j]);
        return new_elements(L.index(), false, std::move(w));
    }
    static new_elements bookkeeping_w0() { return new_elements(0, true, {{0, 1}, {1, 1}}); }
    static new_elements from_sorted(int n, std::vector<frac64> elems) {
        return new_elements(n, false, std::move(elems));
    }

    int index() const { return n_; }
    bool is_bookkeeping() const { return bookkeeping_; }
    std::size_t size() const { return elems_.size(); }
    frac64 operator[](std::size_t i) const { return elems_[i]; }
    const std::vector<frac64>& elements() const { return elems_; }

private:
    new_elements(int n, bool bookkeeping, std::vector<frac64> elems)
        : n_(n), bookkeeping_(bookkeeping), elems_(std::move(elems)) {}

    int n_;
    bool bookkeeping_;
    std::vector<frac64> elems_;
};

namespace detail {

inline void check_level_index(int n, int max_level) {
    if (n < 0) throw domain_error("level index must be nonnegative");
    if (n > max_level || n > absolute_max_level)
        throw resource_limit_error("level " + std::to_string(n) + " above configured maximum " +
                                   std::to_string(std::min(max_level, absolute_max_level)));
}

inline std::vector<frac64> refine(const std::vector<frac64>& prev) {
    std::vector<frac64> next;
    next.reserve(prev.size() * 2 - 1);
    for (std::size_t j = 0; j + 1 < prev.size(); ++j) {
        next.push_back(prev[j]);
        next.push_back(mediant(prev[j], prev[j + 1]));
    }
    next.push_back(prev.back());
    return next;
}

} // namespace detail

// Builds F_n by repeated mediant insertion starting from {0/1, 1/1}.
inline level build_level(int n, int max_level = default_max_level) {
    detail::check_level_index(n, max_level);
    std::vector<frac64> elems = {{0, 1}, {1, 1}};
    for (int k = 1; k <= n; ++k) elems = detail::refine(elems);
    return level(n, std::move(elems));
}

// Cache file name f_<n>.tsv; first line carries the level index and count.
inline std::filesystem::path level_cache_file(int n, const std::filesystem::path& dir) {
    return dir / ("f_" + std::to_string(n) + ".tsv");
}

inline void save_level(const level& L, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const auto path = level_cache_file(L.index(), dir);
    std::ofstream out(path);
    if (!out)
        throw cache_error(cache_error::reason::missing, "cannot open " + path.string() + " for writing");
    out << "# stern-brocot level n=" << L.index() << " count=" << L.size() << "\n";
    for (const frac64 f : L.elements()) out << f.p << "\t" << f.q << "\n";
    out.flush();
    if (!out) throw cache_error(cache_error::reason::corrupt, "short write to " + path.string());
}

inline level load_level(int n, const std::filesystem::path& dir) {
    const auto path = level_cache_file(n, dir);
    std::ifstream in(path);
    if (!in) throw cache_error(cache_error::reason::missing, "no cache file " + path.string());

    const auto corrupt = [&](const std::string& what) -> cache_error {
        return {cache_error::reason::corrupt, path.string() + ": " + what};
    };

    std::string header;
    if (!std::getline(in, header)) throw corrupt("empty file");
    int file_n = -1;
    unsigned long long count = 0;
    if (std::sscanf(header.c_str(), "# stern-brocot level n=%d count=%llu", &file_n, &count) != 2)
        throw corrupt("bad header");
    if (file_n != n) throw corrupt("level index mismatch");

    std::vector<frac64> elems;
    elems.reserve(count);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        frac64 f;
        char trailing = 0;
        if (std::sscanf(line.c_str(), "%lu\t%lu%c", &f.p, &f.q, &trailing) != 2)
            throw corrupt("bad element line");
        elems.push_back(f);
    }
    if (elems.size() != count) throw corrupt("element count differs from header");

    level L(n, std::move(elems));
    L.validate(); // invariant violations are reported as such, not as corruption
    return L;
}

// In-memory memo over build_level with an optional on-disk cache.
class level_store {
public:
    explicit level_store(int max_level = default_max_level, std::filesystem::path cache_dir = {})
        : max_level_(max_level), dir_(std::move(cache_dir)) {}

    int max_level() const { return max_level_; }
    const std::filesystem::path& cache_dir() const { return dir_; }

    std::shared_ptr<const level> get(int n) {
        detail::check_level_index(n, max_level_);
        if (auto it = memo_.find(n); it != memo_.end()) return it->second;
        if (!dir_.empty()) {
            try {
                auto loaded = std::make_shared<const level>(load_level(n, dir_));
                memo_.emplace(n, loaded);
                return loaded;
            } catch (const cache_error& e) {
                if (e.why() != cache_error::reason::missing) throw;
            }
        }
        auto built = std::make_shared<const level>(build_from_memo(n));
        memo_.emplace(n, built);
        if (!dir_.empty()) save_level(*built, dir_);
        return built;
    }

    const level& at(int n) { return *get(n); }

private:
    level build_from_memo(int n) {
        // extend from the deepest memoized level below n
        int base = -1;
        for (auto& [k, v] : memo_)
            if (k < n) base = std::max(base, k);
        std::vector<frac64> elems =
            base >= 0 ? memo_.at(base)->elements() : std::vector<frac64>{{0, 1}, {1, 1}};
        for (int k = std::max(base, 0) + 1; k <= n; ++k) elems = detail::refine(elems);
        return level(n, std::move(elems));
    }

    int max_level_;
    std::filesystem::path dir_;
    std::map<int, std::shared_ptr<const level>> memo_;
};

inline new_elements get_new_elements(int n, level_store& store) {
    if (n < 0) throw domain_error("new_elements: negative index");
    if (n == 0) return new_elements::bookkeeping_w0();
    return new_elements::of_level(store.at(n));
}

// One step of the refinement maps p/q -> q/(2q-p), (q-p)/(2q-p), sorted.
inline new_elements w_step(const new_elements& w) {
    if (w.index() < 1 || w.is_bookkeeping())
        throw domain_error("w_step: defined for W_n with n >= 1");
    std::vector<frac64> next;
    next.reserve(w.size() * 2);
    for (const frac64 f : w.elements()) {
        const std::uint64_t d = 2 * f.q - f.p;
        next.push_back({f.q, d});
        next.push_back({f.q - f.p, d});
    }
    std::sort(next.begin(), next.end());
    return new_elements::from_sorted(w.index() + 1, std::move(next));
}

// Left and right mediants of the element at index j with its neighbors;
// the endpoints have no such pair.
inline std::pair<frac64, frac64> descendants(const level& L, std::size_t j) {
    if (j == 0 || j + 1 >= L.size())
        throw domain_error("descendants: defined for interior indices only");
    return {mediant(L[j - 1], L[j]), mediant(L[j], L[j + 1])};
}

// Exact sum of 1/q^2 over the new elements.
inline rational s_n(const new_elements& w, unsigned threads = 1) {
    if (w.index() < 1 || w.is_bookkeeping())
        throw domain_error("s_n: defined for W_n with n >= 1");
    mpq_class total = parallel_reduce<mpq_class>(
        w.size(), threads, mpq_class(0),
        [&](std::size_t i) {
            const std::uint64_t q = w[i].q;
            return mpq_class(1, static_cast<unsigned long>(q * q));
        },
        [](mpq_class& into, const mpq_class& from) { into += from; });
    return rational(std::move(total));
}

} // namespace sbq
