#include "planecode/codes.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "planecode/error.hpp"

namespace planecode {

namespace {

std::vector<std::uint8_t> inverse_table(std::uint32_t p) {
    std::vector<std::uint8_t> inv(p, 0);
    for (std::uint32_t a = 1; a < p; ++a)
        for (std::uint32_t b = 1; b < p; ++b)
            if (a * b % p == 1) inv[a] = std::uint8_t(b);
    return inv;
}

void require_same_shape(const CodeWord& a, const CodeWord& b) {
    if (a.p() != b.p()) throw Error(ErrorCode::PrimeMismatch, fmt::format("words over GF({}) and GF({})", a.p(), b.p()));
    if (a.length() != b.length())
        throw Error(ErrorCode::LengthMismatch, fmt::format("lengths {} and {}", a.length(), b.length()));
}

}  // namespace

// ---------------------------------------------------------------- GfpMatrix

GfpMatrix::GfpMatrix(std::uint32_t p, std::uint32_t rows, std::uint32_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0) {
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, fmt::format("{} is not prime", p));
    if (p > 251) throw Error(ErrorCode::InvalidArgument, "symbols are stored in one byte; p must be < 256");
}

GfpMatrix GfpMatrix::incidence(const Plane& plane, std::uint32_t p) {
    GfpMatrix m(p, plane.num_lines(), plane.num_points());
    for (std::uint32_t l = 0; l < plane.num_lines(); ++l)
        for (auto pt : plane.points_on(l)) m.set(l, pt, 1);
    return m;
}

std::vector<std::uint32_t> GfpMatrix::rref_binary() {
    const std::size_t words = (cols_ + 63) / 64;
    std::vector<std::uint64_t> bits(rows_ * words, 0);
    for (std::uint32_t r = 0; r < rows_; ++r)
        for (std::uint32_t c = 0; c < cols_; ++c)
            if (at(r, c)) bits[r * words + c / 64] |= std::uint64_t(1) << (c % 64);

    std::vector<std::uint32_t> pivots;
    std::uint32_t rank = 0;
    for (std::uint32_t c = 0; c < cols_ && rank < rows_; ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t mask = std::uint64_t(1) << (c % 64);
        std::uint32_t piv = rank;
        while (piv < rows_ && !(bits[piv * words + w] & mask)) ++piv;
        if (piv == rows_) continue;
        if (piv != rank) std::swap_ranges(bits.begin() + piv * words, bits.begin() + (piv + 1) * words,
                                          bits.begin() + rank * words);
        const std::uint64_t* src = bits.data() + rank * words;
        for (std::uint32_t r = 0; r < rows_; ++r) {
            if (r == rank || !(bits[r * words + w] & mask)) continue;
            std::uint64_t* dst = bits.data() + r * words;
            for (std::size_t k = w; k < words; ++k) dst[k] ^= src[k];
        }
        pivots.push_back(c);
        ++rank;
    }
    std::vector<std::uint8_t> out(std::size_t(rank) * cols_, 0);
    for (std::uint32_t r = 0; r < rank; ++r)
        for (std::uint32_t c = 0; c < cols_; ++c) out[std::size_t(r) * cols_ + c] = (bits[r * words + c / 64] >> (c % 64)) & 1;
    data_ = std::move(out);
    rows_ = rank;
    return pivots;
}

std::vector<std::uint32_t> GfpMatrix::rref() {
    if (p_ == 2) return rref_binary();
    const auto inv = inverse_table(p_);
    // mul[f * p + x] = f * x mod p
    std::vector<std::uint8_t> mul(p_ * p_);
    for (std::uint32_t f = 0; f < p_; ++f)
        for (std::uint32_t x = 0; x < p_; ++x) mul[f * p_ + x] = std::uint8_t(f * x % p_);

    std::vector<std::uint32_t> pivots;
    std::uint32_t rank = 0;
    for (std::uint32_t c = 0; c < cols_ && rank < rows_; ++c) {
        std::uint32_t piv = rank;
        while (piv < rows_ && !at(piv, c)) ++piv;
        if (piv == rows_) continue;
        if (piv != rank) std::swap_ranges(row(piv).begin(), row(piv).end(), row(rank).begin());
        auto src = row(rank);
        if (src[c] != 1) {
            const std::uint8_t* t = &mul[inv[src[c]] * p_];
            for (std::uint32_t k = c; k < cols_; ++k) src[k] = t[src[k]];
        }
        for (std::uint32_t r = 0; r < rows_; ++r) {
            if (r == rank) continue;
            auto dst = row(r);
            const std::uint8_t a = dst[c];
            if (!a) continue;
            const std::uint8_t* t = &mul[(p_ - a) * p_];
            for (std::uint32_t k = c; k < cols_; ++k) {
                std::uint32_t s = dst[k] + t[src[k]];
                dst[k] = std::uint8_t(s >= p_ ? s - p_ : s);
            }
        }
        pivots.push_back(c);
        ++rank;
    }
    data_.resize(std::size_t(rank) * cols_);
    rows_ = rank;
    return pivots;
}

// ---------------------------------------------------------------- CodeWord

CodeWord::CodeWord(std::uint32_t p, std::vector<std::uint8_t> values) : p_(p), values_(std::move(values)) {
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, fmt::format("{} is not prime", p));
    for (std::uint32_t i = 0; i < values_.size(); ++i) {
        if (values_[i] >= p) throw Error(ErrorCode::InvalidArgument, fmt::format("symbol {} at {} is not below p", values_[i], i));
        if (values_[i]) support_.push_back(i);
    }
}

CodeWord CodeWord::zero(std::uint32_t p, std::uint32_t length) { return CodeWord(p, std::vector<std::uint8_t>(length, 0)); }

CodeWord scale(const CodeWord& w, std::int64_t lambda) {
    const auto p = static_cast<std::int64_t>(w.p());
    const auto f = static_cast<std::uint32_t>(((lambda % p) + p) % p);
    auto v = w.values();
    for (auto& x : v) x = std::uint8_t(x * f % w.p());
    return CodeWord(w.p(), std::move(v));
}

CodeWord add(const CodeWord& a, const CodeWord& b) {
    require_same_shape(a, b);
    auto v = a.values();
    for (std::uint32_t i = 0; i < v.size(); ++i) v[i] = std::uint8_t((v[i] + b[i]) % a.p());
    return CodeWord(a.p(), std::move(v));
}

CodeWord diff(const CodeWord& a, const CodeWord& b) {
    require_same_shape(a, b);
    auto v = a.values();
    for (std::uint32_t i = 0; i < v.size(); ++i) v[i] = std::uint8_t((v[i] + a.p() - b[i]) % a.p());
    return CodeWord(a.p(), std::move(v));
}

CodeWord indicator(std::uint32_t p, std::uint32_t length, std::span<const std::uint32_t> points) {
    std::vector<std::uint8_t> v(length, 0);
    for (auto pt : points) {
        if (pt >= length) throw Error(ErrorCode::InvalidArgument, fmt::format("position {} outside length {}", pt, length));
        v[pt] = 1;
    }
    return CodeWord(p, std::move(v));
}

CodeWord normalized(const CodeWord& w) {
    if (w.weight() == 0) return w;
    const auto lead = w[w.support().front()];
    return scale(w, inverse_table(w.p())[lead]);
}

std::uint64_t mu(const CodeWord& w) {
    std::uint64_t s = 0;
    for (auto x : w.values()) s += x;
    return s;
}

std::uint64_t mu_on(const CodeWord& w, std::span<const std::uint32_t> positions) {
    std::uint64_t s = 0;
    for (auto i : positions) s += w[i];
    return s;
}

// ---------------------------------------------------------------- LinearCode

CodeWord LinearCode::row_word(std::uint32_t i) const {
    auto r = generator.row(i);
    return CodeWord(p, {r.begin(), r.end()});
}

CodeWord LinearCode::combine(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() != dimension())
        throw Error(ErrorCode::LengthMismatch, fmt::format("{} coefficients for dimension {}", coeffs.size(), dimension()));
    std::vector<std::uint32_t> acc(length, 0);
    for (std::uint32_t i = 0; i < dimension(); ++i) {
        const auto c = coeffs[i] % p;
        if (!c) continue;
        auto r = generator.row(i);
        for (std::uint32_t j = 0; j < length; ++j) acc[j] = (acc[j] + c * r[j]) % p;
    }
    return CodeWord(p, {acc.begin(), acc.end()});
}

LinearCode span_of(GfpMatrix rows) {
    LinearCode code;
    code.p = rows.p();
    code.length = rows.cols();
    code.pivots = rows.rref();
    code.generator = std::move(rows);
    return code;
}

LinearCode code_of_plane(const Plane& plane, std::uint32_t p, bool allow_prime_mismatch) {
    std::uint32_t n = plane.order();
    while (n % p == 0) n /= p;
    if (n != 1 && !allow_prime_mismatch)
        throw Error(ErrorCode::PrimeMismatch, fmt::format("plane order {} is not a power of {}", plane.order(), p));
    return span_of(GfpMatrix::incidence(plane, p));
}

LinearCode dual_basis(const LinearCode& code) {
    const auto p = code.p;
    const auto n = code.length;
    const auto k = code.dimension();
    std::vector<char> is_pivot(n, 0);
    for (auto c : code.pivots) is_pivot[c] = 1;

    GfpMatrix null(p, n - k, n);
    std::uint32_t r = 0;
    for (std::uint32_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        null.set(r, f, 1);
        for (std::uint32_t i = 0; i < k; ++i) null.set(r, code.pivots[i], p - code.generator.at(i, f));
        ++r;
    }
    auto dual = span_of(std::move(null));
    if (dual.dimension() != n - k)
        throw Error(ErrorCode::Precondition, fmt::format("null space has rank {} instead of {}", dual.dimension(), n - k));
    for (std::uint32_t a = 0; a < dual.dimension(); ++a)
        for (std::uint32_t b = 0; b < k; ++b) {
            std::uint32_t s = 0;
            for (std::uint32_t j = 0; j < n; ++j) s += dual.generator.at(a, j) * code.generator.at(b, j);
            if (s % p) throw Error(ErrorCode::Precondition, fmt::format("dual row {} not orthogonal to row {}", a, b));
        }
    return dual;
}

DualCheck is_dual_word(const CodeWord& w, const Plane& plane) {
    if (w.length() != plane.num_points())
        throw Error(ErrorCode::LengthMismatch,
                    fmt::format("word length {} but plane has {} points", w.length(), plane.num_points()));
    for (std::uint32_t l = 0; l < plane.num_lines(); ++l)
        if (mu_on(w, plane.points_on(l)) % w.p()) return {false, l};
    return {};
}

// ---------------------------------------------------------------- enumeration

namespace {

// Word representations for the Gray-code walk. Each offers a State, set(state,
// coefficient of the top row), add_row(state, j), weight(state), unpack(state).

class BinaryRep {
public:
    explicit BinaryRep(const LinearCode& code) : n_(code.length), words_((n_ + 63) / 64) {
        rows_.resize(code.dimension(), std::vector<std::uint64_t>(words_, 0));
        for (std::uint32_t i = 0; i < code.dimension(); ++i)
            for (std::uint32_t j = 0; j < n_; ++j)
                if (code.generator.at(i, j)) rows_[i][j / 64] |= std::uint64_t(1) << (j % 64);
    }
    using State = std::vector<std::uint64_t>;
    State init(std::uint32_t row, std::uint32_t c) const { return c ? rows_[row] : State(words_, 0); }
    void add_row(State& s, std::uint32_t j) const {
        for (std::size_t k = 0; k < words_; ++k) s[k] ^= rows_[j][k];
    }
    std::uint32_t weight(const State& s) const {
        std::uint32_t w = 0;
        for (auto x : s) w += std::popcount(x);
        return w;
    }
    std::vector<std::uint8_t> unpack(const State& s) const {
        std::vector<std::uint8_t> v(n_);
        for (std::uint32_t j = 0; j < n_; ++j) v[j] = (s[j / 64] >> (j % 64)) & 1;
        return v;
    }

private:
    std::uint32_t n_;
    std::size_t words_;
    std::vector<std::vector<std::uint64_t>> rows_;
};

// GF(3) symbols as two one-hot bit planes: (is one, is two).
class TernaryRep {
public:
    explicit TernaryRep(const LinearCode& code) : n_(code.length), words_((n_ + 63) / 64) {
        rows_.resize(code.dimension(), State(2 * words_, 0));
        for (std::uint32_t i = 0; i < code.dimension(); ++i)
            for (std::uint32_t j = 0; j < n_; ++j) {
                const auto v = code.generator.at(i, j);
                if (v) rows_[i][(v - 1) * words_ + j / 64] |= std::uint64_t(1) << (j % 64);
            }
    }
    using State = std::vector<std::uint64_t>;
    State init(std::uint32_t row, std::uint32_t c) const {
        if (c == 0) return State(2 * words_, 0);
        State s = rows_[row];
        if (c == 2) std::swap_ranges(s.begin(), s.begin() + words_, s.begin() + words_);
        return s;
    }
    void add_row(State& s, std::uint32_t j) const {
        const auto& r = rows_[j];
        for (std::size_t k = 0; k < words_; ++k) {
            const auto x1 = s[k], x2 = s[words_ + k], y1 = r[k], y2 = r[words_ + k];
            const auto x0 = ~(x1 | x2), y0 = ~(y1 | y2);
            s[k] = (x1 & y0) | (x0 & y1) | (x2 & y2);
            s[words_ + k] = (x2 & y0) | (x0 & y2) | (x1 & y1);
        }
    }
    std::uint32_t weight(const State& s) const {
        std::uint32_t w = 0;
        for (std::size_t k = 0; k < words_; ++k) w += std::popcount(s[k] | s[words_ + k]);
        return w;
    }
    std::vector<std::uint8_t> unpack(const State& s) const {
        std::vector<std::uint8_t> v(n_);
        for (std::uint32_t j = 0; j < n_; ++j) {
            const auto bit = std::uint64_t(1) << (j % 64);
            v[j] = (s[j / 64] & bit) ? 1 : (s[words_ + j / 64] & bit) ? 2 : 0;
        }
        return v;
    }

private:
    std::uint32_t n_;
    std::size_t words_;
    std::vector<State> rows_;
};

class GenericRep {
public:
    explicit GenericRep(const LinearCode& code) : code_(code), p_(code.p) {
        supports_.resize(code.dimension());
        for (std::uint32_t i = 0; i < code.dimension(); ++i)
            for (std::uint32_t j = 0; j < code.length; ++j)
                if (code.generator.at(i, j)) supports_[i].push_back(j);
    }
    struct State {
        std::vector<std::uint8_t> v;
        std::uint32_t weight = 0;
    };
    State init(std::uint32_t row, std::uint32_t c) const {
        State s{std::vector<std::uint8_t>(code_.length, 0), 0};
        for (auto j : supports_[row]) {
            s.v[j] = std::uint8_t(c * code_.generator.at(row, j) % p_);
            s.weight += s.v[j] != 0;
        }
        return s;
    }
    void add_row(State& s, std::uint32_t j) const {
        const auto r = code_.generator.row(j);
        for (auto pos : supports_[j]) {
            const bool was = s.v[pos] != 0;
            std::uint32_t x = s.v[pos] + r[pos];
            s.v[pos] = std::uint8_t(x >= p_ ? x - p_ : x);
            s.weight += (s.v[pos] != 0) - was;
        }
    }
    std::uint32_t weight(const State& s) const { return s.weight; }
    std::vector<std::uint8_t> unpack(const State& s) const { return s.v; }

private:
    const LinearCode& code_;
    std::uint32_t p_;
    std::vector<std::vector<std::uint32_t>> supports_;
};

struct ShardResult {
    std::uint32_t best = UINT32_MAX;
    std::vector<std::vector<std::uint8_t>> words;
    std::uint64_t visited = 0;
};

// Fixes the coefficient of the top generator row to `top` and walks the
// remaining k-1 coefficients in modular Gray-code order: from message n to
// n+1 exactly one row, indexed by the count of trailing (p-1) digits of n, is added.
template <class Rep>
ShardResult run_shard(const Rep& rep, std::uint32_t p, std::uint32_t k, std::uint32_t top) {
    ShardResult out;
    const std::uint32_t m = k - 1;
    auto state = rep.init(k - 1, top);
    std::vector<std::uint32_t> digits(m + 1, 0);
    auto visit = [&] {
        ++out.visited;
        const auto w = rep.weight(state);
        if (w == 0 || w > out.best) return;
        if (w < out.best) {
            out.best = w;
            out.words.clear();
        }
        out.words.push_back(rep.unpack(state));
    };
    visit();
    for (;;) {
        std::uint32_t j = 0;
        while (j < m && digits[j] == p - 1) digits[j++] = 0;
        if (j == m) break;
        ++digits[j];
        rep.add_row(state, j);
        visit();
    }
    return out;
}

template <class Rep>
MinWeightResult enumerate_with(const LinearCode& code, unsigned threads) {
    const Rep rep(code);
    const std::uint32_t k = code.dimension();
    const std::uint32_t p = code.p;
    std::vector<ShardResult> shards(p);
    std::atomic<std::uint32_t> next{0};
    auto worker = [&] {
        for (std::uint32_t s; (s = next.fetch_add(1)) < p;) shards[s] = run_shard(rep, p, k, s);
    };
    const unsigned n = std::max(1u, std::min<unsigned>(threads, p));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    MinWeightResult res;
    std::uint32_t best = UINT32_MAX;
    for (const auto& s : shards) {
        best = std::min(best, s.best);
        res.enumerated += s.visited;
    }
    for (auto& s : shards)
        if (s.best == best)
            for (auto& v : s.words) res.words.emplace_back(p, std::move(v));
    std::sort(res.words.begin(), res.words.end());
    res.min_weight = best;
    return res;
}

}  // namespace

MinWeightResult enumerate_min_weight(const LinearCode& code, std::uint64_t budget, unsigned threads) {
    const std::uint32_t k = code.dimension();
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        if (total > budget / code.p) {
            throw Error(ErrorCode::BudgetExceeded,
                        fmt::format("{}^{} codewords exceed the enumeration budget {}; use constructed words for bounds",
                                    code.p, k, budget));
        }
        total *= code.p;
    }
    if (total > budget)
        throw Error(ErrorCode::BudgetExceeded, fmt::format("{}^{} codewords exceed the enumeration budget {}", code.p, k, budget));
    if (k == 0) return {0, {}, 1};
    if (code.p == 2) return enumerate_with<BinaryRep>(code, threads);
    if (code.p == 3) return enumerate_with<TernaryRep>(code, threads);
    return enumerate_with<GenericRep>(code, threads);
}

CodeWord random_codeword(const LinearCode& code, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(0, code.p - 1);
    std::vector<std::uint32_t> coeffs(code.dimension());
    for (auto& c : coeffs) c = pick(rng);
    return code.combine(coeffs);
}

}  // namespace planecode
