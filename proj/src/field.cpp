#include "planecode/field.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "planecode/error.hpp"

namespace planecode {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::ReducibleModulus: return "ReducibleModulus";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::AxiomViolation: return "AxiomViolation";
        case ErrorCode::BadShape: return "BadShape";
        case ErrorCode::SamePoint: return "SamePoint";
        case ErrorCode::SameLine: return "SameLine";
        case ErrorCode::NotGenerated: return "NotGenerated";
        case ErrorCode::NotSquareOrder: return "NotSquareOrder";
        case ErrorCode::NotThroughVertex: return "NotThroughVertex";
        case ErrorCode::TriangleSide: return "TriangleSide";
        case ErrorCode::PrimeMismatch: return "PrimeMismatch";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::NotSecant: return "NotSecant";
        case ErrorCode::NotDisjoint: return "NotDisjoint";
        case ErrorCode::NotVerifiedEmbedding: return "NotVerifiedEmbedding";
        case ErrorCode::NotDualWord: return "NotDualWord";
        case ErrorCode::StructureMismatch: return "StructureMismatch";
        case ErrorCode::NotAntipodal: return "NotAntipodal";
        case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
        case ErrorCode::NotARoot: return "NotARoot";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::NoQuadrangle: return "NoQuadrangle";
        case ErrorCode::Precondition: return "Precondition";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // p is prime and small; Fermat.
    std::uint64_t r = 1, b = a % p;
    for (std::uint32_t e = p - 2; e; e >>= 1) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
    }
    return static_cast<std::uint32_t>(r);
}

// Remainder of a modulo m over GF(p); m nonzero.
Poly poly_rem(Poly a, const Poly& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint32_t lead_inv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        const std::size_t shift = a.size() - 1 - dm;
        const std::uint32_t f = static_cast<std::uint32_t>(std::uint64_t(a.back()) * lead_inv % p);
        for (std::size_t i = 0; i <= dm; ++i) {
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + std::uint64_t(p - f) * m[i]) % p);
        }
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    return poly_rem(std::move(r), m, p);
}

std::uint32_t encode(const Poly& a, std::uint32_t p) {
    std::uint32_t v = 0;
    for (std::size_t i = a.size(); i-- > 0;) v = v * p + a[i];
    return v;
}

Poly decode(std::uint32_t v, std::uint32_t p, std::uint32_t h) {
    Poly a(h, 0);
    for (std::uint32_t i = 0; i < h; ++i) {
        a[i] = v % p;
        v /= p;
    }
    return a;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
    std::vector<std::uint32_t> f;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            f.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) f.push_back(n);
    return f;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p) {
    Poly f(poly.begin(), poly.end());
    trim(f);
    if (f.size() < 2) return false;
    const std::size_t deg = f.size() - 1;
    if (deg == 1) return true;
    // Every reducible polynomial has a monic factor of degree <= deg/2.
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t low = 0; low < count; ++low) {
            Poly g = decode(static_cast<std::uint32_t>(low), p, static_cast<std::uint32_t>(d));
            g.push_back(1);
            if (poly_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

Field Field::make(std::uint32_t p, std::uint32_t h, std::optional<std::vector<std::uint32_t>> modulus) {
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (h < 1) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < h; ++i) {
        q *= p;
        if (q > (1u << 16)) throw Error(ErrorCode::InvalidArgument, "field order exceeds 2^16");
    }

    Poly mod;
    if (modulus) {
        mod = *modulus;
        if (mod.size() != h + 1 || mod.back() != 1)
            throw Error(ErrorCode::InvalidArgument, "modulus must be monic of degree h, given low-degree-first");
        for (auto c : mod)
            if (c >= p) throw Error(ErrorCode::InvalidArgument, "modulus coefficient out of range");
        if (!is_irreducible(mod, p)) throw Error(ErrorCode::ReducibleModulus, "modulus is reducible over GF(p)");
    } else {
        // Lexicographic order on the low-degree-first coefficient list: the
        // constant term is the most significant key.
        std::optional<Poly> best;
        for (std::uint32_t v = 0; v < q; ++v) {
            Poly cand = decode(v, p, h);
            cand.push_back(1);
            if (best && !std::lexicographical_compare(cand.begin(), cand.end(), best->begin(), best->end()))
                continue;
            if (is_irreducible(cand, p)) best = std::move(cand);
        }
        mod = *best;
    }

    Field f;
    f.p_ = p;
    f.h_ = h;
    f.q_ = static_cast<std::uint32_t>(q);
    f.modulus_ = mod;

    auto t = std::make_shared<Tables>();
    const std::uint32_t qq = f.q_;
    t->neg.resize(qq);
    for (std::uint32_t v = 0; v < qq; ++v) {
        Poly a = decode(v, p, h);
        for (auto& c : a) c = (p - c) % p;
        t->neg[v] = encode(a, p);
    }

    // Find a primitive element by direct polynomial arithmetic.
    const auto factors = prime_factors(qq - 1);
    auto poly_pow = [&](const Poly& base, std::uint64_t e) {
        Poly r{1};
        Poly b = base;
        while (e) {
            if (e & 1) r = poly_mulmod(r, b, mod, p);
            b = poly_mulmod(b, b, mod, p);
            e >>= 1;
        }
        return r;
    };
    Poly primitive;
    for (std::uint32_t v = 1; v < qq; ++v) {
        Poly g = decode(v, p, h);
        trim(g);
        bool ok = true;
        for (auto r : factors) {
            Poly x = poly_pow(g, (qq - 1) / r);
            if (x == Poly{1}) {
                ok = false;
                break;
            }
        }
        if (ok) {
            primitive = g;
            break;
        }
    }
    if (qq == 2) primitive = Poly{1};

    t->exp.assign(2 * (qq - 1), 0);
    t->log.assign(qq, 0);
    Poly cur{1};
    for (std::uint32_t i = 0; i < qq - 1; ++i) {
        Poly padded = cur;
        padded.resize(h, 0);
        const std::uint32_t v = encode(padded, p);
        t->exp[i] = v;
        t->exp[i + qq - 1] = v;
        t->log[v] = i;
        cur = poly_mulmod(cur, primitive, mod, p);
    }

    f.tables_ = t;
    if (qq <= kAddTableMax) {
        t->add.resize(std::size_t(qq) * qq);
        for (std::uint32_t a = 0; a < qq; ++a)
            for (std::uint32_t b = 0; b < qq; ++b)
                t->add[std::size_t(a) * qq + b] = static_cast<std::uint16_t>(f.add_digits(a, b));
    }
    return f;
}

Field Field::parse(std::string_view spec, std::optional<std::vector<std::uint32_t>> modulus) {
    auto parse_uint = [&](std::string_view s) {
        std::uint32_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
            throw Error(ErrorCode::ParseError, "bad field spec '" + std::string(spec) + "'");
        return v;
    };
    const auto caret = spec.find('^');
    if (caret == std::string_view::npos) return make(parse_uint(spec), 1, std::move(modulus));
    return make(parse_uint(spec.substr(0, caret)), parse_uint(spec.substr(caret + 1)), std::move(modulus));
}

std::string Field::spec_string() const { return std::to_string(p_) + "^" + std::to_string(h_); }

FieldElement Field::from_int(std::int64_t v) const noexcept {
    const std::int64_t r = ((v % std::int64_t(p_)) + p_) % p_;
    return {static_cast<std::uint32_t>(r)};
}

FieldElement Field::from_coeffs(std::span<const std::uint32_t> c) const {
    if (c.size() > h_) throw Error(ErrorCode::InvalidArgument, "too many coefficients");
    Poly a(c.begin(), c.end());
    for (auto v : a)
        if (v >= p_) throw Error(ErrorCode::InvalidArgument, "coefficient out of range");
    a.resize(h_, 0);
    return {encode(a, p_)};
}

std::vector<std::uint32_t> Field::coeffs(FieldElement a) const { return decode(a.value, p_, h_); }

FieldElement Field::element(std::uint32_t index) const {
    if (index >= q_) throw Error(ErrorCode::InvalidArgument, "element index out of range");
    return {index};
}

FieldElement Field::generator_x() const {
    if (h_ == 1) {
        // x is reduced modulo a degree-1 modulus x + c to -c.
        return neg(FieldElement{modulus_[0]});
    }
    return {p_};
}

std::uint32_t Field::add_digits(std::uint32_t a, std::uint32_t b) const noexcept {
    if (p_ == 2) return a ^ b;
    std::uint32_t r = 0, scale = 1;
    for (std::uint32_t i = 0; i < h_; ++i) {
        std::uint32_t d = a % p_ + b % p_;
        if (d >= p_) d -= p_;
        r += d * scale;
        scale *= p_;
        a /= p_;
        b /= p_;
    }
    return r;
}

FieldElement Field::add(FieldElement a, FieldElement b) const noexcept {
    if (!tables_->add.empty()) return {tables_->add[std::size_t(a.value) * q_ + b.value]};
    return {add_digits(a.value, b.value)};
}

FieldElement Field::sub(FieldElement a, FieldElement b) const noexcept { return add(a, neg(b)); }

FieldElement Field::mul(FieldElement a, FieldElement b) const noexcept {
    if (a.value == 0 || b.value == 0) return {0};
    return {tables_->exp[tables_->log[a.value] + tables_->log[b.value]]};
}

FieldElement Field::inv(FieldElement a) const {
    if (a.value == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    const std::uint32_t l = tables_->log[a.value];
    return {tables_->exp[(q_ - 1 - l) % (q_ - 1)]};
}

FieldElement Field::div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

FieldElement Field::pow(FieldElement a, std::int64_t e) const {
    if (a.value == 0) {
        if (e == 0) return one();
        if (e < 0) throw Error(ErrorCode::DivisionByZero, "negative power of zero");
        return zero();
    }
    const std::int64_t order = q_ - 1;
    std::int64_t l = (std::int64_t(tables_->log[a.value]) * (e % order)) % order;
    if (l < 0) l += order;
    return {tables_->exp[static_cast<std::size_t>(l)]};
}

bool Field::in_subfield(FieldElement a, std::uint32_t k) const {
    if (k == 0 || h_ % k != 0) throw Error(ErrorCode::InvalidArgument, "subfield degree must divide h");
    std::int64_t pk = 1;
    for (std::uint32_t i = 0; i < k; ++i) pk *= p_;
    return pow(a, pk) == a;
}

std::vector<FieldElement> Field::solve_monic_quadratic(FieldElement b, FieldElement c) const {
    std::vector<FieldElement> roots;
    for (std::uint32_t v = 0; v < q_; ++v) {
        const FieldElement x{v};
        if (add(add(mul(x, x), mul(b, x)), c) == zero()) roots.push_back(x);
    }
    return roots;
}

std::string Field::to_string(FieldElement a) const {
    if (h_ == 1) return std::to_string(a.value);
    const auto c = coeffs(a);
    std::string s;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0 || c[i] != 1) s += std::to_string(c[i]);
        if (i >= 1) s += "x";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

}  // namespace planecode
