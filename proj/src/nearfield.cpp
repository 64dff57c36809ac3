#include <vector>

#include "planecode/field.hpp"
#include "planecode/geometry.hpp"

namespace planecode {

Plane nearfield_plane_9() {
    const auto f = Field::make(3, 2);
    constexpr std::uint32_t q = 9;
    std::vector<bool> square(q, false);
    for (std::uint32_t a = 1; a < q; ++a) square[f.mul(f.element(a), f.element(a)).value] = true;
    // a∘b = ab when b is a square (or zero), a^3 b otherwise.
    auto nmul = [&](FieldElement a, FieldElement b) {
        if (b.value == 0 || square[b.value]) return f.mul(a, b);
        return f.mul(f.pow(a, 3), b);
    };

    std::vector<std::vector<std::uint32_t>> rows;
    for (std::uint32_t m = 0; m < q; ++m)
        for (std::uint32_t b = 0; b < q; ++b) {
            std::vector<std::uint32_t> r;
            for (std::uint32_t x = 0; x < q; ++x) {
                const auto y = f.add(nmul(f.element(x), f.element(m)), f.element(b));
                r.push_back(x * q + y.value);
            }
            r.push_back(q * q + m);
            rows.push_back(std::move(r));
        }
    for (std::uint32_t c = 0; c < q; ++c) {
        std::vector<std::uint32_t> r;
        for (std::uint32_t y = 0; y < q; ++y) r.push_back(c * q + y);
        r.push_back(q * q + q);
        rows.push_back(std::move(r));
    }
    std::vector<std::uint32_t> infinity;
    for (std::uint32_t i = 0; i <= q; ++i) infinity.push_back(q * q + i);
    rows.push_back(std::move(infinity));
    return Plane::from_incidence(std::move(rows), q, "nearfield-9");
}

}  // namespace planecode
