#include "planecode/error.hpp"
#include "planecode/geometry.hpp"

namespace planecode {

namespace {

const char* vertex_name(Vertex v) {
    switch (v) {
        case Vertex::A1: return "A1";
        case Vertex::A2: return "A2";
        case Vertex::A3: return "A3";
    }
    return "?";
}

}  // namespace

FieldElement slope_of_line(const Field& f, Vertex v, const std::array<FieldElement, 3>& line) {
    const auto i = static_cast<std::size_t>(v);
    // The line passes through A_i iff its i-th dual coordinate vanishes.
    if (line[i] != f.zero()) throw Error(ErrorCode::NotThroughVertex, std::string("line misses ") + vertex_name(v));
    const auto& a = line[0];
    const auto& b = line[1];
    const auto& c = line[2];
    switch (v) {
        case Vertex::A1:
            if (b == f.zero() || c == f.zero()) break;
            return f.neg(f.div(b, c));
        case Vertex::A2:
            if (a == f.zero() || c == f.zero()) break;
            return f.neg(f.div(c, a));
        case Vertex::A3:
            if (a == f.zero() || b == f.zero()) break;
            return f.neg(f.div(a, b));
    }
    throw Error(ErrorCode::TriangleSide, std::string("line is a side of the triangle at ") + vertex_name(v));
}

FieldElement slope_to_point(const Field& f, Vertex v, const std::array<FieldElement, 3>& point) {
    const auto& x = point[0];
    const auto& y = point[1];
    const auto& z = point[2];
    const auto zero = f.zero();
    auto check = [&](FieldElement num, FieldElement den) {
        if (num == zero && den == zero)
            throw Error(ErrorCode::NotThroughVertex, std::string("point coincides with ") + vertex_name(v));
        if (num == zero || den == zero)
            throw Error(ErrorCode::TriangleSide, std::string("join with ") + vertex_name(v) + " is a triangle side");
        return f.div(num, den);
    };
    switch (v) {
        case Vertex::A1: return check(z, y);
        case Vertex::A2: return check(x, z);
        case Vertex::A3: return check(y, x);
    }
    throw Error(ErrorCode::InvalidArgument, "bad vertex");
}

FieldElement slope(const Plane& plane, Vertex v, std::uint32_t line) {
    return slope_of_line(plane.field(), v, plane.line_coords(line).x);
}

FieldElement menelaos_product(const Plane& plane, std::uint32_t line) {
    const Field& f = plane.field();
    const auto& ln = plane.line_coords(line).x;
    if (ln[0] == f.zero() || ln[1] == f.zero() || ln[2] == f.zero())
        throw Error(ErrorCode::Precondition, "line passes through a triangle vertex");
    FieldElement prod = f.one();
    for (std::size_t i = 0; i < 3; ++i) {
        // Side opposite A_i has dual coordinates e_i.
        std::array<FieldElement, 3> side{f.zero(), f.zero(), f.zero()};
        side[i] = f.one();
        const auto b = cross(f, ln, side);
        prod = f.mul(prod, slope_to_point(f, static_cast<Vertex>(i), b));
    }
    return prod;
}

FieldElement ceva_product(const Plane& plane, std::uint32_t point) {
    const Field& f = plane.field();
    const auto& x = plane.point_coords(point).x;
    if (x[0] == f.zero() || x[1] == f.zero() || x[2] == f.zero())
        throw Error(ErrorCode::Precondition, "point lies on a side of the triangle");
    FieldElement prod = f.one();
    for (std::size_t i = 0; i < 3; ++i) prod = f.mul(prod, slope_to_point(f, static_cast<Vertex>(i), x));
    return prod;
}

}  // namespace planecode
