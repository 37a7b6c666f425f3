#include <doctest.h>

#include <numbers>
#include <sstream>

#include "extrobin/errors.hpp"
#include "extrobin/shape_io.hpp"

using namespace extrobin;
using std::numbers::pi;

namespace {

ShapeFile parse(const std::string& text) {
    std::istringstream in(text);
    return parse_shape_file(in);
}

int error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_CASE("curves and bodies from a file") {
    const auto f = parse(R"(# two components
[curve]
type = circle
r = 1

[curve]
type = fourier
x_mean = 5
x_cos = 2      # semi-axis along x
y_sin = 1

[body]
type = spheroid
d = 3
a = 1.5
b = 1
)");
    REQUIRE(f.curves.size() == 2);
    REQUIRE(f.bodies.size() == 1);
    CHECK(f.curves[0].perimeter() == doctest::Approx(2 * pi));
    CHECK(f.curves[1].point(0.0).x == doctest::Approx(7.0));
    CHECK(f.multicurve().count() == 2);
    CHECK(f.bodies[0].d() == 3);
}

TEST_CASE("all section types parse") {
    const auto f = parse(R"([curve]
type = ellipse
a = 2
b = 1
rotation = 0.3
[curve]
type = star
r = 1
eps = 0.1
m = 3
cx = 10
[curve]
type = stadium
half_length = 1
cap_radius = 0.5
cx = -10
[body]
type = sphere
d = 4
r = 2
[body]
type = perturbed_sphere
d = 3
seed = 4
[body]
type = fourier
d = 3
z_cos = 0, 1.2
rho_sin = 1
)");
    CHECK(f.curves.size() == 3);
    CHECK(f.bodies.size() == 3);
}

TEST_CASE("errors carry line numbers") {
    CHECK(error_line("[curve]\ntype = circle\nr = 1\nradius = 2\n") == 4);
    CHECK(error_line("[curve]\ntype = circle\nradius = 1\n") == 3);  // typo wins over the missing key
    CHECK(error_line("[body]\ntype = sphere\nd = 3\nr = 1\nn_quad = 64\nmodes = 3\n") == 6);
    CHECK(error_line("[curve]\ntype = circle\nr = one\n") == 3);
    CHECK(error_line("\n\n[shape]\n") == 3);
    CHECK(error_line("type = circle\n") == 1);
    CHECK(error_line("[curve]\ntype = circle\nr = 1\nr = 2\n") == 4);
    CHECK(error_line("[curve]\ntype = hexagon\n") == 2);
    CHECK(error_line("[curve]\ntype circle\n") == 2);
    CHECK(error_line("[body]\ntype = fourier\nd = 3\nz_cos = 0, x\nrho_sin = 1\n") == 4);
    // Missing keys and geometry failures point at the section header.
    CHECK(error_line("# header\n[curve]\ntype = circle\n") == 2);
    CHECK(error_line("[curve]\ntype = circle\nr = 1\n[curve]\ntype = circle\nr = -1\n") == 4);
    CHECK(error_line("[curve\n") == 1);
}

TEST_CASE("overlapping components from a file") {
    const auto f = parse("[curve]\ntype = circle\nr = 1\n[curve]\ntype = circle\nr = 1\ncx = 1\n");
    CHECK_THROWS_AS(f.multicurve(), GeometryError);
}

TEST_CASE("missing file") {
    CHECK_THROWS_AS(load_shape_file("/nonexistent/shape.txt"), ParseError);
}

TEST_CASE("shape ids") {
    CHECK(parse_curve_spec("disk").components()[0].perimeter() == doctest::Approx(2 * pi));
    CHECK(parse_curve_spec("disk:2").components()[0].perimeter() == doctest::Approx(4 * pi));
    CHECK(parse_curve_spec("disks:3").count() == 3);
    CHECK(parse_curve_spec("ellipse:2").components()[0].point(0.0).x == doctest::Approx(2.0));
    CHECK(parse_curve_spec("star:0.1:4").count() == 1);
    CHECK(parse_curve_spec("stadium:1").count() == 1);
    CHECK(parse_body_spec("sphere", 4).d() == 4);
    CHECK(parse_body_spec("spheroid:2", 3).z_cos().size() >= 2);
    CHECK(parse_body_spec("perturbed:3:0.02", 3).d() == 3);
    for (const char* bad : {"square", "disks:0", "disks:1.5", "ellipse", "star:0.1", "disk:x", "disks:2:3"})
        CHECK_THROWS_AS(parse_curve_spec(bad), ParseError);
    for (const char* bad : {"cube", "spheroid", "perturbed:-1", "sphere:1"})
        CHECK_THROWS_AS(parse_body_spec(bad, 3), ParseError);
}
