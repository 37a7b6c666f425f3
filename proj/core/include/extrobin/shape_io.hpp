#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "extrobin/geometry.hpp"

namespace extrobin {

/// Contents of a shape file: every [curve] section is one planar component, every
/// [body] section one axisymmetric body. The grammar is described in docs/shape-files.md.
struct ShapeFile {
    std::vector<Curve2D> curves;
    std::vector<AxisymBody> bodies;

    MultiCurve2D multicurve() const;
};

ShapeFile parse_shape_file(std::istream& in);
ShapeFile load_shape_file(const std::string& path);

/// Short planar shape ids used on the command line:
///   disk[:R]  disks:N  ellipse:aspect  star:eps:m  stadium:half_length
/// Unless a radius is given the shapes are unnormalized (unit minor axis / radius).
MultiCurve2D parse_curve_spec(const std::string& spec);

/// Body ids: sphere, spheroid:aspect (semi-axis ratio along the axis), perturbed:seed[:amplitude].
AxisymBody parse_body_spec(const std::string& spec, int d);

}  // namespace extrobin
