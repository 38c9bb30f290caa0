#pragma once

#include <cstdint>
#include <string>

#include "fpd/point_cloud.hpp"

namespace fpd {

enum class ShapeKind { noise, ring, figure_eight };

// Seeded synthetic clouds in the unit square: uniform noise, a circle of
// radius 0.35 centred at (0.5, 0.5), or two tangent circles of radius 0.18.
// Ring points are evenly spaced plus Gaussian jitter of width noise_sigma.
struct ShapeSpec {
    ShapeKind kind = ShapeKind::noise;
    int n_points = 100;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

PointCloud generate(const ShapeSpec& spec);

ShapeKind parse_shape_kind(const std::string& name);  // noise|ring|figure_eight
std::string shape_kind_name(ShapeKind kind);

enum class TransformKind { none, rotate, reflect, translate };

struct TransformSpec {
    TransformKind kind = TransformKind::none;
    char axis = 'z';                          // rotate / reflect
    double angle = 0.0;                       // radians, rotate
    double vec[3] = {0.0, 0.0, 0.0};          // translate
};

// Exact affine map applied per point; preserves the point count.
PointCloud transform(const PointCloud& pc, const TransformSpec& t);

// `rotate:z:180`, `reflect:x`, `translate:0,0,1`, `none`
TransformSpec parse_transform(const std::string& text);

enum class LatticeKind { bcc, fcc };

// Conventional cubic supercells with lattice constant a: corner sites plus
// body centres (bcc) or face centres (fcc). Shared corners appear once.
PointCloud synth_lattice(LatticeKind kind, int cells_per_axis, double a);

LatticeKind parse_lattice_kind(const std::string& name);

}  // namespace fpd
