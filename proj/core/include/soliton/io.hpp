#pragma once

#include <string>

#include "soliton/curvature.hpp"
#include "soliton/curve.hpp"
#include "soliton/polygon.hpp"

namespace soliton {

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double x);

struct PolygonCsv {
  PolygonWindow polygon;
  double alpha = 0.5;
};

/// Polygon CSV: "# topology=open|cyclic alpha=<v>" then one "j,x1,...,xn" line per vertex.
std::string to_csv(const PolygonWindow& polygon, double alpha);
PolygonCsv parse_polygon_csv(const std::string& text);

/// Samples CSV: "# n=<n> derivs=<0|1>" then "t,x1,...,xn[,dx1,...,dxn,ddx1,...,ddxn]" lines.
std::string to_csv(const CurveSamples& samples);
CurveSamples parse_samples_csv(const std::string& text);

std::string to_json(const SolitonSpec& spec);
SolitonSpec parse_spec_json(const std::string& text);

std::string to_json(const CurvatureReport& report);
CurvatureReport parse_report_json(const std::string& text);

}  // namespace soliton
