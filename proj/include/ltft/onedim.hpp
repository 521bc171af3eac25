#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ltft/linalg.hpp"

namespace ltft {

struct LabelMismatch : std::invalid_argument {
  explicit LabelMismatch(const std::string& w) : std::invalid_argument(w) {}
};

// The 1d topological field theory with domain walls: vector spaces V_i for
// point labels and maps L_x^{+-} for wall labels x with source/target in the
// point label set.
template <class S>
struct OneDimTheory {
  std::vector<Eigen::Index> space_dim;                    // per point label
  struct Wall {
    int source = 0;
    int target = 0;
    Mat<S> plus;   // V_{s} -> V_{t}
    Mat<S> minus;  // V_{t} -> V_{s}
  };
  std::vector<Wall> walls;

  std::optional<std::string> check() const {
    for (size_t x = 0; x < walls.size(); ++x) {
      const auto& w = walls[x];
      if (w.plus.rows() != space_dim[static_cast<size_t>(w.target)] ||
          w.plus.cols() != space_dim[static_cast<size_t>(w.source)])
        return "wall " + std::to_string(x) + ": L^+ shape mismatch";
      if (w.minus.rows() != space_dim[static_cast<size_t>(w.source)] ||
          w.minus.cols() != space_dim[static_cast<size_t>(w.target)])
        return "wall " + std::to_string(x) + ": L^- shape mismatch";
    }
    return std::nullopt;
  }
};

struct MarkedPoint {
  int wall = 0;
  int sign = +1;  // orientation of the marked point
};

// An interval evaluates to the ordered composite of the L maps; a circle to
// the trace of the cyclic composite.
struct Interval {
  int in_label = 0;                  // domain label at the incoming end
  std::vector<MarkedPoint> points;   // ordered from in to out
};
struct Circle {
  int base_label = 0;                // domain label before the first point
  std::vector<MarkedPoint> points;   // cyclic order
};

struct OneDimDiagram {
  std::vector<std::variant<Interval, Circle>> components;
};

namespace detail1d {

template <class S>
int step_label(const OneDimTheory<S>& th, int label, const MarkedPoint& p, const Mat<S>** mat) {
  const auto& w = th.walls[static_cast<size_t>(p.wall)];
  if (p.sign > 0) {
    if (w.source != label) throw LabelMismatch("expected domain " + std::to_string(w.source));
    *mat = &w.plus;
    return w.target;
  }
  if (w.target != label) throw LabelMismatch("expected domain " + std::to_string(w.target));
  *mat = &w.minus;
  return w.source;
}

}  // namespace detail1d

template <class S>
struct OneDimValue {
  std::vector<Mat<S>> interval_maps;  // one per interval component, in order
  S circle_product = S(1);            // product of traces over circle components
};

template <class S>
OneDimValue<S> evaluate_1d(const OneDimTheory<S>& th, const OneDimDiagram& d) {
  OneDimValue<S> out;
  for (const auto& comp : d.components) {
    if (std::holds_alternative<Interval>(comp)) {
      const auto& iv = std::get<Interval>(comp);
      int label = iv.in_label;
      Mat<S> acc = mat_identity<S>(th.space_dim[static_cast<size_t>(label)]);
      for (const auto& p : iv.points) {
        const Mat<S>* m = nullptr;
        label = detail1d::step_label(th, label, p, &m);
        acc = Mat<S>(*m * acc);
      }
      out.interval_maps.push_back(acc);
    } else {
      const auto& c = std::get<Circle>(comp);
      int label = c.base_label;
      Mat<S> acc = mat_identity<S>(th.space_dim[static_cast<size_t>(label)]);
      for (const auto& p : c.points) {
        const Mat<S>* m = nullptr;
        label = detail1d::step_label(th, label, p, &m);
        acc = Mat<S>(*m * acc);
      }
      if (label != c.base_label) throw LabelMismatch("circle labels do not close up");
      S tr(0);
      for (Eigen::Index i = 0; i < acc.rows(); ++i) tr += acc(i, i);
      out.circle_product *= tr;
    }
  }
  return out;
}

}  // namespace ltft
