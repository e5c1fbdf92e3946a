#include "ricciforge/grid.hpp"

#include <algorithm>

namespace ricciforge {

std::string to_string(Face f) {
  return "axis" + std::to_string(f.axis) + (f.side == Side::min ? "_min" : "_max");
}

Face face_from_string(const std::string& s) {
  if (s.rfind("axis", 0) == 0) {
    const auto us = s.find('_');
    if (us != std::string::npos) {
      const std::string num = s.substr(4, us - 4);
      const std::string side = s.substr(us + 1);
      if (!num.empty() && std::all_of(num.begin(), num.end(), ::isdigit) && (side == "min" || side == "max"))
        return Face{std::stoi(num), side == "min" ? Side::min : Side::max};
    }
  }
  throw PreconditionError("unknown face label '" + s + "'");
}

GridN::GridN(std::vector<Axis> axes, std::vector<Face> physical_faces)
    : axes_(std::move(axes)), faces_(std::move(physical_faces)) {
  if (axes_.empty() || axes_.size() > 4) throw SizingError("grid dimension must be 1..4");
  std::sort(faces_.begin(), faces_.end());
  faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
  size_ = 1;
  auto stencils = std::make_shared<std::vector<AxisStencils>>();
  max_order_ = AxisStencils::kMaxOrder;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    const Axis& ax = axes_[a];
    if (ax.count < 4) throw SizingError("each axis needs at least 4 nodes");
    if (!(ax.spacing > 0.0)) throw SizingError("axis spacing must be positive");
    strides_[a] = size_;
    size_ *= static_cast<std::size_t>(ax.count);
    stencils->emplace_back(ax.count, ax.periodic);
    max_order_ = std::min(max_order_, stencils->back().max_order());
  }
  for (const Face& f : faces_) {
    if (f.axis < 0 || f.axis >= dim()) throw PreconditionError("face axis out of range: " + to_string(f));
    if (axes_[f.axis].periodic) throw PreconditionError("periodic axis cannot carry a physical face: " + to_string(f));
  }
  stencils_ = std::move(stencils);
}

bool GridN::is_physical(Face f) const { return std::find(faces_.begin(), faces_.end(), f) != faces_.end(); }

std::array<int, 4> GridN::multi_index(std::size_t node) const {
  std::array<int, 4> mi{};
  for (int a = 0; a < dim(); ++a) {
    mi[a] = static_cast<int>(node % axes_[a].count);
    node /= axes_[a].count;
  }
  return mi;
}

std::size_t GridN::flat_index(std::span<const int> mi) const {
  std::size_t idx = 0;
  for (int a = 0; a < dim(); ++a) idx += static_cast<std::size_t>(mi[a]) * strides_[a];
  return idx;
}

std::array<double, 4> GridN::coords(std::size_t node) const {
  const auto mi = multi_index(node);
  std::array<double, 4> x{};
  for (int a = 0; a < dim(); ++a) x[a] = axes_[a].coord(mi[a]);
  return x;
}

std::vector<std::size_t> GridN::face_nodes(Face f) const {
  std::vector<std::size_t> out;
  const int fixed = f.side == Side::min ? 0 : axes_[f.axis].count - 1;
  for (std::size_t n = 0; n < size_; ++n)
    if (multi_index(n)[f.axis] == fixed) out.push_back(n);
  return out;
}

}  // namespace ricciforge
