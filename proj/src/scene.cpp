#include "cooploc/scene.hpp"

#include <stdexcept>

namespace cooploc {

void Aabb::validate() const {
  if (!(min.x < max.x) || !(min.y < max.y) || !(min.z < max.z)) {
    throw std::invalid_argument("aabb: min must be strictly below max on every axis");
  }
}

bool Aabb::contains(const Point3& p, double tol) const {
  return p.x >= min.x - tol && p.x <= max.x + tol && p.y >= min.y - tol &&
         p.y <= max.y + tol && p.z >= min.z - tol && p.z <= max.z + tol;
}

std::vector<Aabb> VehicleBoxState::local_boxes() const {
  spec.validate();
  const double hl = spec.length / 2.0;
  const double hw = spec.width / 2.0;
  std::vector<Aabb> boxes;
  boxes.push_back({{-hl, -hw, 0.0}, {hl, hw, spec.height}});
  if (mirrors) {
    const double hs = mirror_size / 2.0;
    const double cx = hl * 0.4;  // near the front doors
    const double y_lo = hw;      // flush against the body
    const double y_hi = hw + mirror_overhang;
    boxes.push_back({{cx - hs, y_lo, mirror_center_z - hs},
                     {cx + hs, y_hi, mirror_center_z + hs}});
    boxes.push_back({{cx - hs, -y_hi, mirror_center_z - hs},
                     {cx + hs, -y_lo, mirror_center_z + hs}});
  }
  return boxes;
}

}  // namespace cooploc
