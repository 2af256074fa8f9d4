#include "modweyl/group.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "modweyl/errors.hpp"

namespace modweyl {

namespace {

std::string coords_string(const std::vector<int>& coords) {
  std::ostringstream out;
  out << '(';
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (j) out << ',';
    out << coords[j];
  }
  out << ')';
  return out.str();
}

int reduce_mod(long long value, int n) {
  long long r = value % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace

std::string to_string(const GroupElement& x) { return coords_string(x.coords); }
std::string to_string(const Character& phi) { return "chi" + coords_string(phi.coords); }

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw StructuralError("group needs at least one cyclic factor");
  for (int n : factors_) {
    if (n < 1) throw StructuralError("cyclic factor orders must be >= 1, got " + std::to_string(n));
    order_ *= static_cast<std::size_t>(n);
  }

  add_.resize(order_, order_);
  neg_.resize(order_);
  table_.resize(order_, order_);
  std::vector<std::vector<int>> all(order_);
  for (std::size_t i = 0; i < order_; ++i) all[i] = coords_of(i);

  for (std::size_t i = 0; i < order_; ++i) {
    std::vector<int> minus(factors_.size());
    for (std::size_t k = 0; k < factors_.size(); ++k) minus[k] = reduce_mod(-all[i][k], factors_[k]);
    neg_[i] = index_of(minus);
    for (std::size_t j = 0; j < order_; ++j) {
      std::vector<int> sum(factors_.size());
      for (std::size_t k = 0; k < factors_.size(); ++k)
        sum[k] = reduce_mod(all[i][k] + all[j][k], factors_[k]);
      add_(i, j) = index_of(sum);

      // Accumulate the phase as an exact fraction per factor before leaving
      // the integers, so pairing values stay on the unit circle to ~1e-16.
      double turns = 0.0;
      for (std::size_t k = 0; k < factors_.size(); ++k) {
        const int n = factors_[k];
        turns += static_cast<double>(reduce_mod(static_cast<long long>(all[i][k]) * all[j][k], n)) / n;
      }
      turns -= std::floor(turns);
      table_(i, j) = std::polar(1.0, 2.0 * std::numbers::pi * turns);
    }
  }
}

void FiniteAbelianGroup::check_shape(const std::vector<int>& coords) const {
  if (coords.size() != factors_.size()) {
    throw StructuralError("element " + coords_string(coords) + " has " + std::to_string(coords.size()) +
                          " coordinates, group has " + std::to_string(factors_.size()) + " factors");
  }
}

std::vector<int> FiniteAbelianGroup::coords_of(std::size_t i) const {
  std::vector<int> coords(factors_.size());
  for (std::size_t k = factors_.size(); k-- > 0;) {
    coords[k] = static_cast<int>(i % factors_[k]);
    i /= factors_[k];
  }
  return coords;
}

std::size_t FiniteAbelianGroup::index_of(const std::vector<int>& coords) const {
  std::size_t i = 0;
  for (std::size_t k = 0; k < factors_.size(); ++k) i = i * factors_[k] + static_cast<std::size_t>(coords[k]);
  return i;
}

GroupElement FiniteAbelianGroup::identity() const { return GroupElement{std::vector<int>(factors_.size(), 0)}; }

GroupElement FiniteAbelianGroup::element(std::vector<int> coords) const {
  check_shape(coords);
  for (std::size_t k = 0; k < coords.size(); ++k) coords[k] = reduce_mod(coords[k], factors_[k]);
  return GroupElement{std::move(coords)};
}

Character FiniteAbelianGroup::character(std::vector<int> coords) const {
  return Character{element(std::move(coords)).coords};
}

Character FiniteAbelianGroup::trivial_character() const { return Character{identity().coords}; }

GroupElement FiniteAbelianGroup::compose(const GroupElement& g, const GroupElement& h) const {
  return element_at(add_(index(g), index(h)));
}

GroupElement FiniteAbelianGroup::inverse(const GroupElement& g) const { return element_at(neg_[index(g)]); }

Character FiniteAbelianGroup::multiply(const Character& phi, const Character& psi) const {
  return character_at(add_(index(phi), index(psi)));
}

Complex FiniteAbelianGroup::pair(const Character& phi, const GroupElement& x) const {
  return table_(static_cast<Eigen::Index>(index(phi)), static_cast<Eigen::Index>(index(x)));
}

std::size_t FiniteAbelianGroup::index(const GroupElement& x) const {
  check_shape(x.coords);
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (x.coords[k] < 0 || x.coords[k] >= factors_[k])
      throw StructuralError("element " + to_string(x) + " is not reduced for this group");
  }
  return index_of(x.coords);
}

std::size_t FiniteAbelianGroup::index(const Character& phi) const { return index(GroupElement{phi.coords}); }

GroupElement FiniteAbelianGroup::element_at(std::size_t i) const {
  if (i >= order_) throw StructuralError("element index out of range");
  return GroupElement{coords_of(i)};
}

Character FiniteAbelianGroup::character_at(std::size_t i) const { return Character{element_at(i).coords}; }

std::vector<GroupElement> FiniteAbelianGroup::elements() const {
  std::vector<GroupElement> out;
  out.reserve(order_);
  for (std::size_t i = 0; i < order_; ++i) out.push_back(element_at(i));
  return out;
}

std::vector<Character> FiniteAbelianGroup::characters() const {
  std::vector<Character> out;
  out.reserve(order_);
  for (std::size_t i = 0; i < order_; ++i) out.push_back(character_at(i));
  return out;
}

std::vector<GroupElement> FiniteAbelianGroup::generators() const {
  std::vector<GroupElement> out;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    std::vector<int> coords(factors_.size(), 0);
    coords[k] = 1 % factors_[k];
    out.push_back(GroupElement{coords});
  }
  return out;
}

}  // namespace modweyl
