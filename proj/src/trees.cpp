#include "mlkpz/trees.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mlkpz/kernel_algebra.hpp"

namespace mlkpz {
namespace {

constexpr EdgeSpec thin_leaf(int parent) { return {parent, true, true}; }
constexpr EdgeSpec thin_inner(int parent) { return {parent, true, false}; }
constexpr EdgeSpec thick_leaf(int parent) { return {parent, false, true}; }
constexpr EdgeSpec thick_inner(int parent) { return {parent, false, false}; }

constexpr std::array kOne{thick_leaf(-1)};
constexpr std::array kD{thin_leaf(-1)};
constexpr std::array kTwo{thin_leaf(-1), thin_leaf(-1)};
constexpr std::array kTwoZero{thin_leaf(2), thin_leaf(2), thick_inner(-1)};
constexpr std::array kTwoD{thin_leaf(2), thin_leaf(2), thin_inner(-1)};
constexpr std::array kTwoOne{thin_leaf(2), thin_leaf(2), thin_inner(-1), thin_leaf(-1)};
constexpr std::array kFourZero{thin_leaf(4), thin_leaf(4), thin_leaf(5),
                               thin_leaf(5), thin_inner(-1), thin_inner(-1)};
constexpr std::array kTwoOneOne{thin_leaf(2),  thin_leaf(2),   thin_inner(4),
                                thin_leaf(4),  thin_inner(-1), thin_leaf(-1)};
constexpr std::array kTwoOneZero{thin_leaf(2), thin_leaf(2), thin_inner(4), thin_leaf(4), thick_inner(-1)};
constexpr std::array kTwoOneD{thin_leaf(2), thin_leaf(2), thin_inner(4), thin_leaf(4), thin_inner(-1)};
constexpr std::array kOneZero{thin_leaf(1), thick_inner(-1)};
constexpr std::array kOneD{thin_leaf(1), thin_inner(-1)};
constexpr std::array kOneOne{thin_leaf(1), thin_inner(-1), thin_leaf(-1)};

struct ShapeInfo {
  TreeShape shape;
  std::string_view name;
  std::span<const EdgeSpec> edges;
};

const std::array<ShapeInfo, 13> kShapeTable{{
    {TreeShape::One, "<1>", kOne},
    {TreeShape::D, "<d>", kD},
    {TreeShape::Two, "<2>", kTwo},
    {TreeShape::TwoZero, "<20>", kTwoZero},
    {TreeShape::TwoD, "<2d>", kTwoD},
    {TreeShape::TwoOne, "<21>", kTwoOne},
    {TreeShape::FourZero, "<40>", kFourZero},
    {TreeShape::TwoOneOne, "<211>", kTwoOneOne},
    {TreeShape::TwoOneZero, "<210>", kTwoOneZero},
    {TreeShape::TwoOneD, "<21d>", kTwoOneD},
    {TreeShape::OneZero, "<10>", kOneZero},
    {TreeShape::OneD, "<1d>", kOneD},
    {TreeShape::OneOne, "<11>", kOneOne},
}};

const ShapeInfo& info(TreeShape shape) {
  for (const auto& entry : kShapeTable) {
    if (entry.shape == shape) return entry;
  }
  throw std::invalid_argument("unknown tree shape");
}

// 0 unless 0 <= m <= n-1 for every order
bool orders_in_range(int n, std::initializer_list<int> orders) {
  return std::all_of(orders.begin(), orders.end(), [n](int m) { return m >= 0 && m <= n - 1; });
}

void require_layer(int n) {
  if (n < 1) throw std::invalid_argument("layer index must be >= 1");
}

void require_nonnegative(std::initializer_list<int> orders) {
  for (int m : orders) {
    if (m < 0) throw std::invalid_argument("kernel orders must be nonnegative");
  }
}

// Integer sum over i of binom(n-i-1, l-1) binom(i-1, a) binom(i-1, b).
mpz_class sum_20(int n, int a, int b, int l) {
  mpz_class s = 0;
  for (int i = std::max(a, b) + 1; i <= n - l; ++i) {
    s += binom_or_zero(n - i - 1, l - 1) * binom_or_zero(i - 1, a) * binom_or_zero(i - 1, b);
  }
  return s;
}

mpz_class sum_210(int n, int m1, int m2, int m3, int m4, int l) {
  mpz_class s = 0;
  for (int i = std::max({m1, m2, m3, m4}) + 1; i <= n - l; ++i) {
    const mpz_class outer = binom_or_zero(n - i - 1, l - 1) * binom_or_zero(i - 1, m4);
    if (outer == 0) continue;
    // binom(i-j-1, m3-1) vanishes for j > i
    for (int j = 0; j <= i; ++j) {
      s += outer * binom_or_zero(j - 1, m1) * binom_or_zero(j - 1, m2) * binom_or_zero(i - j - 1, m3 - 1);
    }
  }
  return s;
}

std::vector<KernelTree> to_sorted_vector(const std::map<std::pair<TreeShape, std::vector<int>>, Rational>& acc) {
  std::vector<KernelTree> out;
  out.reserve(acc.size());
  for (const auto& [key, mult] : acc) {
    if (mult.is_zero()) continue;
    out.push_back({key.first, key.second, mult});
  }
  return out;
}

}  // namespace

std::string_view shape_name(TreeShape shape) { return info(shape).name; }

TreeShape parse_shape(std::string_view name) {
  for (const auto& entry : kShapeTable) {
    if (entry.name == name) return entry.shape;
  }
  throw std::invalid_argument("unknown tree shape: " + std::string(name));
}

std::span<const EdgeSpec> shape_edges(TreeShape shape) { return info(shape).edges; }

int arity(TreeShape shape) { return static_cast<int>(shape_edges(shape).size()); }

bool rule_allows(TreeShape shape, std::span<const EdgeLabel> labels) {
  const auto edges = shape_edges(shape);
  if (labels.size() != edges.size()) {
    throw std::invalid_argument("rule_allows: " + std::string(shape_name(shape)) + " has arity " +
                                std::to_string(edges.size()) + ", got " + std::to_string(labels.size()) +
                                " labels");
  }
  for (const EdgeLabel& label : labels) {
    if (label.i < 1 || label.i > label.j) return false;
  }
  int root_layer = -1;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].parent >= 0) {
      if (labels[e].j != labels[static_cast<std::size_t>(edges[e].parent)].i) return false;
    } else if (root_layer < 0) {
      root_layer = labels[e].j;
    } else if (labels[e].j != root_layer) {
      return false;
    }
  }
  return true;
}

Homogeneity homogeneity(TreeShape shape) {
  Homogeneity h{Rational(0), Rational(0)};
  for (const EdgeSpec& edge : shape_edges(shape)) {
    h += Homogeneity{Rational(edge.thin ? 1 : 2), Rational(0)};
    if (edge.carries_noise) h += Homogeneity{Rational(-3, 2), Rational(-1)};
  }
  return h;
}

Homogeneity homogeneity(const DecoratedTree& tree) {
  if (!rule_allows(tree.shape, tree.labels)) {
    throw std::invalid_argument("homogeneity: labels violate the rule");
  }
  return homogeneity(tree.shape);
}

std::vector<DecoratedTree> expand_layer_labelled(int n, int order) {
  require_layer(n);
  std::vector<DecoratedTree> out;
  switch (order) {
    case 0:
      for (int i = 1; i <= n; ++i) out.push_back({TreeShape::One, {{n, i}}, Rational(1)});
      break;
    case 1:
      for (int i = 1; i <= n; ++i) {
        const auto h0 = expand_layer_labelled(i, 0);
        for (const auto& a : h0) {
          for (const auto& b : h0) {
            out.push_back({TreeShape::TwoZero, {a.labels[0], b.labels[0], {n, i}}, a.multiplicity * b.multiplicity});
          }
        }
      }
      break;
    case 2:
      for (int i = 1; i <= n; ++i) {
        const auto h0 = expand_layer_labelled(i, 0);
        const auto h1 = expand_layer_labelled(i, 1);
        for (const auto& b : h1) {
          for (const auto& a : h0) {
            out.push_back({TreeShape::TwoOneZero,
                           {b.labels[0], b.labels[1], b.labels[2], a.labels[0], {n, i}},
                           Rational(2) * a.multiplicity * b.multiplicity});
          }
        }
      }
      break;
    default:
      throw std::invalid_argument("expand_layer: order must be 0, 1 or 2");
  }
  return out;
}

std::vector<int> canonical_orders(TreeShape shape, std::vector<int> orders) {
  const auto edges = shape_edges(shape);
  if (orders.size() != edges.size()) throw std::invalid_argument("canonical_orders: arity mismatch");
  // group interchangeable siblings: thin noise leaves under the same parent
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].thin && edges[e].carries_noise) groups[edges[e].parent].push_back(e);
  }
  for (auto& [parent, members] : groups) {
    if (members.size() < 2) continue;
    std::vector<int> values;
    for (auto e : members) values.push_back(orders[e]);
    std::sort(values.begin(), values.end());
    for (std::size_t k = 0; k < members.size(); ++k) orders[members[k]] = values[k];
  }
  return orders;
}

std::vector<KernelTree> expand_layer(int n, int order) {
  std::map<std::pair<TreeShape, std::vector<int>>, Rational> acc;
  for (const DecoratedTree& tree : expand_layer_labelled(n, order)) {
    if (!rule_allows(tree.shape, tree.labels)) {
      throw std::logic_error("expand_layer: generated a tree outside the rule");
    }
    // cartesian product of the Gbar expansions of every edge
    std::vector<std::vector<std::pair<int, Rational>>> choices;
    for (const EdgeLabel& label : tree.labels) {
      std::vector<std::pair<int, Rational>> options;
      const KernelCombo gbar = expand_gbar(label.order());
      for (const auto& [kernel, c] : gbar.terms()) options.emplace_back(kernel.index, c);
      choices.push_back(std::move(options));
    }
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
      std::vector<int> orders;
      Rational mult = tree.multiplicity;
      for (std::size_t e = 0; e < choices.size(); ++e) {
        orders.push_back(choices[e][pick[e]].first);
        mult *= choices[e][pick[e]].second;
      }
      acc[{tree.shape, canonical_orders(tree.shape, std::move(orders))}] += mult;
      std::size_t e = 0;
      while (e < pick.size() && ++pick[e] == choices[e].size()) pick[e++] = 0;
      if (e == pick.size()) break;
    }
  }
  return to_sorted_vector(acc);
}

std::vector<KernelTree> closed_form_layer(int n, int order) {
  require_layer(n);
  std::map<std::pair<TreeShape, std::vector<int>>, Rational> acc;
  switch (order) {
    case 0:
      for (int l = 0; l < n; ++l) acc[{TreeShape::One, {l}}] += binom(n - 1, l);
      break;
    case 1:
      for (int m1 = 0; m1 < n; ++m1)
        for (int m2 = 0; m2 < n; ++m2)
          for (int l = 0; l < n; ++l)
            acc[{TreeShape::TwoZero, canonical_orders(TreeShape::TwoZero, {m1, m2, l})}] += coeff_20(n, m1, m2, l);
      break;
    case 2:
      for (int m1 = 0; m1 < n; ++m1)
        for (int m2 = 0; m2 < n; ++m2)
          for (int m3 = 0; m3 < n; ++m3)
            for (int m4 = 0; m4 < n; ++m4)
              for (int l = 0; l < n; ++l)
                acc[{TreeShape::TwoOneZero, canonical_orders(TreeShape::TwoOneZero, {m1, m2, m3, m4, l})}] +=
                    Rational(2) * coeff_210(n, m1, m2, m3, m4, l);
      break;
    default:
      throw std::invalid_argument("closed_form_layer: order must be 0, 1 or 2");
  }
  return to_sorted_vector(acc);
}

Rational coeff_20(int n, int m1, int m2, int l) {
  require_layer(n);
  require_nonnegative({m1, m2, l});
  if (!orders_in_range(n, {m1, m2, l})) return Rational(0);
  return Rational(sum_20(n, m1, m2, l));
}

Rational coeff_210(int n, int m1, int m2, int m3, int m4, int l) {
  require_layer(n);
  require_nonnegative({m1, m2, m3, m4, l});
  if (!orders_in_range(n, {m1, m2, m3, m4, l})) return Rational(0);
  return Rational(sum_210(n, m1, m2, m3, m4, l));
}

Rational coeff_211(int n, std::span<const int, 6> m) {
  require_layer(n);
  require_nonnegative({m[0], m[1], m[2], m[3], m[4], m[5]});
  if (!orders_in_range(n, {m[0], m[1], m[2], m[3], m[4], m[5]})) return Rational(0);
  return Rational(mpz_class(sum_210(n, m[0], m[1], m[2], m[3], m[4]) * binom_or_zero(n - 1, m[5])));
}

Rational coeff_40(int n, std::span<const int, 6> m) {
  require_layer(n);
  require_nonnegative({m[0], m[1], m[2], m[3], m[4], m[5]});
  if (!orders_in_range(n, {m[0], m[1], m[2], m[3], m[4], m[5]})) return Rational(0);
  // the (i, j) double sum factorizes into two <20>-type sums
  return Rational(mpz_class(sum_20(n, m[0], m[1], m[4]) * sum_20(n, m[2], m[3], m[5])));
}

std::string to_string(const KernelTree& tree) {
  std::ostringstream os;
  os << shape_name(tree.shape) << '[';
  for (std::size_t k = 0; k < tree.orders.size(); ++k) os << (k ? "," : "") << tree.orders[k];
  os << "] x " << tree.multiplicity;
  return os.str();
}

}  // namespace mlkpz
