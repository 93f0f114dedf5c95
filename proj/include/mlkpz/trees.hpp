#pragma once

// Decorated trees of the multi-layer KPZ expansion.
//
// Edges are listed left to right, top to bottom. A thick edge is an
// occurrence of I (the kernel), a thin edge of I' (its space derivative).
// Edge labels come in two flavours:
//   * EdgeLabel (j,i): the occurrence of Gbar_{j-i} in the layer-j equation;
//   * kernel orders m: the index of the basis kernel G_m after expanding each
//     Gbar over {G_m}. The closed-form coefficients work in this form.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mlkpz/rational.hpp"

namespace mlkpz {

struct EdgeLabel {
  int j = 1;  // layer of the equation the kernel occurs in
  int i = 1;  // source layer

  int order() const { return j - i; }
  friend auto operator<=>(const EdgeLabel&, const EdgeLabel&) = default;
};

enum class TreeShape {
  One,        // <1>   I[Xi]
  D,          // <d>   I'[Xi]
  Two,        // <2>   I'[Xi] I'[Xi]
  TwoZero,    // <20>  I[<2>]
  TwoD,       // <2d>  I'[<2>]
  TwoOne,     // <21>  I'[<2>] I'[Xi]
  FourZero,   // <40>  I'[<2>] I'[<2>]
  TwoOneOne,  // <211> I'[<21>] I'[Xi]
  TwoOneZero, // <210> I[<21>]
  TwoOneD,    // <21d> I'[<21>]
  OneZero,    // <10>  I[I'[Xi]]
  OneD,       // <1d>  I'[I'[Xi]]
  OneOne,     // <11>  I'[I'[Xi]] I'[Xi]
};

inline constexpr TreeShape kAllShapes[] = {
    TreeShape::One,       TreeShape::D,          TreeShape::Two,     TreeShape::TwoZero, TreeShape::TwoD,
    TreeShape::TwoOne,    TreeShape::FourZero,   TreeShape::TwoOneOne, TreeShape::TwoOneZero,
    TreeShape::TwoOneD,   TreeShape::OneZero,    TreeShape::OneD,    TreeShape::OneOne};

struct EdgeSpec {
  int parent = -1;          // index of the edge this one hangs from; -1 for the root
  bool thin = true;         // I' (true) or I (false)
  bool carries_noise = false;
};

std::string_view shape_name(TreeShape shape);
TreeShape parse_shape(std::string_view name);
std::span<const EdgeSpec> shape_edges(TreeShape shape);
int arity(TreeShape shape);

/// Homogeneity a + b*kappa.
struct Homogeneity {
  Rational constant;
  Rational kappa;

  Homogeneity& operator+=(const Homogeneity& other) {
    constant += other.constant;
    kappa += other.kappa;
    return *this;
  }
  friend bool operator==(const Homogeneity&, const Homogeneity&) = default;
};

struct DecoratedTree {
  TreeShape shape = TreeShape::One;
  std::vector<EdgeLabel> labels;
  Rational multiplicity{1};
};

struct KernelTree {
  TreeShape shape = TreeShape::One;
  std::vector<int> orders;
  Rational multiplicity{1};

  friend bool operator==(const KernelTree&, const KernelTree&) = default;
};

/// The rule-R index constraints: a child edge's j equals its parent's i, and
/// the edges meeting at the root share one j. Throws std::invalid_argument on
/// an arity mismatch; malformed labels (not 1 <= i <= j) are not allowed.
bool rule_allows(TreeShape shape, std::span<const EdgeLabel> labels);

/// Noise -3/2 - kappa, thick edge +2, thin edge +1.
Homogeneity homogeneity(TreeShape shape);
Homogeneity homogeneity(const DecoratedTree& tree);

/// Literal recursive substitution of the mild formulation, in (j,i) labels:
/// order 0 is Gbar_{n-i} Xi, order 1 is Gbar_{n-i} (d h_i^(0))^2, order 2 is
/// 2 Gbar_{n-i} (d h_i^(0))(d h_i^(1)).
std::vector<DecoratedTree> expand_layer_labelled(int n, int order);

/// expand_layer_labelled with every Gbar expanded over {G_m}; sibling noise
/// edges are sorted so equivalent decorations accumulate. Sorted by
/// (shape, orders).
std::vector<KernelTree> expand_layer(int n, int order);

/// The same multiset predicted by the resummed closed-form coefficients.
std::vector<KernelTree> closed_form_layer(int n, int order);

/// Canonical ordering of kernel orders for a shape (sorts noise siblings).
std::vector<int> canonical_orders(TreeShape shape, std::vector<int> orders);

// Closed-form coefficients. Orders outside [0, n-1] give 0.
Rational coeff_20(int n, int m1, int m2, int l);
Rational coeff_210(int n, int m1, int m2, int m3, int m4, int l);
Rational coeff_211(int n, std::span<const int, 6> m);
Rational coeff_40(int n, std::span<const int, 6> m);

std::string to_string(const KernelTree& tree);

}  // namespace mlkpz
