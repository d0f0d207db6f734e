#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qexlab {

/// Dense group-element index in 0..N-1.
using Element = std::uint32_t;

/// Groups of order up to this bound carry a precomputed multiplication table.
inline constexpr std::size_t kDenseTableLimit = 360;

enum class GroupFamily { cyclic, dihedral, pgl2, psl2 };

std::string to_string(GroupFamily family);

/// A finite group on element indices 0..N-1.
///
/// Immutable after construction. Small groups (N <= kDenseTableLimit) are
/// backed by an N x N table; larger ones call the structured multiplication
/// they were built with.
class FiniteGroup {
 public:
  using MulFn = std::function<Element(Element, Element)>;

  FiniteGroup(GroupFamily family, std::uint32_t parameter, std::string label, std::size_t order,
              MulFn mul, std::vector<std::string> names = {});

  std::size_t order() const noexcept { return order_; }
  Element identity() const noexcept { return identity_; }
  Element mul(Element a, Element b) const {
    return table_.empty() ? mul_fn_(a, b) : table_[static_cast<std::size_t>(a) * order_ + b];
  }
  Element inv(Element a) const { return inverse_[a]; }
  Element pow(Element g, long long k) const;
  Element conjugate(Element g, Element by) const { return mul(mul(by, g), inv(by)); }

  const std::string& label() const noexcept { return label_; }
  GroupFamily family() const noexcept { return family_; }
  std::uint32_t parameter() const noexcept { return parameter_; }
  bool has_table() const noexcept { return !table_.empty(); }
  bool is_abelian() const;
  std::string element_name(Element g) const;

 private:
  GroupFamily family_;
  std::uint32_t parameter_;
  std::string label_;
  std::size_t order_;
  MulFn mul_fn_;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<std::string> names_;
  Element identity_ = 0;
};

/// Outcome of an exhaustive or sampled check of the group axioms.
struct GroupAxiomReport {
  bool identity_ok = true;
  bool inverse_ok = true;
  bool associative_ok = true;
  std::size_t triples_checked = 0;
  bool exhaustive = false;
  bool ok() const { return identity_ok && inverse_ok && associative_ok; }
};

/// Identity and inverse laws exhaustively; associativity exhaustively when
/// N <= exhaustive_limit, otherwise on `samples` random triples.
GroupAxiomReport check_group_axioms(const FiniteGroup& g, std::uint64_t seed,
                                    std::size_t exhaustive_limit = 64, std::size_t samples = 10000);

// ---------------------------------------------------------------------------
// Prime fields and projective 2x2 matrices

bool is_prime(std::uint64_t n);

class FqElement {
 public:
  FqElement(std::uint32_t value, std::uint32_t modulus);

  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return value_ == 0; }

  FqElement operator+(FqElement o) const;
  FqElement operator-(FqElement o) const;
  FqElement operator*(FqElement o) const;
  FqElement operator-() const;
  /// Multiplicative inverse; throws on zero.
  FqElement inverse() const;
  FqElement operator/(FqElement o) const { return *this * o.inverse(); }
  bool operator==(const FqElement& o) const = default;

 private:
  std::uint32_t value_;
  std::uint32_t modulus_;
};

/// Legendre symbol (a|p) for an odd prime p: 1, -1, or 0.
int legendre_symbol(std::int64_t a, std::uint32_t p);

/// A square root of -1 mod q (q = 1 mod 4), found by search.
std::uint32_t sqrt_minus_one(std::uint32_t q);

/// Element of PGL(2,q), stored in canonical form: the first nonzero entry in
/// row-major order (a, b, c, d) equals 1.
class ProjectiveMat2 {
 public:
  /// Canonicalizes; throws if the determinant vanishes.
  ProjectiveMat2(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d, std::uint32_t q);

  std::uint32_t a() const noexcept { return e_[0]; }
  std::uint32_t b() const noexcept { return e_[1]; }
  std::uint32_t c() const noexcept { return e_[2]; }
  std::uint32_t d() const noexcept { return e_[3]; }
  std::uint32_t modulus() const noexcept { return q_; }
  std::uint32_t determinant() const;
  /// Packs the canonical entries into a single integer (a q^3 + b q^2 + c q + d).
  std::uint64_t key() const;

  ProjectiveMat2 operator*(const ProjectiveMat2& o) const;
  bool operator==(const ProjectiveMat2& o) const = default;
  auto operator<=>(const ProjectiveMat2& o) const = default;
  std::string to_string() const;

 private:
  std::uint32_t e_[4];
  std::uint32_t q_;
};

// ---------------------------------------------------------------------------
// Subgroup tower and generating sets

/// G0 < G1 < G2 < G3 = G with G2 dihedral of order 2q generated by r and s,
/// G1 = <r> cyclic of order q, and right-coset transversals for G2 and G1.
struct SubgroupTower {
  std::vector<std::vector<Element>> levels;  // levels[0] = {e}, ..., levels[3] = G
  Element r = 0;
  Element s = 0;
  /// t_1..t_l with G = disjoint union of G2 * t_k; l = (q-1)(q+1)/2.
  std::vector<Element> transversal2;
  /// t_1, s t_1, ..., t_l, s t_l; a transversal for G1.
  std::vector<Element> transversal1;
};

/// True if `members` is closed under multiplication and inverse.
bool is_subgroup(const FiniteGroup& g, const std::vector<Element>& members);

/// True if the right cosets {H t : t in transversal} partition G.
bool right_cosets_partition(const FiniteGroup& g, const std::vector<Element>& subgroup,
                            const std::vector<Element>& transversal);

/// Multiset Gamma of group elements, closed under inverse with multiplicity.
struct GeneratingSet {
  std::vector<Element> elements;
  std::size_t degree() const noexcept { return elements.size(); }
};

bool is_inverse_closed(const FiniteGroup& g, const GeneratingSet& gamma);

// ---------------------------------------------------------------------------
// Constructors

FiniteGroup make_cyclic(std::uint32_t n);

/// Dihedral group of order 2m; element index k + m*b encodes r^k s^b.
FiniteGroup make_dihedral(std::uint32_t m);

struct Pgl2Group {
  std::shared_ptr<const FiniteGroup> group;
  SubgroupTower tower;
  std::vector<ProjectiveMat2> elements;  // index -> matrix, ascending canonical order
};

/// PGL(2,q) for an odd prime q with its subgroup tower. Throws when
/// q(q-1)(q+1) exceeds `order_cap`.
Pgl2Group make_pgl2(std::uint32_t q, std::size_t order_cap = kDenseTableLimit);

struct Psl2Group {
  std::shared_ptr<const FiniteGroup> group;
  std::vector<ProjectiveMat2> elements;
};

/// PSL(2,q): canonical projective matrices with square determinant.
Psl2Group make_psl2(std::uint32_t q, std::size_t order_cap = kDenseTableLimit);

/// Index of a projective matrix inside an ascending element list.
std::optional<Element> find_element(const std::vector<ProjectiveMat2>& elements, const ProjectiveMat2& m);

std::vector<std::vector<Element>> conjugacy_classes(const FiniteGroup& g);

/// k/2 uniform draws (with replacement) joined by their inverses. A draw that
/// is its own inverse appears twice so the degree stays k.
GeneratingSet random_symmetric_generators(const FiniteGroup& g, std::size_t k, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Spec strings used by the command line

struct GroupSpec {
  GroupFamily family;
  std::uint32_t parameter;
  std::string text;
};

/// Parses `cyclic:<n>`, `dihedral:<m>`, `pgl2:<q>`.
GroupSpec parse_group_spec(std::string_view text);

struct BuiltGroup {
  std::shared_ptr<const FiniteGroup> group;
  std::optional<SubgroupTower> tower;
};

BuiltGroup build_group(const GroupSpec& spec);

/// Parses `random:<k>:<seed>`, `all`, or a comma-separated element list.
GeneratingSet parse_generator_spec(std::string_view text, const FiniteGroup& g);

}  // namespace qexlab
