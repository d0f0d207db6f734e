#include "qexlab/groups.hpp"

#include "qexlab/error.hpp"
#include "qexlab/linalg.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <random>
#include <sstream>

namespace qexlab {

std::string to_string(GroupFamily family) {
  switch (family) {
    case GroupFamily::cyclic: return "cyclic";
    case GroupFamily::dihedral: return "dihedral";
    case GroupFamily::pgl2: return "pgl2";
    case GroupFamily::psl2: return "psl2";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(GroupFamily family, std::uint32_t parameter, std::string label, std::size_t order,
                         MulFn mul_fn, std::vector<std::string> names)
    : family_(family),
      parameter_(parameter),
      label_(std::move(label)),
      order_(order),
      mul_fn_(std::move(mul_fn)),
      names_(std::move(names)) {
  require(order_ >= 1, ErrorKind::invalid_input, "group order must be positive");
  if (order_ <= kDenseTableLimit) {
    table_.resize(order_ * order_);
    for (Element a = 0; a < order_; ++a)
      for (Element b = 0; b < order_; ++b) table_[a * order_ + b] = mul_fn_(a, b);
  }
  // Cancellation: mul(x, 0) == 0 singles out the identity.
  bool found = false;
  for (Element x = 0; x < order_; ++x) {
    if (mul(x, 0) == 0) {
      identity_ = x;
      found = true;
      break;
    }
  }
  require(found, ErrorKind::numerical, "no identity element in " + label_);
  inverse_.assign(order_, 0);
  for (Element a = 0; a < order_; ++a) {
    bool ok = false;
    for (Element b = 0; b < order_; ++b) {
      if (mul(a, b) == identity_) {
        inverse_[a] = b;
        ok = true;
        break;
      }
    }
    require(ok, ErrorKind::numerical, "element without inverse in " + label_);
  }
}

Element FiniteGroup::pow(Element g, long long k) const {
  if (k < 0) {
    g = inv(g);
    k = -k;
  }
  Element result = identity_;
  Element base = g;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

bool FiniteGroup::is_abelian() const {
  if (family_ == GroupFamily::cyclic) return true;
  for (Element a = 0; a < order_; ++a)
    for (Element b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::string FiniteGroup::element_name(Element g) const {
  if (g < names_.size()) return names_[g];
  return std::to_string(g);
}

GroupAxiomReport check_group_axioms(const FiniteGroup& g, std::uint64_t seed, std::size_t exhaustive_limit,
                                    std::size_t samples) {
  GroupAxiomReport report;
  const std::size_t n = g.order();
  const Element e = g.identity();
  for (Element x = 0; x < n; ++x) {
    if (g.mul(e, x) != x || g.mul(x, e) != x) report.identity_ok = false;
    if (g.mul(x, g.inv(x)) != e || g.mul(g.inv(x), x) != e) report.inverse_ok = false;
  }
  if (n <= exhaustive_limit) {
    report.exhaustive = true;
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c) {
          ++report.triples_checked;
          if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) report.associative_ok = false;
        }
  } else {
    Rng rng(seed);
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
    for (std::size_t i = 0; i < samples; ++i) {
      const Element a = pick(rng), b = pick(rng), c = pick(rng);
      ++report.triples_checked;
      if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) report.associative_ok = false;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Prime field

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FqElement::FqElement(std::uint32_t value, std::uint32_t modulus) : value_(value % modulus), modulus_(modulus) {}

FqElement FqElement::operator+(FqElement o) const {
  return FqElement(static_cast<std::uint32_t>((std::uint64_t{value_} + o.value_) % modulus_), modulus_);
}

FqElement FqElement::operator-(FqElement o) const {
  return FqElement(static_cast<std::uint32_t>((std::uint64_t{value_} + modulus_ - o.value_) % modulus_), modulus_);
}

FqElement FqElement::operator*(FqElement o) const {
  return FqElement(static_cast<std::uint32_t>((std::uint64_t{value_} * o.value_) % modulus_), modulus_);
}

FqElement FqElement::operator-() const { return FqElement(0, modulus_) - *this; }

FqElement FqElement::inverse() const {
  require(value_ != 0, ErrorKind::precondition, "inverse of zero in F_" + std::to_string(modulus_));
  // Fermat: x^(q-2).
  std::uint64_t result = 1, base = value_, e = modulus_ - 2;
  while (e > 0) {
    if (e & 1) result = result * base % modulus_;
    base = base * base % modulus_;
    e >>= 1;
  }
  return FqElement(static_cast<std::uint32_t>(result), modulus_);
}

int legendre_symbol(std::int64_t a, std::uint32_t p) {
  const std::int64_t r = ((a % p) + p) % p;
  if (r == 0) return 0;
  std::uint64_t result = 1, base = static_cast<std::uint64_t>(r), e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

std::uint32_t sqrt_minus_one(std::uint32_t q) {
  require(q % 4 == 1, ErrorKind::precondition, "-1 is a square mod q only when q = 1 mod 4");
  for (std::uint64_t x = 1; x < q; ++x)
    if (x * x % q == q - 1) return static_cast<std::uint32_t>(x);
  fail(ErrorKind::numerical, "no square root of -1 found");
}

// ---------------------------------------------------------------------------
// ProjectiveMat2

ProjectiveMat2::ProjectiveMat2(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d, std::uint32_t q)
    : e_{a % q, b % q, c % q, d % q}, q_(q) {
  const std::uint64_t det = (std::uint64_t{e_[0]} * e_[3] + std::uint64_t{q} * q - std::uint64_t{e_[1]} * e_[2]) % q;
  require(det != 0, ErrorKind::precondition, "singular matrix is not in PGL(2," + std::to_string(q) + ")");
  std::uint32_t lead = 0;
  for (auto v : e_)
    if (v != 0) {
      lead = v;
      break;
    }
  const std::uint32_t scale = FqElement(lead, q).inverse().value();
  for (auto& v : e_) v = static_cast<std::uint32_t>(std::uint64_t{v} * scale % q);
}

std::uint32_t ProjectiveMat2::determinant() const {
  return static_cast<std::uint32_t>(
      (std::uint64_t{e_[0]} * e_[3] + std::uint64_t{q_} * q_ - std::uint64_t{e_[1]} * e_[2]) % q_);
}

std::uint64_t ProjectiveMat2::key() const {
  return ((std::uint64_t{e_[0]} * q_ + e_[1]) * q_ + e_[2]) * q_ + e_[3];
}

ProjectiveMat2 ProjectiveMat2::operator*(const ProjectiveMat2& o) const {
  const std::uint64_t q = q_;
  auto dot = [q](std::uint64_t x, std::uint64_t y, std::uint64_t z, std::uint64_t w) {
    return static_cast<std::uint32_t>((x * y + z * w) % q);
  };
  return ProjectiveMat2(dot(e_[0], o.e_[0], e_[1], o.e_[2]), dot(e_[0], o.e_[1], e_[1], o.e_[3]),
                        dot(e_[2], o.e_[0], e_[3], o.e_[2]), dot(e_[2], o.e_[1], e_[3], o.e_[3]), q_);
}

std::string ProjectiveMat2::to_string() const {
  std::ostringstream os;
  os << '[' << e_[0] << ',' << e_[1] << ';' << e_[2] << ',' << e_[3] << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// Subgroups

bool is_subgroup(const FiniteGroup& g, const std::vector<Element>& members) {
  std::vector<bool> in(g.order(), false);
  for (auto x : members) in[x] = true;
  if (!in[g.identity()]) return false;
  for (auto x : members) {
    if (!in[g.inv(x)]) return false;
    for (auto y : members)
      if (!in[g.mul(x, y)]) return false;
  }
  return true;
}

bool right_cosets_partition(const FiniteGroup& g, const std::vector<Element>& subgroup,
                            const std::vector<Element>& transversal) {
  if (subgroup.size() * transversal.size() != g.order()) return false;
  std::vector<int> hits(g.order(), 0);
  for (auto t : transversal)
    for (auto h : subgroup) ++hits[g.mul(h, t)];
  return std::all_of(hits.begin(), hits.end(), [](int c) { return c == 1; });
}

bool is_inverse_closed(const FiniteGroup& g, const GeneratingSet& gamma) {
  std::map<Element, long> count;
  for (auto x : gamma.elements) {
    if (x >= g.order()) return false;
    ++count[x];
  }
  for (const auto& [x, c] : count) {
    auto it = count.find(g.inv(x));
    if (it == count.end() || it->second != c) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Constructors

FiniteGroup make_cyclic(std::uint32_t n) {
  require(n >= 1, ErrorKind::invalid_input, "cyclic group needs n >= 1");
  std::vector<std::string> names;
  names.reserve(n);
  for (std::uint32_t k = 0; k < n; ++k) names.push_back(std::to_string(k));
  return FiniteGroup(GroupFamily::cyclic, n, "cyclic:" + std::to_string(n), n,
                     [n](Element a, Element b) { return static_cast<Element>((std::uint64_t{a} + b) % n); },
                     std::move(names));
}

FiniteGroup make_dihedral(std::uint32_t m) {
  require(m >= 3, ErrorKind::invalid_input, "dihedral group needs m >= 3");
  std::vector<std::string> names;
  for (std::uint32_t b = 0; b < 2; ++b)
    for (std::uint32_t k = 0; k < m; ++k) {
      std::string s = k == 0 ? (b ? "" : "e") : (k == 1 ? "r" : "r^" + std::to_string(k));
      if (b) s += (k == 0 ? "s" : " s");
      names.push_back(s);
    }
  auto mul = [m](Element x, Element y) {
    const std::uint32_t k1 = x % m, b1 = x / m, k2 = y % m, b2 = y / m;
    const std::uint32_t k = b1 ? (k1 + m - k2) % m : (k1 + k2) % m;
    return static_cast<Element>(k + m * (b1 ^ b2));
  };
  return FiniteGroup(GroupFamily::dihedral, m, "dihedral:" + std::to_string(m), 2 * std::size_t{m}, mul,
                     std::move(names));
}

namespace {

struct ProjectiveTable {
  std::vector<ProjectiveMat2> elements;
  std::vector<std::int32_t> index;  // by key, -1 when absent
  std::uint32_t q;
};

std::shared_ptr<ProjectiveTable> enumerate_projective(std::uint32_t q, bool square_det_only) {
  auto table = std::make_shared<ProjectiveTable>();
  table->q = q;
  const std::uint64_t q4 = std::uint64_t{q} * q * q * q;
  table->index.assign(q4, -1);
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      for (std::uint32_t c = 0; c < q; ++c)
        for (std::uint32_t d = 0; d < q; ++d) {
          const std::uint32_t first = a ? a : (b ? b : (c ? c : d));
          if (first != 1) continue;
          const std::uint64_t det = (std::uint64_t{a} * d + std::uint64_t{q} * q - std::uint64_t{b} * c) % q;
          if (det == 0) continue;
          if (square_det_only && legendre_symbol(static_cast<std::int64_t>(det), q) != 1) continue;
          ProjectiveMat2 m(a, b, c, d, q);
          table->index[m.key()] = static_cast<std::int32_t>(table->elements.size());
          table->elements.push_back(m);
        }
  return table;
}

std::shared_ptr<const FiniteGroup> projective_group(const std::shared_ptr<ProjectiveTable>& table,
                                                    GroupFamily family, const std::string& label) {
  std::vector<std::string> names;
  names.reserve(table->elements.size());
  for (const auto& m : table->elements) names.push_back(m.to_string());
  auto mul = [table](Element x, Element y) {
    const auto prod = table->elements[x] * table->elements[y];
    return static_cast<Element>(table->index[prod.key()]);
  };
  return std::make_shared<const FiniteGroup>(family, table->q, label, table->elements.size(), mul,
                                             std::move(names));
}

void check_odd_prime(std::uint32_t q) {
  require(q >= 3 && q % 2 == 1 && is_prime(q), ErrorKind::invalid_input,
          "q must be an odd prime, got " + std::to_string(q));
}

}  // namespace

Pgl2Group make_pgl2(std::uint32_t q, std::size_t order_cap) {
  check_odd_prime(q);
  const std::size_t order = std::size_t{q} * (q - 1) * (q + 1);
  require(order <= order_cap, ErrorKind::invalid_input,
          "PGL(2," + std::to_string(q) + ") has order " + std::to_string(order) + " above the cap " +
              std::to_string(order_cap));
  auto table = enumerate_projective(q, false);
  require(table->elements.size() == order, ErrorKind::numerical, "PGL(2,q) enumeration count mismatch");

  Pgl2Group out;
  out.group = projective_group(table, GroupFamily::pgl2, "pgl2:" + std::to_string(q));
  out.elements = table->elements;
  const FiniteGroup& g = *out.group;

  SubgroupTower& tower = out.tower;
  tower.r = *find_element(out.elements, ProjectiveMat2(1, 1, 0, 1, q));
  tower.s = *find_element(out.elements, ProjectiveMat2(1, 0, 0, q - 1, q));

  std::vector<Element> g1;
  for (std::uint32_t k = 0; k < q; ++k) g1.push_back(g.pow(tower.r, k));
  std::vector<Element> g2 = g1;
  for (auto x : g1) g2.push_back(g.mul(x, tower.s));
  std::sort(g1.begin(), g1.end());
  std::sort(g2.begin(), g2.end());
  std::vector<Element> all(order);
  for (Element x = 0; x < order; ++x) all[x] = x;
  tower.levels = {{g.identity()}, g1, g2, all};

  // Transversal of right cosets G2 t, each represented by its minimum index.
  std::vector<bool> covered(order, false);
  for (Element x = 0; x < order; ++x) {
    if (covered[x]) continue;
    tower.transversal2.push_back(x);
    for (auto h : g2) covered[g.mul(h, x)] = true;
  }
  for (auto t : tower.transversal2) {
    tower.transversal1.push_back(t);
    tower.transversal1.push_back(g.mul(tower.s, t));
  }
  return out;
}

Psl2Group make_psl2(std::uint32_t q, std::size_t order_cap) {
  check_odd_prime(q);
  const std::size_t order = std::size_t{q} * (q - 1) * (q + 1) / 2;
  require(order <= order_cap, ErrorKind::invalid_input,
          "PSL(2," + std::to_string(q) + ") has order " + std::to_string(order) + " above the cap");
  auto table = enumerate_projective(q, true);
  require(table->elements.size() == order, ErrorKind::numerical, "PSL(2,q) enumeration count mismatch");
  Psl2Group out;
  out.group = projective_group(table, GroupFamily::psl2, "psl2:" + std::to_string(q));
  out.elements = table->elements;
  return out;
}

std::optional<Element> find_element(const std::vector<ProjectiveMat2>& elements, const ProjectiveMat2& m) {
  auto it = std::lower_bound(elements.begin(), elements.end(), m);
  if (it == elements.end() || !(*it == m)) return std::nullopt;
  return static_cast<Element>(it - elements.begin());
}

std::vector<std::vector<Element>> conjugacy_classes(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<int> owner(n, -1);
  std::vector<std::vector<Element>> classes;
  classes.push_back({g.identity()});
  owner[g.identity()] = 0;
  for (Element x = 0; x < n; ++x) {
    if (owner[x] >= 0) continue;
    const int id = static_cast<int>(classes.size());
    std::vector<Element> cls;
    for (Element y = 0; y < n; ++y) {
      const Element c = g.conjugate(x, y);
      if (owner[c] < 0) {
        owner[c] = id;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

GeneratingSet random_symmetric_generators(const FiniteGroup& g, std::size_t k, std::uint64_t seed) {
  require(k >= 2 && k % 2 == 0, ErrorKind::invalid_input, "generator count must be even and >= 2");
  GeneratingSet gamma;
  Rng rng(seed);
  const std::size_t n = g.order();
  std::vector<Element> candidates;
  for (Element x = 0; x < n; ++x)
    if (x != g.identity() || n == 1) candidates.push_back(x);
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  for (std::size_t i = 0; i < k / 2; ++i) {
    const Element x = candidates[pick(rng)];
    gamma.elements.push_back(x);
    gamma.elements.push_back(g.inv(x));
  }
  return gamma;
}

// ---------------------------------------------------------------------------
// Spec strings

namespace {

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require(ec == std::errc() && ptr == s.data() + s.size() && !s.empty(), ErrorKind::invalid_input,
          "malformed " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

GroupSpec parse_group_spec(std::string_view text) {
  const auto parts = split(text, ':');
  require(parts.size() == 2, ErrorKind::invalid_input, "group spec must look like family:<n>, got '" +
                                                           std::string(text) + "'");
  const auto value = parse_uint(parts[1], "group parameter");
  require(value <= 100000, ErrorKind::invalid_input, "group parameter too large");
  GroupSpec spec{GroupFamily::cyclic, static_cast<std::uint32_t>(value), std::string(text)};
  if (parts[0] == "cyclic") {
    spec.family = GroupFamily::cyclic;
    require(value >= 1, ErrorKind::invalid_input, "cyclic:<n> needs n >= 1");
  } else if (parts[0] == "dihedral") {
    spec.family = GroupFamily::dihedral;
    require(value >= 3, ErrorKind::invalid_input, "dihedral:<m> needs m >= 3");
  } else if (parts[0] == "pgl2") {
    spec.family = GroupFamily::pgl2;
    require(value >= 3 && value % 2 == 1 && is_prime(value), ErrorKind::invalid_input,
            "pgl2:<q> needs an odd prime q");
  } else {
    fail(ErrorKind::invalid_input, "unknown group family '" + std::string(parts[0]) + "'");
  }
  return spec;
}

BuiltGroup build_group(const GroupSpec& spec) {
  BuiltGroup out;
  switch (spec.family) {
    case GroupFamily::cyclic:
      require(spec.parameter <= kDenseTableLimit, ErrorKind::invalid_input, "cyclic order above table limit");
      out.group = std::make_shared<const FiniteGroup>(make_cyclic(spec.parameter));
      break;
    case GroupFamily::dihedral:
      require(2 * std::size_t{spec.parameter} <= kDenseTableLimit, ErrorKind::invalid_input,
              "dihedral order above table limit");
      out.group = std::make_shared<const FiniteGroup>(make_dihedral(spec.parameter));
      break;
    case GroupFamily::pgl2: {
      auto pgl = make_pgl2(spec.parameter);
      out.group = pgl.group;
      out.tower = std::move(pgl.tower);
      break;
    }
    case GroupFamily::psl2:
      out.group = make_psl2(spec.parameter).group;
      break;
  }
  return out;
}

GeneratingSet parse_generator_spec(std::string_view text, const FiniteGroup& g) {
  GeneratingSet gamma;
  if (text == "all") {
    for (Element x = 0; x < g.order(); ++x) gamma.elements.push_back(x);
    return gamma;
  }
  if (text.starts_with("random:")) {
    const auto parts = split(text, ':');
    require(parts.size() == 3, ErrorKind::invalid_input, "generator spec must be random:<k>:<seed>");
    const auto k = parse_uint(parts[1], "generator count");
    const auto seed = parse_uint(parts[2], "generator seed");
    require(k >= 2 && k % 2 == 0 && k <= 64, ErrorKind::invalid_input, "random:<k> needs even k in [2, 64]");
    return random_symmetric_generators(g, k, seed);
  }
  for (auto part : split(text, ',')) {
    const auto v = parse_uint(part, "generator element");
    require(v < g.order(), ErrorKind::invalid_input, "generator element out of range: " + std::string(part));
    gamma.elements.push_back(static_cast<Element>(v));
  }
  require(!gamma.elements.empty(), ErrorKind::invalid_input, "empty generator list");
  require(is_inverse_closed(g, gamma), ErrorKind::invalid_input, "generator list is not closed under inverse");
  return gamma;
}

}  // namespace qexlab
