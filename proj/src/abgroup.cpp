#include "gradings/abgroup.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>

namespace gradings {

namespace {

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

IntMatrix stack_rows(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t cols = a.rows() ? a.cols() : b.cols();
  IntMatrix out(a.rows() + b.rows(), cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

// Reduces v against HNF rows; returns true when v lies in their span.
bool in_lattice(const IntMatrix& hnf, IntVector v) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < hnf.rows(); ++i) {
    while (hnf(i, c) == 0) {
      if (v[c] != 0) return false;
      ++c;
    }
    if (v[c] % hnf(i, c) != 0) return false;
    Integer q = v[c] / hnf(i, c);
    if (q != 0)
      for (std::size_t j = c; j < v.size(); ++j) v[j] -= q * hnf(i, j);
  }
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

std::size_t to_size(const Integer& n) {
  if (!n.fits_ulong_p()) throw CapExceeded("count does not fit in memory: " + n.get_str());
  return n.get_ui();
}

}  // namespace

// ---------------------------------------------------------------- FgAbGroup

FgAbGroup::FgAbGroup() : data_(std::make_shared<Data>()) {}

FgAbGroup::FgAbGroup(std::size_t free_rank, std::vector<Integer> invariants) {
  for (std::size_t i = 0; i < invariants.size(); ++i) {
    if (invariants[i] < 2) throw ValidationError("invariant factors must be >= 2, got " + invariants[i].get_str());
    if (i > 0 && invariants[i] % invariants[i - 1] != 0)
      throw ValidationError("invariant factors must form a divisibility chain");
  }
  data_ = std::make_shared<Data>(Data{free_rank, std::move(invariants)});
}

FgAbGroup FgAbGroup::cyclic(long n) {
  if (n == 0) return free(1);
  if (n == 1) return trivial();
  return FgAbGroup(0, {Integer(n)});
}

FgAbGroup FgAbGroup::elementary(long p, std::size_t k) { return FgAbGroup(0, std::vector<Integer>(k, Integer(p))); }

Integer FgAbGroup::order() const {
  if (!is_finite()) throw PreconditionError("order of an infinite group");
  return torsion_order();
}

Integer FgAbGroup::torsion_order() const {
  Integer n = 1;
  for (const auto& d : invariants()) n *= d;
  return n;
}

Integer FgAbGroup::modulus(std::size_t i) const {
  if (i < free_rank()) return 0;
  return invariants().at(i - free_rank());
}

IntVector FgAbGroup::reduce(IntVector coords) const {
  if (coords.size() != ngens())
    throw ShapeError("element has " + std::to_string(coords.size()) + " coordinates, group " + to_string() +
                     " needs " + std::to_string(ngens()));
  for (std::size_t i = 0; i < torsion_rank(); ++i) {
    auto& c = coords[free_rank() + i];
    c = mod_floor(c, invariants()[i]);
  }
  return coords;
}

GroupElement FgAbGroup::element(IntVector coords) const { return GroupElement(*this, std::move(coords)); }

GroupElement FgAbGroup::zero() const { return element(IntVector(ngens())); }

GroupElement FgAbGroup::generator(std::size_t i) const {
  IntVector v(ngens());
  v.at(i) = 1;
  return element(v);
}

std::vector<GroupElement> FgAbGroup::elements() const {
  const std::size_t total = to_size(order());
  std::vector<GroupElement> out;
  out.reserve(total);
  IntVector cur(ngens());
  for (std::size_t n = 0; n < total; ++n) {
    out.push_back(element(cur));
    for (std::size_t i = ngens(); i-- > 0;) {
      cur[i] += 1;
      if (cur[i] < invariants()[i]) break;
      cur[i] = 0;
    }
  }
  return out;
}

IntMatrix FgAbGroup::relation_rows() const {
  IntMatrix r(torsion_rank(), ngens());
  for (std::size_t i = 0; i < torsion_rank(); ++i) r(i, free_rank() + i) = invariants()[i];
  return r;
}

std::string FgAbGroup::to_string() const {
  std::vector<std::string> parts;
  if (free_rank() == 1) parts.push_back("Z");
  if (free_rank() > 1) parts.push_back("Z^" + std::to_string(free_rank()));
  std::size_t i = 0;
  while (i < torsion_rank()) {
    std::size_t j = i;
    while (j < torsion_rank() && invariants()[j] == invariants()[i]) ++j;
    std::string s = "Z_" + invariants()[i].get_str();
    if (j - i > 1) s += "^" + std::to_string(j - i);
    parts.push_back(s);
    i = j;
  }
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t k = 1; k < parts.size(); ++k) out += " x " + parts[k];
  return out;
}

// ---------------------------------------------------------------- GroupElement

GroupElement::GroupElement(FgAbGroup group, IntVector coords)
    : group_(std::move(group)), coords_(group_.reduce(std::move(coords))) {}

bool GroupElement::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

Integer GroupElement::order() const {
  for (std::size_t i = 0; i < group_.free_rank(); ++i)
    if (coords_[i] != 0) return 0;
  Integer n = 1;
  for (std::size_t i = 0; i < group_.torsion_rank(); ++i) {
    const Integer& d = group_.invariants()[i];
    n = lcm(n, d / gcd(d, coords_[group_.free_rank() + i]));
  }
  return n;
}

GroupElement GroupElement::operator+(const GroupElement& o) const {
  if (o.coords_.size() != coords_.size()) throw ShapeError("adding elements of different groups");
  IntVector v = coords_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.coords_[i];
  return GroupElement(group_, std::move(v));
}

GroupElement GroupElement::operator-(const GroupElement& o) const { return *this + (-o); }

GroupElement GroupElement::operator-() const {
  IntVector v = coords_;
  for (auto& x : v) x = -x;
  return GroupElement(group_, std::move(v));
}

GroupElement operator*(const Integer& n, const GroupElement& g) {
  IntVector v = g.coords_;
  for (auto& x : v) x *= n;
  return GroupElement(g.group_, std::move(v));
}

std::string GroupElement::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) s += (i ? "," : "") + coords_[i].get_str();
  return s + ")";
}

// ---------------------------------------------------------------- GroupHom

GroupHom::GroupHom(FgAbGroup domain, FgAbGroup codomain, const IntMatrix& matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(codomain_.ngens(), domain_.ngens()) {
  if (matrix.rows() != codomain_.ngens() || matrix.cols() != domain_.ngens())
    throw ShapeError("hom matrix must be " + std::to_string(codomain_.ngens()) + "x" +
                     std::to_string(domain_.ngens()));
  for (std::size_t j = 0; j < domain_.ngens(); ++j) {
    IntVector col = codomain_.reduce(matrix.col(j));
    for (std::size_t i = 0; i < col.size(); ++i) matrix_(i, j) = col[i];
    Integer d = domain_.modulus(j);
    if (d != 0 && !(d * codomain_.element(col)).is_zero())
      throw ValidationError("hom is not well defined: generator " + std::to_string(j) + " has order " +
                            d.get_str() + " but its image does not");
  }
}

GroupHom GroupHom::identity(const FgAbGroup& g) { return GroupHom(g, g, IntMatrix::identity(g.ngens())); }

GroupHom GroupHom::zero(const FgAbGroup& domain, const FgAbGroup& codomain) {
  return GroupHom(domain, codomain, IntMatrix(codomain.ngens(), domain.ngens()));
}

GroupHom GroupHom::from_images(const FgAbGroup& domain, const FgAbGroup& codomain,
                               const std::vector<GroupElement>& images) {
  if (images.size() != domain.ngens()) throw ShapeError("one image per canonical generator is required");
  IntMatrix m(codomain.ngens(), domain.ngens());
  for (std::size_t j = 0; j < images.size(); ++j)
    for (std::size_t i = 0; i < codomain.ngens(); ++i) m(i, j) = images[j].coords().at(i);
  return GroupHom(domain, codomain, m);
}

GroupElement GroupHom::operator()(const GroupElement& x) const {
  return codomain_.element(matrix_ * domain_.reduce(x.coords()));
}

GroupHom GroupHom::compose(const GroupHom& other) const {
  if (!(other.codomain_ == domain_)) throw ShapeError("composing homs with mismatched groups");
  return GroupHom(other.domain_, codomain_, matrix_ * other.matrix_);
}

Subgroup GroupHom::kernel() const {
  // x with M x in the relation lattice of the codomain.
  const std::size_t n = domain_.ngens(), k = codomain_.torsion_rank();
  IntMatrix aug(codomain_.ngens(), n + k);
  for (std::size_t i = 0; i < codomain_.ngens(); ++i)
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = matrix_(i, j);
  for (std::size_t t = 0; t < k; ++t) aug(codomain_.free_rank() + t, n + t) = codomain_.invariants()[t];
  IntMatrix ker = integer_kernel(aug);
  IntMatrix xs(ker.rows(), n);
  for (std::size_t i = 0; i < ker.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) xs(i, j) = ker(i, j);
  return Subgroup::from_lattice(domain_, xs);
}

Subgroup GroupHom::image() const {
  std::vector<GroupElement> gens;
  for (std::size_t j = 0; j < domain_.ngens(); ++j) gens.push_back(codomain_.element(matrix_.col(j)));
  return Subgroup(codomain_, gens);
}

bool GroupHom::is_injective() const { return kernel().is_trivial(); }

bool GroupHom::is_surjective() const { return image() == Subgroup::whole(codomain_); }

// ---------------------------------------------------------------- Subgroup

Subgroup Subgroup::from_lattice(FgAbGroup owner, const IntMatrix& rows) {
  Subgroup s;
  IntMatrix all = rows.rows() ? stack_rows(rows, owner.relation_rows()) : owner.relation_rows();
  if (all.rows() == 0) all = IntMatrix(0, owner.ngens());
  s.lattice_ = hermite_normal_form(all);
  s.owner_ = std::move(owner);
  return s;
}

Subgroup::Subgroup(FgAbGroup owner, const std::vector<GroupElement>& generators) {
  IntMatrix rows(generators.size(), owner.ngens());
  for (std::size_t i = 0; i < generators.size(); ++i) {
    IntVector v = owner.reduce(generators[i].coords());
    for (std::size_t j = 0; j < v.size(); ++j) rows(i, j) = v[j];
  }
  *this = from_lattice(std::move(owner), rows);
}

Subgroup Subgroup::whole(const FgAbGroup& g) { return from_lattice(g, IntMatrix::identity(g.ngens())); }

std::vector<GroupElement> Subgroup::generators() const {
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < lattice_.rows(); ++i) {
    GroupElement g = owner_.element(lattice_.row(i));
    if (!g.is_zero() && std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  }
  return out;
}

bool Subgroup::contains(const GroupElement& x) const { return in_lattice(lattice_, owner_.reduce(x.coords())); }

bool Subgroup::contains(const Subgroup& other) const {
  for (std::size_t i = 0; i < other.lattice_.rows(); ++i)
    if (!in_lattice(lattice_, other.lattice_.row(i))) return false;
  return true;
}

bool Subgroup::is_trivial() const { return *this == trivial(owner_); }

bool Subgroup::is_finite() const {
  for (std::size_t i = 0; i < lattice_.rows(); ++i)
    for (std::size_t j = 0; j < owner_.free_rank(); ++j)
      if (lattice_(i, j) != 0) return false;
  return true;
}

Integer Subgroup::order() const {
  if (!is_finite()) throw PreconditionError("order of an infinite subgroup");
  // The lattice is full rank on the torsion coordinates; its index there is
  // the product of the pivots.
  Integer index = 1;
  for (std::size_t i = 0; i < lattice_.rows(); ++i)
    for (std::size_t j = 0; j < lattice_.cols(); ++j)
      if (lattice_(i, j) != 0) {
        index *= lattice_(i, j);
        break;
      }
  return owner_.torsion_order() / index;
}

Subgroup::Structure Subgroup::structure() const {
  const std::size_t b = lattice_.rows(), n = owner_.ngens();
  IntMatrix rel = owner_.relation_rows();
  // Coordinates C of the relations in the lattice basis: C * B = R.
  std::vector<std::size_t> piv;
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (lattice_(i, j) != 0) {
        piv.push_back(j);
        break;
      }
  RatMatrix bp(b, b), rp(rel.rows(), b);
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t k = 0; k < b; ++k) bp(i, k) = lattice_(i, piv[k]);
  for (std::size_t i = 0; i < rel.rows(); ++i)
    for (std::size_t k = 0; k < b; ++k) rp(i, k) = rel(i, piv[k]);
  RatMatrix cq = b ? rp * inverse(bp) : RatMatrix(rel.rows(), 0);
  IntMatrix c(rel.rows(), b);
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < b; ++j) {
      if (cq(i, j).get_den() != 1) throw VerificationFailure("relation lattice not contained in subgroup lattice");
      c(i, j) = cq(i, j).get_num();
    }
  SnfResult snf = smith_normal_form(c);
  IntMatrix w = int_inverse(snf.V) * lattice_;
  auto diag = snf.diagonal();
  std::vector<std::size_t> free_idx, tors_idx;
  std::vector<Integer> invariants;
  for (std::size_t i = 0; i < b; ++i) {
    if (i >= diag.size() || diag[i] == 0) free_idx.push_back(i);
    else if (diag[i] >= 2) {
      tors_idx.push_back(i);
      invariants.push_back(diag[i]);
    }
  }
  FgAbGroup g(free_idx.size(), invariants);
  std::vector<GroupElement> images;
  for (auto i : free_idx) images.push_back(owner_.element(w.row(i)));
  for (auto i : tors_idx) images.push_back(owner_.element(w.row(i)));
  return {g, GroupHom::from_images(g, owner_, images)};
}

Subgroup Subgroup::operator+(const Subgroup& other) const {
  if (!(owner_ == other.owner_)) throw NotASubgroup("sum of subgroups of different groups");
  IntMatrix rows = lattice_.rows() ? stack_rows(lattice_, other.lattice_) : other.lattice_;
  return from_lattice(owner_, rows);
}

Subgroup Subgroup::intersect(const Subgroup& other) const {
  if (!(owner_ == other.owner_)) throw NotASubgroup("intersection of subgroups of different groups");
  const std::size_t n = owner_.ngens(), b1 = lattice_.rows(), b2 = other.lattice_.rows();
  IntMatrix m(n, b1 + b2);
  for (std::size_t j = 0; j < b1; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = lattice_(j, i);
  for (std::size_t j = 0; j < b2; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, b1 + j) = -other.lattice_(j, i);
  IntMatrix ker = integer_kernel(m);
  IntMatrix rows(ker.rows(), n);
  for (std::size_t r = 0; r < ker.rows(); ++r)
    for (std::size_t j = 0; j < b1; ++j)
      if (ker(r, j) != 0)
        for (std::size_t i = 0; i < n; ++i) rows(r, i) += ker(r, j) * lattice_(j, i);
  return from_lattice(owner_, rows);
}

bool operator<(const Subgroup& a, const Subgroup& b) {
  const bool fa = a.is_finite(), fb = b.is_finite();
  if (fa != fb) return fa;
  if (fa) {
    Integer oa = a.order(), ob = b.order();
    if (oa != ob) return oa < ob;
  }
  // Larger lattices (more rows) come from smaller subgroups; compare the
  // reduced generators so the order matches the natural reading.
  auto ga = a.generators(), gb = b.generators();
  return ga < gb;
}

std::string Subgroup::to_string() const {
  auto gens = generators();
  std::string s = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? ", " : "") + gens[i].to_string();
  return s + ">";
}

// ---------------------------------------------------------------- constructions

GroupElement Presentation::project(const IntVector& v) const { return group.element(projection * v); }

Presentation group_from_presentation(std::size_t num_generators, const IntMatrix& relations) {
  if (relations.cols() > 0 && relations.rows() != num_generators)
    throw ShapeError("relation matrix must have one row per generator");
  const std::size_t n = num_generators;
  IntMatrix rel = relations.cols() ? relations : IntMatrix(n, 0);
  SnfResult snf = smith_normal_form(rel);
  auto diag = snf.diagonal();
  std::vector<std::size_t> free_idx, tors_idx;
  std::vector<Integer> invariants;
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= diag.size() || diag[i] == 0) free_idx.push_back(i);
    else if (diag[i] >= 2) {
      tors_idx.push_back(i);
      invariants.push_back(diag[i]);
    }
  }
  Presentation p;
  p.group = FgAbGroup(free_idx.size(), invariants);
  std::vector<std::size_t> order = free_idx;
  order.insert(order.end(), tors_idx.begin(), tors_idx.end());
  IntMatrix uinv = int_inverse(snf.U);
  p.projection = IntMatrix(order.size(), n);
  p.lift = IntMatrix(n, order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      p.projection(k, j) = snf.U(order[k], j);
      p.lift(j, k) = uinv(j, order[k]);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    IntVector col = p.group.reduce(p.projection.col(j));
    for (std::size_t k = 0; k < order.size(); ++k) p.projection(k, j) = col[k];
  }
  return p;
}

TorsionSplit torsion_and_free(const FgAbGroup& g) {
  std::vector<GroupElement> tors;
  for (std::size_t i = g.free_rank(); i < g.ngens(); ++i) tors.push_back(g.generator(i));
  IntMatrix m(g.free_rank(), g.ngens());
  for (std::size_t i = 0; i < g.free_rank(); ++i) m(i, i) = 1;
  return {Subgroup(g, tors), GroupHom(g, FgAbGroup::free(g.free_rank()), m)};
}

Quotient quotient_by(const FgAbGroup& g, const Subgroup& e) {
  if (!(e.owner() == g)) throw NotASubgroup("subgroup belongs to " + e.owner().to_string() + ", not " + g.to_string());
  Presentation p = group_from_presentation(g.ngens(), e.lattice().transpose());
  return {p.group, GroupHom(g, p.group, p.projection)};
}

// ---------------------------------------------------------------- enumeration

namespace {

std::map<long, long> factor(long n) {
  std::map<long, long> f;
  for (long p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      f[p]++;
      n /= p;
    }
  if (n > 1) f[n]++;
  return f;
}

// Subgroups of prod Z_{m_i} by closure K + <x>, elements encoded in mixed
// radix. Returns one generating set of codes per subgroup.
std::vector<std::vector<std::uint32_t>> p_subgroup_generators(const std::vector<long>& moduli) {
  std::size_t size = 1;
  for (long m : moduli) size *= static_cast<std::size_t>(m);
  std::vector<std::vector<long>> elems(size);
  for (std::size_t c = 0; c < size; ++c) {
    std::size_t rest = c;
    elems[c].resize(moduli.size());
    for (std::size_t i = moduli.size(); i-- > 0;) {
      elems[c][i] = static_cast<long>(rest % moduli[i]);
      rest /= moduli[i];
    }
  }
  auto encode = [&](const std::vector<long>& v) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) c = c * moduli[i] + static_cast<std::size_t>(v[i]);
    return static_cast<std::uint32_t>(c);
  };
  auto add = [&](std::uint32_t a, std::uint32_t b) {
    std::vector<long> v(moduli.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (elems[a][i] + elems[b][i]) % moduli[i];
    return encode(v);
  };

  struct Node {
    std::vector<std::uint32_t> members;  // sorted
    std::vector<std::uint32_t> gens;
  };
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<Node> nodes{{{0}, {}}};
  seen.insert({0});
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    std::vector<char> in(size, 0);
    for (auto m : nodes[head].members) in[m] = 1;
    for (std::uint32_t x = 0; x < size; ++x) {
      if (in[x]) continue;
      std::vector<char> next = in;
      std::vector<std::uint32_t> members = nodes[head].members;
      std::uint32_t mult = x;
      while (!in[mult]) {
        for (auto k : nodes[head].members) {
          auto y = add(k, mult);
          if (!next[y]) {
            next[y] = 1;
            members.push_back(y);
          }
        }
        mult = add(mult, x);
      }
      std::sort(members.begin(), members.end());
      if (seen.insert(members).second) {
        Node n{members, nodes[head].gens};
        n.gens.push_back(x);
        nodes.push_back(std::move(n));
      }
    }
  }
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(nodes.size());
  for (auto& n : nodes) out.push_back(std::move(n.gens));
  return out;
}

}  // namespace

std::vector<Subgroup> enumerate_subgroups(const Subgroup& h, const std::function<bool(const Subgroup&)>& keep,
                                          std::size_t cap) {
  if (!h.is_finite()) throw PreconditionError("enumerate_subgroups needs a finite subgroup");
  Integer ord = h.order();
  if (ord > cap) throw CapExceeded("subgroup order " + ord.get_str() + " exceeds cap " + std::to_string(cap));
  auto st = h.structure();
  const auto& inv = st.group.invariants();
  std::vector<long> d;
  for (const auto& x : inv) d.push_back(x.get_si());

  std::map<long, long> primes;
  for (long x : d)
    for (auto [p, e] : factor(x)) primes[p] = std::max(primes[p], e);

  // Per prime: list of subgroups, each as a list of elements of the abstract group.
  std::vector<std::vector<std::vector<IntVector>>> per_prime;
  for (auto [p, unused] : primes) {
    (void)unused;
    std::vector<long> moduli, scale;
    std::vector<std::size_t> where;
    for (std::size_t i = 0; i < d.size(); ++i) {
      long pe = 1, rest = d[i];
      while (rest % p == 0) {
        rest /= p;
        pe *= p;
      }
      if (pe > 1) {
        moduli.push_back(pe);
        scale.push_back(d[i] / pe);
        where.push_back(i);
      }
    }
    auto gens = p_subgroup_generators(moduli);
    std::vector<std::vector<IntVector>> lists;
    for (const auto& g : gens) {
      std::vector<IntVector> elems;
      for (auto code : g) {
        IntVector v(d.size());
        std::size_t rest = code;
        for (std::size_t i = moduli.size(); i-- > 0;) {
          v[where[i]] = static_cast<long>(rest % moduli[i]) * scale[i];
          rest /= moduli[i];
        }
        elems.push_back(v);
      }
      lists.push_back(elems);
    }
    per_prime.push_back(lists);
  }

  std::vector<Subgroup> out;
  std::vector<std::size_t> idx(per_prime.size(), 0);
  while (true) {
    std::vector<GroupElement> gens;
    for (std::size_t k = 0; k < per_prime.size(); ++k)
      for (const auto& v : per_prime[k][idx[k]]) gens.push_back(st.embedding(st.group.element(v)));
    Subgroup s(h.owner(), gens);
    if (!keep || keep(s)) out.push_back(s);
    std::size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] < per_prime[k].size()) break;
      idx[k] = 0;
    }
    if (k == idx.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GroupHom> enumerate_homs(const FgAbGroup& g, const FgAbGroup& h, std::size_t cap) {
  if (!h.is_finite()) throw PreconditionError("enumerate_homs needs a finite codomain");
  if (h.order() > cap) throw CapExceeded("codomain order exceeds cap " + std::to_string(cap));
  auto all = h.elements();
  std::vector<std::vector<GroupElement>> choices;
  Integer total = 1;
  for (std::size_t i = 0; i < g.ngens(); ++i) {
    Integer d = g.modulus(i);
    std::vector<GroupElement> c;
    for (const auto& x : all)
      if (d == 0 || (d * x).is_zero()) c.push_back(x);
    total *= static_cast<unsigned long>(c.size());
    choices.push_back(std::move(c));
  }
  if (total > cap)
    throw CapExceeded("number of homomorphisms " + total.get_str() + " exceeds cap " + std::to_string(cap));
  std::vector<GroupHom> out;
  std::vector<std::size_t> idx(choices.size(), 0);
  while (true) {
    std::vector<GroupElement> images;
    for (std::size_t i = 0; i < choices.size(); ++i) images.push_back(choices[i][idx[i]]);
    out.push_back(GroupHom::from_images(g, h, images));
    std::size_t k = idx.size();
    while (k-- > 0) {
      if (++idx[k] < choices[k].size()) break;
      idx[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

}  // namespace gradings
