#ifndef SKEWSTONE_ALGEBRA_HPP
#define SKEWSTONE_ALGEBRA_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "skewstone/util.hpp"

namespace skewstone {

struct MalformedTable : std::runtime_error {
  explicit MalformedTable(const std::string& what) : std::runtime_error(what) {}
};

struct NotBelow : std::runtime_error {
  explicit NotBelow(const std::string& what) : std::runtime_error(what) {}
};

struct NotBoolean : std::runtime_error {
  explicit NotBoolean(const std::string& what) : std::runtime_error(what) {}
};

struct NotProper : std::runtime_error {
  explicit NotProper(const std::string& what) : std::runtime_error(what) {}
};

struct AxiomViolation {
  std::string identity;
  std::vector<int> witness;
};

struct AlgebraError : std::runtime_error {
  std::vector<AxiomViolation> violations;
  explicit AlgebraError(std::vector<AxiomViolation> v)
      : std::runtime_error(describe(v)), violations(std::move(v)) {}

  static std::string describe(const std::vector<AxiomViolation>& v) {
    std::string s = "algebra axioms violated:";
    for (const auto& x : v) {
      s += " [" + x.identity + " at (";
      for (size_t i = 0; i < x.witness.size(); ++i)
        s += (i ? "," : "") + std::to_string(x.witness[i]);
      s += ")]";
    }
    return s;
  }
};

// Finite left-handed skew Boolean algebra as meet/join tables.
// Elements are dense indices 0..size-1; index 0 is the zero. Names are
// cosmetic. The relative complement is derived from the tables, never stored.
struct FiniteLeftSkewBA {
  int size = 1;
  std::vector<int> meet{0};  // row-major size*size
  std::vector<int> join{0};
  std::vector<std::string> names;

  int m(int a, int b) const { return meet[static_cast<size_t>(a) * size + b]; }
  int j(int a, int b) const { return join[static_cast<size_t>(a) * size + b]; }
  bool leq(int a, int b) const { return m(a, b) == a && m(b, a) == a; }

  std::string name(int a) const {
    return names.empty() ? std::to_string(a) : names[static_cast<size_t>(a)];
  }
};

inline std::vector<int> flatten(const std::vector<std::vector<int>>& rows) {
  std::vector<int> out;
  for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

inline std::vector<AxiomViolation> check_axioms(const FiniteLeftSkewBA& s) {
  std::vector<AxiomViolation> bad;
  const int n = s.size;
  auto report = [&](const char* id, std::vector<int> w) {
    for (const auto& b : bad)
      if (b.identity == id) return;  // one witness per identity
    bad.push_back({id, std::move(w)});
  };

  for (int x = 0; x < n; ++x) {
    if (s.m(x, x) != x) report("meet idempotency", {x});
    if (s.j(x, x) != x) report("join idempotency", {x});
    if (s.m(x, 0) != 0 || s.m(0, x) != 0) report("zero absorbing", {x});
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (s.m(x, s.j(x, y)) != x) report("absorption x&(x|y)=x", {x, y});
      if (s.j(x, s.m(x, y)) != x) report("absorption x|(x&y)=x", {x, y});
      if (s.m(s.j(y, x), x) != x) report("absorption (y|x)&x=x", {x, y});
      if (s.j(s.m(y, x), x) != x) report("absorption (y&x)|x=x", {x, y});
      if (s.m(s.m(x, y), x) != s.m(x, y)) report("left-handed meet", {x, y});
      if (s.j(s.j(x, y), x) != s.j(y, x)) report("left-handed join", {x, y});
      bool cm = s.m(x, y) == s.m(y, x), cj = s.j(x, y) == s.j(y, x);
      if (cm != cj) report("symmetry", {x, y});
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        if (s.m(s.m(x, y), z) != s.m(x, s.m(y, z)))
          report("meet associativity", {x, y, z});
        if (s.j(s.j(x, y), z) != s.j(x, s.j(y, z)))
          report("join associativity", {x, y, z});
        if (s.m(x, s.j(y, z)) != s.j(s.m(x, y), s.m(x, z)))
          report("left distributivity", {x, y, z});
        if (s.m(s.j(y, z), x) != s.j(s.m(y, x), s.m(z, x)))
          report("right distributivity", {x, y, z});
      }

  // each principal down-set must be a Boolean lattice
  if (bad.empty()) {
    for (int x = 0; x < n; ++x) {
      std::vector<int> down;
      for (int y = 0; y < n; ++y)
        if (s.leq(y, x)) down.push_back(y);
      for (int y : down)
        for (int z : down)
          if (s.m(y, z) != s.m(z, y) || s.j(y, z) != s.j(z, y)) {
            report("principal down-set commutative", {x, y, z});
            break;
          }
      for (int y : down) {
        int found = 0;
        for (int z : down)
          if (s.m(y, z) == 0 && s.m(z, y) == 0 && s.j(y, z) == x) ++found;
        if (found != 1) report("principal down-set complemented", {x, y});
      }
    }
  }
  return bad;
}

inline FiniteLeftSkewBA validate_algebra(
    const std::vector<std::vector<int>>& meet,
    const std::vector<std::vector<int>>& join, int zero,
    std::vector<std::string> names = {}) {
  const int n = static_cast<int>(meet.size());
  if (n == 0 || join.size() != static_cast<size_t>(n))
    throw MalformedTable("meet and join must be non-empty and the same size");
  for (const auto& t : {meet, join})
    for (const auto& row : t) {
      if (row.size() != static_cast<size_t>(n))
        throw MalformedTable("tables must be square");
      for (int v : row)
        if (v < 0 || v >= n) throw MalformedTable("table entry out of range");
    }
  if (zero != 0) throw MalformedTable("zero must be the index 0");
  if (!names.empty() && names.size() != static_cast<size_t>(n))
    throw MalformedTable("names size mismatch");

  FiniteLeftSkewBA s;
  s.size = n;
  s.meet = flatten(meet);
  s.join = flatten(join);
  s.names = std::move(names);
  auto bad = check_axioms(s);
  if (!bad.empty()) throw AlgebraError(std::move(bad));
  return s;
}

// The primitive algebra on {0,...,n+1}: one non-zero D-class, inside which
// x&y=x and x|y=y.
inline FiniteLeftSkewBA primitive_algebra(int n) {
  if (n < 0) throw MalformedTable("primitive level must be >= 0");
  const int sz = n + 2;
  FiniteLeftSkewBA s;
  s.size = sz;
  s.meet.assign(static_cast<size_t>(sz) * sz, 0);
  s.join.assign(static_cast<size_t>(sz) * sz, 0);
  for (int a = 0; a < sz; ++a)
    for (int b = 0; b < sz; ++b) {
      int mv = (a == 0 || b == 0) ? 0 : a;
      int jv = (b == 0) ? a : b;
      s.meet[static_cast<size_t>(a) * sz + b] = mv;
      s.join[static_cast<size_t>(a) * sz + b] = jv;
    }
  for (int a = 0; a < sz; ++a) s.names.push_back(std::to_string(a));
  return s;
}

// Section algebra over base points with the given stalk sizes. An element
// assigns to each base point either nothing (0) or a germ (1..k); join
// overrides from the right, meet keeps left values on the common domain.
// Element order is lexicographic in that tuple, first point most significant.
inline FiniteLeftSkewBA algebra_from_stalks(const std::vector<int>& profile) {
  for (int k : profile)
    if (k <= 0) throw MalformedTable("stalk sizes must be positive");
  const int r = static_cast<int>(profile.size());
  std::vector<int> radix(profile.begin(), profile.end());
  for (int& k : radix) ++k;
  std::int64_t total = 1;
  for (int k : radix) {
    total *= k;
    if (total > 4096) throw SizeGuardError("stalk profile too large");
  }
  const int n = static_cast<int>(total);

  auto decode = [&](int e) {
    std::vector<int> v(r);
    for (int i = r - 1; i >= 0; --i) {
      v[i] = e % radix[i];
      e /= radix[i];
    }
    return v;
  };
  auto encode = [&](const std::vector<int>& v) {
    int e = 0;
    for (int i = 0; i < r; ++i) e = e * radix[i] + v[i];
    return e;
  };

  FiniteLeftSkewBA s;
  s.size = n;
  s.meet.assign(static_cast<size_t>(n) * n, 0);
  s.join.assign(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) {
    auto va = decode(a);
    for (int b = 0; b < n; ++b) {
      auto vb = decode(b);
      std::vector<int> vm(r), vj(r);
      for (int i = 0; i < r; ++i) {
        vm[i] = (va[i] != 0 && vb[i] != 0) ? va[i] : 0;
        vj[i] = (vb[i] != 0) ? vb[i] : va[i];
      }
      s.meet[static_cast<size_t>(a) * n + b] = encode(vm);
      s.join[static_cast<size_t>(a) * n + b] = encode(vj);
    }
  }
  for (int a = 0; a < n; ++a) {
    auto v = decode(a);
    std::string nm;
    for (int i = 0; i < r; ++i) nm += (i ? "," : "") + std::to_string(v[i]);
    s.names.push_back(nm.empty() ? "0" : nm);
  }
  return s;
}

inline bool natural_leq(const FiniteLeftSkewBA& s, int a, int b) {
  return s.leq(a, b);
}

// D-classes in the order of their minimal elements; the zero class comes
// first. In a left-handed algebra a D b iff a&b=a and b&a=b.
struct DClasses {
  std::vector<std::vector<int>> classes;
  std::vector<int> cls_of;
};

inline DClasses d_classes(const FiniteLeftSkewBA& s) {
  DClasses d;
  d.cls_of.assign(s.size, -1);
  for (int a = 0; a < s.size; ++a) {
    if (d.cls_of[a] >= 0) continue;
    int id = static_cast<int>(d.classes.size());
    std::vector<int> cls;
    for (int b = 0; b < s.size; ++b)
      if (s.m(a, b) == a && s.m(b, a) == b) {
        d.cls_of[b] = id;
        cls.push_back(b);
      }
    d.classes.push_back(std::move(cls));
  }
  return d;
}

// Relative complement x\y: the complement of x&y&x in the Boolean
// lattice of elements below x.
inline int relative_complement(const FiniteLeftSkewBA& s, int x, int y) {
  const int w = s.m(s.m(x, y), x);
  int found = -1;
  for (int z = 0; z < s.size; ++z) {
    if (!s.leq(z, x)) continue;
    if (s.m(z, w) == 0 && s.m(w, z) == 0 && s.j(z, w) == x && s.j(w, z) == x) {
      if (found >= 0) throw NotBoolean("complement not unique below " + std::to_string(x));
      found = z;
    }
  }
  if (found < 0) throw NotBoolean("no complement below " + std::to_string(x));
  return found;
}

// The unique element of class d below a.
inline int restriction(const FiniteLeftSkewBA& s, const DClasses& d, int a, int cls) {
  int found = -1;
  for (int b : d.classes[static_cast<size_t>(cls)])
    if (s.leq(b, a)) {
      found = b;
      break;
    }
  if (found < 0)
    throw NotBelow("class " + std::to_string(cls) + " is not below element " +
                   std::to_string(a));
  return found;
}

// Greatest lower bound under the natural order, when it exists.
inline std::optional<int> intersection(const FiniteLeftSkewBA& s, int a, int b) {
  std::vector<int> lower;
  for (int c = 0; c < s.size; ++c)
    if (s.leq(c, a) && s.leq(c, b)) lower.push_back(c);
  for (int g : lower) {
    bool greatest = true;
    for (int c : lower)
      if (!s.leq(c, g)) {
        greatest = false;
        break;
      }
    if (greatest) return g;
  }
  return std::nullopt;
}

// A Boolean algebra is a skew algebra with singleton D-classes; atoms and top
// are cached on construction.
struct FiniteBooleanAlgebra {
  FiniteLeftSkewBA alg;
  std::vector<int> atoms;
  int top = 0;
};

inline FiniteBooleanAlgebra as_boolean(FiniteLeftSkewBA s) {
  for (int a = 0; a < s.size; ++a)
    for (int b = 0; b < s.size; ++b)
      if (s.m(a, b) != s.m(b, a))
        throw NotBoolean("algebra is not commutative");
  FiniteBooleanAlgebra ba;
  ba.top = 0;
  for (int a = 1; a < s.size; ++a) ba.top = s.j(ba.top, a);
  for (int a = 1; a < s.size; ++a) {
    bool atom = true;
    for (int b = 1; b < s.size; ++b)
      if (b != a && s.leq(b, a)) {
        atom = false;
        break;
      }
    if (atom) ba.atoms.push_back(a);
  }
  ba.alg = std::move(s);
  return ba;
}

// Maximal Boolean image S/D with the projection alpha.
struct BooleanQuotient {
  DClasses d;
  FiniteBooleanAlgebra q;  // element i of q is D-class i
  int top_class = 0;
  const std::vector<int>& alpha() const { return d.cls_of; }
};

inline BooleanQuotient max_boolean_image(const FiniteLeftSkewBA& s) {
  BooleanQuotient bq;
  bq.d = d_classes(s);
  const int k = static_cast<int>(bq.d.classes.size());
  FiniteLeftSkewBA q;
  q.size = k;
  q.meet.assign(static_cast<size_t>(k) * k, 0);
  q.join.assign(static_cast<size_t>(k) * k, 0);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      int ra = bq.d.classes[a][0], rb = bq.d.classes[b][0];
      q.meet[static_cast<size_t>(a) * k + b] = bq.d.cls_of[s.m(ra, rb)];
      q.join[static_cast<size_t>(a) * k + b] = bq.d.cls_of[s.j(ra, rb)];
    }
  bq.q = as_boolean(std::move(q));
  bq.top_class = bq.q.top;
  return bq;
}

}  // namespace skewstone

#endif  // SKEWSTONE_ALGEBRA_HPP
